#pragma once
// Umbrella header.

#include "error.hpp"
#include "gf.hpp"
#include "linalg.hpp"
#include "binform.hpp"
#include "fermat.hpp"
#include "cohomology.hpp"
#include "bounds.hpp"
#include "certify.hpp"
#include "search.hpp"
#include "io.hpp"
#include "corpus.hpp"
