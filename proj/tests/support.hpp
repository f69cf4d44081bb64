#pragma once
// Shared generators for the property tests.

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <tuple>
#include <vector>

#include "fermatfree/fermatfree.hpp"

namespace fermatfree::fixtures {

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(20240601);
  return gen;
}

inline Code random_elem(const Field& F) {
  return F.element(std::uniform_int_distribution<std::uint64_t>(0, F.order() - 1)(rng()));
}

inline Code random_nonzero(const Field& F) {
  return F.element(std::uniform_int_distribution<std::uint64_t>(1, F.order() - 1)(rng()));
}

inline BinForm random_form(const Field& F, int d) {
  std::vector<Code> cs(static_cast<std::size_t>(d + 1));
  for (auto& c : cs) c = random_elem(F);
  return BinForm(F, std::move(cs));
}

inline Matrix random_matrix(const Field& F, std::size_t rows, std::size_t cols) {
  Matrix m(F, rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = random_elem(F);
  return m;
}

/// Fields exercised by the grid tests.
inline std::vector<Field> small_fields() {
  return {Field::make(2, 1), Field::make(2, 2), Field::make(2, 4), Field::make(3, 1),
          Field::make(3, 2), Field::make(5, 2), Field::make(7, 1), Field::make(2, 3)};
}

/// A free twisted cubic on the q = 2 Fermat surface over GF(4), w = [0,1]:
/// (S0^2 S1, S0 S1^2, S1^3 + S0^3, S1^3 + w S0^3) in ascending-S0 order.
inline const char* kFreeCubicFile = R"(GF(2^2; 1,1,1)
q=2
e=3
deg=3; [[0,0], [0,0], [1,0], [0,0]]
deg=3; [[0,0], [1,0], [0,0], [0,0]]
deg=3; [[1,0], [0,0], [0,0], [0,1]]
deg=3; [[1,0], [0,0], [0,0], [1,1]]
)";

inline RationalCurve free_cubic() { return io::read_curve(std::string(kFreeCubicFile)); }

}  // namespace fermatfree::fixtures
