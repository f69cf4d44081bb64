#pragma once
// Per-curve report combining the span, rank, relation and cohomology data,
// with the implications every free curve must satisfy checked on the way.

#include <cstdint>
#include <optional>
#include <string>

#include "bounds.hpp"
#include "cohomology.hpp"
#include "fermat.hpp"

namespace fermatfree {

struct CurveReport {
  std::uint64_t q = 0;
  int e = 0, m = 0, r = 0;
  int span_rank = 0;
  bool is_free = false;
  bool free_fast = false;
  bool free_splitting = false;
  SplittingType splitting_E;
  int freeness_margin = 0;
  int h0_fast = 0;
  int h1_fast = 0;
  bool relations_ok = false;
  bool very_free_guaranteed = false;  // margin >= 1
  bool r_free_guaranteed = false;     // margin >= r; sufficient, not exact
  std::optional<SplitRanks> split;    // absent when m = 0

  friend bool operator==(const CurveReport&, const CurveReport&) = default;
};

struct CertifyOptions {
  // When set, the fast and splitting freeness verdicts must agree.
  bool verify_both = true;
};

namespace detail {
[[noreturn]] inline void violated(const std::string& what) { throw Error(ErrorKind::InvariantViolation, what); }
}  // namespace detail

inline CurveReport certify(const RationalCurve& c, CertifyOptions opts = {}) {
  const auto& ctx = c.ctx();
  const int q = static_cast<int>(ctx.q);
  CurveReport rep;
  rep.q = ctx.q;
  rep.e = c.e();
  rep.m = c.m();
  rep.r = c.r();
  rep.span_rank = span_rank(c);
  rep.splitting_E = splitting_type_E(c);
  rep.freeness_margin = rep.splitting_E.min_degree();
  rep.free_splitting = is_free_splitting(rep.splitting_E);
  const FastTest ft = fast_test(c);
  rep.free_fast = ft.free;
  rep.h0_fast = ft.h0;
  rep.h1_fast = ft.h1;
  rep.is_free = opts.verify_both ? rep.free_splitting : rep.free_fast;
  rep.relations_ok = relations_check(c);
  rep.very_free_guaranteed = rep.freeness_margin >= 1;
  rep.r_free_guaranteed = rep.freeness_margin >= rep.r;
  if (rep.m >= 1) rep.split = phi_split_ranks(c);

  if (opts.verify_both && rep.free_fast != rep.free_splitting)
    detail::violated("fast and splitting freeness tests disagree");
  if (!rep.relations_ok) detail::violated("zeta/eta relations fail on a curve lying on X");
  if (rep.h0_fast - rep.h1_fast != rep.m - rep.r) detail::violated("Euler characteristic is not m - r");
  for (int ci : rep.splitting_E.degrees())
    if (((ci - rep.e) % q + q) % q != 0)
      detail::violated("splitting degree " + std::to_string(ci) + " is not congruent to e mod q (Frobenius pullback)");
  if (rep.split) {
    if (rep.split->rank_phi1 + rep.split->rank_phi2 < rep.span_rank)
      detail::violated("rank Phi exceeds rank Phi1 + rank Phi2");
    if (rep.split->rank_phi1 > (rep.r + 1) * (rep.m + 1)) detail::violated("rank Phi1 exceeds (r+1)(m+1)");
    if (rep.split->independent_eta_columns > rep.h0_fast)
      detail::violated("eta operators are not inside the kernel of the fast-test system");
  }

  if (rep.is_free) {
    if (rep.e < q) detail::violated("free curve with e < q");
    if (rep.r > rep.m) detail::violated("free curve with r > m");
    if (rep.span_rank < q + 1) detail::violated("free curve spanning less than a hyperplane");
    if (rep.span_rank == q + 1) {
      if (rep.r != 0) detail::violated("free curve in a hyperplane with r != 0");
      if (!hyperplane_case_check(ctx, rep.e, rep.span_rank, rep.splitting_E))
        detail::violated("hyperplane-case splitting is not O(e) + O^q");
    }
    if (rep.split && rep.split->independent_eta_columns > rep.m - rep.r)
      detail::violated("more than m - r independent eta operators on a free curve");
    if (!bounds::admissible(q, rep.m, rep.r)) detail::violated("free curve violates the degree bound q+1 <= m^2+m+r");
  }
  return rep;
}

}  // namespace fermatfree
