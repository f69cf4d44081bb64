#pragma once
// Global sections of twists of phi^*E_X, its splitting type, and the two
// freeness tests.
//
// E_X is the kernel of (psi_i) -> sum T_i^q psi_i on O_X(1)^{q+2}, so
//   H0(phi^*E_X(t)) = ker( H0(O(e+t))^{q+2} -> H0(O((q+1)e+t)) )
// with column blocks "multiply by phi_i^q". Global sections are left exact,
// so the kernel dimension is exact.

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "binform.hpp"
#include "fermat.hpp"
#include "linalg.hpp"

namespace fermatfree {

/// Bundle O(c_1) + ... + O(c_rho) on P^1, degrees kept in descending order.
class SplittingType {
 public:
  SplittingType() = default;
  explicit SplittingType(std::vector<int> degrees) : degrees_(std::move(degrees)) {
    std::sort(degrees_.begin(), degrees_.end(), std::greater<>());
  }

  const std::vector<int>& degrees() const { return degrees_; }
  int rank() const { return static_cast<int>(degrees_.size()); }
  int total_degree() const { return std::accumulate(degrees_.begin(), degrees_.end(), 0); }
  int min_degree() const { return degrees_.empty() ? 0 : degrees_.back(); }

  /// h0 of the bundle twisted by O(t).
  int h0(int t) const {
    int total = 0;
    for (int c : degrees_) total += std::max(0, c + t + 1);
    return total;
  }

  std::string to_string() const {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < degrees_.size(); ++i) os << (i ? "," : "") << degrees_[i];
    os << ']';
    return os.str();
  }

  friend bool operator==(const SplittingType&, const SplittingType&) = default;

 private:
  std::vector<int> degrees_;
};

/// Precomputes the phi_i^q once so a whole h0 profile can be evaluated.
class EmbeddedTangentSystem {
 public:
  explicit EmbeddedTangentSystem(const RationalCurve& c) : e_(c.e()), q_(static_cast<int>(c.ctx().q)) {
    for (const auto& phi : c.phis()) qpowers_.push_back(frobenius_power(phi, c.ctx().q));
    field_ = c.field();
  }

  int h0(int t) const {
    const int s = e_ + t;
    if (s < 0) return 0;
    const std::size_t rows = static_cast<std::size_t>(q_ * e_ + s + 1);
    const std::size_t block = static_cast<std::size_t>(s + 1);
    Matrix m(field_, rows, block * qpowers_.size());
    for (std::size_t i = 0; i < qpowers_.size(); ++i) {
      const BinForm& f = qpowers_[i];
      for (std::size_t j = 0; j < block; ++j)
        for (int b = 0; b <= f.degree(); ++b)
          if (f.coeff(b) != 0) m(j + static_cast<std::size_t>(b), i * block + j) = f.coeff(b);
    }
    return static_cast<int>(m.cols() - rank(std::move(m)));
  }

 private:
  int e_, q_;
  Field field_;
  std::vector<BinForm> qpowers_;
};

inline int h0_E_twist(const RationalCurve& c, int t) { return EmbeddedTangentSystem(c).h0(t); }

struct CohomologyProfile {
  int t_first = 0;
  std::vector<int> h0_values;  // h0_values[i] = h0(phi^*E_X(t_first + i))

  int at(int t) const { return h0_values.at(static_cast<std::size_t>(t - t_first)); }
  int t_last() const { return t_first + static_cast<int>(h0_values.size()) - 1; }
};

inline CohomologyProfile cohomology_profile(const RationalCurve& c, int t_from, int t_to) {
  const EmbeddedTangentSystem sys(c);
  CohomologyProfile prof{t_from, {}};
  for (int t = t_from; t <= t_to; ++t) prof.h0_values.push_back(sys.h0(t));
  return prof;
}

/// Recovers phi^*E_X = sum O(c_i) from first differences
///   D(t) = h0(t) - h0(t-1) = #{i : c_i >= -t},
/// scanning t upward from -e (every c_i <= e) until D(t) = q+1.
inline SplittingType splitting_type_E(const RationalCurve& c) {
  const EmbeddedTangentSystem sys(c);
  const int e = c.e(), full = c.ctx().num_coords - 1;
  const int t_limit = static_cast<int>(c.ctx().q) * e + 1;  // every c_i >= e - q e
  std::vector<int> degrees;
  int prev_h0 = sys.h0(-e - 1);
  if (prev_h0 != 0) throw Error(ErrorKind::InternalInconsistency, "h0(phi^*E_X(-e-1)) must vanish");
  int prev_delta = 0;
  for (int t = -e; t <= t_limit; ++t) {
    const int h = sys.h0(t);
    const int delta = h - prev_h0;
    if (delta < prev_delta || delta > full)
      throw Error(ErrorKind::InternalInconsistency, "h0 differences are not monotone at t = " + std::to_string(t));
    for (int n = prev_delta; n < delta; ++n) degrees.push_back(-t);
    prev_h0 = h;
    prev_delta = delta;
    if (delta == full) break;
  }
  SplittingType st(std::move(degrees));
  if (st.rank() != full || st.total_degree() != e)
    throw Error(ErrorKind::InternalInconsistency, "splitting " + st.to_string() + " has wrong rank or degree");
  return st;
}

/// Free iff every c_i >= 0, i.e. H1(phi^*E_X(-1)) = 0.
inline bool is_free_splitting(const SplittingType& st) { return st.min_degree() >= 0; }
inline bool is_free_splitting(const RationalCurve& c) { return is_free_splitting(splitting_type_E(c)); }

/// min c_i; margin >= s guarantees s-freeness (sufficient only).
inline int margin(const RationalCurve& c) { return splitting_type_E(c).min_degree(); }

/// The system (psi_i) -> sum phi_i psi_i from H0(O(m-1))^{q+2} to
/// H0(O(e+m-1)); its kernel is H0(phi^*Omega(e+m-1)).
struct FastTest {
  int h0 = 0;
  int h1 = 0;
  int rank = 0;
  int target_dim = 0;  // e + m
  bool free = false;
};

inline Matrix fast_test_matrix(const RationalCurve& c) {
  const int m = c.m();
  if (m < 1) throw Error(ErrorKind::DegreeTooSmall, "m = 0 gives an empty domain");
  const std::size_t block = static_cast<std::size_t>(m);
  Matrix out(c.field(), static_cast<std::size_t>(c.e() + m), block * c.phis().size());
  for (std::size_t i = 0; i < c.phis().size(); ++i) {
    const Matrix mi = mult_matrix(c.phi(i), m - 1);
    for (std::size_t row = 0; row < mi.rows(); ++row)
      for (std::size_t col = 0; col < mi.cols(); ++col) out(row, i * block + col) = mi(row, col);
  }
  return out;
}

/// h1 comes from h0 and the Euler characteristic m - r.
inline FastTest fast_test(const RationalCurve& c) {
  FastTest ft;
  ft.target_dim = c.e() + c.m();
  if (c.m() < 1) {
    // e < q: nothing to surject with
    ft.h0 = 0;
    ft.h1 = ft.h0 - (c.m() - c.r());
    return ft;
  }
  const Matrix mat = fast_test_matrix(c);
  ft.rank = static_cast<int>(rank(mat));
  ft.h0 = static_cast<int>(mat.cols()) - ft.rank;
  ft.h1 = ft.h0 - (c.m() - c.r());
  ft.free = ft.h1 == 0;
  return ft;
}

inline bool is_free_fast(const RationalCurve& c) { return fast_test(c).free; }
inline int h1_fast(const RationalCurve& c) { return fast_test(c).h1; }

/// A free curve spanning only a hyperplane has r = 0 and
/// phi^*E_X = O(e) + O^q, i.e. (c_i - e)/q is {0, -m x q}.
inline bool hyperplane_case_check(const FermatContext& ctx, int e, int span, const SplittingType& st) {
  if (!is_free_splitting(st)) throw Error(ErrorKind::NotFree, "curve is not free");
  if (span != ctx.num_coords - 1)
    throw Error(ErrorKind::NotHyperplaneCase, "curve spans " + std::to_string(span) + " coordinates");
  const int q = static_cast<int>(ctx.q);
  if (e % q != 0) return false;
  std::vector<int> expected(static_cast<std::size_t>(q), 0);
  expected.push_back(e);
  return st == SplittingType(expected);
}

inline bool hyperplane_case_check(const RationalCurve& c) {
  return hyperplane_case_check(c.ctx(), c.e(), span_rank(c), splitting_type_E(c));
}

}  // namespace fermatfree
