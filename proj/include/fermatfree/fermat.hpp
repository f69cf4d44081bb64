#pragma once
// Rational curves P^1 -> X on the Fermat hypersurface
//   X = V(T_0^{q+1} + ... + T_{q+1}^{q+1}) in P^{q+1},  q = p^nu.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "binform.hpp"
#include "gf.hpp"
#include "linalg.hpp"

namespace fermatfree {

struct FermatContext {
  std::uint64_t p = 0;
  unsigned nu = 0;
  std::uint64_t q = 0;
  int ambient_dim = 0;          // q + 1
  int hypersurface_degree = 0;  // q + 1
  int num_coords = 0;           // q + 2

  static FermatContext make(std::uint64_t p, unsigned nu) {
    if (!gf::detail::is_prime(p)) throw Error(ErrorKind::NonPrime, std::to_string(p) + " is not prime");
    if (nu < 1) throw Error(ErrorKind::NotPrimePower, "nu must be >= 1");
    FermatContext ctx;
    ctx.p = p;
    ctx.nu = nu;
    ctx.q = 1;
    for (unsigned i = 0; i < nu; ++i) ctx.q *= p;
    ctx.ambient_dim = static_cast<int>(ctx.q) + 1;
    ctx.hypersurface_degree = static_cast<int>(ctx.q) + 1;
    ctx.num_coords = static_cast<int>(ctx.q) + 2;
    return ctx;
  }

  static FermatContext from_q(std::uint64_t q) {
    if (q < 2) throw Error(ErrorKind::NotPrimePower, std::to_string(q) + " is not a prime power >= 2");
    std::uint64_t p = 2;
    while (q % p != 0) ++p;
    unsigned nu = 0;
    std::uint64_t x = q;
    while (x % p == 0) {
      x /= p;
      ++nu;
    }
    if (x != 1) throw Error(ErrorKind::NotPrimePower, std::to_string(q) + " is not a prime power");
    return make(p, nu);
  }

  friend bool operator==(const FermatContext&, const FermatContext&) = default;
};

/// Sum of (q+1)-th powers of the coordinate forms, computed as phi^q * phi.
inline BinForm fermat_sum(const FermatContext& ctx, std::span<const BinForm> phis) {
  const Field& F = phis.front().field();
  BinForm acc(F, phis.front().degree() * static_cast<int>(ctx.q + 1));
  for (const auto& phi : phis) acc = acc + frobenius_power(phi, ctx.q) * phi;
  return acc;
}

/// (#coords) x (e+1) matrix of the coordinate forms' coefficients.
inline Matrix coefficient_matrix(std::span<const BinForm> phis) {
  const int e = phis.front().degree();
  Matrix m(phis.front().field(), phis.size(), static_cast<std::size_t>(e + 1));
  for (std::size_t i = 0; i < phis.size(); ++i)
    for (int a = 0; a <= e; ++a) m(i, static_cast<std::size_t>(a)) = phis[i].coeff(a);
  return m;
}

/// gcd of all coordinate forms.
inline BinForm common_divisor(std::span<const BinForm> phis) {
  std::size_t first = 0;
  while (first < phis.size() && phis[first].is_zero()) ++first;
  if (first == phis.size()) throw Error(ErrorKind::BothZero, "all coordinate forms vanish");
  BinForm g = gcd(phis[first], phis[first]);
  for (std::size_t i = first + 1; i < phis.size() && g.degree() > 0; ++i)
    if (!phis[i].is_zero()) g = gcd(g, phis[i]);
  return g;
}

class RationalCurve;
RationalCurve curve_make(const FermatContext& ctx, const Field& field, std::vector<BinForm> phis);
std::optional<RationalCurve> try_curve_make(const FermatContext& ctx, const Field& field, std::vector<BinForm> phis);

/// A validated morphism P^1 -> X of degree e = mq + r, 0 <= r < q.
/// Only curve_make constructs one.
class RationalCurve {
 public:
  const FermatContext& ctx() const { return ctx_; }
  const Field& field() const { return field_; }
  int e() const { return e_; }
  int m() const { return m_; }
  int r() const { return r_; }
  std::span<const BinForm> phis() const { return phis_; }
  const BinForm& phi(std::size_t i) const { return phis_.at(i); }

  friend bool operator==(const RationalCurve& a, const RationalCurve& b) {
    return a.ctx_ == b.ctx_ && a.phis_ == b.phis_;
  }

 private:
  friend RationalCurve curve_make(const FermatContext&, const Field&, std::vector<BinForm>);
  RationalCurve() = default;

  FermatContext ctx_;
  Field field_;
  int e_ = 0, m_ = 0, r_ = 0;
  std::vector<BinForm> phis_;
};

namespace detail {

// First validation failure of a tuple, without building messages.
inline std::optional<ErrorKind> curve_defect(const FermatContext& ctx, const Field& field,
                                             std::span<const BinForm> phis) {
  if (static_cast<int>(phis.size()) != ctx.num_coords) return ErrorKind::WrongArity;
  if (field.characteristic() != ctx.p) return ErrorKind::SpecMismatch;
  const int e = phis.front().degree();
  for (const auto& phi : phis) {
    if (!(phi.field() == field)) return ErrorKind::SpecMismatch;
    if (phi.degree() != e) return ErrorKind::DegreeMismatch;
  }
  if (!fermat_sum(ctx, phis).is_zero()) return ErrorKind::NotOnX;
  if (e < 1 || rank(coefficient_matrix(phis)) < 2) return ErrorKind::Constant;
  if (common_divisor(phis).degree() > 0) return ErrorKind::NotPrimitive;
  return std::nullopt;
}

inline std::string defect_message(ErrorKind kind, const FermatContext& ctx, const Field& field,
                                  std::span<const BinForm> phis) {
  switch (kind) {
    case ErrorKind::WrongArity:
      return "expected " + std::to_string(ctx.num_coords) + " coordinate forms, got " + std::to_string(phis.size());
    case ErrorKind::SpecMismatch: return "coordinate forms must live over one field of characteristic " + std::to_string(ctx.p);
    case ErrorKind::DegreeMismatch: return "coordinate forms must share one degree";
    case ErrorKind::NotOnX: {
      const BinForm sum = fermat_sum(ctx, phis);
      int a = 0;
      while (sum.coeff(a) == 0) ++a;
      return "sum of (q+1)-th powers has coefficient " + field.format(sum.coeff(a)) + " at S0^" + std::to_string(a) +
             " S1^" + std::to_string(sum.degree() - a);
    }
    case ErrorKind::Constant: return "the tuple defines a constant map";
    case ErrorKind::NotPrimitive: {
      const BinForm g = common_divisor(phis);
      std::string out = "coordinate forms share a factor of degree " + std::to_string(g.degree()) + ": [";
      for (int a = 0; a <= g.degree(); ++a) out += (a ? "," : "") + field.format(g.coeff(a));
      return out + "]";
    }
    default: return "invalid curve";
  }
}

}  // namespace detail

/// Validates a coordinate tuple. Non-primitive tuples are rejected, never
/// silently normalized (see normalize()).
inline RationalCurve curve_make(const FermatContext& ctx, const Field& field, std::vector<BinForm> phis) {
  if (phis.empty()) throw Error(ErrorKind::WrongArity, "no coordinate forms");
  if (auto kind = detail::curve_defect(ctx, field, phis))
    throw Error(*kind, detail::defect_message(*kind, ctx, field, phis));
  RationalCurve c;
  c.ctx_ = ctx;
  c.field_ = field;
  c.e_ = phis.front().degree();
  c.m_ = c.e_ / static_cast<int>(ctx.q);
  c.r_ = c.e_ % static_cast<int>(ctx.q);
  c.phis_ = std::move(phis);
  return c;
}

/// curve_make without exceptions; for hot loops.
inline std::optional<RationalCurve> try_curve_make(const FermatContext& ctx, const Field& field,
                                                   std::vector<BinForm> phis) {
  if (phis.empty() || detail::curve_defect(ctx, field, phis)) return std::nullopt;
  return curve_make(ctx, field, std::move(phis));
}

/// Divides out the common factor, then validates.
inline RationalCurve normalize(const FermatContext& ctx, const Field& field, std::vector<BinForm> phis) {
  const BinForm g = common_divisor(phis);
  if (g.degree() > 0)
    for (auto& phi : phis) phi = divide_exact(phi, g);
  return curve_make(ctx, field, std::move(phis));
}

/// Rank of the coefficient matrix: 1 + dimension of the linear span.
inline int span_rank(const RationalCurve& c) { return static_cast<int>(rank(coefficient_matrix(c.phis()))); }

struct SplitRanks {
  int rank_phi1 = 0;                // zeta block, H0(O(m))^{r+1}
  int rank_phi2 = 0;                // eta block, H0(O(m-1))^{q-r-1}
  int independent_eta_columns = 0;  // dim span of the operators Phi_{2,k}

  friend bool operator==(const SplitRanks&, const SplitRanks&) = default;
};

/// The three matrices behind SplitRanks, built from the Frobenius
/// decompositions of the coordinate forms.
struct SplitMatrices {
  Matrix phi1;  // (q+2) x (r+1)(m+1)
  Matrix phi2;  // (q+2) x (q-r-1)m
  Matrix etas;  // (q-r-1) x (q+2)m, row k = Phi_{2,k} flattened
};

inline SplitMatrices split_matrices(const FermatContext& ctx, std::span<const BinForm> phis) {
  const Field& F = phis.front().field();
  const int e = phis.front().degree();
  const int q = static_cast<int>(ctx.q), m = e / q, r = e % q;
  if (m < 1) throw Error(ErrorKind::DegreeTooSmall, "m = 0: the eta block is empty");
  const std::size_t n = phis.size();
  const int blocks2 = q - r - 1;
  SplitMatrices out{Matrix(F, n, static_cast<std::size_t>((r + 1) * (m + 1))),
                    Matrix(F, n, static_cast<std::size_t>(blocks2 * m)),
                    Matrix(F, static_cast<std::size_t>(blocks2), n * static_cast<std::size_t>(m))};
  for (std::size_t i = 0; i < n; ++i) {
    const FrobeniusDecomposition d = frobenius_decompose(phis[i], ctx.q);
    for (int j = 0; j <= r; ++j)
      for (int c = 0; c <= m; ++c) out.phi1(i, static_cast<std::size_t>(j * (m + 1) + c)) = d.zetas[j].coeff(c);
    for (int k = 0; k < blocks2; ++k)
      for (int c = 0; c < m; ++c) {
        out.phi2(i, static_cast<std::size_t>(k * m + c)) = d.etas[k].coeff(c);
        out.etas(static_cast<std::size_t>(k), i * static_cast<std::size_t>(m) + static_cast<std::size_t>(c)) =
            d.etas[k].coeff(c);
      }
  }
  return out;
}

inline SplitRanks phi_split_ranks(const RationalCurve& c) {
  const SplitMatrices s = split_matrices(c.ctx(), c.phis());
  return {static_cast<int>(rank(s.phi1)), static_cast<int>(rank(s.phi2)), static_cast<int>(rank(s.etas))};
}

/// sum_i phi_i zeta_ij = 0 for every j and sum_i phi_i eta_ik = 0 for
/// every k. Takes raw forms so that unvalidated tuples can be probed.
inline bool relations_check(const FermatContext& ctx, std::span<const BinForm> phis) {
  const Field& F = phis.front().field();
  const int e = phis.front().degree();
  std::vector<FrobeniusDecomposition> ds;
  ds.reserve(phis.size());
  for (const auto& phi : phis) ds.push_back(frobenius_decompose(phi, ctx.q));
  const int m = ds.front().m;
  for (std::size_t j = 0; j < ds.front().zetas.size(); ++j) {
    BinForm acc(F, e + m);
    for (std::size_t i = 0; i < phis.size(); ++i) acc = acc + phis[i] * ds[i].zetas[j];
    if (!acc.is_zero()) return false;
  }
  for (std::size_t k = 0; k < ds.front().etas.size(); ++k) {
    BinForm acc(F, e + m - 1);
    for (std::size_t i = 0; i < phis.size(); ++i) acc = acc + phis[i] * ds[i].etas[k];
    if (!acc.is_zero()) return false;
  }
  return true;
}

inline bool relations_check(const RationalCurve& c) { return relations_check(c.ctx(), c.phis()); }

/// Coordinates (g_0, w_0 g_0, g_1, w_1 g_1, ..., 0, ...) with w_j^{q+1} = -1,
/// so each pair cancels in the Fermat sum.
inline RationalCurve make_paired_curve(const FermatContext& ctx, const Field& field, std::span<const BinForm> bases,
                                       std::span<const Code> omegas) {
  if (bases.size() != omegas.size() || static_cast<int>(2 * bases.size()) > ctx.num_coords)
    throw Error(ErrorKind::WrongArity, "need one w per base form and at most (q+2)/2 pairs");
  const Code minus_one = field.neg(field.one());
  std::vector<BinForm> phis;
  for (std::size_t j = 0; j < bases.size(); ++j) {
    if (field.pow(omegas[j], ctx.q + 1) != minus_one) throw Error(ErrorKind::NotOnX, "w^(q+1) != -1");
    phis.push_back(bases[j]);
    phis.push_back(scalar_mul(omegas[j], bases[j]));
  }
  while (static_cast<int>(phis.size()) < ctx.num_coords) phis.emplace_back(field, bases.front().degree());
  return curve_make(ctx, field, std::move(phis));
}

/// (S0, w S0, S1, w S1, 0, ..., 0); in characteristic 2, w = 1 and any field works.
inline RationalCurve make_line(const FermatContext& ctx, const Field& field) {
  const Code w = ctx.p == 2 ? field.one() : gf::solve_norm_like(field, ctx.q).code();
  const std::vector<BinForm> bases{BinForm::s0(field), BinForm::s1(field)};
  const std::vector<Code> omegas{w, w};
  return make_paired_curve(ctx, field, bases, omegas);
}

/// c composed with the map (g0 : g1): P^1 -> P^1 of degree d; degree d*e.
inline RationalCurve compose_cover(const RationalCurve& c, const BinForm& g0, const BinForm& g1) {
  if (g0.degree() != g1.degree()) throw Error(ErrorKind::DegreeMismatch, "cover components must share a degree");
  if (g0.is_zero() && g1.is_zero()) throw Error(ErrorKind::NotCoprime, "cover components both vanish");
  if (gcd(g0, g1).degree() > 0) throw Error(ErrorKind::NotCoprime, "cover components share a factor");
  std::vector<BinForm> phis;
  for (const auto& phi : c.phis()) phis.push_back(substitute(phi, g0, g1));
  return curve_make(c.ctx(), c.field(), std::move(phis));
}

/// Precomposition with the q-power Frobenius of P^1.
inline RationalCurve frobenius_twist(const RationalCurve& c) {
  const Field& F = c.field();
  const int q = static_cast<int>(c.ctx().q);
  return compose_cover(c, BinForm::monomial(F, q, q), BinForm::monomial(F, q, 0));
}

/// Pads a tuple on a Fermat hypersurface of the same degree in fewer
/// variables with trailing zero coordinates.
inline RationalCurve subfermat_embed(const FermatContext& ctx, const Field& field, std::vector<BinForm> coords) {
  if (coords.empty() || static_cast<int>(coords.size()) > ctx.num_coords)
    throw Error(ErrorKind::WrongArity, "source has more coordinates than the target");
  const int e = coords.front().degree();
  while (static_cast<int>(coords.size()) < ctx.num_coords) coords.emplace_back(field, e);
  return curve_make(ctx, field, std::move(coords));
}

/// The same curve with coefficients pushed into an extension field.
inline RationalCurve extend_field(const RationalCurve& c, const Field& target) {
  const gf::Embedding emb(c.field(), target);
  std::vector<BinForm> phis;
  for (const auto& phi : c.phis()) phis.push_back(map_coeffs(phi, target, [&](Code x) { return emb(x); }));
  return curve_make(c.ctx(), target, std::move(phis));
}

}  // namespace fermatfree
