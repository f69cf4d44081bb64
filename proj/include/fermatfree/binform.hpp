#pragma once
// Homogeneous binary forms in S0, S1 over a finite field.
//
// A form of degree d stores d+1 coefficients; coeff(a) multiplies
// S0^a * S1^(d-a). Every matrix built from forms uses this ascending
// S0-exponent basis.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gf.hpp"
#include "linalg.hpp"

namespace fermatfree {

class BinForm {
 public:
  BinForm() = default;

  /// The zero form of the given degree.
  BinForm(Field field, int degree) : field_(std::move(field)), degree_(degree) {
    if (degree < 0) throw Error(ErrorKind::DegreeMismatch, "form degree must be >= 0");
    coeffs_.assign(static_cast<std::size_t>(degree) + 1, 0);
  }

  BinForm(Field field, std::vector<Code> coeffs) : field_(std::move(field)), coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw Error(ErrorKind::DegreeMismatch, "a form needs at least one coefficient");
    for (auto c : coeffs_)
      if (!field_.is_valid(c)) throw Error(ErrorKind::SpecMismatch, "coefficient is not an element of the field");
    degree_ = static_cast<int>(coeffs_.size()) - 1;
  }

  static BinForm monomial(const Field& f, int degree, int s0_exponent, Code c = 1) {
    BinForm out(f, degree);
    out.coeffs_.at(static_cast<std::size_t>(s0_exponent)) = c;
    return out;
  }
  static BinForm constant(const Field& f, Code c) { return BinForm(f, std::vector<Code>{c}); }
  static BinForm s0(const Field& f) { return monomial(f, 1, 1); }
  static BinForm s1(const Field& f) { return monomial(f, 1, 0); }

  const Field& field() const { return field_; }
  int degree() const { return degree_; }
  std::span<const Code> coeffs() const { return coeffs_; }
  Code coeff(int a) const { return coeffs_[static_cast<std::size_t>(a)]; }
  gf::FieldElem coeff_elem(int a) const { return {field_, coeff(a)}; }
  void set(int a, Code c) { coeffs_.at(static_cast<std::size_t>(a)) = c; }

  bool is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](Code c) { return c == 0; });
  }

  friend bool operator==(const BinForm& a, const BinForm& b) {
    return a.degree_ == b.degree_ && a.coeffs_ == b.coeffs_ && a.field_ == b.field_;
  }

 private:
  Field field_;
  int degree_ = 0;
  std::vector<Code> coeffs_;
};

namespace detail {

inline void require_same_field(const BinForm& f, const BinForm& g) {
  if (!(f.field() == g.field())) throw Error(ErrorKind::SpecMismatch, "forms live in different fields");
}

// q = p^nu with nu >= 1, else NotCharPower.
inline unsigned char_power_exponent(const Field& f, std::uint64_t q) {
  const std::uint64_t p = f.characteristic();
  unsigned nu = 0;
  std::uint64_t x = q;
  while (x > 1 && x % p == 0) {
    x /= p;
    ++nu;
  }
  if (x != 1 || nu == 0)
    throw Error(ErrorKind::NotCharPower, std::to_string(q) + " is not a power of " + std::to_string(p));
  return nu;
}

// Univariate dense polynomials over a Field, constant first, trimmed.
using UPoly = std::vector<Code>;

inline void utrim(UPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline UPoly urem(const Field& f, UPoly a, const UPoly& b) {
  utrim(a);
  const std::size_t db = b.size() - 1;
  const Code lead_inv = f.inv(b.back());
  while (a.size() > db) {
    const Code c = f.mul(a.back(), lead_inv);
    const std::size_t shift = a.size() - 1 - db;
    for (std::size_t j = 0; j <= db; ++j) a[shift + j] = f.sub(a[shift + j], f.mul(c, b[j]));
    utrim(a);
  }
  return a;
}

inline UPoly ugcd_monic(const Field& f, UPoly a, UPoly b) {
  utrim(a);
  utrim(b);
  while (!b.empty()) {
    a = urem(f, std::move(a), b);
    std::swap(a, b);
  }
  const Code lead_inv = f.inv(a.back());
  for (auto& c : a) c = f.mul(c, lead_inv);
  return a;
}

inline int top_index(const BinForm& f) {
  for (int a = f.degree(); a >= 0; --a)
    if (f.coeff(a) != 0) return a;
  return -1;
}

}  // namespace detail

inline BinForm operator+(const BinForm& f, const BinForm& g) {
  detail::require_same_field(f, g);
  if (f.degree() != g.degree()) throw Error(ErrorKind::DegreeMismatch, "sum of forms of different degrees");
  BinForm out(f.field(), f.degree());
  for (int a = 0; a <= f.degree(); ++a) out.set(a, f.field().add(f.coeff(a), g.coeff(a)));
  return out;
}

inline BinForm operator-(const BinForm& f) {
  BinForm out(f.field(), f.degree());
  for (int a = 0; a <= f.degree(); ++a) out.set(a, f.field().neg(f.coeff(a)));
  return out;
}

inline BinForm operator-(const BinForm& f, const BinForm& g) { return f + (-g); }

inline BinForm operator*(const BinForm& f, const BinForm& g) {
  detail::require_same_field(f, g);
  const Field& F = f.field();
  BinForm out(F, f.degree() + g.degree());
  std::vector<Code> acc(static_cast<std::size_t>(out.degree()) + 1, 0);
  for (int a = 0; a <= f.degree(); ++a) {
    const Code x = f.coeff(a);
    if (x == 0) continue;
    for (int b = 0; b <= g.degree(); ++b)
      if (g.coeff(b) != 0) acc[a + b] = F.add(acc[a + b], F.mul(x, g.coeff(b)));
  }
  for (int a = 0; a <= out.degree(); ++a) out.set(a, acc[a]);
  return out;
}

inline BinForm scalar_mul(Code c, const BinForm& f) {
  BinForm out(f.field(), f.degree());
  for (int a = 0; a <= f.degree(); ++a) out.set(a, f.field().mul(c, f.coeff(a)));
  return out;
}

inline BinForm scalar_mul(const gf::FieldElem& c, const BinForm& f) {
  if (!(c.field() == f.field())) throw Error(ErrorKind::SpecMismatch, "scalar from a different field");
  return scalar_mul(c.code(), f);
}

inline BinForm pow(BinForm base, unsigned n) {
  BinForm result = BinForm::constant(base.field(), base.field().one());
  while (n > 0) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n) base = base * base;
  }
  return result;
}

/// f^q for q a power of the characteristic: coefficients are raised to the
/// q-th power and spread to exponents a*q.
inline BinForm frobenius_power(const BinForm& f, std::uint64_t q) {
  const Field& F = f.field();
  const unsigned nu = detail::char_power_exponent(F, q);
  BinForm out(F, f.degree() * static_cast<int>(q));
  for (int a = 0; a <= f.degree(); ++a)
    if (f.coeff(a) != 0) out.set(a * static_cast<int>(q), F.frobenius(f.coeff(a), nu));
  return out;
}

/// Applies a coefficient map into a (possibly different) field.
inline BinForm map_coeffs(const BinForm& f, const Field& target, const std::function<Code(Code)>& fn) {
  BinForm out(target, f.degree());
  for (int a = 0; a <= f.degree(); ++a) out.set(a, fn(f.coeff(a)));
  return out;
}

/// Monic homogeneous gcd: the highest-index nonzero coefficient is 1.
inline BinForm gcd(const BinForm& f, const BinForm& g) {
  detail::require_same_field(f, g);
  const Field& F = f.field();
  const int tf = detail::top_index(f), tg = detail::top_index(g);
  if (tf < 0 && tg < 0) throw Error(ErrorKind::BothZero, "gcd of two zero forms");

  // f = S1^(deg f - top f) * (dehomogenized part); a zero form contributes
  // no constraint on either factor.
  detail::UPoly pf(f.coeffs().begin(), f.coeffs().begin() + (tf + 1));
  detail::UPoly pg(g.coeffs().begin(), g.coeffs().begin() + (tg + 1));
  detail::UPoly common;
  int s1_power;
  if (tf < 0) {
    common = detail::ugcd_monic(F, pg, {});
    s1_power = g.degree() - tg;
  } else if (tg < 0) {
    common = detail::ugcd_monic(F, pf, {});
    s1_power = f.degree() - tf;
  } else {
    common = detail::ugcd_monic(F, pf, pg);
    s1_power = std::min(f.degree() - tf, g.degree() - tg);
  }
  const int d = static_cast<int>(common.size()) - 1;
  BinForm out(F, d + s1_power);
  for (int a = 0; a <= d; ++a) out.set(a, common[a]);
  return out;
}

/// f / g when g divides f exactly; NotDivisible otherwise.
inline BinForm divide_exact(const BinForm& f, const BinForm& g) {
  detail::require_same_field(f, g);
  const Field& F = f.field();
  if (g.is_zero()) throw Error(ErrorKind::DivisionByZero, "division by the zero form");
  const int dh = f.degree() - g.degree();
  if (dh < 0) throw Error(ErrorKind::NotDivisible, "divisor has larger degree");
  int low = 0;
  while (g.coeff(low) == 0) ++low;
  const Code low_inv = F.inv(g.coeff(low));
  BinForm h(F, dh);
  for (int a = 0; a <= dh; ++a) {
    if (a + low > f.degree()) break;
    Code acc = f.coeff(a + low);
    for (int b = low + 1; b <= g.degree(); ++b) {
      const int idx = a + low - b;
      if (idx < 0) break;
      acc = F.sub(acc, F.mul(g.coeff(b), h.coeff(idx)));
    }
    h.set(a, F.mul(acc, low_inv));
  }
  if (!(g * h == f)) throw Error(ErrorKind::NotDivisible, "form does not divide exactly");
  return h;
}

/// f(g0, g1): substitutes S0 -> g0, S1 -> g1.
inline BinForm substitute(const BinForm& f, const BinForm& g0, const BinForm& g1) {
  detail::require_same_field(f, g0);
  detail::require_same_field(g0, g1);
  if (g0.degree() != g1.degree()) throw Error(ErrorKind::DegreeMismatch, "substituted forms must share a degree");
  const Field& F = f.field();
  const int d = f.degree();
  std::vector<BinForm> p0{BinForm::constant(F, F.one())}, p1{BinForm::constant(F, F.one())};
  for (int i = 1; i <= d; ++i) {
    p0.push_back(p0.back() * g0);
    p1.push_back(p1.back() * g1);
  }
  BinForm out(F, d * g0.degree());
  for (int a = 0; a <= d; ++a)
    if (f.coeff(a) != 0) out = out + scalar_mul(f.coeff(a), p0[a] * p1[d - a]);
  return out;
}

/// Matrix of multiplication by f from forms of degree a to forms of degree
/// a + deg f: (deg f + a + 1) x (a + 1), entry (i, j) = coeff_{i-j}(f).
inline Matrix mult_matrix(const BinForm& f, int a) {
  if (a < 0) throw Error(ErrorKind::DegreeMismatch, "source degree must be >= 0");
  Matrix m(f.field(), static_cast<std::size_t>(f.degree() + a + 1), static_cast<std::size_t>(a + 1));
  for (int j = 0; j <= a; ++j)
    for (int b = 0; b <= f.degree(); ++b) m(static_cast<std::size_t>(j + b), static_cast<std::size_t>(j)) = f.coeff(b);
  return m;
}

/// f = sum_j zeta_j^q S0^j S1^(r-j) + sum_k eta_k^q S0^(r+k) S1^(q-k)
/// with deg zeta_j = m, deg eta_k = m - 1, e = mq + r. For m = 0 there are
/// no degree -1 forms, so the eta list is empty.
struct FrobeniusDecomposition {
  std::uint64_t q = 0;
  int m = 0;
  int r = 0;
  std::vector<BinForm> zetas;  // r + 1 forms of degree m
  std::vector<BinForm> etas;   // q - r - 1 forms of degree m - 1 (empty if m = 0)
};

inline FrobeniusDecomposition frobenius_decompose(const BinForm& f, std::uint64_t q) {
  const Field& F = f.field();
  const unsigned nu = detail::char_power_exponent(F, q);
  const int qi = static_cast<int>(q);
  FrobeniusDecomposition out;
  out.q = q;
  out.m = f.degree() / qi;
  out.r = f.degree() % qi;
  for (int j = 0; j <= out.r; ++j) {
    BinForm z(F, out.m);
    for (int c = 0; c <= out.m; ++c) z.set(c, F.inverse_frobenius(f.coeff(c * qi + j), nu));
    out.zetas.push_back(std::move(z));
  }
  if (out.m >= 1) {
    for (int k = 1; k <= qi - out.r - 1; ++k) {
      BinForm h(F, out.m - 1);
      for (int c = 0; c <= out.m - 1; ++c) h.set(c, F.inverse_frobenius(f.coeff(c * qi + out.r + k), nu));
      out.etas.push_back(std::move(h));
    }
  }
  return out;
}

inline BinForm recompose(const FrobeniusDecomposition& d) {
  const Field& F = d.zetas.at(0).field();
  const int qi = static_cast<int>(d.q);
  const int e = d.m * qi + d.r;
  BinForm out(F, e);
  for (int j = 0; j <= d.r; ++j) {
    const BinForm shifted = frobenius_power(d.zetas[j], d.q) * BinForm::monomial(F, d.r, j);
    out = out + shifted;
  }
  for (int k = 1; k <= static_cast<int>(d.etas.size()); ++k) {
    const BinForm shifted = frobenius_power(d.etas[k - 1], d.q) * BinForm::monomial(F, qi + d.r, d.r + k);
    out = out + shifted;
  }
  return out;
}

}  // namespace fermatfree
