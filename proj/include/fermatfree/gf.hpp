#pragma once
// Finite fields GF(p^k) in the power basis of a monic irreducible modulus.
//
// Elements are packed coefficient vectors: digit i (the coefficient of g^i,
// g the class of x) lives in bits [b*i, b*(i+1)) of a 64-bit word, where b is
// the bit width of p-1. The packing is canonical, so equality is word
// equality, and the numeric order of codes is the canonical element order
// (lexicographic on coefficient vectors, most significant digit compared
// first). Supported envelope: k * bitwidth(p-1) <= 64.

#include <array>
#include <bit>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"

namespace fermatfree::gf {

using Code = std::uint64_t;

namespace detail {

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d <= n / d; d += 2)
    if (n % d == 0) return false;
  return true;
}

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

inline std::uint64_t invmod(std::uint64_t a, std::uint64_t p) {
  // extended Euclid on signed 128-bit to dodge overflow for word-sized p
  __int128 t = 0, new_t = 1, r = p, new_r = a % p;
  while (new_r != 0) {
    __int128 quot = r / new_r;
    t -= quot * new_t;
    std::swap(t, new_t);
    r -= quot * new_r;
    std::swap(r, new_r);
  }
  if (t < 0) t += p;
  return static_cast<std::uint64_t>(t);
}

// Dense polynomials over GF(p), constant term first, trailing zeros trimmed.
using PrimePoly = std::vector<std::uint64_t>;

inline void trim(PrimePoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline PrimePoly poly_rem(PrimePoly a, const PrimePoly& f, std::uint64_t p) {
  trim(a);
  const std::size_t df = f.size() - 1;
  const std::uint64_t lead_inv = invmod(f.back(), p);
  while (a.size() > df) {
    const std::uint64_t c = mulmod(a.back(), lead_inv, p);
    const std::size_t shift = a.size() - 1 - df;
    for (std::size_t j = 0; j <= df; ++j)
      a[shift + j] = (a[shift + j] + p - mulmod(c, f[j], p)) % p;
    trim(a);
  }
  return a;
}

inline PrimePoly poly_mulmod(const PrimePoly& a, const PrimePoly& b, const PrimePoly& f,
                             std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  PrimePoly prod(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      prod[i + j] = (prod[i + j] + mulmod(a[i], b[j], p)) % p;
  return poly_rem(std::move(prod), f, p);
}

inline PrimePoly poly_gcd(PrimePoly a, PrimePoly b, std::uint64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    a = poly_rem(std::move(a), b, p);
    std::swap(a, b);
  }
  return a;
}

// f (monic, degree k) is irreducible iff gcd(x^{p^i} - x, f) = 1 for all
// i <= k/2, i.e. f has no factor of degree at most k/2.
inline bool is_irreducible(const PrimePoly& f, std::uint64_t p) {
  const std::size_t k = f.size() - 1;
  if (k <= 1) return k == 1;
  PrimePoly h = {0, 1};  // x
  for (std::size_t i = 1; i <= k / 2; ++i) {
    // h <- h^p mod f
    PrimePoly base = h, acc = {1};
    for (std::uint64_t e = p; e > 0; e >>= 1) {
      if (e & 1) acc = poly_mulmod(acc, base, f, p);
      base = poly_mulmod(base, base, f, p);
    }
    h = acc;
    PrimePoly diff = h;
    if (diff.size() < 2) diff.resize(2, 0);
    diff[1] = (diff[1] + p - 1) % p;
    const PrimePoly g = poly_gcd(diff, f, p);
    if (g.size() > 1) return false;
  }
  return true;
}

struct FieldData {
  std::uint64_t p = 0;
  unsigned k = 0;
  std::vector<std::uint64_t> modulus;  // k+1 entries, constant first, monic
  unsigned bits = 0;                   // bits per digit
  Code digit_mask = 0;
  Code full_mask = 0;
  Code reduction = 0;  // p == 2 only: packed sum of m_i x^i for i < k
  std::uint64_t order = 0;
};

}  // namespace detail

/// Immutable description of GF(p^k). Cheap to copy; copies share state.
class Field {
 public:
  Field() = default;

  /// Builds GF(p^k). Without a modulus, the first irreducible monic
  /// polynomial of degree k in canonical order is used.
  static Field make(std::uint64_t p, unsigned k,
                    std::optional<std::vector<std::uint64_t>> modulus = std::nullopt) {
    if (!detail::is_prime(p)) throw Error(ErrorKind::NonPrime, std::to_string(p) + " is not prime");
    if (k < 1) throw Error(ErrorKind::Unsupported, "extension degree must be >= 1");
    auto d = std::make_shared<detail::FieldData>();
    d->p = p;
    d->k = k;
    d->bits = static_cast<unsigned>(std::bit_width(p - 1));
    if (static_cast<std::uint64_t>(d->bits) * k > 64)
      throw Error(ErrorKind::Unsupported, "GF(" + std::to_string(p) + "^" + std::to_string(k) +
                                              ") exceeds the 64-bit packing envelope");
    d->digit_mask = (Code{1} << d->bits) - 1;
    d->full_mask = d->bits * k == 64 ? ~Code{0} : (Code{1} << (d->bits * k)) - 1;
    d->order = 1;
    for (unsigned i = 0; i < k; ++i) d->order *= p;

    if (modulus) {
      if (modulus->size() != k + 1)
        throw Error(ErrorKind::ReducibleModulus, "modulus must have exactly k+1 coefficients");
      if ((*modulus)[k] != 1) throw Error(ErrorKind::ReducibleModulus, "modulus must be monic");
      for (auto c : *modulus)
        if (c >= p) throw Error(ErrorKind::ReducibleModulus, "modulus coefficient out of range");
      if (!detail::is_irreducible(*modulus, p))
        throw Error(ErrorKind::ReducibleModulus, "modulus is reducible over GF(" + std::to_string(p) + ")");
      d->modulus = *modulus;
    } else {
      d->modulus = first_irreducible(p, k);
    }
    if (p == 2)
      for (unsigned i = 0; i < k; ++i)
        if (d->modulus[i]) d->reduction |= Code{1} << i;
    Field f;
    f.d_ = std::move(d);
    return f;
  }

  std::uint64_t characteristic() const { return d_->p; }
  unsigned degree() const { return d_->k; }
  std::uint64_t order() const { return d_->order; }
  const std::vector<std::uint64_t>& modulus() const { return d_->modulus; }
  bool valid() const noexcept { return d_ != nullptr; }

  Code zero() const noexcept { return 0; }
  Code one() const noexcept { return 1; }

  /// Image of an integer in the prime subfield.
  Code from_integer(std::int64_t v) const {
    const auto p = static_cast<std::int64_t>(d_->p);
    std::int64_t r = v % p;
    if (r < 0) r += p;
    return static_cast<Code>(r);
  }

  bool is_valid(Code a) const {
    if ((a & ~d_->full_mask) != 0) return false;
    for (unsigned i = 0; i < d_->k; ++i)
      if (digit(a, i) >= d_->p) return false;
    return true;
  }

  Code add(Code a, Code b) const {
    if (d_->p == 2) return a ^ b;
    if (d_->k == 1) {
      const Code s = a + b;
      return s >= d_->p || s < a ? s - d_->p : s;
    }
    Code r = 0;
    for (unsigned i = 0; i < d_->k; ++i) {
      std::uint64_t s = digit(a, i) + digit(b, i);
      if (s >= d_->p) s -= d_->p;
      r |= s << (d_->bits * i);
    }
    return r;
  }

  Code neg(Code a) const {
    if (d_->p == 2) return a;
    Code r = 0;
    for (unsigned i = 0; i < d_->k; ++i) {
      const std::uint64_t x = digit(a, i);
      r |= (x == 0 ? 0 : d_->p - x) << (d_->bits * i);
    }
    return r;
  }

  Code sub(Code a, Code b) const { return add(a, neg(b)); }

  Code mul(Code a, Code b) const {
    const auto& d = *d_;
    if (d.k == 1) return detail::mulmod(a, b, d.p);
    if (d.p == 2) {
      const Code top = Code{1} << (d.k - 1);
      Code r = 0;
      for (int i = static_cast<int>(d.k) - 1; i >= 0; --i) {
        const bool carry = (r & top) != 0;
        r = (r << 1) & d.full_mask;
        if (carry) r ^= d.reduction;
        if ((b >> i) & 1) r ^= a;
      }
      return r;
    }
    std::array<std::uint64_t, 64> prod{};
    std::array<std::uint64_t, 32> da{}, db{};
    for (unsigned i = 0; i < d.k; ++i) {
      da[i] = digit(a, i);
      db[i] = digit(b, i);
    }
    for (unsigned i = 0; i < d.k; ++i) {
      if (da[i] == 0) continue;
      for (unsigned j = 0; j < d.k; ++j)
        prod[i + j] = (prod[i + j] + detail::mulmod(da[i], db[j], d.p)) % d.p;
    }
    // x^k = -(m_0 + ... + m_{k-1} x^{k-1})
    for (unsigned i = 2 * d.k - 2; i >= d.k; --i) {
      const std::uint64_t c = prod[i];
      if (c == 0) continue;
      for (unsigned j = 0; j < d.k; ++j)
        prod[i - d.k + j] = (prod[i - d.k + j] + d.p - detail::mulmod(c, d.modulus[j], d.p)) % d.p;
    }
    Code r = 0;
    for (unsigned i = 0; i < d.k; ++i) r |= prod[i] << (d.bits * i);
    return r;
  }

  Code pow(Code a, std::uint64_t n) const {
    Code result = one();
    while (n > 0) {
      if (n & 1) result = mul(result, a);
      a = mul(a, a);
      n >>= 1;
    }
    return result;
  }

  Code inv(Code a) const {
    if (a == 0) throw Error(ErrorKind::DivisionByZero, "inverse of zero");
    if (d_->k == 1) return detail::invmod(a, d_->p);
    return pow(a, d_->order - 2);
  }

  Code div(Code a, Code b) const { return mul(a, inv(b)); }

  /// a^(p^s).
  Code frobenius(Code a, unsigned s = 1) const {
    s %= d_->k;
    for (unsigned i = 0; i < s; ++i) a = pow(a, d_->p);
    return a;
  }

  /// The unique b with b^(p^s) = a.
  Code inverse_frobenius(Code a, unsigned s = 1) const {
    return frobenius(a, (d_->k - s % d_->k) % d_->k);
  }

  std::uint64_t digit(Code a, unsigned i) const { return (a >> (d_->bits * i)) & d_->digit_mask; }

  std::vector<std::uint64_t> digits(Code a) const {
    std::vector<std::uint64_t> out(d_->k);
    for (unsigned i = 0; i < d_->k; ++i) out[i] = digit(a, i);
    return out;
  }

  Code from_digits(std::span<const std::uint64_t> ds) const {
    if (ds.size() != d_->k)
      throw Error(ErrorKind::SpecMismatch, "element needs exactly " + std::to_string(d_->k) + " coordinates");
    Code r = 0;
    for (unsigned i = 0; i < d_->k; ++i) {
      if (ds[i] >= d_->p) throw Error(ErrorKind::SpecMismatch, "coordinate out of range");
      r |= ds[i] << (d_->bits * i);
    }
    return r;
  }

  /// The element at position `index` in canonical order; index = sum c_i p^i.
  Code element(std::uint64_t index) const {
    if (d_->p == 2) return index;
    Code r = 0;
    for (unsigned i = 0; i < d_->k; ++i) {
      r |= (index % d_->p) << (d_->bits * i);
      index /= d_->p;
    }
    return r;
  }

  std::uint64_t index(Code a) const {
    std::uint64_t idx = 0;
    for (unsigned i = d_->k; i-- > 0;) idx = idx * d_->p + digit(a, i);
    return idx;
  }

  /// `GF(p^k; m_0,...,m_k)`.
  std::string descriptor() const {
    std::ostringstream os;
    os << "GF(" << d_->p << '^' << d_->k << ';';
    for (unsigned i = 0; i <= d_->k; ++i) os << (i ? "," : " ") << d_->modulus[i];
    os << ')';
    return os.str();
  }

  /// `[c_0,...,c_{k-1}]`.
  std::string format(Code a) const {
    std::ostringstream os;
    os << '[';
    for (unsigned i = 0; i < d_->k; ++i) os << (i ? "," : "") << digit(a, i);
    os << ']';
    return os.str();
  }

  friend bool operator==(const Field& a, const Field& b) {
    if (a.d_ == b.d_) return true;
    if (!a.d_ || !b.d_) return false;
    return a.d_->p == b.d_->p && a.d_->k == b.d_->k && a.d_->modulus == b.d_->modulus;
  }

 private:
  static std::vector<std::uint64_t> first_irreducible(std::uint64_t p, unsigned k) {
    std::vector<std::uint64_t> f(k + 1, 0);
    f[k] = 1;
    if (k == 1) return f;  // x
    // walk the low coefficients as a base-p counter, m_0 least significant
    while (true) {
      if (detail::is_irreducible(f, p)) return f;
      unsigned i = 0;
      while (i < k && ++f[i] == p) f[i++] = 0;
      if (i == k) throw Error(ErrorKind::InternalInconsistency, "no irreducible polynomial found");
    }
  }

  std::shared_ptr<const detail::FieldData> d_;
};

/// Field element as a value: a field handle plus its packed code.
class FieldElem {
 public:
  FieldElem() = default;
  FieldElem(Field field, Code code) : field_(std::move(field)), code_(code) {
    if (!field_.is_valid(code_)) throw Error(ErrorKind::SpecMismatch, "code is not a canonical element");
  }

  static FieldElem from_coeffs(const Field& f, std::span<const std::uint64_t> coeffs) {
    return FieldElem(f, f.from_digits(coeffs));
  }

  const Field& field() const { return field_; }
  Code code() const { return code_; }
  std::vector<std::uint64_t> coeffs() const { return field_.digits(code_); }
  bool is_zero() const { return code_ == 0; }

  FieldElem inv() const { return {field_, field_.inv(code_)}; }
  FieldElem pow(std::uint64_t n) const { return {field_, field_.pow(code_, n)}; }
  FieldElem frobenius(unsigned s) const { return {field_, field_.frobenius(code_, s)}; }
  FieldElem inverse_frobenius(unsigned s) const { return {field_, field_.inverse_frobenius(code_, s)}; }

  friend FieldElem operator+(const FieldElem& a, const FieldElem& b) {
    check(a, b);
    return {a.field_, a.field_.add(a.code_, b.code_)};
  }
  friend FieldElem operator-(const FieldElem& a, const FieldElem& b) {
    check(a, b);
    return {a.field_, a.field_.sub(a.code_, b.code_)};
  }
  friend FieldElem operator*(const FieldElem& a, const FieldElem& b) {
    check(a, b);
    return {a.field_, a.field_.mul(a.code_, b.code_)};
  }
  friend FieldElem operator/(const FieldElem& a, const FieldElem& b) {
    check(a, b);
    return {a.field_, a.field_.div(a.code_, b.code_)};
  }
  FieldElem operator-() const { return {field_, field_.neg(code_)}; }

  friend bool operator==(const FieldElem& a, const FieldElem& b) {
    return a.code_ == b.code_ && a.field_ == b.field_;
  }

 private:
  static void check(const FieldElem& a, const FieldElem& b) {
    if (!(a.field_ == b.field_)) throw Error(ErrorKind::SpecMismatch, "operands live in different fields");
  }

  Field field_;
  Code code_ = 0;
};

/// Ring embedding GF(p^a) -> GF(p^b), a | b, sending the generator to the
/// smallest root (canonical order) of the source modulus in the target.
class Embedding {
 public:
  Embedding(Field source, Field target) : source_(std::move(source)), target_(std::move(target)) {
    if (source_.characteristic() != target_.characteristic() || target_.degree() % source_.degree() != 0)
      throw Error(ErrorKind::NoEmbedding, source_.descriptor() + " does not embed in " + target_.descriptor());
    const auto& mod = source_.modulus();
    bool found = false;
    for (std::uint64_t idx = 0; idx < target_.order(); ++idx) {
      const Code x = target_.element(idx);
      Code acc = 0;
      for (std::size_t i = mod.size(); i-- > 0;) acc = target_.add(target_.mul(acc, x), target_.from_integer(static_cast<std::int64_t>(mod[i])));
      if (acc == 0) {
        root_ = x;
        found = true;
        break;
      }
    }
    if (!found) throw Error(ErrorKind::NoEmbedding, "source modulus has no root in target");
    powers_.resize(source_.degree());
    Code pw = target_.one();
    for (auto& slot : powers_) {
      slot = pw;
      pw = target_.mul(pw, root_);
    }
  }

  Code operator()(Code a) const {
    Code r = 0;
    for (unsigned i = 0; i < source_.degree(); ++i) {
      const std::uint64_t c = source_.digit(a, i);
      if (c) r = target_.add(r, target_.mul(target_.from_integer(static_cast<std::int64_t>(c)), powers_[i]));
    }
    return r;
  }

  Code root() const { return root_; }
  const Field& source() const { return source_; }
  const Field& target() const { return target_; }

 private:
  Field source_, target_;
  Code root_ = 0;
  std::vector<Code> powers_;
};

inline FieldElem embed(const FieldElem& a, const Field& target) {
  return {target, Embedding(a.field(), target)(a.code())};
}

/// First element (canonical order) with w^(q+1) = -1. Exists in GF(q^2).
inline FieldElem solve_norm_like(const Field& f, std::uint64_t q) {
  const Code minus_one = f.neg(f.one());
  for (std::uint64_t idx = 0; idx < f.order(); ++idx) {
    const Code w = f.element(idx);
    if (f.pow(w, q + 1) == minus_one) return {f, w};
  }
  throw Error(ErrorKind::NotFound, "no w with w^(q+1) = -1 in " + f.descriptor());
}

}  // namespace fermatfree::gf
