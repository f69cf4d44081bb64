#pragma once
// Degree constraints on free curves of X and the resulting lower bounds.
//
// Writing e = mq + r (0 <= r < q), a free curve satisfies
//   r <= m,
//   q + 1 <= m^2 + m + r   (r > 0: the curve spans P^{q+1}),
//   q     <= m^2 + m       (r = 0: it may span only a hyperplane).
// The r = 0 equality q = m^2 + m forces q = 2, m = 1, i.e. free conics on
// the characteristic-2 Fermat cubic surface. There are none, so the r = 0
// inequality is strict.

#include <cstdint>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"

namespace fermatfree::bounds {

/// (p, nu) with q = p^nu, by trial factorization.
inline std::optional<std::pair<std::uint64_t, unsigned>> prime_power(std::uint64_t q) {
  if (q < 2) return std::nullopt;
  std::uint64_t p = 2;
  while (p <= q / p && q % p != 0) ++p;
  if (q % p != 0) p = q;  // q itself is prime
  unsigned nu = 0;
  while (q % p == 0) {
    q /= p;
    ++nu;
  }
  if (q != 1) return std::nullopt;
  return std::make_pair(p, nu);
}

inline bool is_prime_power(std::uint64_t q) { return prime_power(q).has_value(); }

inline bool admissible(std::int64_t q, std::int64_t m, std::int64_t r) {
  if (m < 0 || r < 0 || r > q - 1) return false;
  if (r > m) return false;
  if (r > 0) return q + 1 <= m * m + m + r;
  return q < m * m + m;
}

/// (e + q)^2 >= q^3, i.e. e >= q^{3/2} - q, in exact integers.
inline bool superlinear_holds(std::uint64_t q, std::uint64_t e) {
  const auto lhs = static_cast<unsigned __int128>(e + q) * (e + q);
  const auto rhs = static_cast<unsigned __int128>(q) * q * q;
  return lhs >= rhs;
}

/// Smallest m with m + 1 > sqrt(q), i.e. ceil(sqrt(q)) - 1.
inline std::uint64_t ceil_sqrt_minus_one(std::uint64_t q) {
  std::uint64_t s = 0;
  while (s * s < q) ++s;
  return s - 1;
}

struct DegreeBoundRecord {
  std::uint64_t q = 0;
  std::uint64_t e_min = 0;
  std::uint64_t witness_m = 0;
  std::uint64_t witness_r = 0;
  std::uint64_t m_min = 0;
  bool superlinear_ok = false;
  std::uint64_t ratio_num = 0;  // e_min / q, reduced
  std::uint64_t ratio_den = 1;

  double ratio() const { return static_cast<double>(ratio_num) / static_cast<double>(ratio_den); }
  friend bool operator==(const DegreeBoundRecord&, const DegreeBoundRecord&) = default;
};

/// Minimum of mq + r over admissible pairs. Any smaller m beats any larger
/// one because r < q, so the first m admitting some r wins, with the least
/// such r. The scan stops by m = q, which always admits r = 0.
inline DegreeBoundRecord e_min(std::uint64_t q) {
  if (!is_prime_power(q)) throw Error(ErrorKind::NotPrimePower, std::to_string(q) + " is not a prime power");
  const auto qi = static_cast<std::int64_t>(q);
  DegreeBoundRecord rec;
  rec.q = q;
  for (std::int64_t m = 0; m <= qi; ++m) {
    std::optional<std::int64_t> r;
    if (admissible(qi, m, 0)) {
      r = 0;
    } else {
      const std::int64_t need = std::max<std::int64_t>(1, qi + 1 - m * m - m);
      if (admissible(qi, m, need)) r = need;
    }
    if (!r) continue;
    rec.witness_m = static_cast<std::uint64_t>(m);
    rec.witness_r = static_cast<std::uint64_t>(*r);
    rec.m_min = rec.witness_m;
    rec.e_min = rec.witness_m * q + rec.witness_r;
    break;
  }
  rec.superlinear_ok = superlinear_holds(q, rec.e_min);
  const std::uint64_t g = std::gcd(rec.e_min, q);
  rec.ratio_num = rec.e_min / g;
  rec.ratio_den = q / g;
  return rec;
}

inline std::vector<DegreeBoundRecord> table(std::uint64_t q_max) {
  std::vector<DegreeBoundRecord> out;
  for (std::uint64_t q = 2; q <= q_max; ++q)
    if (is_prime_power(q)) out.push_back(e_min(q));
  return out;
}

inline std::vector<std::pair<std::uint64_t, double>> ratio_report(std::uint64_t q_max) {
  std::vector<std::pair<std::uint64_t, double>> out;
  for (const auto& rec : table(q_max)) out.emplace_back(rec.q, rec.ratio());
  return out;
}

inline constexpr const char* kCsvHeader = "q,e_min,m,r,m_min,superlinear_ok,ratio";

inline std::string csv_row(const DegreeBoundRecord& rec) {
  std::ostringstream os;
  os << rec.q << ',' << rec.e_min << ',' << rec.witness_m << ',' << rec.witness_r << ',' << rec.m_min << ','
     << (rec.superlinear_ok ? "true" : "false") << ',' << rec.ratio_num << '/' << rec.ratio_den;
  return os.str();
}

}  // namespace fermatfree::bounds
