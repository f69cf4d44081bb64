#pragma once
// Deterministic corpus of curves that must all fail to be free: paired
// lines, covers of lines, curves padded in from Fermat hypersurfaces in
// fewer variables, and Frobenius twists of lines.

#include <algorithm>
#include <string>
#include <vector>

#include "fermat.hpp"

namespace fermatfree::corpus {

struct Entry {
  std::string family;  // "line", "cover", "subfermat", "twist"
  std::string label;
  RationalCurve curve;
};

struct TwistPair {
  RationalCurve source;
  RationalCurve twisted;
};

inline constexpr std::uint64_t kQs[] = {2, 3, 4, 5};

/// GF(q^2) with its default modulus; every w with w^{q+1} = -1 lives there.
inline Field field_for(std::uint64_t q) {
  const auto ctx = FermatContext::from_q(q);
  return Field::make(ctx.p, 2 * ctx.nu);
}

/// All w in F with w^{q+1} = -1, in canonical order.
inline std::vector<Code> norm_roots(const Field& F, std::uint64_t q) {
  std::vector<Code> out;
  const Code minus_one = F.neg(F.one());
  for (std::uint64_t i = 0; i < F.order(); ++i)
    if (F.pow(F.element(i), q + 1) == minus_one) out.push_back(F.element(i));
  return out;
}

namespace detail {

/// A generator-like element: the smallest element of maximal order.
inline Code primitive_element(const Field& F) {
  for (std::uint64_t i = 2; i < F.order(); ++i) {
    const Code g = F.element(i);
    bool ok = true;
    for (std::uint64_t d = 1; d < F.order() - 1 && ok; ++d)
      if ((F.order() - 1) % d == 0 && F.pow(g, d) == F.one()) ok = false;
    if (ok) return g;
  }
  return F.one();
}

/// Pairs of independent linear forms.
inline std::vector<std::pair<BinForm, BinForm>> linear_bases(const Field& F) {
  const BinForm s0 = BinForm::s0(F), s1 = BinForm::s1(F);
  const Code g = primitive_element(F);
  return {{s0, s1}, {s0 + s1, s1}, {s0, scalar_mul(g, s0) + s1}};
}

/// Coprime pairs of degree-d forms.
inline std::vector<std::pair<BinForm, BinForm>> cover_maps(const Field& F, int d) {
  const BinForm s0d = BinForm::monomial(F, d, d), s1d = BinForm::monomial(F, d, 0);
  const BinForm mixed = BinForm::monomial(F, d, 1);  // S0 S1^{d-1}
  return {{s0d, s1d}, {s0d + s1d, mixed}, {s0d + mixed, s1d}};
}

inline RationalCurve permuted(const RationalCurve& c, const std::vector<int>& order) {
  std::vector<BinForm> phis;
  for (int i : order) phis.push_back(c.phi(static_cast<std::size_t>(i)));
  return curve_make(c.ctx(), c.field(), std::move(phis));
}

/// Moves the trailing zero coordinates of a padded curve so that they
/// start at position `at`.
inline RationalCurve rotate_zeros(const RationalCurve& c, int nonzero, int at) {
  const int n = c.ctx().num_coords;
  std::vector<int> order;
  for (int i = 0; i < at; ++i) order.push_back(i);
  for (int i = nonzero; i < n; ++i) order.push_back(i);
  for (int i = at; i < nonzero; ++i) order.push_back(i);
  return permuted(c, order);
}

}  // namespace detail

/// Paired lines (b0, w0 b0, b1, w1 b1, 0, ...) over GF(q^2).
inline std::vector<Entry> lines(std::uint64_t q) {
  const auto ctx = FermatContext::from_q(q);
  const Field F = field_for(q);
  const auto ws = norm_roots(F, q);
  std::vector<Entry> out;
  int bi = 0;
  for (const auto& [b0, b1] : detail::linear_bases(F)) {
    for (std::size_t i = 0; i < std::min<std::size_t>(3, ws.size()); ++i)
      for (std::size_t j = 0; j < std::min<std::size_t>(3, ws.size()); ++j) {
        const std::vector<BinForm> bases{b0, b1};
        const std::vector<Code> omegas{ws[i], ws[j]};
        out.push_back({"line", "q=" + std::to_string(q) + " basis " + std::to_string(bi) + " w=(" + F.format(ws[i]) +
                                   "," + F.format(ws[j]) + ")",
                       make_paired_curve(ctx, F, bases, omegas)});
      }
    ++bi;
  }
  return out;
}

/// Degree-d covers of the first two paired lines, 2 <= d <= 4.
inline std::vector<Entry> covers(std::uint64_t q) {
  const auto base = lines(q);
  const Field F = field_for(q);
  std::vector<Entry> out;
  for (std::size_t li = 0; li < 2; ++li)
    for (int d = 2; d <= 4; ++d) {
      int mi = 0;
      for (const auto& [g0, g1] : detail::cover_maps(F, d))
        out.push_back({"cover", base[li].label + " cover d=" + std::to_string(d) + " map " + std::to_string(mi++),
                       compose_cover(base[li].curve, g0, g1)});
    }
  return out;
}

/// Curves on the Fermat hypersurface of the same degree in fewer variables,
/// padded with zero coordinates at varying positions. For q = 2 the smaller
/// hypersurface is a smooth plane cubic and carries no rational curves.
inline std::vector<Entry> subfermat(std::uint64_t q) {
  const auto ctx = FermatContext::from_q(q);
  const Field F = field_for(q);
  const auto ws = norm_roots(F, q);
  const int pairs = (ctx.num_coords - 1) / 2;
  std::vector<Entry> out;
  if (pairs < 2) return out;
  const int nonzero = 2 * pairs;
  for (int d = 1; d <= 3; ++d) {
    std::vector<BinForm> bases{BinForm::monomial(F, d, d), BinForm::monomial(F, d, 0)};
    if (d >= 2) bases[1] = bases[1] + BinForm::monomial(F, d, d - 1);
    if (pairs >= 3) bases.push_back(pow(BinForm::s0(F) + BinForm::s1(F), static_cast<unsigned>(d)));
    for (std::size_t wi = 0; wi < 2; ++wi) {
      std::vector<Code> omegas;
      for (int j = 0; j < pairs; ++j) omegas.push_back(ws[(wi + static_cast<std::size_t>(j)) % ws.size()]);
      std::vector<BinForm> coords;
      for (int j = 0; j < pairs; ++j) {
        coords.push_back(bases[static_cast<std::size_t>(j)]);
        coords.push_back(scalar_mul(omegas[static_cast<std::size_t>(j)], bases[static_cast<std::size_t>(j)]));
      }
      const RationalCurve padded = subfermat_embed(ctx, F, coords);
      for (int at = 0; at <= nonzero; ++at)
        out.push_back({"subfermat", "q=" + std::to_string(q) + " d=" + std::to_string(d) + " w" + std::to_string(wi) +
                                        " zeros at " + std::to_string(at),
                       detail::rotate_zeros(padded, nonzero, at)});
    }
  }
  return out;
}

/// Frobenius twists of the first 13 paired lines for each q.
inline std::vector<TwistPair> twist_pairs() {
  std::vector<TwistPair> out;
  for (std::uint64_t q : kQs) {
    const auto base = lines(q);
    for (std::size_t i = 0; i < 13 && i < base.size(); ++i) out.push_back({base[i].curve, frobenius_twist(base[i].curve)});
  }
  return out;
}

/// The full negative-control corpus, in a fixed order.
inline std::vector<Entry> negative_controls() {
  std::vector<Entry> out;
  for (std::uint64_t q : kQs) {
    for (auto& e : lines(q)) out.push_back(std::move(e));
    for (auto& e : covers(q)) out.push_back(std::move(e));
    for (auto& e : subfermat(q)) out.push_back(std::move(e));
  }
  std::size_t i = 0;
  for (auto& tp : twist_pairs())
    out.push_back({"twist", "twist " + std::to_string(i++) + " q=" + std::to_string(tp.source.ctx().q),
                   std::move(tp.twisted)});
  return out;
}

}  // namespace fermatfree::corpus
