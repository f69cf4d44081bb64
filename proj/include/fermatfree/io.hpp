#pragma once
// Text formats: field descriptors, elements, forms, curve files, ansatz
// files and report rendering.
//
//   field    GF(p^k; m0,m1,...,mk)        modulus, constant term first
//   element  [c0,c1,...,c_{k-1}]          a bare integer is accepted when k = 1
//   form     deg=d; [x0, x1, ..., xd]     x_a multiplies S0^a S1^(d-a)
//   curve    field line, q=<int>, e=<int>, then q+2 form lines
//   ansatz   field line, q=, e=, then q+2 lines of d+1 cells: 0, vN or [..]
// Blank lines and text after '#' are ignored.

#include <cctype>
#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "certify.hpp"
#include "search.hpp"

namespace fermatfree::io {

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

[[noreturn]] inline void fail(const std::string& what) { throw Error(ErrorKind::Parse, what); }

inline std::int64_t parse_int(std::string_view s, const char* what) {
  s = trim(s);
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
    fail(std::string("expected an integer for ") + what + ", got '" + std::string(s) + "'");
  return v;
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i)
    if (i == s.size() || s[i] == sep) {
      out.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  return out;
}

/// Splits "[..], [..], v3, 0" at top-level commas.
inline std::vector<std::string_view> split_top(std::string_view s) {
  std::vector<std::string_view> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i < s.size() && s[i] == '[') ++depth;
    if (i < s.size() && s[i] == ']') --depth;
    if (depth < 0) fail("unbalanced brackets in '" + std::string(s) + "'");
    if (i == s.size() || (s[i] == ',' && depth == 0)) {
      out.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  if (depth != 0) fail("unbalanced brackets in '" + std::string(s) + "'");
  return out;
}

inline std::string_view unbracket(std::string_view s, const char* what) {
  s = trim(s);
  if (s.size() < 2 || s.front() != '[' || s.back() != ']') fail(std::string(what) + " must be bracketed: '" + std::string(s) + "'");
  return trim(s.substr(1, s.size() - 2));
}

/// Non-empty lines with comments stripped.
inline std::vector<std::string> content_lines(std::istream& in) {
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto t = trim(line);
    if (!t.empty()) out.emplace_back(t);
  }
  return out;
}

inline std::int64_t parse_keyed(std::string_view line, std::string_view key) {
  line = trim(line);
  const auto eq = line.find('=');
  if (eq == std::string_view::npos || trim(line.substr(0, eq)) != key)
    fail("expected '" + std::string(key) + "=<int>', got '" + std::string(line) + "'");
  return parse_int(line.substr(eq + 1), std::string(key).c_str());
}

}  // namespace detail

inline Field parse_field(std::string_view s) {
  s = detail::trim(s);
  if (s.substr(0, 3) != "GF(" || s.back() != ')') detail::fail("field descriptor must look like GF(p^k; m0,...,mk)");
  const auto body = s.substr(3, s.size() - 4);
  const auto semi = body.find(';');
  const auto head = detail::trim(body.substr(0, semi));
  const auto caret = head.find('^');
  const auto p = detail::parse_int(head.substr(0, caret), "p");
  const auto k = caret == std::string_view::npos ? 1 : detail::parse_int(head.substr(caret + 1), "k");
  if (p < 2 || k < 1) detail::fail("field needs p >= 2 and k >= 1");
  std::optional<std::vector<std::uint64_t>> modulus;
  if (semi != std::string_view::npos) {
    std::vector<std::uint64_t> ms;
    for (auto t : detail::split(body.substr(semi + 1), ',')) {
      const auto v = detail::parse_int(t, "modulus coefficient");
      if (v < 0) detail::fail("modulus coefficients must be non-negative");
      ms.push_back(static_cast<std::uint64_t>(v));
    }
    modulus = std::move(ms);
  }
  return Field::make(static_cast<std::uint64_t>(p), static_cast<unsigned>(k), modulus);
}

inline std::string format_field(const Field& F) { return F.descriptor(); }

inline Code parse_element(const Field& F, std::string_view s) {
  s = detail::trim(s);
  std::vector<std::uint64_t> digits;
  if (!s.empty() && s.front() == '[') {
    const auto inner = detail::unbracket(s, "element");
    if (!inner.empty())
      for (auto t : detail::split(inner, ',')) {
        const auto v = detail::parse_int(t, "element digit");
        if (v < 0 || static_cast<std::uint64_t>(v) >= F.characteristic())
          detail::fail("element digit " + std::string(t) + " is outside [0, p)");
        digits.push_back(static_cast<std::uint64_t>(v));
      }
  } else {
    const auto v = detail::parse_int(s, "element");
    if (F.degree() != 1) detail::fail("bare integers denote elements of prime fields only");
    return F.from_integer(v);
  }
  if (digits.size() > F.degree()) detail::fail("element has more than k digits");
  digits.resize(F.degree(), 0);
  return F.from_digits(digits);
}

inline std::string format_element(const Field& F, Code a) { return F.format(a); }

inline BinForm parse_form(const Field& F, std::string_view s) {
  s = detail::trim(s);
  const auto semi = s.find(';');
  if (semi == std::string_view::npos) detail::fail("form must look like 'deg=d; [..]'");
  const auto d = detail::parse_keyed(s.substr(0, semi), "deg");
  if (d < 0) detail::fail("form degree must be >= 0");
  const auto items = detail::split_top(detail::unbracket(s.substr(semi + 1), "form"));
  if (items.size() != static_cast<std::size_t>(d + 1))
    detail::fail("form of degree " + std::to_string(d) + " needs " + std::to_string(d + 1) + " coefficients, got " +
                 std::to_string(items.size()));
  std::vector<Code> cs;
  for (auto t : items) cs.push_back(parse_element(F, t));
  return BinForm(F, std::move(cs));
}

inline std::string format_form(const BinForm& f) {
  std::string out = "deg=" + std::to_string(f.degree()) + "; [";
  for (int a = 0; a <= f.degree(); ++a) out += (a ? ", " : "") + f.field().format(f.coeff(a));
  return out + "]";
}

struct CurveFile {
  FermatContext ctx;
  Field field;
  int e = 0;
  std::vector<BinForm> phis;
};

inline CurveFile parse_curve_file(std::istream& in) {
  const auto lines = detail::content_lines(in);
  if (lines.size() < 3) detail::fail("curve file needs a field line, q= and e=");
  CurveFile cf;
  cf.field = parse_field(lines[0]);
  const auto q = detail::parse_keyed(lines[1], "q");
  if (q < 2) detail::fail("q must be >= 2");
  cf.ctx = FermatContext::from_q(static_cast<std::uint64_t>(q));
  cf.e = static_cast<int>(detail::parse_keyed(lines[2], "e"));
  if (lines.size() != static_cast<std::size_t>(3 + cf.ctx.num_coords))
    detail::fail("curve file needs " + std::to_string(cf.ctx.num_coords) + " form lines, got " +
                 std::to_string(lines.size() - 3));
  for (std::size_t i = 3; i < lines.size(); ++i) {
    BinForm f = parse_form(cf.field, lines[i]);
    if (f.degree() != cf.e) throw Error(ErrorKind::DegreeMismatch, "form " + std::to_string(i - 3) + " has degree " +
                                                                      std::to_string(f.degree()) + ", expected e = " +
                                                                      std::to_string(cf.e));
    cf.phis.push_back(std::move(f));
  }
  return cf;
}

inline CurveFile parse_curve_file(const std::string& text) {
  std::istringstream in(text);
  return parse_curve_file(in);
}

inline RationalCurve read_curve(std::istream& in) {
  CurveFile cf = parse_curve_file(in);
  return curve_make(cf.ctx, cf.field, std::move(cf.phis));
}

inline RationalCurve read_curve(const std::string& text) {
  std::istringstream in(text);
  return read_curve(in);
}

inline void write_curve(std::ostream& out, const RationalCurve& c) {
  out << c.field().descriptor() << '\n' << "q=" << c.ctx().q << '\n' << "e=" << c.e() << '\n';
  for (const auto& phi : c.phis()) out << format_form(phi) << '\n';
}

inline std::string format_curve(const RationalCurve& c) {
  std::ostringstream os;
  write_curve(os, c);
  return os.str();
}

inline search::Ansatz parse_ansatz(std::istream& in) {
  const auto lines = detail::content_lines(in);
  if (lines.size() < 3) detail::fail("ansatz file needs a field line, q= and e=");
  const Field F = parse_field(lines[0]);
  const auto q = detail::parse_keyed(lines[1], "q");
  if (q < 2) detail::fail("q must be >= 2");
  const auto ctx = FermatContext::from_q(static_cast<std::uint64_t>(q));
  const auto e = detail::parse_keyed(lines[2], "e");
  if (e < 0) detail::fail("e must be >= 0");
  if (lines.size() != static_cast<std::size_t>(3 + ctx.num_coords))
    detail::fail("ansatz file needs " + std::to_string(ctx.num_coords) + " cell lines");
  std::vector<search::Cell> cells;
  for (std::size_t i = 3; i < lines.size(); ++i) {
    const auto items = detail::split_top(lines[i]);
    if (items.size() != static_cast<std::size_t>(e + 1))
      detail::fail("ansatz line " + std::to_string(i - 3) + " needs " + std::to_string(e + 1) + " cells");
    for (auto t : items) {
      if (t == "0") cells.push_back(search::Cell::zero());
      else if (!t.empty() && t.front() == 'v')
        cells.push_back(search::Cell::variable(static_cast<int>(detail::parse_int(t.substr(1), "variable id"))));
      else cells.push_back(search::Cell::fixed(parse_element(F, t)));
    }
  }
  return search::Ansatz(ctx, F, static_cast<int>(e), std::move(cells));
}

inline search::Ansatz parse_ansatz(const std::string& text) {
  std::istringstream in(text);
  return parse_ansatz(in);
}

inline std::string bool_str(bool b) { return b ? "true" : "false"; }

/// `free=<bool> span=<int> splitting=[..]`
inline std::string summary_line(const CurveReport& r) {
  return "free=" + bool_str(r.is_free) + " span=" + std::to_string(r.span_rank) +
         " splitting=" + r.splitting_E.to_string();
}

/// `E: [c1,...] margin=<int> free=<bool>`
inline std::string splitting_line(const SplittingType& st) {
  return "E: " + st.to_string() + " margin=" + std::to_string(st.min_degree()) +
         " free=" + bool_str(is_free_splitting(st));
}

inline std::vector<std::pair<std::string, std::string>> report_fields(const CurveReport& r) {
  std::vector<std::pair<std::string, std::string>> kv{
      {"q", std::to_string(r.q)},
      {"e", std::to_string(r.e)},
      {"m", std::to_string(r.m)},
      {"r", std::to_string(r.r)},
      {"span_rank", std::to_string(r.span_rank)},
      {"free", bool_str(r.is_free)},
      {"free_fast", bool_str(r.free_fast)},
      {"free_splitting", bool_str(r.free_splitting)},
      {"splitting_E", r.splitting_E.to_string()},
      {"margin", std::to_string(r.freeness_margin)},
      {"h0_fast", std::to_string(r.h0_fast)},
      {"h1_fast", std::to_string(r.h1_fast)},
      {"relations_ok", bool_str(r.relations_ok)},
      {"very_free_guaranteed", bool_str(r.very_free_guaranteed)},
      {"r_free_guaranteed", bool_str(r.r_free_guaranteed)},
  };
  if (r.split) {
    kv.emplace_back("rank_phi1", std::to_string(r.split->rank_phi1));
    kv.emplace_back("rank_phi2", std::to_string(r.split->rank_phi2));
    kv.emplace_back("eta_columns", std::to_string(r.split->independent_eta_columns));
  }
  return kv;
}

inline std::string format_report_kv(const CurveReport& r) {
  std::string out;
  for (const auto& [k, v] : report_fields(r)) out += k + "=" + v + "\n";
  return out;
}

/// Human-readable report; each check names the statement it instantiates.
inline std::string format_report_text(const CurveReport& r) {
  std::ostringstream os;
  auto ok = [](bool b) { return b ? "OK" : "FAIL"; };
  const int q = static_cast<int>(r.q);
  os << "curve of degree e=" << r.e << " = " << r.m << "*" << r.q << " + " << r.r << " on the Fermat hypersurface of degree "
     << r.q + 1 << " in P^" << r.q + 1 << "\n";
  os << "  span rank        " << r.span_rank << " (of " << q + 2 << ")\n";
  os << "  splitting of E   " << r.splitting_E.to_string() << " margin=" << r.freeness_margin << "\n";
  os << "  fast test        h0=" << r.h0_fast << " h1=" << r.h1_fast << " (h0 - h1 = m - r = " << r.m - r.r << ")\n";
  if (r.split)
    os << "  rank split       Phi1=" << r.split->rank_phi1 << " Phi2=" << r.split->rank_phi2
       << " eta columns=" << r.split->independent_eta_columns << "\n";
  os << "  free             " << bool_str(r.is_free) << " (fast=" << bool_str(r.free_fast)
     << ", splitting=" << bool_str(r.free_splitting) << ")\n";
  os << "  relations " << ok(r.relations_ok) << " (on X: sum phi_i zeta_ij = 0 and sum phi_i eta_ik = 0)\n";
  if (r.is_free) {
    os << "  e>=q " << ok(r.e >= q) << " (free implies e >= q)\n";
    os << "  r<=m " << ok(r.r <= r.m) << " (Lemma: free implies r<=m)\n";
    os << "  span " << ok(r.span_rank >= q + 1) << " (free curves span P^{q+1} or a hyperplane)\n";
    os << "  bound " << ok(bounds::admissible(q, r.m, r.r)) << " (q+1 <= m^2+m+r, or q < m^2+m when r = 0)\n";
    if (r.split)
      os << "  eta " << ok(r.split->independent_eta_columns <= r.m - r.r)
         << " (at most m - r independent eta operators)\n";
  }
  os << "  very free guaranteed " << bool_str(r.very_free_guaranteed) << " (margin >= 1)\n";
  os << "  r-free guaranteed    " << bool_str(r.r_free_guaranteed) << " (margin >= r; sufficient only)\n";
  return os.str();
}

}  // namespace fermatfree::io
