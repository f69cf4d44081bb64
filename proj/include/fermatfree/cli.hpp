#pragma once
// Command-line front end. Exit codes: 0 success, 1 domain error, 2 usage.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "bounds.hpp"
#include "certify.hpp"
#include "corpus.hpp"
#include "io.hpp"
#include "search.hpp"

namespace fermatfree::cli {

inline constexpr int kOk = 0;
inline constexpr int kDomainError = 1;
inline constexpr int kUsageError = 2;

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CLI::ValidationError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline search::Mode parse_mode(const std::string& s, std::optional<std::uint64_t> seed_flag) {
  if (s == "exhaustive") return search::Exhaustive{};
  if (s.rfind("random:", 0) == 0) {
    std::vector<std::string> parts;
    std::stringstream ss(s.substr(7));
    for (std::string t; std::getline(ss, t, ':');) parts.push_back(t);
    if (parts.empty() || parts.size() > 2) throw CLI::ValidationError("--mode", "expected random:<n> or random:<n>:<seed>");
    search::Random r;
    try {
      r.samples = std::stoull(parts[0]);
      r.seed = parts.size() == 2 ? std::stoull(parts[1]) : 0;
    } catch (const std::exception&) {
      throw CLI::ValidationError("--mode", "random sample count and seed must be non-negative integers");
    }
    if (seed_flag) r.seed = *seed_flag;
    return r;
  }
  throw CLI::ValidationError("--mode", "expected exhaustive or random:<n>[:<seed>], got '" + s + "'");
}

inline search::Bipartition parse_bipartition(const std::string& s) {
  const auto slash = s.find('/');
  if (slash == std::string::npos) throw CLI::ValidationError("--mitm", "expected i,j,.../k,l,...");
  auto side = [](const std::string& part) {
    std::vector<int> out;
    std::stringstream ss(part);
    for (std::string t; std::getline(ss, t, ',');) {
      if (t.empty()) continue;
      try {
        out.push_back(std::stoi(t));
      } catch (const std::exception&) {
        throw CLI::ValidationError("--mitm", "coordinate indices must be integers, got '" + t + "'");
      }
    }
    return out;
  };
  return {side(s.substr(0, slash)), side(s.substr(slash + 1))};
}

inline std::string format_assignment(const Field& F, const search::Assignment& x) {
  std::string out = "[";
  for (std::size_t i = 0; i < x.size(); ++i) out += (i ? "," : "") + F.format(x[i]);
  return out + "]";
}

inline void print_bounds(std::ostream& out, std::uint64_t qmax, bool csv) {
  const auto rows = bounds::table(qmax);
  if (csv) {
    out << bounds::kCsvHeader << '\n';
    for (const auto& r : rows) out << bounds::csv_row(r) << '\n';
    return;
  }
  out << std::setw(6) << "q" << std::setw(8) << "e_min" << std::setw(6) << "m" << std::setw(6) << "r" << std::setw(7)
      << "m_min" << std::setw(13) << "superlinear" << std::setw(10) << "e_min/q" << '\n';
  for (const auto& r : rows)
    out << std::setw(6) << r.q << std::setw(8) << r.e_min << std::setw(6) << r.witness_m << std::setw(6) << r.witness_r
        << std::setw(7) << r.m_min << std::setw(13) << (r.superlinear_ok ? "yes" : "NO") << std::setw(10) << std::fixed
        << std::setprecision(3) << r.ratio() << '\n';
}

}  // namespace detail

/// Table golden values, corpus invariants, twist covariance and two tiny
/// exhaustive searches. Returns true when every check passes.
inline bool selftest(std::ostream& out) {
  bool all = true;
  auto report = [&](const std::string& name, bool ok, const std::string& detail = "") {
    out << (ok ? "PASS " : "FAIL ") << name << (detail.empty() ? "" : ": " + detail) << '\n';
    all = all && ok;
  };

  const std::vector<std::pair<std::uint64_t, std::uint64_t>> golden{
      {2, 3},    {3, 6},    {4, 8},    {5, 10},   {7, 16},   {8, 24},   {9, 27},   {11, 33},  {13, 41},
      {16, 64},  {17, 68},  {19, 76},  {23, 96},  {25, 125}, {27, 135}, {29, 145}, {31, 157}, {32, 163}};
  const auto table = bounds::table(32);
  bool table_ok = table.size() == golden.size();
  for (std::size_t i = 0; table_ok && i < golden.size(); ++i)
    table_ok = table[i].q == golden[i].first && table[i].e_min == golden[i].second;
  report("degree bound table q <= 32", table_ok);

  std::size_t free_count = 0, chi_bad = 0, shape_bad = 0;
  std::string failure;
  const auto entries = corpus::negative_controls();
  try {
    for (const auto& e : entries) {
      const CurveReport r = certify(e.curve, {.verify_both = true});
      if (r.is_free) ++free_count;
      if (r.m >= 1 && r.h0_fast - r.h1_fast != r.m - r.r) ++chi_bad;
      if (r.splitting_E.rank() != static_cast<int>(r.q) + 1 || r.splitting_E.total_degree() != r.e) ++shape_bad;
    }
  } catch (const Error& err) {
    failure = err.what();
  }
  report("negative controls (" + std::to_string(entries.size()) + " curves)", failure.empty() && free_count == 0,
         failure.empty() ? std::to_string(free_count) + " free" : failure);
  report("Euler characteristic h0 - h1 = m - r", failure.empty() && chi_bad == 0);
  report("splitting rank q+1 and degree e", failure.empty() && shape_bad == 0);

  std::size_t cov_bad = 0;
  const auto pairs = corpus::twist_pairs();
  for (const auto& tp : pairs) {
    std::vector<int> scaled;
    const SplittingType base = splitting_type_E(tp.source);
    for (int c : base.degrees()) scaled.push_back(c * static_cast<int>(tp.source.ctx().q));
    if (!(splitting_type_E(tp.twisted) == SplittingType(scaled))) ++cov_bad;
  }
  report("Frobenius twist scales splitting by q (" + std::to_string(pairs.size()) + " twists)", cov_bad == 0);

  const auto ctx = FermatContext::from_q(2);
  const Field F2 = Field::make(2, 1);
  search::SearchOptions opts;
  opts.threads = 1;
  bool search_ok = true;
  for (int e : {1, 2}) {
    const auto res = search::enumerate(search::Ansatz::full(ctx, F2, e), search::Exhaustive{}, opts);
    search_ok = search_ok && res.hits.empty();
  }
  report("no free lines or conics for q = 2 over GF(2)", search_ok);
  return all;
}

/// Runs one command line (without the program name).
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Free rational curves on Fermat hypersurfaces T0^{q+1} + ... + T_{q+1}^{q+1} = 0", "fermatfree"};
  app.require_subcommand(1);

  std::uint64_t qmax = 32;
  bool csv = false;
  auto* bounds_cmd = app.add_subcommand("bounds", "Lower bounds e_min(q) for every prime power q <= qmax");
  bounds_cmd->add_option("--qmax", qmax, "Largest q")->required()->check(CLI::Range(std::uint64_t{2}, std::uint64_t{1} << 20));
  bounds_cmd->add_flag("--csv", csv, "CSV output");

  std::string check_path;
  bool verify_both = false;
  auto* check_cmd = app.add_subcommand("check", "Certify a curve file");
  check_cmd->add_option("curve", check_path, "Curve file")->required();
  check_cmd->add_flag("--verify-both", verify_both, "Run both freeness tests and fail if they disagree");

  std::string split_path;
  auto* split_cmd = app.add_subcommand("split", "Splitting type of the pulled-back embedded tangent bundle");
  split_cmd->add_option("curve", split_path, "Curve file")->required();

  std::uint64_t q = 0;
  int e = 0;
  std::string field_desc, ansatz_spec = "full", mode_spec = "exhaustive", mitm_spec, out_dir;
  unsigned threads = search::default_threads();
  std::size_t max_hits = 100;
  bool symmetry = false;
  std::optional<std::uint64_t> seed;
  std::uint64_t budget = std::uint64_t{1} << 32;
  auto* search_cmd = app.add_subcommand("search", "Search an ansatz for free curves");
  search_cmd->add_option("--q", q, "q = p^nu")->required();
  search_cmd->add_option("--e", e, "Curve degree")->required()->check(CLI::NonNegativeNumber);
  search_cmd->add_option("--field", field_desc, "Coefficient field GF(p^k; m0,...,mk); taken from the file otherwise");
  search_cmd->add_option("--ansatz", ansatz_spec, "Ansatz file or 'full'");
  search_cmd->add_option("--mode", mode_spec, "exhaustive | random:<n>[:<seed>]");
  search_cmd->add_option("--mitm", mitm_spec, "Coordinate bipartition i,j,.../k,l,...");
  search_cmd->add_option("--threads", threads, "Worker threads (default: FERMATFREE_THREADS or all cores)")
      ->check(CLI::PositiveNumber);
  search_cmd->add_option("--out", out_dir, "Directory receiving one curve file per hit");
  search_cmd->add_option("--max-hits", max_hits, "Certify at most this many hits (0: all)");
  search_cmd->add_flag("--symmetry", symmetry, "Keep one representative per scaling/permutation orbit");
  search_cmd->add_option("--seed", seed, "Seed for random mode");
  search_cmd->add_option("--budget", budget, "Largest admissible search space");

  auto* selftest_cmd = app.add_subcommand("selftest", "Run the built-in invariant checks");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);

    if (bounds_cmd->parsed()) {
      detail::print_bounds(out, qmax, csv);
      return kOk;
    }

    if (check_cmd->parsed() || split_cmd->parsed()) {
      const std::string text = detail::read_file(check_cmd->parsed() ? check_path : split_path);
      const RationalCurve c = io::read_curve(text);
      if (split_cmd->parsed()) {
        out << io::splitting_line(splitting_type_E(c)) << '\n';
        return kOk;
      }
      const CurveReport r = certify(c, {.verify_both = verify_both});
      out << io::summary_line(r) << '\n' << io::format_report_text(r) << io::format_report_kv(r);
      return kOk;
    }

    if (search_cmd->parsed()) {
      const search::Mode mode = detail::parse_mode(mode_spec, seed);
      std::optional<search::Ansatz> ansatz;
      if (ansatz_spec == "full") {
        if (field_desc.empty()) throw CLI::ValidationError("--field", "required with --ansatz full");
        ansatz.emplace(search::Ansatz::full(FermatContext::from_q(q), io::parse_field(field_desc), e));
      } else {
        ansatz.emplace(io::parse_ansatz(detail::read_file(ansatz_spec)));
        if (ansatz->ctx().q != q || ansatz->e() != e)
          throw Error(ErrorKind::SpecMismatch, "ansatz file has q=" + std::to_string(ansatz->ctx().q) +
                                                   " e=" + std::to_string(ansatz->e()) + ", flags ask for q=" +
                                                   std::to_string(q) + " e=" + std::to_string(e));
        if (!field_desc.empty() && !(io::parse_field(field_desc) == ansatz->field()))
          throw Error(ErrorKind::SpecMismatch, "--field differs from the ansatz file's field");
      }
      search::SearchOptions opts;
      opts.threads = threads;
      opts.budget = budget;
      opts.max_hits = max_hits;
      opts.symmetry = symmetry;
      if (!mitm_spec.empty()) opts.mitm = detail::parse_bipartition(mitm_spec);

      const auto res = search::enumerate(*ansatz, mode, opts);
      if (!out_dir.empty()) std::filesystem::create_directories(out_dir);
      for (std::size_t i = 0; i < res.hits.size(); ++i) {
        const auto& h = res.hits[i];
        out << "hit " << i << " assignment=" << detail::format_assignment(ansatz->field(), h.assignment) << ' '
            << io::summary_line(h.report) << " margin=" << h.report.freeness_margin << '\n';
        if (!out_dir.empty()) {
          std::ostringstream name;
          name << "hit_" << std::setw(4) << std::setfill('0') << i << ".curve";
          std::ofstream f(std::filesystem::path(out_dir) / name.str());
          io::write_curve(f, h.curve);
        }
      }
      out << "candidates_tested=" << res.candidates_tested << " on_x=" << res.on_x << " fast_free=" << res.fast_free
          << " hits=" << res.hits.size() << " truncated=" << io::bool_str(res.truncated)
          << " symmetry_reduced=" << io::bool_str(res.symmetry_reduced) << " seed=" << res.seed << " wall_time="
          << std::fixed << std::setprecision(3) << res.wall_time.count() << "s\n";
      return kOk;
    }

    if (selftest_cmd->parsed()) return selftest(out) ? kOk : kDomainError;
  } catch (const CLI::ParseError& ex) {
    const int code = app.exit(ex, out, err);
    return code == 0 ? kOk : kUsageError;
  } catch (const Error& ex) {
    err << "error (" << to_string(ex.kind()) << "): " << ex.what() << '\n';
    return kDomainError;
  }
  return kUsageError;
}

}  // namespace fermatfree::cli
