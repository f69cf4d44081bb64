#pragma once
// Ansatz-driven searches for free curves of a prescribed degree.
//
// A candidate assignment goes through the filter chain
//   (1) on X, (2) primitive and nonconstant, (3) e >= q,
//   (4) fast freeness test, (5) splitting-type confirmation + certify.
// Filters (1)-(4) run on worker threads over disjoint index ranges; the
// surviving assignments are merged, sorted lexicographically and
// deduplicated, so results do not depend on the thread schedule.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <mutex>
#include <optional>
#include <set>
#include <span>
#include <cstring>
#include <string>
#include <thread>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include "bounds.hpp"
#include "certify.hpp"
#include "cohomology.hpp"
#include "fermat.hpp"

namespace fermatfree::search {

struct Cell {
  enum class Kind { Zero, Fixed, Var };
  Kind kind = Kind::Zero;
  Code value = 0;  // Fixed
  int var = -1;    // Var

  static Cell zero() { return {}; }
  static Cell fixed(Code c) { return {Kind::Fixed, c, -1}; }
  static Cell variable(int id) { return {Kind::Var, 0, id}; }

  friend bool operator==(const Cell&, const Cell&) = default;
};

using Assignment = std::vector<Code>;

/// (q+2) x (e+1) grid of cells; cell (i, a) is the coefficient of
/// S0^a S1^(e-a) in coordinate i. Variable ids may repeat (tied cells).
class Ansatz {
 public:
  Ansatz(FermatContext ctx, Field field, int e, std::vector<Cell> cells)
      : ctx_(ctx), field_(std::move(field)), e_(e), cells_(std::move(cells)) {
    if (e_ < 0) throw Error(ErrorKind::DegreeMismatch, "ansatz degree must be >= 0");
    if (field_.characteristic() != ctx_.p) throw Error(ErrorKind::SpecMismatch, "field characteristic differs from p");
    if (cells_.size() != static_cast<std::size_t>(ctx_.num_coords) * static_cast<std::size_t>(e_ + 1))
      throw Error(ErrorKind::WrongArity, "ansatz needs (q+2) x (e+1) cells");
    std::set<int> ids;
    for (const auto& c : cells_) {
      if (c.kind == Cell::Kind::Var) {
        if (c.var < 0) throw Error(ErrorKind::Parse, "variable ids must be >= 0");
        ids.insert(c.var);
      }
      if (c.kind == Cell::Kind::Fixed && !field_.is_valid(c.value))
        throw Error(ErrorKind::SpecMismatch, "fixed cell is not a field element");
    }
    var_ids_.assign(ids.begin(), ids.end());
    for (auto& c : cells_)
      if (c.kind == Cell::Kind::Var)
        c.var = static_cast<int>(std::lower_bound(var_ids_.begin(), var_ids_.end(), c.var) - var_ids_.begin());
  }

  /// Every cell its own variable.
  static Ansatz full(const FermatContext& ctx, const Field& field, int e) {
    std::vector<Cell> cells;
    for (int i = 0; i < ctx.num_coords * (e + 1); ++i) cells.push_back(Cell::variable(i));
    return Ansatz(ctx, field, e, std::move(cells));
  }

  const FermatContext& ctx() const { return ctx_; }
  const Field& field() const { return field_; }
  int e() const { return e_; }
  int num_coords() const { return ctx_.num_coords; }
  std::size_t num_vars() const { return var_ids_.size(); }
  /// Original ids of the dense variables 0..num_vars()-1.
  const std::vector<int>& var_ids() const { return var_ids_; }
  const Cell& cell(int coord, int a) const { return cells_[static_cast<std::size_t>(coord * (e_ + 1) + a)]; }

  bool is_full() const {
    return std::all_of(cells_.begin(), cells_.end(), [](const Cell& c) { return c.kind == Cell::Kind::Var; }) &&
           num_vars() == cells_.size();
  }

  /// |F|^V, or nullopt past 2^64.
  std::optional<std::uint64_t> space_size() const {
    unsigned __int128 n = 1;
    for (std::size_t v = 0; v < num_vars(); ++v) {
      n *= field_.order();
      if (n > static_cast<unsigned __int128>(~std::uint64_t{0})) return std::nullopt;
    }
    return static_cast<std::uint64_t>(n);
  }

  void check_budget(std::uint64_t ceiling) const {
    const auto size = space_size();
    if (!size || *size > ceiling)
      throw Error(ErrorKind::BudgetExceeded, std::to_string(num_vars()) + " variables over a field of order " +
                                                 std::to_string(field_.order()) + " exceed the budget of " +
                                                 std::to_string(ceiling));
  }

  BinForm instantiate_coord(int coord, std::span<const Code> x) const {
    BinForm f(field_, e_);
    for (int a = 0; a <= e_; ++a) {
      const Cell& c = cell(coord, a);
      if (c.kind == Cell::Kind::Fixed) f.set(a, c.value);
      if (c.kind == Cell::Kind::Var) f.set(a, x[static_cast<std::size_t>(c.var)]);
    }
    return f;
  }

  std::vector<BinForm> instantiate(std::span<const Code> x) const {
    std::vector<BinForm> out;
    for (int i = 0; i < num_coords(); ++i) out.push_back(instantiate_coord(i, x));
    return out;
  }

  /// The assignment at position `index` of the lexicographic order
  /// (variable 0 most significant).
  Assignment decode(std::uint64_t index) const {
    Assignment x(num_vars(), 0);
    for (std::size_t v = num_vars(); v-- > 0;) {
      x[v] = field_.element(index % field_.order());
      index /= field_.order();
    }
    return x;
  }

 private:
  FermatContext ctx_;
  Field field_;
  int e_;
  std::vector<Cell> cells_;
  std::vector<int> var_ids_;
};

struct Exhaustive {};
struct Random {
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
};
using Mode = std::variant<Exhaustive, Random>;

/// Coordinate bipartition for meet-in-the-middle.
struct Bipartition {
  std::vector<int> left, right;
};

inline unsigned default_threads() {
  if (const char* env = std::getenv("FERMATFREE_THREADS")) {
    const long n = std::strtol(env, nullptr, 10);
    if (n > 0) return static_cast<unsigned>(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

struct SearchOptions {
  unsigned threads = default_threads();
  std::uint64_t budget = std::uint64_t{1} << 32;
  std::size_t max_hits = 0;  // 0: certify every surviving candidate
  // Keep only the lexicographically least member of each orbit under
  // projective rescaling and coordinate permutations. Full ansatz only;
  // counts are then per orbit, not per assignment.
  bool symmetry = false;
  std::optional<Bipartition> mitm;
};

struct Hit {
  Assignment assignment;
  RationalCurve curve;
  CurveReport report;
};

struct SearchOutcome {
  std::vector<Hit> hits;
  std::uint64_t candidates_tested = 0;  // assignments entering filter (2)
  std::uint64_t on_x = 0;               // passed filter (1)
  std::uint64_t fast_free = 0;          // passed filter (4)
  std::uint64_t seed = 0;
  std::chrono::duration<double> wall_time{0};
  bool symmetry_reduced = false;
  bool truncated = false;  // fast_free > hits.size() because of max_hits
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Counter-based draw: the assignment for sample `index` depends only on
/// (seed, index).
inline Assignment random_assignment(const Ansatz& a, std::uint64_t seed, std::uint64_t index) {
  Assignment x(a.num_vars());
  const std::uint64_t key = splitmix64(seed ^ splitmix64(index));
  for (std::size_t v = 0; v < x.size(); ++v)
    x[v] = a.field().element(splitmix64(key + v) % a.field().order());
  return x;
}

inline std::string serialize(const BinForm& f) {
  std::string key(f.coeffs().size() * sizeof(Code), '\0');
  std::memcpy(key.data(), f.coeffs().data(), key.size());
  return key;
}

/// Lexicographic comparison of coordinate tuples by coefficient codes.
inline bool tuple_less(const std::vector<BinForm>& a, const std::vector<BinForm>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto ca = a[i].coeffs(), cb = b[i].coeffs();
    if (!std::equal(ca.begin(), ca.end(), cb.begin()))
      return std::lexicographical_compare(ca.begin(), ca.end(), cb.begin(), cb.end());
  }
  return false;
}

inline bool coord_less(const BinForm& a, const BinForm& b) {
  return std::lexicographical_compare(a.coeffs().begin(), a.coeffs().end(), b.coeffs().begin(), b.coeffs().end());
}

/// True iff the tuple is the least element of its orbit under scaling by
/// F^* and permutation of coordinates.
inline bool is_orbit_representative(const Field& F, const std::vector<BinForm>& phis) {
  if (!std::is_sorted(phis.begin(), phis.end(), coord_less)) return false;
  for (std::uint64_t idx = 2; idx < F.order(); ++idx) {
    const Code lambda = F.element(idx);
    std::vector<BinForm> scaled;
    for (const auto& phi : phis) scaled.push_back(scalar_mul(lambda, phi));
    std::sort(scaled.begin(), scaled.end(), coord_less);
    if (tuple_less(scaled, phis)) return false;
  }
  return true;
}

struct WorkerResult {
  std::vector<Assignment> survivors;
  std::uint64_t candidates = 0;
  std::uint64_t on_x = 0;
};

/// Filters (2)-(4) for an assignment already known to lie on X.
inline void screen_on_x(const Ansatz& a, const SearchOptions& opts, Assignment x, WorkerResult& out) {
  ++out.on_x;
  std::vector<BinForm> phis = a.instantiate(x);
  if (opts.symmetry && !is_orbit_representative(a.field(), phis)) return;
  ++out.candidates;
  auto curve = try_curve_make(a.ctx(), a.field(), std::move(phis));
  if (!curve) return;
  if (curve->e() < static_cast<int>(a.ctx().q)) return;
  if (!is_free_fast(*curve)) return;
  out.survivors.push_back(std::move(x));
}

inline void screen(const Ansatz& a, const SearchOptions& opts, Assignment x, WorkerResult& out) {
  const std::vector<BinForm> phis = a.instantiate(x);
  if (!fermat_sum(a.ctx(), phis).is_zero()) return;
  screen_on_x(a, opts, std::move(x), out);
}

template <class Fn>
void parallel_ranges(std::uint64_t total, unsigned threads, Fn&& fn) {
  threads = std::max(1u, threads);
  if (threads == 1 || total < threads) {
    fn(0u, std::uint64_t{0}, total);
    return;
  }
  std::vector<std::thread> pool;
  const std::uint64_t chunk = (total + threads - 1) / threads;
  for (unsigned t = 0; t < threads; ++t) {
    const std::uint64_t lo = std::min(total, t * chunk), hi = std::min(total, lo + chunk);
    pool.emplace_back([&fn, t, lo, hi] { fn(t, lo, hi); });
  }
  for (auto& th : pool) th.join();
}

inline std::vector<int> vars_of(const Ansatz& a, const std::vector<int>& coords) {
  std::set<int> vs;
  for (int i : coords)
    for (int e = 0; e <= a.e(); ++e)
      if (a.cell(i, e).kind == Cell::Kind::Var) vs.insert(a.cell(i, e).var);
  return {vs.begin(), vs.end()};
}

inline Assignment decode_partial(const Field& F, std::uint64_t index, std::size_t n) {
  Assignment x(n, 0);
  for (std::size_t v = n; v-- > 0;) {
    x[v] = F.element(index % F.order());
    index /= F.order();
  }
  return x;
}

}  // namespace detail

/// Streams every assignment satisfying the on-X identity to `visit`, by
/// matching sum_{i in L} phi_i^{q+1} against -sum_{i in R} phi_i^{q+1}.
/// `visit(thread, assignment)` is called concurrently from `threads` workers.
template <class Visit>
void meet_in_the_middle(const Ansatz& a, const Bipartition& split, unsigned threads, Visit&& visit) {
  const int n = a.num_coords();
  std::vector<int> seen(static_cast<std::size_t>(n), 0);
  for (int i : split.left) {
    if (i < 0 || i >= n) throw Error(ErrorKind::NotSeparable, "coordinate index out of range");
    ++seen[static_cast<std::size_t>(i)];
  }
  for (int i : split.right) {
    if (i < 0 || i >= n) throw Error(ErrorKind::NotSeparable, "coordinate index out of range");
    ++seen[static_cast<std::size_t>(i)];
  }
  if (std::any_of(seen.begin(), seen.end(), [](int s) { return s != 1; }))
    throw Error(ErrorKind::NotSeparable, "the bipartition must cover every coordinate exactly once");
  const std::vector<int> lv = detail::vars_of(a, split.left), rv = detail::vars_of(a, split.right);
  for (int v : lv)
    if (std::binary_search(rv.begin(), rv.end(), v))
      throw Error(ErrorKind::NotSeparable, "variable " + std::to_string(a.var_ids()[static_cast<std::size_t>(v)]) +
                                               " is tied across the bipartition");

  const Field& F = a.field();
  const std::uint64_t q = a.ctx().q;
  auto side_count = [&](std::size_t nv) {
    std::uint64_t c = 1;
    for (std::size_t i = 0; i < nv; ++i) c *= F.order();
    return c;
  };
  auto partial_sum = [&](const std::vector<int>& coords, const std::vector<int>& vars, std::uint64_t index) {
    Assignment full(a.num_vars(), 0);
    const Assignment part = detail::decode_partial(F, index, vars.size());
    for (std::size_t j = 0; j < vars.size(); ++j) full[static_cast<std::size_t>(vars[j])] = part[j];
    BinForm acc(F, a.e() * static_cast<int>(q + 1));
    for (int i : coords) {
      const BinForm phi = a.instantiate_coord(i, full);
      acc = acc + frobenius_power(phi, q) * phi;
    }
    return acc;
  };

  // right side: key of -sum -> indices
  std::unordered_map<std::string, std::vector<std::uint64_t>> table;
  const std::uint64_t n_right = side_count(rv.size());
  for (std::uint64_t idx = 0; idx < n_right; ++idx)
    table[detail::serialize(-partial_sum(split.right, rv, idx))].push_back(idx);

  const std::uint64_t n_left = side_count(lv.size());
  detail::parallel_ranges(n_left, threads, [&](unsigned t, std::uint64_t lo, std::uint64_t hi) {
    for (std::uint64_t idx = lo; idx < hi; ++idx) {
      const auto it = table.find(detail::serialize(partial_sum(split.left, lv, idx)));
      if (it == table.end()) continue;
      const Assignment lpart = detail::decode_partial(F, idx, lv.size());
      for (std::uint64_t ridx : it->second) {
        const Assignment rpart = detail::decode_partial(F, ridx, rv.size());
        Assignment x(a.num_vars(), 0);
        for (std::size_t j = 0; j < lv.size(); ++j) x[static_cast<std::size_t>(lv[j])] = lpart[j];
        for (std::size_t j = 0; j < rv.size(); ++j) x[static_cast<std::size_t>(rv[j])] = rpart[j];
        visit(t, std::move(x));
      }
    }
  });
}

/// Collecting form of meet_in_the_middle, sorted lexicographically.
inline std::vector<Assignment> meet_in_the_middle(const Ansatz& a, const Bipartition& split, unsigned threads = 1) {
  std::vector<std::vector<Assignment>> per(std::max(1u, threads));
  meet_in_the_middle(a, split, threads, [&](unsigned t, Assignment x) { per[t].push_back(std::move(x)); });
  std::vector<Assignment> out;
  for (auto& v : per) out.insert(out.end(), std::make_move_iterator(v.begin()), std::make_move_iterator(v.end()));
  std::sort(out.begin(), out.end());
  return out;
}

inline SearchOutcome enumerate(const Ansatz& a, const Mode& mode, const SearchOptions& opts = {}) {
  const auto start = std::chrono::steady_clock::now();
  a.check_budget(opts.budget);
  if (opts.symmetry && !a.is_full())
    throw Error(ErrorKind::Unsupported, "symmetry reduction needs a full ansatz");
  if (opts.mitm && !std::holds_alternative<Exhaustive>(mode))
    throw Error(ErrorKind::Unsupported, "meet-in-the-middle runs in exhaustive mode only");

  const unsigned threads = std::max(1u, opts.threads);
  std::vector<detail::WorkerResult> per(threads);
  SearchOutcome out;
  out.symmetry_reduced = opts.symmetry;

  if (opts.mitm) {
    meet_in_the_middle(a, *opts.mitm, threads,
                       [&](unsigned t, Assignment x) { detail::screen_on_x(a, opts, std::move(x), per[t]); });
  } else if (std::holds_alternative<Exhaustive>(mode)) {
    detail::parallel_ranges(*a.space_size(), threads, [&](unsigned t, std::uint64_t lo, std::uint64_t hi) {
      for (std::uint64_t idx = lo; idx < hi; ++idx) detail::screen(a, opts, a.decode(idx), per[t]);
    });
  } else {
    const Random rnd = std::get<Random>(mode);
    out.seed = rnd.seed;
    detail::parallel_ranges(rnd.samples, threads, [&](unsigned t, std::uint64_t lo, std::uint64_t hi) {
      for (std::uint64_t idx = lo; idx < hi; ++idx)
        detail::screen(a, opts, detail::random_assignment(a, rnd.seed, idx), per[t]);
    });
  }

  std::vector<Assignment> survivors;
  for (auto& w : per) {
    out.candidates_tested += w.candidates;
    out.on_x += w.on_x;
    survivors.insert(survivors.end(), std::make_move_iterator(w.survivors.begin()),
                     std::make_move_iterator(w.survivors.end()));
  }
  std::sort(survivors.begin(), survivors.end());
  survivors.erase(std::unique(survivors.begin(), survivors.end()), survivors.end());
  out.fast_free = survivors.size();

  const auto floor = bounds::e_min(a.ctx().q).e_min;
  for (auto& x : survivors) {
    if (opts.max_hits && out.hits.size() == opts.max_hits) {
      out.truncated = true;
      break;
    }
    RationalCurve curve = curve_make(a.ctx(), a.field(), a.instantiate(x));
    CurveReport report = certify(curve, {.verify_both = true});
    if (!report.is_free) throw Error(ErrorKind::InvariantViolation, "fast test accepted a curve the splitting rejects");
    if (static_cast<std::uint64_t>(curve.e()) < floor)
      throw Error(ErrorKind::InvariantViolation, "free curve of degree " + std::to_string(curve.e()) +
                                                     " below the lower bound e_min = " + std::to_string(floor));
    out.hits.push_back({std::move(x), std::move(curve), std::move(report)});
  }
  out.wall_time = std::chrono::steady_clock::now() - start;
  return out;
}

}  // namespace fermatfree::search
