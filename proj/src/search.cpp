#include "partreg/search.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <exception>
#include <mutex>
#include <set>
#include <thread>

namespace partreg {

namespace {

using i128 = __int128;

struct CompiledTerm {
  i128 coef = 0;
  std::vector<std::pair<int, unsigned>> powers;  // (variable index, exponent)
};

struct Compiled {
  std::vector<std::string> vars;
  std::vector<CompiledTerm> terms;
  unsigned degree = 0;
};

Compiled compile(const Polynomial& p, int n_max) {
  if (p.is_zero()) throw Error(ErrorCode::kZeroPoly, "cannot search on the zero polynomial");
  Compiled c;
  c.vars = p.variables();
  if (c.vars.empty()) throw Error(ErrorCode::kUsage, "the equation has no variables");
  if (n_max < 1) throw Error(ErrorCode::kUsage, "N must be at least 1");
  c.degree = p.degree();

  // Every partial or full evaluation is bounded by sum |c| * N^deg; keep it well inside 128 bits.
  Integer bound = 0;
  Integer npow;
  mpz_ui_pow_ui(npow.get_mpz_t(), static_cast<unsigned long>(n_max), c.degree);
  for (const auto& [m, coef] : p.terms()) bound += abs(coef) * npow;
  if (mpz_sizeinbase(bound.get_mpz_t(), 2) > 120) {
    throw LimitError("values of " + p.to_string() + " on {1.." + std::to_string(n_max) +
                         "} exceed 128-bit evaluation",
                     {});
  }
  for (const auto& [m, coef] : p.terms()) {
    CompiledTerm t;
    // |coef| < 2^120 here; assemble from the decimal string to avoid width issues.
    const std::string s = Integer(abs(coef)).get_str();
    for (char ch : s) t.coef = t.coef * 10 + (ch - '0');
    if (coef < 0) t.coef = -t.coef;
    for (const auto& [v, e] : m.factors()) {
      int idx = static_cast<int>(std::lower_bound(c.vars.begin(), c.vars.end(), v) - c.vars.begin());
      t.powers.emplace_back(idx, e);
    }
    c.terms.push_back(std::move(t));
  }
  return c;
}

i128 ipow(i128 base, unsigned e) {
  i128 r = 1;
  while (e--) r *= base;
  return r;
}

class Enumerator {
 public:
  Enumerator(const Compiled& c, int n_max, SolutionMode mode, std::size_t cap)
      : c_(c), n_(n_max), mode_(mode), cap_(cap), values_(c.vars.size(), 0) {
    const int nv = static_cast<int>(c.vars.size());
    last_linear_ = true;
    for (const auto& t : c.terms)
      for (const auto& [v, e] : t.powers)
        if (v == nv - 1 && e > 1) last_linear_ = false;
  }

  std::vector<Tuple> run() {
    rec(0);
    return std::move(out_);
  }

 private:
  // Value of the term's assigned part; unassigned variables contribute their range [1, N^e].
  bool feasible(int depth) const {
    i128 lo = 0, hi = 0;
    for (const auto& t : c_.terms) {
      i128 fixed = t.coef;
      i128 span = 1;
      for (const auto& [v, e] : t.powers) {
        if (v < depth) fixed *= ipow(values_[v], e);
        else span *= ipow(n_, e);
      }
      if (fixed >= 0) {
        lo += fixed;
        hi += fixed * span;
      } else {
        lo += fixed * span;
        hi += fixed;
      }
    }
    return lo <= 0 && hi >= 0;
  }

  bool allowed(int depth, std::int64_t x) const {
    if (mode_ == SolutionMode::kDistinct)
      for (int i = 0; i < depth; ++i)
        if (values_[i] == x) return false;
    return true;
  }

  void emit() {
    if (mode_ == SolutionMode::kNondegenerate &&
        std::all_of(values_.begin(), values_.end(), [&](auto v) { return v == values_[0]; }))
      return;
    if (out_.size() >= cap_) {
      throw LimitError("more than " + std::to_string(cap_) + " solutions up to N=" + std::to_string(n_),
                       {0, out_.size()});
    }
    out_.push_back(values_);
  }

  void rec(int depth) {
    const int nv = static_cast<int>(values_.size());
    if (depth == nv - 1 && last_linear_) {
      solve_last(depth);
      return;
    }
    for (std::int64_t x = 1; x <= n_; ++x) {
      if (!allowed(depth, x)) continue;
      values_[depth] = x;
      if (depth + 1 == nv) {
        if (feasible(nv) ) emit();
      } else if (feasible(depth + 1)) {
        rec(depth + 1);
      }
    }
    values_[depth] = 0;
  }

  void solve_last(int depth) {
    i128 a0 = 0, a1 = 0;
    for (const auto& t : c_.terms) {
      i128 v = t.coef;
      bool has_last = false;
      for (const auto& [idx, e] : t.powers) {
        if (idx == depth) has_last = true;
        else v *= ipow(values_[idx], e);
      }
      (has_last ? a1 : a0) += v;
    }
    if (a1 == 0) {
      if (a0 != 0) return;
      for (std::int64_t x = 1; x <= n_; ++x) {
        if (!allowed(depth, x)) continue;
        values_[depth] = x;
        emit();
      }
    } else {
      if (a0 % a1 != 0) return;
      i128 x = -a0 / a1;
      if (x < 1 || x > n_ || !allowed(depth, static_cast<std::int64_t>(x))) return;
      values_[depth] = static_cast<std::int64_t>(x);
      emit();
    }
    values_[depth] = 0;
  }

  const Compiled& c_;
  std::int64_t n_;
  SolutionMode mode_;
  std::size_t cap_;
  bool last_linear_ = true;
  Tuple values_;
  std::vector<Tuple> out_;
};

// Value sets of solutions, grouped by their largest element. Each entry lists the
// other elements; an empty entry means the largest element alone is a solution.
struct ConstraintIndex {
  int bound = 0;
  std::vector<std::vector<std::vector<int>>> by_max;  // index 1..bound
  std::vector<std::size_t> tuples_upto;               // tuples with max <= i
};

ConstraintIndex build_index(const std::vector<Tuple>& sols, int bound) {
  ConstraintIndex ix;
  ix.bound = bound;
  ix.by_max.assign(bound + 1, {});
  std::vector<std::size_t> count(bound + 1, 0);
  std::set<std::vector<int>> seen;
  for (const auto& t : sols) {
    std::vector<int> vals(t.begin(), t.end());
    std::sort(vals.begin(), vals.end());
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
    ++count[vals.back()];
    if (!seen.insert(vals).second) continue;
    const int mx = vals.back();
    vals.pop_back();
    ix.by_max[mx].push_back(std::move(vals));
  }
  ix.tuples_upto.assign(bound + 1, 0);
  for (int i = 1; i <= bound; ++i) ix.tuples_upto[i] = ix.tuples_upto[i - 1] + count[i];
  return ix;
}

struct SharedBudget {
  std::uint64_t budget = 0;
  std::atomic<std::uint64_t> spent{0};
  std::atomic<bool> exhausted{false};
};

class Colorer {
 public:
  Colorer(const ConstraintIndex& ix, int k, int n, SharedBudget& budget)
      : ix_(ix), k_(k), n_(n), budget_(budget), col_(n + 1, 0) {}

  std::uint64_t nodes() const { return nodes_; }

  // Collects every surviving coloring of 1..depth, in canonical lex order.
  void prefixes(int depth, std::vector<std::vector<int>>& out) {
    target_ = depth;
    collect_ = &out;
    dfs(1, 0);
    collect_ = nullptr;
  }

  // Extends a prefix of length col.size()-1 to 1..n. Returns true with a full coloring.
  bool extend(const std::vector<int>& prefix, const std::atomic<std::size_t>* best, std::size_t my_index) {
    best_ = best;
    my_index_ = my_index;
    std::copy(prefix.begin(), prefix.end(), col_.begin());
    int used = 0;
    for (int i = 1; i < static_cast<int>(prefix.size()); ++i) used = std::max(used, prefix[i]);
    target_ = n_;
    return dfs(static_cast<int>(prefix.size()), used);
  }

  std::vector<int> coloring() const { return std::vector<int>(col_.begin() + 1, col_.end()); }

 private:
  bool ok(int i, int c) const {
    for (const auto& others : ix_.by_max[i]) {
      bool mono = true;
      for (int v : others)
        if (col_[v] != c) {
          mono = false;
          break;
        }
      if (mono) return false;
    }
    return true;
  }

  void charge() {
    if (++nodes_ - flushed_ < 4096) return;
    flush();
  }

  void flush() {
    const std::uint64_t delta = nodes_ - flushed_;
    flushed_ = nodes_;
    if (budget_.spent.fetch_add(delta) + delta > budget_.budget) budget_.exhausted = true;
    if (budget_.exhausted) throw Abort{};
  }

  bool dfs(int i, int used) {
    if (i > target_) {
      if (collect_) {
        collect_->push_back(std::vector<int>(col_.begin(), col_.begin() + i));
        return false;
      }
      return true;
    }
    if (best_ && best_->load() < my_index_) throw Abort{};
    const int top = std::min(k_, used + 1);
    for (int c = 1; c <= top; ++c) {
      charge();
      if (!ok(i, c)) continue;
      col_[i] = c;
      if (dfs(i + 1, std::max(used, c))) return true;
    }
    col_[i] = 0;
    return false;
  }

 public:
  struct Abort {};

  void final_flush() {
    const std::uint64_t delta = nodes_ - flushed_;
    flushed_ = nodes_;
    if (budget_.spent.fetch_add(delta) + delta > budget_.budget) budget_.exhausted = true;
  }

 private:
  const ConstraintIndex& ix_;
  int k_;
  int n_;
  SharedBudget& budget_;
  std::vector<int> col_;
  std::uint64_t nodes_ = 0;
  std::uint64_t flushed_ = 0;
  int target_ = 0;
  std::vector<std::vector<int>>* collect_ = nullptr;
  const std::atomic<std::size_t>* best_ = nullptr;
  std::size_t my_index_ = 0;
};

// Deterministic search on 1..n against an index with bound >= n. The node count is
// the prefix phase plus every work unit up to and including the winning one, so it
// does not depend on the thread count.
SearchOutcome search_indexed(const ConstraintIndex& ix, int k, int n, const SearchOptions& options,
                             std::uint64_t nodes_before) {
  if (k < 1) throw Error(ErrorCode::kUsage, "k must be at least 1");
  SearchOutcome out;
  out.stats.solutions = ix.tuples_upto[n];
  SharedBudget budget;
  budget.budget = options.node_budget > nodes_before ? options.node_budget - nodes_before : 0;

  auto limit = [&](std::uint64_t spent) {
    return LimitError("node budget of " + std::to_string(options.node_budget) + " exhausted at N=" +
                          std::to_string(n),
                      {nodes_before + spent, out.stats.solutions}, n);
  };

  const int depth = std::max(1, std::min(options.split_depth, n));
  std::vector<std::vector<int>> units;
  std::uint64_t prefix_nodes = 0;
  {
    Colorer root(ix, k, n, budget);
    try {
      root.prefixes(depth, units);
      root.final_flush();
    } catch (const Colorer::Abort&) {
      throw limit(budget.spent.load());
    }
    prefix_nodes = root.nodes();
    if (budget.exhausted) throw limit(budget.spent.load());
  }

  const std::size_t none = units.size();
  std::atomic<std::size_t> best{none};
  std::atomic<std::size_t> next{0};
  std::vector<std::uint64_t> unit_nodes(units.size(), 0);
  std::vector<std::vector<int>> found(units.size());
  std::mutex err_mu;
  std::exception_ptr err;

  auto worker = [&]() {
    try {
      for (;;) {
        const std::size_t j = next.fetch_add(1);
        if (j >= units.size() || j > best.load()) return;
        if (budget.exhausted) return;
        Colorer c(ix, k, n, budget);
        bool hit = false;
        try {
          hit = c.extend(units[j], &best, j);
          c.final_flush();
        } catch (const Colorer::Abort&) {
        }
        unit_nodes[j] = c.nodes();
        if (hit) {
          found[j] = c.coloring();
          std::size_t cur = best.load();
          while (j < cur && !best.compare_exchange_weak(cur, j)) {
          }
        }
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(err_mu);
      if (!err) err = std::current_exception();
    }
  };

  const unsigned threads = std::max(1u, options.threads);
  if (threads == 1 || units.size() <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < std::min<std::size_t>(threads, units.size()); ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (err) std::rethrow_exception(err);

  const std::size_t win = best.load();
  std::uint64_t total = prefix_nodes;
  for (std::size_t j = 0; j < units.size() && j <= win; ++j) total += unit_nodes[j];
  if (budget.exhausted || total > budget.budget) throw limit(std::max<std::uint64_t>(total, budget.spent.load()));

  out.stats.nodes = total;
  if (win != none) {
    out.kind = OutcomeKind::kWitness;
    out.witness = Coloring{found[win]};
  } else {
    out.kind = OutcomeKind::kForced;
  }
  return out;
}

}  // namespace

std::string_view mode_name(SolutionMode m) {
  switch (m) {
    case SolutionMode::kAny: return "ANY";
    case SolutionMode::kDistinct: return "DISTINCT";
    case SolutionMode::kNondegenerate: return "NONDEGENERATE";
  }
  return "?";
}

SolutionMode parse_mode(std::string_view s) {
  std::string up;
  for (char ch : s) up += static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  for (auto m : {SolutionMode::kAny, SolutionMode::kDistinct, SolutionMode::kNondegenerate})
    if (mode_name(m) == up) return m;
  throw Error(ErrorCode::kUsage, "unknown mode '" + std::string(s) + "' (ANY, DISTINCT, NONDEGENERATE)");
}

bool is_canonical(const Coloring& c) {
  int used = 0;
  for (int x : c.colors) {
    if (x < 1 || x > used + 1) return false;
    used = std::max(used, x);
  }
  return true;
}

std::string format_classes(const Coloring& c) {
  int k = 0;
  for (int x : c.colors) k = std::max(k, x);
  std::string s;
  for (int color = 1; color <= k; ++color) {
    if (color > 1) s += "/";
    s += "{";
    bool first = true;
    for (int i = 0; i < c.n(); ++i) {
      if (c.colors[i] != color) continue;
      if (!first) s += ",";
      s += std::to_string(i + 1);
      first = false;
    }
    s += "}";
  }
  return s;
}

std::vector<Tuple> enumerate_solutions(const Polynomial& p, int n_max, SolutionMode mode,
                                       const SearchOptions& options) {
  const Compiled c = compile(p, n_max);
  return Enumerator(c, n_max, mode, options.max_solutions).run();
}

std::optional<Tuple> check_coloring(const Polynomial& p, const Coloring& col, SolutionMode mode) {
  if (col.n() < 1) return std::nullopt;
  for (const auto& t : enumerate_solutions(p, col.n(), mode)) {
    const int c0 = col.colors[t[0] - 1];
    if (std::all_of(t.begin(), t.end(), [&](std::int64_t v) { return col.colors[v - 1] == c0; })) return t;
  }
  return std::nullopt;
}

SearchOutcome find_avoiding_coloring(const Polynomial& p, int k, int n_max, SolutionMode mode,
                                     const SearchOptions& options) {
  if (k < 1) throw Error(ErrorCode::kUsage, "k must be at least 1");
  const auto sols = enumerate_solutions(p, n_max, mode, options);
  const ConstraintIndex ix = build_index(sols, n_max);
  return search_indexed(ix, k, n_max, options, 0);
}

RadoNumberResult rado_number(const Polynomial& p, int k, SolutionMode mode, int max_n, const SearchOptions& options) {
  if (k < 1) throw Error(ErrorCode::kUsage, "k must be at least 1");
  if (max_n < 1) throw Error(ErrorCode::kUsage, "max N must be at least 1");
  RadoNumberResult res;
  ConstraintIndex ix;
  std::optional<Coloring> last_witness;
  for (int n = 1; n <= max_n; ++n) {
    if (n > ix.bound) {
      // Solutions with max <= bound do not depend on the bound, so grow it geometrically.
      const int bound = std::min(max_n, std::max(16, 2 * ix.bound));
      try {
        ix = build_index(enumerate_solutions(p, bound, mode, options), bound);
      } catch (const LimitError& e) {
        throw LimitError(e.what(), {res.stats.nodes, e.stats().solutions}, n);
      }
    }
    SearchOutcome o = search_indexed(ix, k, n, options, res.stats.nodes);
    res.stats.nodes += o.stats.nodes;
    res.stats.solutions = o.stats.solutions;
    if (o.kind == OutcomeKind::kForced) {
      res.n_star = n;
      res.witness = last_witness;
      return res;
    }
    last_witness = o.witness;
  }
  res.witness = last_witness;
  return res;
}

}  // namespace partreg
