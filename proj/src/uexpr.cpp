#include <algorithm>
#include <numeric>

#include "partreg/error.hpp"
#include "partreg/hypergen.hpp"

namespace partreg {

using Kind = UExpr::Kind;

std::string Assumptions::ultrafilter(const std::string& symbol) const {
  auto it = ultrafilter_of.find(symbol);
  return it == ultrafilter_of.end() ? symbol : it->second;
}

bool Assumptions::add_idem(const std::string& u) const {
  auto it = additively_idempotent.find(u);
  return it != additively_idempotent.end() && it->second;
}

bool Assumptions::mult_idem(const std::string& u) const {
  auto it = multiplicatively_idempotent.find(u);
  return it != multiplicatively_idempotent.end() && it->second;
}

UExpr UExpr::base(std::string name) {
  UExpr e;
  e.kind = Kind::kBase;
  e.name = std::move(name);
  return e;
}

UExpr UExpr::oplus(std::vector<UExpr> args) {
  UExpr e;
  e.kind = Kind::kOplus;
  e.args = std::move(args);
  return e;
}

UExpr UExpr::odot(std::vector<UExpr> args) {
  UExpr e;
  e.kind = Kind::kOdot;
  e.args = std::move(args);
  return e;
}

UExpr UExpr::scale(Integer n, UExpr arg) {
  UExpr e;
  e.kind = Kind::kScale;
  e.factor = std::move(n);
  e.args.push_back(std::move(arg));
  return e;
}

bool UExpr::operator==(const UExpr& o) const {
  if (kind != o.kind) return false;
  switch (kind) {
    case Kind::kBase: return name == o.name;
    case Kind::kScale: return factor == o.factor && args == o.args;
    default: return args == o.args;
  }
}

std::string UExpr::to_string() const {
  switch (kind) {
    case Kind::kBase: return name;
    case Kind::kScale: return "SCALE(" + factor.get_str() + "," + args[0].to_string() + ")";
    case Kind::kOplus:
    case Kind::kOdot: {
      std::string s = kind == Kind::kOplus ? "OPLUS(" : "ODOT(";
      for (std::size_t i = 0; i < args.size(); ++i) s += (i ? "," : "") + args[i].to_string();
      return s + ")";
    }
  }
  return "?";
}

std::string UExpr::pretty() const {
  switch (kind) {
    case Kind::kBase: return name;
    case Kind::kScale: {
      const std::string inner = args[0].pretty();
      return factor.get_str() + (args[0].kind == Kind::kBase ? inner : "(" + inner + ")");
    }
    case Kind::kOplus:
    case Kind::kOdot: {
      const char* op = kind == Kind::kOplus ? " (+) " : " (.) ";
      std::string s;
      for (std::size_t i = 0; i < args.size(); ++i) {
        std::string a = args[i].pretty();
        if (args[i].kind == Kind::kOplus || args[i].kind == Kind::kOdot) a = "(" + a + ")";
        s += (i ? op : "") + a;
      }
      return s;
    }
  }
  return "?";
}

namespace {

bool add_idempotent(const UExpr& e, const Assumptions& a) {
  if (e.kind == Kind::kBase) return a.add_idem(e.name);
  // nU (+) nU = n(U (+) U) = nU
  return e.kind == Kind::kScale && e.args[0].kind == Kind::kBase && a.add_idem(e.args[0].name);
}

Integer outer_scale(const UExpr& e) { return e.kind == Kind::kScale ? e.factor : Integer(1); }

UExpr strip_scale(const UExpr& e, const Integer& g) {
  if (e.kind != Kind::kScale) return e;  // only reached with g == 1
  return UExpr::scale(e.factor / g, e.args[0]);
}

std::optional<UExpr> flatten(const UExpr& e, Kind k) {
  if (e.kind != k) return std::nullopt;
  for (std::size_t i = 0; i < e.args.size(); ++i) {
    if (e.args[i].kind != k) continue;
    UExpr out = e;
    out.args.erase(out.args.begin() + static_cast<long>(i));
    out.args.insert(out.args.begin() + static_cast<long>(i), e.args[i].args.begin(), e.args[i].args.end());
    return out;
  }
  return std::nullopt;
}

}  // namespace

std::optional<UExpr> apply_rule_at_root(URule rule, const UExpr& e, const Assumptions& asm_) {
  switch (rule) {
    case URule::kFlattenOplus: return flatten(e, Kind::kOplus);
    case URule::kFlattenOdot: return flatten(e, Kind::kOdot);
    case URule::kScaleOne:
      if (e.kind == Kind::kScale && e.factor == 1) return e.args[0];
      return std::nullopt;
    case URule::kScaleCompose:
      if (e.kind == Kind::kScale && e.args[0].kind == Kind::kScale)
        return UExpr::scale(e.factor * e.args[0].factor, e.args[0].args[0]);
      return std::nullopt;
    case URule::kScaleDistribute: {
      if (e.kind != Kind::kScale || e.args[0].kind != Kind::kOplus) return std::nullopt;
      std::vector<UExpr> parts;
      for (const auto& x : e.args[0].args) parts.push_back(UExpr::scale(e.factor, x));
      return UExpr::oplus(std::move(parts));
    }
    case URule::kScaleHoist: {
      if (e.kind != Kind::kOdot) return std::nullopt;
      for (std::size_t i = 0; i < e.args.size(); ++i) {
        if (e.args[i].kind != Kind::kScale) continue;
        UExpr inner = e;
        inner.args[i] = e.args[i].args[0];
        return UExpr::scale(e.args[i].factor, std::move(inner));
      }
      return std::nullopt;
    }
    case URule::kGcdHoist: {
      if (e.kind != Kind::kOdot) return std::nullopt;
      for (std::size_t i = 0; i < e.args.size(); ++i) {
        const UExpr& sum = e.args[i];
        if (sum.kind != Kind::kOplus) continue;
        Integer g = 0;
        for (const auto& x : sum.args) g = gcd(g, outer_scale(x));
        if (g <= 1) continue;
        UExpr inner = e;
        for (auto& x : inner.args[i].args) x = strip_scale(x, g);
        return UExpr::scale(g, std::move(inner));
      }
      return std::nullopt;
    }
    case URule::kMergeOplus:
    case URule::kMergeOdot: {
      const Kind k = rule == URule::kMergeOplus ? Kind::kOplus : Kind::kOdot;
      if (e.kind != k) return std::nullopt;
      for (std::size_t i = 0; i + 1 < e.args.size(); ++i) {
        const UExpr& x = e.args[i];
        if (!(x == e.args[i + 1])) continue;
        const bool ok = k == Kind::kOplus ? add_idempotent(x, asm_)
                                          : (x.kind == Kind::kBase && asm_.mult_idem(x.name));
        if (!ok) continue;
        UExpr out = e;
        out.args.erase(out.args.begin() + static_cast<long>(i) + 1);
        return out;
      }
      return std::nullopt;
    }
    case URule::kUnwrap:
      if ((e.kind == Kind::kOplus || e.kind == Kind::kOdot) && e.args.size() == 1) return e.args[0];
      return std::nullopt;
  }
  return std::nullopt;
}

namespace {

constexpr URule kAllRules[] = {URule::kFlattenOplus, URule::kFlattenOdot,    URule::kScaleOne,  URule::kScaleCompose,
                               URule::kScaleDistribute, URule::kScaleHoist, URule::kGcdHoist, URule::kMergeOplus,
                               URule::kMergeOdot,   URule::kUnwrap};
static_assert(std::size(kAllRules) == kURuleCount);

// Innermost-first: rewrite children, then the root, until nothing applies.
bool step_innermost(UExpr& e, const Assumptions& a) {
  for (auto& c : e.args)
    if (step_innermost(c, a)) return true;
  for (URule r : kAllRules) {
    if (auto out = apply_rule_at_root(r, e, a)) {
      e = std::move(*out);
      return true;
    }
  }
  return false;
}

struct Redex {
  std::vector<std::size_t> path;
  URule rule;
};

void collect_redexes(const UExpr& e, std::vector<std::size_t>& path, const Assumptions& a, std::vector<Redex>& out) {
  for (URule r : kAllRules)
    if (apply_rule_at_root(r, e, a)) out.push_back({path, r});
  for (std::size_t i = 0; i < e.args.size(); ++i) {
    path.push_back(i);
    collect_redexes(e.args[i], path, a, out);
    path.pop_back();
  }
}

}  // namespace

UExpr normalize(const UExpr& e, const Assumptions& asm_) {
  UExpr cur = e;
  while (step_innermost(cur, asm_)) {
  }
  return cur;
}

UExpr normalize_random(const UExpr& e, const Assumptions& asm_, std::mt19937_64& rng) {
  UExpr cur = e;
  for (;;) {
    std::vector<Redex> redexes;
    std::vector<std::size_t> path;
    collect_redexes(cur, path, asm_, redexes);
    if (redexes.empty()) return cur;
    const Redex& pick = redexes[std::uniform_int_distribution<std::size_t>(0, redexes.size() - 1)(rng)];
    UExpr* node = &cur;
    for (auto i : pick.path) node = &node->args[i];
    *node = *apply_rule_at_root(pick.rule, *node, asm_);
  }
}

namespace {

using Mono = HyperTerm::Monomial;

unsigned min_level(const Mono& m) {
  unsigned lo = m.front().first.level;
  for (const auto& [a, e] : m) lo = std::min(lo, a.level);
  return lo;
}

unsigned max_level(const Mono& m) {
  unsigned hi = 0;
  for (const auto& [a, e] : m) hi = std::max(hi, a.level);
  return hi;
}

Integer content(const HyperTerm& t) {
  Integer g = 0;
  for (const auto& [m, c] : t.terms()) g = gcd(g, c);
  return g;
}

[[noreturn]] void no_decomposition(const HyperTerm& t, const std::string& why) {
  throw Error(ErrorCode::kNoDecomposition, t.to_string() + ": " + why);
}

UExpr infer_raw(const HyperTerm& t, const Assumptions& a);

// One monomial c * A_1 * ... * A_r: atoms must sit on distinct levels, giving
// c (A_1 (.) ... (.) A_r) in level order.
UExpr infer_monomial(const Mono& m, const Integer& c, const HyperTerm& whole, const Assumptions& a) {
  std::vector<std::pair<unsigned, std::string>> by_level;
  for (const auto& [atom, e] : m) {
    if (e > 1) no_decomposition(whole, "atom " + to_string(atom) + " is repeated");
    by_level.emplace_back(atom.level, atom.base);
  }
  std::sort(by_level.begin(), by_level.end());
  std::vector<UExpr> factors;
  for (std::size_t i = 0; i < by_level.size(); ++i) {
    if (i > 0 && by_level[i].first == by_level[i - 1].first)
      no_decomposition(whole, "two atoms share level " + std::to_string(by_level[i].first));
    factors.push_back(UExpr::base(a.ultrafilter(by_level[i].second)));
  }
  UExpr core = factors.size() == 1 ? factors[0] : UExpr::odot(std::move(factors));
  return UExpr::scale(c, std::move(core));
}

// A block whose monomials all overlap in level: look for the lowest cut T with
// t = K * A * B, A below T and B at or above T.
UExpr infer_product_block(const HyperTerm& t, const Assumptions& a) {
  unsigned lo = ~0u, hi = 0;
  for (const auto& [m, c] : t.terms()) {
    lo = std::min(lo, min_level(m));
    hi = std::max(hi, max_level(m));
  }
  const Integer k = content(t);
  for (unsigned cut = lo + 1; cut <= hi; ++cut) {
    std::map<Mono, std::map<Mono, Integer>> matrix;
    std::map<Mono, Integer> col_gcd;
    bool ok = true;
    for (const auto& [m, c] : t.terms()) {
      Mono low, high;
      for (const auto& f : m) (f.first.level < cut ? low : high).push_back(f);
      if (low.empty() || high.empty()) {
        ok = false;
        break;
      }
      matrix[low][high] = c / k;
    }
    if (!ok) continue;
    std::map<Mono, Integer> row_gcd;
    for (const auto& [low, row] : matrix)
      for (const auto& [high, v] : row) {
        row_gcd[low] = gcd(row_gcd[low], v);
        col_gcd[high] = gcd(col_gcd[high], v);
      }
    for (const auto& [low, row] : matrix) {
      if (row.size() != col_gcd.size()) {
        ok = false;
        break;
      }
      for (const auto& [high, v] : row)
        if (v != row_gcd[low] * col_gcd[high]) ok = false;
    }
    if (!ok) continue;
    HyperTerm::TermMap left, right;
    for (const auto& [low, g] : row_gcd) left.emplace(low, g);
    for (const auto& [high, g] : col_gcd) right.emplace(high, g);
    UExpr prod = UExpr::odot({infer_raw(HyperTerm(std::move(left)), a), infer_raw(HyperTerm(std::move(right)), a)});
    return UExpr::scale(k, std::move(prod));
  }
  no_decomposition(t, "levels interleave without a sum or product split");
}

UExpr infer_raw(const HyperTerm& t, const Assumptions& a) {
  if (t.is_zero()) no_decomposition(t, "zero term");
  for (const auto& [m, c] : t.terms()) {
    if (m.empty()) no_decomposition(t, "standard summand " + c.get_str());
    if (c < 0) no_decomposition(t, "negative coefficient");
  }
  // Level intervals of the monomials; overlapping intervals form one block.
  std::vector<std::pair<std::pair<unsigned, unsigned>, Mono>> spans;
  for (const auto& [m, c] : t.terms()) spans.push_back({{min_level(m), max_level(m)}, m});
  std::sort(spans.begin(), spans.end());
  std::vector<HyperTerm::TermMap> blocks;
  unsigned reach = 0;
  for (const auto& [iv, m] : spans) {
    if (blocks.empty() || iv.first > reach) {
      blocks.emplace_back();
      reach = iv.second;
    }
    reach = std::max(reach, iv.second);
    blocks.back().emplace(m, t.terms().at(m));
  }
  if (blocks.size() > 1) {
    std::vector<UExpr> parts;
    for (auto& b : blocks) parts.push_back(infer_raw(HyperTerm(std::move(b)), a));
    return UExpr::oplus(std::move(parts));
  }
  if (t.terms().size() == 1) return infer_monomial(t.terms().begin()->first, t.terms().begin()->second, t, a);
  return infer_product_block(t, a);
}

}  // namespace

UExpr infer_class(const HyperTerm& t, const Assumptions& asm_) { return normalize(infer_raw(t, asm_), asm_); }

}  // namespace partreg
