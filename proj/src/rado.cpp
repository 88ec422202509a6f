#include "partreg/rado.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "partreg/error.hpp"

namespace partreg {

using nlohmann::json;

std::string_view pr_status_name(PrStatus s) {
  switch (s) {
    case PrStatus::kPr: return "PR";
    case PrStatus::kNotPr: return "NOT_PR";
    case PrStatus::kUnknown: return "UNKNOWN";
  }
  return "UNKNOWN";
}

namespace {

using i128 = __int128;
using Mask = std::uint64_t;

// For sets of equal size, the one holding the lowest differing index is the
// lexicographically smaller sorted list. With all low-half indices below all
// high-half ones this also orders combined masks correctly.
bool lex_less(Mask a, Mask b) {
  Mask diff = a ^ b;
  if (diff == 0) return false;
  return (a & (diff & (~diff + 1))) != 0;
}

std::vector<i128> subset_sums(const std::vector<i128>& c, std::size_t lo, std::size_t count) {
  std::vector<i128> sums(std::size_t{1} << count, 0);
  for (Mask m = 1; m < sums.size(); ++m) {
    int bit = __builtin_ctzll(m);
    sums[m] = sums[m & (m - 1)] + c[lo + bit];
  }
  return sums;
}

}  // namespace

std::optional<std::vector<std::size_t>> min_zero_sum_subset(const std::vector<Integer>& coeffs) {
  const std::size_t n = coeffs.size();
  if (n > kMaxRadoVars) {
    throw Error(ErrorCode::kTooManyVars,
                std::to_string(n) + " variables; exhaustive subset search supports at most 40");
  }
  std::vector<i128> c;
  c.reserve(n);
  const Integer limit = Integer(1) << 62;
  for (const auto& a : coeffs) {
    if (a == 0) throw Error(ErrorCode::kZeroCoeff, "zero coefficient in linear form");
    if (abs(a) >= limit) throw Error(ErrorCode::kCoeffRange, "coefficient " + a.get_str() + " exceeds 2^62");
    c.push_back(static_cast<i128>(a.get_si()));
  }

  const std::size_t low_n = n / 2;
  const std::size_t high_n = n - low_n;
  const auto low_sums = subset_sums(c, 0, low_n);
  const auto high_sums = subset_sums(c, low_n, high_n);

  struct Entry {
    i128 sum;
    unsigned size;
    Mask mask;  // high-half mask, unshifted
  };
  std::vector<Entry> table;
  table.reserve(high_sums.size());
  for (Mask m = 0; m < high_sums.size(); ++m) {
    table.push_back({high_sums[m], static_cast<unsigned>(__builtin_popcountll(m)), m});
  }
  std::sort(table.begin(), table.end(), [](const Entry& a, const Entry& b) {
    if (a.sum != b.sum) return a.sum < b.sum;
    if (a.size != b.size) return a.size < b.size;
    return lex_less(a.mask, b.mask);
  });
  // Keep the lex-least mask per (sum, size).
  table.erase(std::unique(table.begin(), table.end(),
                          [](const Entry& a, const Entry& b) { return a.sum == b.sum && a.size == b.size; }),
              table.end());

  unsigned best_size = 0;
  Mask best_mask = 0;
  bool found = false;
  for (Mask a = 0; a < low_sums.size(); ++a) {
    const i128 need = -low_sums[a];
    const unsigned a_size = static_cast<unsigned>(__builtin_popcountll(a));
    auto it = std::lower_bound(table.begin(), table.end(), need,
                               [](const Entry& e, i128 v) { return e.sum < v; });
    for (; it != table.end() && it->sum == need; ++it) {
      if (a == 0 && it->size == 0) continue;
      const unsigned total = a_size + it->size;
      const Mask combined = a | (it->mask << low_n);
      if (!found || total < best_size || (total == best_size && lex_less(combined, best_mask))) {
        found = true;
        best_size = total;
        best_mask = combined;
      }
      break;  // sizes ascend; larger sizes for the same a cannot win
    }
  }
  if (!found) return std::nullopt;
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < n; ++i)
    if (best_mask & (Mask{1} << i)) out.push_back(i);
  return out;
}

RadoVerdict rado_decide(const Polynomial& p) {
  if (p.is_zero()) throw Error(ErrorCode::kZeroPoly, "Rado's criterion needs a nonzero linear form");
  const auto cv = p.coefficient_vector();
  std::vector<Integer> coeffs;
  for (const auto& [name, a] : cv) coeffs.push_back(a);
  RadoVerdict v;
  auto subset = min_zero_sum_subset(coeffs);
  if (subset) {
    v.status = PrStatus::kPr;
    for (auto i : *subset) v.witness_vars.push_back(cv[i].first);
    v.witness_subset = std::move(subset);
  }
  return v;
}

Certificate make_rlin(const Polynomial& p, const RadoVerdict& verdict) {
  Certificate c;
  c.root = p;
  c.rule = Rule::kRLin;
  c.data = json{{"J", verdict.witness_vars}};
  return c;
}

std::optional<LiftShape> match_lift_shape(const Polynomial& p) {
  if (p.is_zero() || p.constant_term() != 0) return std::nullopt;
  std::map<std::string, int> occurrences;
  for (const auto& [m, c] : p.terms())
    for (const auto& f : m.factors()) ++occurrences[f.first];

  std::vector<std::pair<std::string, Integer>> base_terms;
  std::vector<std::vector<std::string>> rests;
  std::set<std::string> aux_set;
  for (const auto& [m, c] : p.terms()) {
    std::optional<std::string> chosen;
    for (const auto& [name, e] : m.factors()) {
      if (e == 1 && occurrences[name] == 1) {
        chosen = name;
        break;  // factors are sorted, so this is the least candidate
      }
    }
    if (!chosen) return std::nullopt;
    std::vector<std::string> rest;
    for (const auto& [name, e] : m.factors()) {
      if (name == *chosen) continue;
      if (e != 1) return std::nullopt;
      rest.push_back(name);
      aux_set.insert(name);
    }
    base_terms.emplace_back(*chosen, c);
    rests.push_back(std::move(rest));
  }

  LiftShape shape;
  shape.aux.assign(aux_set.begin(), aux_set.end());
  std::vector<std::size_t> order(base_terms.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return base_terms[a].first < base_terms[b].first; });
  for (auto i : order) {
    const auto& [x, a] = base_terms[i];
    shape.base = shape.base + Polynomial::term(a, Monomial::variable(x));
    shape.x_vars.push_back(x);
    std::vector<std::size_t> f;
    for (const auto& y : rests[i]) {
      auto pos = std::lower_bound(shape.aux.begin(), shape.aux.end(), y) - shape.aux.begin();
      f.push_back(static_cast<std::size_t>(pos) + 1);
    }
    shape.f_sets.push_back(std::move(f));
  }
  return shape;
}

namespace {

class Deriver {
 public:
  explicit Deriver(const DeriveOptions& options) : options_(options) {}

  std::optional<Certificate> derive(const Polynomial& p) {
    if (++steps_ > options_.budget) return std::nullopt;
    if (p.is_zero() || p.constant_term() != 0) return std::nullopt;

    if (p.is_linear()) return linear(p);
    if (auto c = lift(p)) return c;
    if (auto c = disjoint_sum(p)) return c;
    return multiple(p);
  }

 private:
  std::optional<Certificate> linear(const Polynomial& p) {
    if (p.variables().size() > kMaxRadoVars) return std::nullopt;
    RadoVerdict v;
    try {
      v = rado_decide(p);
    } catch (const Error&) {
      return std::nullopt;
    }
    if (v.status != PrStatus::kPr) return std::nullopt;
    return make_rlin(p, v);
  }

  std::optional<Certificate> lift(const Polynomial& p) {
    auto shape = match_lift_shape(p);
    if (!shape) return std::nullopt;
    const std::size_t n = shape->x_vars.size();
    if (n < 2) return std::nullopt;
    if (n == 2 && shape->f_sets[0].empty() && shape->f_sets[1].empty()) return std::nullopt;
    auto base_cert = linear(shape->base);
    if (!base_cert) return std::nullopt;
    Certificate c;
    c.root = p;
    c.rule = Rule::kCLift;
    c.data = json{{"base", shape->base.to_string()},
                  {"x", shape->x_vars},
                  {"aux", shape->aux},
                  {"F", shape->f_sets}};
    c.premises.push_back(std::move(*base_cert));
    return c;
  }

  std::optional<Certificate> disjoint_sum(const Polynomial& p) {
    // Union-find over monomials that share a variable.
    std::vector<std::pair<Monomial, Integer>> terms(p.terms().begin(), p.terms().end());
    std::vector<std::size_t> parent(terms.size());
    for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = i;
    auto find = [&](std::size_t i) {
      while (parent[i] != i) i = parent[i] = parent[parent[i]];
      return i;
    };
    std::map<std::string, std::size_t> owner;
    for (std::size_t i = 0; i < terms.size(); ++i) {
      for (const auto& f : terms[i].first.factors()) {
        auto [it, inserted] = owner.try_emplace(f.first, i);
        if (!inserted) parent[find(i)] = find(it->second);
      }
    }
    std::map<std::size_t, Polynomial> by_root;
    for (std::size_t i = 0; i < terms.size(); ++i) {
      auto& part = by_root[find(i)];
      part = part + Polynomial::term(terms[i].second, terms[i].first);
    }
    if (by_root.size() < 2) return std::nullopt;

    std::vector<Polynomial> parts;
    for (auto& [r, q] : by_root) parts.push_back(std::move(q));
    std::sort(parts.begin(), parts.end(),
              [](const Polynomial& a, const Polynomial& b) { return a.variables().front() < b.variables().front(); });

    std::map<unsigned, std::vector<Certificate>> by_degree;
    for (const auto& q : parts) {
      if (!q.is_homogeneous()) return std::nullopt;
      auto c = derive(q);
      if (!c) return std::nullopt;
      by_degree[q.degree()].push_back(std::move(*c));
    }
    if (by_degree.size() > 2) return std::nullopt;

    std::vector<Certificate> groups;
    for (auto& [d, certs] : by_degree) {
      Certificate acc = std::move(certs.front());
      for (std::size_t i = 1; i < certs.size(); ++i) acc = sum_node(std::move(acc), std::move(certs[i]), true);
      groups.push_back(std::move(acc));
    }
    if (groups.size() == 1) return groups.front();
    return sum_node(std::move(groups[0]), std::move(groups[1]), false);
  }

  static Certificate sum_node(Certificate left, Certificate right, bool homogeneous) {
    Certificate c;
    c.root = left.root + right.root;
    c.rule = Rule::kCSum;
    c.data = json{{"left", left.root.to_string()},
                  {"right", right.root.to_string()},
                  {"homogeneous", homogeneous}};
    c.premises.push_back(std::move(left));
    c.premises.push_back(std::move(right));
    return c;
  }

  std::optional<Certificate> multiple(const Polynomial& p) {
    for (const auto& h : options_.hints) {
      if (h.is_zero() || h.size() == 0 || h == p || h == -p) continue;
      if (h.terms().begin()->first.is_constant()) continue;
      auto cofactor = p.exact_divide(h);
      if (!cofactor || *cofactor == Polynomial::constant(1) || *cofactor == Polynomial::constant(-1)) continue;
      auto hc = derive(h);
      if (!hc) continue;
      Certificate c;
      c.root = p;
      c.rule = Rule::kCMult;
      c.data = json{{"divisor", h.to_string()}, {"cofactor", cofactor->to_string()}};
      c.premises.push_back(std::move(*hc));
      return c;
    }
    return std::nullopt;
  }

  const DeriveOptions& options_;
  std::size_t steps_ = 0;
};

}  // namespace

std::optional<Certificate> derive_certificate(const Polynomial& p, const DeriveOptions& options) {
  if (p.is_zero()) throw Error(ErrorCode::kZeroPoly, "the zero polynomial is outside partition-regularity questions");
  if (p.constant_term() != 0) throw Error(ErrorCode::kConstTerm, p.to_string() + " has a nonzero constant term");
  Deriver d(options);
  return d.derive(p);
}

}  // namespace partreg
