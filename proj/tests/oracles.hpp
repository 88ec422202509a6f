#pragma once

// Brute-force reference implementations. Deliberately naive and independent of
// the library's search and Rado code paths.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "partreg/hypergen.hpp"
#include "partreg/poly.hpp"
#include "partreg/search.hpp"

namespace oracle {

using partreg::Integer;
using partreg::Polynomial;
using partreg::SolutionMode;
using partreg::Tuple;

// Every nonempty subset, smallest first, then lexicographically least index list.
inline std::optional<std::vector<std::size_t>> zero_subset(const std::vector<long long>& a) {
  const std::size_t n = a.size();
  std::optional<std::vector<std::size_t>> best;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    long long s = 0;
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1) {
        s += a[i];
        idx.push_back(i);
      }
    if (s != 0) continue;
    if (!best || idx.size() < best->size() || (idx.size() == best->size() && idx < *best)) best = idx;
  }
  return best;
}

struct IntTerm {
  long long coef;
  std::vector<std::pair<std::size_t, unsigned>> powers;
};

inline std::vector<IntTerm> int_terms(const Polynomial& p) {
  const auto vars = p.variables();
  std::vector<IntTerm> out;
  for (const auto& [m, c] : p.terms()) {
    IntTerm t{c.get_si(), {}};
    for (const auto& [v, e] : m.factors())
      t.powers.emplace_back(std::find(vars.begin(), vars.end(), v) - vars.begin(), e);
    out.push_back(t);
  }
  return out;
}

inline long long eval(const std::vector<IntTerm>& terms, const std::vector<long long>& x) {
  long long s = 0;
  for (const auto& t : terms) {
    long long v = t.coef;
    for (const auto& [i, e] : t.powers)
      for (unsigned r = 0; r < e; ++r) v *= x[i];
    s += v;
  }
  return s;
}

inline bool mode_ok(const std::vector<long long>& x, SolutionMode mode) {
  if (mode == SolutionMode::kAny) return true;
  if (mode == SolutionMode::kNondegenerate)
    return !std::all_of(x.begin(), x.end(), [&](long long v) { return v == x[0]; });
  auto s = x;
  std::sort(s.begin(), s.end());
  return std::adjacent_find(s.begin(), s.end()) == s.end();
}

// All of {1..N}^n, odometer order (which is lexicographic).
inline std::vector<Tuple> solutions(const Polynomial& p, int n, SolutionMode mode) {
  const auto terms = int_terms(p);
  const std::size_t nv = p.variables().size();
  std::vector<long long> x(nv, 1);
  std::vector<Tuple> out;
  for (;;) {
    if (eval(terms, x) == 0 && mode_ok(x, mode)) out.emplace_back(x.begin(), x.end());
    std::size_t i = nv;
    while (i > 0 && x[i - 1] == n) x[--i] = 1;
    if (i == 0) break;
    ++x[i - 1];
  }
  return out;
}

inline bool monochromatic(const Tuple& t, const std::vector<int>& colors) {
  return std::all_of(t.begin(), t.end(), [&](std::int64_t v) { return colors[v - 1] == colors[t[0] - 1]; });
}

// Calls f on every canonical coloring of {1..n} with at most k colors, in lex order.
template <class F>
bool for_each_canonical(int n, int k, F&& f) {
  std::vector<int> col(n, 1);
  std::vector<int> prefix_max(n, 1);
  for (;;) {
    if (f(col)) return true;
    int i = n - 1;
    for (; i >= 1; --i) {
      const int top = std::min(k, prefix_max[i - 1] + 1);
      if (col[i] < top) break;
    }
    if (i < 1) return false;
    ++col[i];
    prefix_max[i] = std::max(prefix_max[i - 1], col[i]);
    for (int j = i + 1; j < n; ++j) {
      col[j] = 1;
      prefix_max[j] = prefix_max[j - 1];
    }
  }
}

// Canonically least avoiding coloring by plain enumeration, or nullopt if forced.
inline std::optional<std::vector<int>> naive_avoiding(const std::vector<Tuple>& sols_upto_n, int n, int k) {
  std::optional<std::vector<int>> found;
  for_each_canonical(n, k, [&](const std::vector<int>& col) {
    for (const auto& t : sols_upto_n)
      if (monochromatic(t, col)) return false;
    found = col;
    return true;
  });
  return found;
}

inline std::vector<Tuple> restrict_max(const std::vector<Tuple>& sols, int n) {
  std::vector<Tuple> out;
  for (const auto& t : sols)
    if (*std::max_element(t.begin(), t.end()) <= n) out.push_back(t);
  return out;
}

// Random polynomial over the given variables.
inline Polynomial random_poly(std::mt19937_64& rng, const std::vector<std::string>& vars, int max_terms,
                              unsigned max_deg, int max_coef) {
  std::uniform_int_distribution<int> nterms(0, max_terms);
  std::uniform_int_distribution<int> coef(-max_coef, max_coef);
  std::uniform_int_distribution<unsigned> deg(0, max_deg);
  std::uniform_int_distribution<std::size_t> var(0, vars.size() - 1);
  Polynomial p;
  const int t = nterms(rng);
  for (int i = 0; i < t; ++i) {
    std::vector<partreg::Monomial::Factor> fs;
    const unsigned d = deg(rng);
    for (unsigned j = 0; j < d; ++j) fs.emplace_back(vars[var(rng)], 1);
    p = p + Polynomial::term(coef(rng), partreg::Monomial(fs));
  }
  return p;
}

// Random nonzero homogeneous polynomial of degree d using every listed variable.
inline Polynomial random_homogeneous(std::mt19937_64& rng, const std::vector<std::string>& vars, unsigned d,
                                     int max_terms, int max_coef) {
  std::uniform_int_distribution<int> coef(-max_coef, max_coef);
  std::uniform_int_distribution<std::size_t> var(0, vars.size() - 1);
  std::uniform_int_distribution<int> nterms(1, max_terms);
  for (;;) {
    Polynomial p;
    const int t = nterms(rng);
    for (int i = 0; i < t; ++i) {
      std::vector<partreg::Monomial::Factor> fs;
      for (unsigned j = 0; j < d; ++j) fs.emplace_back(vars[var(rng)], 1);
      p = p + Polynomial::term(coef(rng), partreg::Monomial(fs));
    }
    // Tie in every variable so that vars(p) is the full list.
    for (const auto& v : vars) {
      const auto present = p.variables();
      if (std::find(present.begin(), present.end(), v) != present.end()) continue;
      p = p + Polynomial::term(std::max(1, std::abs(coef(rng))), partreg::Monomial({{v, d}}));
    }
    if (!p.is_zero() && p.is_homogeneous()) return p;
  }
}

// Random hyperterm built from atoms of one or two symbols with positive coefficients.
inline partreg::HyperTerm random_atomic_sum(std::mt19937_64& rng, const std::vector<std::string>& symbols,
                                            unsigned max_level, int max_terms) {
  std::uniform_int_distribution<int> nterms(1, max_terms);
  std::uniform_int_distribution<unsigned> level(0, max_level);
  std::uniform_int_distribution<int> coef(1, 4);
  std::uniform_int_distribution<std::size_t> sym(0, symbols.size() - 1);
  partreg::HyperTerm t;
  const int n = nterms(rng);
  for (int i = 0; i < n; ++i) t = t + partreg::HyperTerm::atom(symbols[sym(rng)], level(rng), coef(rng));
  return t;
}

}  // namespace oracle
