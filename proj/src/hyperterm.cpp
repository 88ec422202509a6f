#include <algorithm>

#include "partreg/error.hpp"
#include "partreg/hypergen.hpp"

namespace partreg {

namespace {

HyperTerm::Monomial normalize_monomial(HyperTerm::Monomial m) {
  std::sort(m.begin(), m.end());
  HyperTerm::Monomial out;
  for (auto& [a, e] : m) {
    if (e == 0) continue;
    if (!out.empty() && out.back().first == a) out.back().second += e;
    else out.emplace_back(std::move(a), e);
  }
  return out;
}

HyperTerm::Monomial multiply(const HyperTerm::Monomial& a, const HyperTerm::Monomial& b) {
  HyperTerm::Monomial m = a;
  m.insert(m.end(), b.begin(), b.end());
  return normalize_monomial(std::move(m));
}

std::string monomial_string(const HyperTerm::Monomial& m) {
  std::string s;
  for (const auto& [a, e] : m) {
    if (!s.empty()) s += "*";
    s += to_string(a);
    if (e > 1) s += "^" + std::to_string(e);
  }
  return s;
}

}  // namespace

std::string to_string(const Atom& a) {
  if (a.level == 0) return a.base;
  return "S" + std::to_string(a.level) + "(" + a.base + ")";
}

HyperTerm::HyperTerm(TermMap terms) {
  for (auto& [m, c] : terms) {
    if (c == 0) continue;
    auto nm = normalize_monomial(m);
    auto [it, fresh] = terms_.emplace(std::move(nm), c);
    if (!fresh) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }
}

HyperTerm HyperTerm::constant(const Integer& c) { return HyperTerm(TermMap{{Monomial{}, c}}); }

HyperTerm HyperTerm::atom(std::string base, unsigned level, const Integer& coef) {
  return HyperTerm(TermMap{{Monomial{{Atom{std::move(base), level}, 1}}, coef}});
}

bool HyperTerm::has_atoms() const {
  return std::any_of(terms_.begin(), terms_.end(), [](const auto& kv) { return !kv.first.empty(); });
}

bool HyperTerm::is_linear() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const auto& kv) { return kv.first.size() == 1 && kv.first[0].second == 1; });
}

HyperTerm HyperTerm::scaled(const Integer& c) const {
  TermMap t;
  for (const auto& [m, k] : terms_) t.emplace(m, k * c);
  return HyperTerm(std::move(t));
}

HyperTerm operator+(const HyperTerm& a, const HyperTerm& b) {
  HyperTerm::TermMap t = a.terms_;
  for (const auto& [m, c] : b.terms_) {
    auto [it, fresh] = t.emplace(m, c);
    if (!fresh) it->second += c;
  }
  return HyperTerm(std::move(t));
}

HyperTerm operator-(const HyperTerm& a, const HyperTerm& b) { return a + b.scaled(-1); }

HyperTerm operator*(const HyperTerm& a, const HyperTerm& b) {
  HyperTerm::TermMap t;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) {
      auto [it, fresh] = t.emplace(multiply(ma, mb), ca * cb);
      if (!fresh) it->second += ca * cb;
    }
  return HyperTerm(std::move(t));
}

std::string HyperTerm::to_string() const {
  if (terms_.empty()) return "0";
  // Standard part first, then by level of the leading atom.
  std::vector<std::pair<Monomial, Integer>> order(terms_.begin(), terms_.end());
  std::stable_sort(order.begin(), order.end(), [](const auto& x, const auto& y) {
    auto key = [](const Monomial& m) {
      unsigned hi = 0;
      for (const auto& [a, e] : m) hi = std::max(hi, a.level);
      return std::make_pair(m.empty() ? 0 : 1, hi);
    };
    return key(x.first) < key(y.first);
  });
  std::string s;
  bool first = true;
  for (const auto& [m, c] : order) {
    Integer mag = abs(c);
    if (first) {
      if (c < 0) s += "-";
    } else {
      s += c < 0 ? " - " : " + ";
    }
    first = false;
    if (m.empty()) {
      s += mag.get_str();
    } else {
      if (mag != 1) s += mag.get_str() + "*";
      s += monomial_string(m);
    }
  }
  return s;
}

unsigned height(const HyperTerm& t) {
  unsigned h = 0;
  for (const auto& [m, c] : t.terms())
    for (const auto& [a, e] : m) h = std::max(h, a.level + 1);
  return h;
}

HyperTerm star_shift(const HyperTerm& t, int m) {
  HyperTerm::TermMap out;
  for (const auto& [mono, c] : t.terms()) {
    HyperTerm::Monomial shifted;
    for (const auto& [a, e] : mono) {
      const long level = static_cast<long>(a.level) + m;
      if (level < 0) throw std::invalid_argument("star_shift below level 0");
      shifted.emplace_back(Atom{a.base, static_cast<unsigned>(level)}, e);
    }
    out.emplace(std::move(shifted), c);
  }
  return HyperTerm(std::move(out));
}

HyperTerm combine_add(const HyperTerm& a, const HyperTerm& b) {
  if (!a.has_atoms()) throw Error(ErrorCode::kStandardLeft, "left operand " + a.to_string() + " has no atoms");
  return a + star_shift(b, static_cast<int>(height(a)));
}

HyperTerm combine_mul(const HyperTerm& a, const HyperTerm& b) {
  if (!a.has_atoms()) throw Error(ErrorCode::kStandardLeft, "left operand " + a.to_string() + " has no atoms");
  return a * star_shift(b, static_cast<int>(height(a)));
}

std::strong_ordering term_compare(const HyperTerm& s, const HyperTerm& t) {
  std::string base;
  // coefficient by level; the standard part sits below level 0
  auto profile = [&](const HyperTerm& x) {
    std::map<long, Integer> p;
    for (const auto& [m, c] : x.terms()) {
      if (m.empty()) {
        p[-1] += c;
        continue;
      }
      if (m.size() != 1 || m[0].second != 1)
        throw Error(ErrorCode::kNonlinearOrder, x.to_string() + " is not a linear term");
      if (base.empty()) base = m[0].first.base;
      if (m[0].first.base != base)
        throw Error(ErrorCode::kNonlinearOrder, "terms mix base symbols " + base + " and " + m[0].first.base);
      p[m[0].first.level] += c;
    }
    return p;
  };
  const auto ps = profile(s);
  const auto pt = profile(t);
  std::vector<long> levels;
  for (const auto& kv : ps) levels.push_back(kv.first);
  for (const auto& kv : pt) levels.push_back(kv.first);
  std::sort(levels.rbegin(), levels.rend());
  for (long lv : levels) {
    auto get = [lv](const std::map<long, Integer>& p) {
      auto it = p.find(lv);
      return it == p.end() ? Integer(0) : it->second;
    };
    const Integer a = get(ps), b = get(pt);
    if (a < b) return std::strong_ordering::less;
    if (a > b) return std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

Integer concretize(const HyperTerm& t, const std::map<Atom, Integer>& valuation) {
  Integer total = 0;
  for (const auto& [m, c] : t.terms()) {
    Integer v = c;
    for (const auto& [a, e] : m) {
      auto it = valuation.find(a);
      if (it == valuation.end()) throw Error(ErrorCode::kUnboundAtom, "no value for " + to_string(a));
      Integer p;
      mpz_pow_ui(p.get_mpz_t(), it->second.get_mpz_t(), e);
      v *= p;
    }
    total += v;
  }
  return total;
}

}  // namespace partreg
