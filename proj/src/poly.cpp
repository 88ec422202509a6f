#include "partreg/poly.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "partreg/error.hpp"

namespace partreg {

bool is_valid_var_name(std::string_view name) {
  if (name.empty()) return false;
  auto alpha = [](char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_'; };
  auto digit = [](char c) { return c >= '0' && c <= '9'; };
  if (!alpha(name.front())) return false;
  return std::all_of(name.begin() + 1, name.end(), [&](char c) { return alpha(c) || digit(c); });
}

// ---------------------------------------------------------------------------
// Monomial

Monomial::Monomial(std::vector<Factor> factors) {
  std::sort(factors.begin(), factors.end(),
            [](const Factor& a, const Factor& b) { return a.first < b.first; });
  for (auto& [name, e] : factors) {
    if (e == 0) continue;
    if (!factors_.empty() && factors_.back().first == name) {
      factors_.back().second += e;
    } else {
      factors_.emplace_back(std::move(name), e);
    }
    degree_ += e;
  }
}

Monomial Monomial::variable(std::string name, unsigned exponent) {
  return Monomial({{std::move(name), exponent}});
}

unsigned Monomial::exponent(std::string_view var) const {
  for (const auto& [name, e] : factors_)
    if (name == var) return e;
  return 0;
}

bool Monomial::is_squarefree() const {
  return std::all_of(factors_.begin(), factors_.end(), [](const Factor& f) { return f.second == 1; });
}

bool Monomial::divides(const Monomial& other) const {
  for (const auto& [name, e] : factors_)
    if (other.exponent(name) < e) return false;
  return true;
}

Monomial Monomial::operator*(const Monomial& other) const {
  std::vector<Factor> all = factors_;
  all.insert(all.end(), other.factors_.begin(), other.factors_.end());
  return Monomial(std::move(all));
}

Monomial Monomial::operator/(const Monomial& other) const {
  std::vector<Factor> out;
  for (const auto& [name, e] : factors_) {
    unsigned d = other.exponent(name);
    if (e > d) out.emplace_back(name, e - d);
  }
  return Monomial(std::move(out));
}

std::strong_ordering Monomial::operator<=>(const Monomial& other) const {
  if (degree_ != other.degree_) return degree_ <=> other.degree_;
  const auto& a = factors_;
  const auto& b = other.factors_;
  std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].first != b[i].first) {
      // The monomial carrying the earlier variable has the larger exponent there.
      return a[i].first < b[i].first ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    if (a[i].second != b[i].second)
      return a[i].second > b[i].second ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  return a.size() <=> b.size();
}

std::string to_string(const Monomial& m) {
  std::string out;
  for (const auto& [name, e] : m.factors()) {
    if (!out.empty()) out += '*';
    out += name;
    if (e > 1) out += '^' + std::to_string(e);
  }
  return out.empty() ? "1" : out;
}

// ---------------------------------------------------------------------------
// Polynomial

Polynomial::Polynomial(TermMap terms) {
  for (auto& [m, c] : terms)
    if (c != 0) terms_.emplace(m, std::move(c));
}

Polynomial Polynomial::constant(const Integer& c) { return term(c, Monomial()); }

Polynomial Polynomial::variable(const std::string& name) {
  if (!is_valid_var_name(name)) throw Error(ErrorCode::kSyntax, "invalid variable name '" + name + "'");
  return term(1, Monomial::variable(name));
}

Polynomial Polynomial::term(const Integer& c, Monomial m) {
  Polynomial p;
  if (c != 0) p.terms_.emplace(std::move(m), c);
  return p;
}

Integer Polynomial::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Integer(0) : it->second;
}

std::vector<std::string> Polynomial::variables() const {
  std::set<std::string> names;
  for (const auto& [m, c] : terms_)
    for (const auto& f : m.factors()) names.insert(f.first);
  return {names.begin(), names.end()};
}

unsigned Polynomial::degree() const {
  if (is_zero()) throw Error(ErrorCode::kZeroPoly, "degree of the zero polynomial");
  // Map order is graded, so the last monomial has maximal degree.
  return terms_.rbegin()->first.degree();
}

bool Polynomial::is_homogeneous() const {
  if (is_zero()) return false;
  return terms_.begin()->first.degree() == terms_.rbegin()->first.degree();
}

bool Polynomial::is_linear() const {
  return is_zero() || terms_.rbegin()->first.degree() <= 1;
}

Integer Polynomial::constant_term() const { return coefficient(Monomial()); }

std::vector<std::pair<std::string, Integer>> Polynomial::coefficient_vector() const {
  if (!is_linear()) throw Error(ErrorCode::kNotLinear, to_string() + " is not linear");
  if (constant_term() != 0) throw Error(ErrorCode::kConstTerm, to_string() + " has a nonzero constant term");
  std::vector<std::pair<std::string, Integer>> out;
  for (const auto& [m, c] : terms_) out.emplace_back(m.factors().front().first, c);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

Rational Polynomial::evaluate(const std::map<std::string, Rational>& point) const {
  Rational total = 0;
  for (const auto& [m, c] : terms_) {
    Rational value = c;
    for (const auto& [name, e] : m.factors()) {
      auto it = point.find(name);
      if (it == point.end()) throw Error(ErrorCode::kUnboundVar, "no value for variable '" + name + "'");
      for (unsigned i = 0; i < e; ++i) value *= it->second;
    }
    total += value;
  }
  total.canonicalize();
  return total;
}

Polynomial Polynomial::operator-() const { return scaled(-1); }

Polynomial Polynomial::scaled(const Integer& c) const {
  if (c == 0) return {};
  Polynomial out;
  for (const auto& [m, coeff] : terms_) out.terms_.emplace_hint(out.terms_.end(), m, coeff * c);
  return out;
}

Polynomial Polynomial::pow(unsigned e) const {
  Polynomial result = constant(1);
  Polynomial base = *this;
  while (e > 0) {
    if (e & 1u) result = result * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

std::optional<Polynomial> Polynomial::exact_divide(const Polynomial& divisor) const {
  if (divisor.is_zero()) throw Error(ErrorCode::kZeroPoly, "division by the zero polynomial");
  // The map order is a monomial order, so the leading term is the last entry.
  const auto& [lead_m, lead_c] = *divisor.terms_.rbegin();
  Polynomial remainder = *this;
  Polynomial quotient;
  while (!remainder.is_zero()) {
    const auto& [rm, rc] = *remainder.terms_.rbegin();
    if (!lead_m.divides(rm) || !mpz_divisible_p(rc.get_mpz_t(), lead_c.get_mpz_t())) return std::nullopt;
    Integer qc = rc / lead_c;
    Polynomial step = term(qc, rm / lead_m);
    quotient = quotient + step;
    remainder = remainder - step * divisor;
  }
  return quotient;
}

Polynomial operator+(const Polynomial& p, const Polynomial& q) {
  Polynomial out = p;
  for (const auto& [m, c] : q.terms_) {
    auto [it, inserted] = out.terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) out.terms_.erase(it);
    }
  }
  return out;
}

Polynomial operator-(const Polynomial& p, const Polynomial& q) { return p + (-q); }

Polynomial operator*(const Polynomial& p, const Polynomial& q) {
  Polynomial out;
  for (const auto& [mp, cp] : p.terms_) {
    for (const auto& [mq, cq] : q.terms_) {
      Integer c = cp * cq;
      auto [it, inserted] = out.terms_.try_emplace(mp * mq, c);
      if (!inserted) {
        it->second += c;
        if (it->second == 0) out.terms_.erase(it);
      }
    }
  }
  return out;
}

std::string Polynomial::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    Integer mag = abs(c);
    if (first) {
      if (c < 0) os << '-';
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (m.is_constant()) {
      os << mag.get_str();
    } else {
      if (mag != 1) os << mag.get_str() << '*';
      os << partreg::to_string(m);
    }
  }
  return os.str();
}

Polynomial add(const Polynomial& p, const Polynomial& q) { return p + q; }
Polynomial mul(const Polynomial& p, const Polynomial& q) { return p * q; }
Rational evaluate(const Polynomial& p, const std::map<std::string, Rational>& point) {
  return p.evaluate(point);
}

std::ostream& operator<<(std::ostream& os, const Polynomial& p) { return os << p.to_string(); }

}  // namespace partreg
