#include "partreg/construct.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "partreg/error.hpp"

namespace partreg {

using nlohmann::json;

namespace {

void require_evidence(const Polynomial& p, const Certificate& evidence, const char* which) {
  if (!(evidence.root == p)) {
    throw Error(ErrorCode::kNoEvidence, std::string("evidence for ") + which + " certifies " +
                                            evidence.root.to_string() + " instead of " + p.to_string());
  }
  if (evidence.conclusion() != PrStatus::kPr) {
    throw Error(ErrorCode::kNoEvidence, std::string("evidence for ") + which + " does not conclude PR");
  }
  auto v = validate_certificate(evidence);
  if (!v.valid) {
    throw Error(ErrorCode::kNoEvidence, std::string("evidence for ") + which + " does not validate: " +
                                            (v.diagnostics.empty() ? "" : v.diagnostics.front()));
  }
}

std::vector<std::string> shared_variables(const Polynomial& p, const Polynomial& q) {
  auto pv = p.variables();
  auto qv = q.variables();
  std::vector<std::string> shared;
  std::set_intersection(pv.begin(), pv.end(), qv.begin(), qv.end(), std::back_inserter(shared));
  return shared;
}

void require_disjoint_homogeneous(const Polynomial& p, const Polynomial& q) {
  if (p.is_zero() || q.is_zero()) throw Error(ErrorCode::kZeroPoly, "summands must be nonzero");
  auto shared = shared_variables(p, q);
  if (!shared.empty()) {
    throw Error(ErrorCode::kSharedVars, p.to_string() + " and " + q.to_string() + " share variable '" +
                                            shared.front() + "'");
  }
  if (!p.is_homogeneous()) throw Error(ErrorCode::kNotHomogeneous, p.to_string() + " is not homogeneous");
  if (!q.is_homogeneous()) throw Error(ErrorCode::kNotHomogeneous, q.to_string() + " is not homogeneous");
}

Point restrict_to(const Polynomial& p, const Point& point) {
  Point out;
  for (const auto& v : p.variables()) {
    auto it = point.find(v);
    if (it == point.end()) throw Error(ErrorCode::kUnboundVar, "no value for variable '" + v + "'");
    out[v] = it->second;
  }
  return out;
}

}  // namespace

Constructed multiple(const Polynomial& p, const Polynomial& q, const std::optional<Certificate>& evidence_p) {
  if (q.is_zero()) throw Error(ErrorCode::kZeroPoly, "multiplier is the zero polynomial");
  Constructed out;
  out.poly = p * q;
  out.homogeneous = out.poly.is_homogeneous();
  out.note = "every root of " + p.to_string() + " is a root of the product, so PR(p) implies PR(p*q)";
  if (evidence_p) {
    require_evidence(p, *evidence_p, "p");
    Certificate c;
    c.root = out.poly;
    c.rule = Rule::kCMult;
    c.data = json{{"divisor", p.to_string()}, {"cofactor", q.to_string()}};
    c.premises.push_back(*evidence_p);
    out.certificate = std::move(c);
  }
  return out;
}

Constructed disjoint_sum(const Polynomial& p, const Polynomial& q, const Certificate& evidence_p,
                         const Certificate& evidence_q) {
  require_disjoint_homogeneous(p, q);
  require_evidence(p, evidence_p, "p");
  require_evidence(q, evidence_q, "q");
  Constructed out;
  out.poly = p + q;
  out.homogeneous = p.degree() == q.degree();
  out.note = out.homogeneous ? "PR; homogeneous, so it may be summed again"
                             : "PR; degrees differ, so the sum is not homogeneous";
  Certificate c;
  c.root = out.poly;
  c.rule = Rule::kCSum;
  c.data = json{{"left", p.to_string()}, {"right", q.to_string()}, {"homogeneous", out.homogeneous}};
  c.premises.push_back(evidence_p);
  c.premises.push_back(evidence_q);
  out.certificate = std::move(c);
  return out;
}

Polynomial reciprocal(const Polynomial& p) {
  if (p.is_zero()) throw Error(ErrorCode::kZeroPoly, "reciprocal of the zero polynomial");
  if (!p.is_homogeneous()) throw Error(ErrorCode::kNotHomogeneous, p.to_string() + " is not homogeneous");
  const unsigned d = p.degree();
  const auto vars = p.variables();
  Polynomial::TermMap terms;
  for (const auto& [m, c] : p.terms()) {
    std::vector<Monomial::Factor> factors;
    for (const auto& v : vars) factors.emplace_back(v, d - m.exponent(v));
    terms.emplace(Monomial(std::move(factors)), c);
  }
  return Polynomial(std::move(terms));
}

Polynomial q_monomial(const std::vector<std::size_t>& f, const std::vector<std::string>& aux_names) {
  std::vector<Monomial::Factor> factors;
  for (auto j : f) {
    if (j < 1 || j > aux_names.size()) {
      throw Error(ErrorCode::kLiftSpec, "index " + std::to_string(j) + " outside 1.." + std::to_string(aux_names.size()));
    }
    factors.emplace_back(aux_names[j - 1], 1);
  }
  return Polynomial::term(1, Monomial(std::move(factors)));
}

Constructed monomial_lift(const LiftSpec& spec) {
  const auto cv = spec.base.coefficient_vector();
  const std::size_t n = cv.size();
  if (n < 2) throw Error(ErrorCode::kLiftSpec, "the base needs at least two variables");
  if (spec.f_sets.size() != n) {
    throw Error(ErrorCode::kLiftSpec, std::to_string(spec.f_sets.size()) + " F sets for " + std::to_string(n) +
                                          " base variables");
  }
  for (const auto& f : spec.f_sets) {
    if (std::set<std::size_t>(f.begin(), f.end()).size() != f.size())
      throw Error(ErrorCode::kLiftSpec, "an F set repeats an index");
  }
  std::set<std::string> names;
  for (const auto& y : spec.aux_names) {
    if (!is_valid_var_name(y)) throw Error(ErrorCode::kVarClash, "invalid auxiliary name '" + y + "'");
    if (!names.insert(y).second) throw Error(ErrorCode::kVarClash, "auxiliary name '" + y + "' repeats");
    for (const auto& [x, a] : cv)
      if (x == y) throw Error(ErrorCode::kVarClash, "auxiliary name '" + y + "' is a base variable");
  }
  if (n == 2 && spec.f_sets[0].empty() && spec.f_sets[1].empty()) {
    throw Error(ErrorCode::kLiftGuard, "with two base variables F1 and F2 may not both be empty");
  }

  Polynomial lifted;
  for (std::size_t i = 0; i < n; ++i) {
    lifted = lifted + Polynomial::term(cv[i].second, Monomial::variable(cv[i].first)) *
                          q_monomial(spec.f_sets[i], spec.aux_names);
  }

  const RadoVerdict verdict = rado_decide(spec.base);
  if (verdict.status != PrStatus::kPr) {
    throw Error(ErrorCode::kBaseNotPr, spec.base.to_string() + " fails Rado's criterion");
  }

  std::vector<std::string> xs;
  for (const auto& [x, a] : cv) xs.push_back(x);
  std::vector<std::vector<std::size_t>> fsorted;
  for (auto f : spec.f_sets) {
    std::sort(f.begin(), f.end());
    fsorted.push_back(std::move(f));
  }
  Certificate c;
  c.root = lifted;
  c.rule = Rule::kCLift;
  c.data = json{{"base", spec.base.to_string()}, {"x", xs}, {"aux", spec.aux_names}, {"F", fsorted}};
  c.premises.push_back(make_rlin(spec.base, verdict));

  Constructed out;
  out.poly = std::move(lifted);
  out.homogeneous = out.poly.is_homogeneous();
  out.note = "monomial lift of a base satisfying Rado's criterion";
  out.certificate = std::move(c);
  return out;
}

Point sum_solution_transport(const Polynomial& p, const Polynomial& q, const Point& a, const Point& b) {
  require_disjoint_homogeneous(p, q);
  const Point pa = restrict_to(p, a);
  const Point qb = restrict_to(q, b);
  if (p.evaluate(pa) != 0) throw Error(ErrorCode::kNotASolution, "the point is not a root of " + p.to_string());
  if (q.evaluate(qb) != 0) throw Error(ErrorCode::kNotASolution, "the point is not a root of " + q.to_string());
  const Rational a1 = pa.begin()->second;
  const Rational b1 = qb.begin()->second;
  if (a1 == 0 || b1 == 0) throw Error(ErrorCode::kZeroAnchor, "the first coordinate of each point must be nonzero");

  Point out;
  for (const auto& [x, v] : pa) out[x] = v * b1;
  for (const auto& [y, v] : qb) out[y] = a1 * v;
  if ((p + q).evaluate(out) != 0) throw std::logic_error("sum transport produced a non-root");
  return out;
}

std::map<std::string, Integer> reciprocal_solution_transport(const Polynomial& p,
                                                             const std::map<std::string, Integer>& a) {
  if (p.is_zero()) throw Error(ErrorCode::kZeroPoly, "the zero polynomial");
  if (!p.is_homogeneous()) throw Error(ErrorCode::kNotHomogeneous, p.to_string() + " is not homogeneous");
  Point point;
  Integer lcm = 1;
  for (const auto& v : p.variables()) {
    auto it = a.find(v);
    if (it == a.end()) throw Error(ErrorCode::kUnboundVar, "no value for variable '" + v + "'");
    if (it->second <= 0) throw Error(ErrorCode::kNonpositive, "value of '" + v + "' is not a positive integer");
    point[v] = Rational(it->second);
    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), it->second.get_mpz_t());
  }
  if (p.evaluate(point) != 0) throw Error(ErrorCode::kNotASolution, "the point is not a root of " + p.to_string());

  std::map<std::string, Integer> out;
  Point check;
  for (const auto& [v, value] : point) {
    out[v] = lcm / value.get_num();
    check[v] = Rational(out[v]);
  }
  if (reciprocal(p).evaluate(check) != 0) throw std::logic_error("reciprocal transport produced a non-root");
  return out;
}

FactorReport factor_check(const Polynomial& p, const std::vector<Polynomial>& factors, const DeriveOptions& options) {
  if (factors.empty()) throw Error(ErrorCode::kBadFactorization, "empty factor list");
  Polynomial product = Polynomial::constant(1);
  for (const auto& f : factors) product = product * f;
  if (!(product == p)) {
    throw Error(ErrorCode::kBadFactorization, "factors multiply to " + product.to_string() + ", not " + p.to_string());
  }

  FactorReport report;
  for (const auto& f : factors) {
    FactorStatus st;
    st.factor = f;
    if (factor_is_refuted(f)) {
      st.status = PrStatus::kNotPr;
    } else if (!f.is_zero() && f.constant_term() == 0) {
      st.certificate = derive_certificate(f, options);
      st.status = st.certificate ? PrStatus::kPr : PrStatus::kUnknown;
    }
    report.factors.push_back(std::move(st));
  }

  for (std::size_t i = 0; i < report.factors.size(); ++i) {
    if (report.factors[i].status != PrStatus::kPr) continue;
    report.conclusion = PrStatus::kPr;
    Polynomial cofactor = Polynomial::constant(1);
    for (std::size_t j = 0; j < factors.size(); ++j)
      if (j != i) cofactor = cofactor * factors[j];
    if (cofactor == Polynomial::constant(1)) {
      report.certificate = report.factors[i].certificate;
    } else {
      Certificate c;
      c.root = p;
      c.rule = Rule::kCMult;
      c.data = json{{"divisor", factors[i].to_string()}, {"cofactor", cofactor.to_string()}};
      c.premises.push_back(*report.factors[i].certificate);
      report.certificate = std::move(c);
    }
    return report;
  }

  bool all_refuted = std::all_of(report.factors.begin(), report.factors.end(),
                                 [](const FactorStatus& s) { return s.status == PrStatus::kNotPr; });
  if (all_refuted) {
    report.conclusion = PrStatus::kNotPr;
    Certificate c;
    c.root = p;
    c.rule = Rule::kCFactorNeg;
    std::vector<std::string> texts;
    for (const auto& f : factors) texts.push_back(f.to_string());
    c.data = json{{"factors", texts}};
    report.certificate = std::move(c);
  }
  return report;
}

}  // namespace partreg
