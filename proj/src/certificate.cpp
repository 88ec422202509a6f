#include <algorithm>
#include <set>

#include "partreg/error.hpp"
#include "partreg/parser.hpp"
#include "partreg/rado.hpp"

namespace partreg {

using nlohmann::json;

std::string_view rule_name(Rule r) {
  switch (r) {
    case Rule::kRLin: return "R-LIN";
    case Rule::kCMult: return "C-MULT";
    case Rule::kCSum: return "C-SUM";
    case Rule::kCLift: return "C-LIFT";
    case Rule::kCFactorNeg: return "C-FACTOR-NEG";
  }
  return "?";
}

Rule parse_rule(std::string_view s) {
  for (Rule r : {Rule::kRLin, Rule::kCMult, Rule::kCSum, Rule::kCLift, Rule::kCFactorNeg})
    if (rule_name(r) == s) return r;
  throw Error(ErrorCode::kBadCertificate, "unknown rule '" + std::string(s) + "'");
}

namespace {

// A factor that can never vanish on positive integers (a nonzero constant) or a
// linear form failing Rado's criterion.
bool factor_refuted(const Polynomial& f) {
  if (f.is_zero()) return false;
  if (f.size() == 1 && f.terms().begin()->first.is_constant()) return true;
  if (!f.is_linear() || f.constant_term() != 0) return false;
  try {
    return rado_decide(f).status == PrStatus::kNotPr;
  } catch (const Error&) {
    return false;
  }
}

class Validator {
 public:
  ValidationResult result;

  void check(const Certificate& c, const std::string& path) {
    const std::string here = path + std::string(rule_name(c.rule)) + "[" + c.root.to_string() + "]";
    try {
      switch (c.rule) {
        case Rule::kRLin: rlin(c, here); break;
        case Rule::kCLift: lift(c, here); break;
        case Rule::kCSum: sum(c, here); break;
        case Rule::kCMult: mult(c, here); break;
        case Rule::kCFactorNeg: factor_neg(c, here); break;
      }
    } catch (const std::exception& e) {
      fail(here, std::string("malformed payload: ") + e.what());
    }
  }

 private:
  void fail(const std::string& where, const std::string& why) {
    result.valid = false;
    result.diagnostics.push_back(where + ": " + why);
  }

  bool premises_pr(const Certificate& c, std::size_t expected, const std::string& here) {
    if (c.premises.size() != expected) {
      fail(here, "expected " + std::to_string(expected) + " premise(s), got " + std::to_string(c.premises.size()));
      return false;
    }
    bool ok = true;
    for (const auto& prem : c.premises) {
      if (prem.conclusion() != PrStatus::kPr) {
        fail(here, "premise does not conclude PR");
        ok = false;
      }
      check(prem, here + " <- ");
    }
    return ok;
  }

  void rlin(const Certificate& c, const std::string& here) {
    if (!c.premises.empty()) fail(here, "R-LIN takes no premises");
    if (c.root.is_zero() || !c.root.is_linear() || c.root.constant_term() != 0) {
      fail(here, "root is not a nonzero linear form without constant term");
      return;
    }
    const auto j = c.data.at("J").get<std::vector<std::string>>();
    if (j.empty()) {
      fail(here, "witness subset J is empty");
      return;
    }
    if (std::set<std::string>(j.begin(), j.end()).size() != j.size()) fail(here, "J repeats a variable");
    Integer total = 0;
    for (const auto& v : j) {
      Integer a = c.root.coefficient(Monomial::variable(v));
      if (a == 0) fail(here, "J names '" + v + "', which is not a variable of the root");
      total += a;
    }
    if (total != 0) fail(here, "coefficients over J sum to " + total.get_str() + ", not 0");
  }

  void lift(const Certificate& c, const std::string& here) {
    const Polynomial base = parse_poly(c.data.at("base").get<std::string>());
    const auto xs = c.data.at("x").get<std::vector<std::string>>();
    const auto aux = c.data.at("aux").get<std::vector<std::string>>();
    const auto fsets = c.data.at("F").get<std::vector<std::vector<std::size_t>>>();

    if (base.is_zero() || !base.is_linear() || base.constant_term() != 0) {
      fail(here, "base is not a nonzero linear form without constant term");
      return;
    }
    const auto cv = base.coefficient_vector();
    const std::size_t n = cv.size();
    if (xs.size() != n || fsets.size() != n) {
      fail(here, "x/F lists do not match the base's " + std::to_string(n) + " variables");
      return;
    }
    for (std::size_t i = 0; i < n; ++i)
      if (xs[i] != cv[i].first) fail(here, "x list does not follow the base's variable order");
    if (n < 2) fail(here, "lift needs at least two base variables");
    if (n == 2 && fsets[0].empty() && fsets[1].empty()) fail(here, "with two base variables F1 and F2 may not both be empty");

    std::set<std::string> aux_set(aux.begin(), aux.end());
    if (aux_set.size() != aux.size()) fail(here, "auxiliary names repeat");
    for (const auto& y : aux) {
      if (!is_valid_var_name(y)) fail(here, "invalid auxiliary name '" + y + "'");
      if (std::find(xs.begin(), xs.end(), y) != xs.end()) fail(here, "auxiliary '" + y + "' clashes with a base variable");
    }

    Polynomial rebuilt;
    for (std::size_t i = 0; i < n; ++i) {
      std::set<std::size_t> seen;
      std::vector<Monomial::Factor> factors{{xs[i], 1}};
      for (auto idx : fsets[i]) {
        if (idx < 1 || idx > aux.size()) {
          fail(here, "F index " + std::to_string(idx) + " out of range");
          return;
        }
        if (!seen.insert(idx).second) fail(here, "F set repeats an index");
        factors.emplace_back(aux[idx - 1], 1);
      }
      rebuilt = rebuilt + Polynomial::term(cv[i].second, Monomial(factors));
    }
    if (!(rebuilt == c.root)) fail(here, "lift of the base is " + rebuilt.to_string() + ", not the root");

    if (rado_decide(base).status != PrStatus::kPr) fail(here, "base fails Rado's criterion");

    if (!c.premises.empty()) {
      if (c.premises.size() != 1 || c.premises[0].rule != Rule::kRLin || !(c.premises[0].root == base)) {
        fail(here, "premise must be an R-LIN certificate of the base");
      } else {
        check(c.premises[0], here + " <- ");
      }
    }
  }

  void sum(const Certificate& c, const std::string& here) {
    const Polynomial left = parse_poly(c.data.at("left").get<std::string>());
    const Polynomial right = parse_poly(c.data.at("right").get<std::string>());
    const bool homogeneous = c.data.at("homogeneous").get<bool>();
    if (!premises_pr(c, 2, here)) return;
    if (!(c.premises[0].root == left) || !(c.premises[1].root == right))
      fail(here, "premise roots do not match left/right summands");
    if (!left.is_homogeneous() || !right.is_homogeneous()) fail(here, "summands must be homogeneous");
    auto lv = left.variables();
    auto rv = right.variables();
    std::vector<std::string> shared;
    std::set_intersection(lv.begin(), lv.end(), rv.begin(), rv.end(), std::back_inserter(shared));
    if (!shared.empty()) fail(here, "summands share variable '" + shared.front() + "'");
    if (!(left + right == c.root)) fail(here, "left + right differs from the root");
    if (homogeneous && !c.root.is_homogeneous()) fail(here, "annotated homogeneous but the root is not");
  }

  void mult(const Certificate& c, const std::string& here) {
    const Polynomial divisor = parse_poly(c.data.at("divisor").get<std::string>());
    const Polynomial cofactor = parse_poly(c.data.at("cofactor").get<std::string>());
    if (!premises_pr(c, 1, here)) return;
    if (!(c.premises[0].root == divisor)) fail(here, "premise root differs from the divisor");
    if (cofactor.is_zero()) fail(here, "cofactor is zero");
    if (!(divisor * cofactor == c.root)) fail(here, "divisor * cofactor differs from the root");
  }

  void factor_neg(const Certificate& c, const std::string& here) {
    if (!c.premises.empty()) fail(here, "C-FACTOR-NEG takes no premises");
    const auto texts = c.data.at("factors").get<std::vector<std::string>>();
    if (texts.empty()) {
      fail(here, "empty factor list");
      return;
    }
    Polynomial product = Polynomial::constant(1);
    for (const auto& t : texts) {
      Polynomial f = parse_poly(t);
      if (!factor_refuted(f)) fail(here, "factor " + f.to_string() + " is not a linear form failing Rado's criterion");
      product = product * f;
    }
    if (!(product == c.root)) fail(here, "factors multiply to " + product.to_string() + ", not the root");
  }
};

}  // namespace

bool factor_is_refuted(const Polynomial& f) { return factor_refuted(f); }

ValidationResult validate_certificate(const Certificate& c) {
  Validator v;
  v.check(c, "");
  return v.result;
}

json certificate_to_json(const Certificate& c) {
  json premises = json::array();
  for (const auto& p : c.premises) premises.push_back(certificate_to_json(p));
  return json{{"rule", std::string(rule_name(c.rule))},
              {"root", c.root.to_string()},
              {"conclusion", std::string(pr_status_name(c.conclusion()))},
              {"data", c.data},
              {"premises", premises}};
}

Certificate certificate_from_json(const json& j) {
  if (!j.is_object()) throw Error(ErrorCode::kBadCertificate, "certificate must be a JSON object");
  Certificate c;
  try {
    c.rule = parse_rule(j.at("rule").get<std::string>());
    c.root = parse_poly(j.at("root").get<std::string>());
    c.data = j.value("data", json::object());
    if (!c.data.is_object()) throw Error(ErrorCode::kBadCertificate, "'data' must be an object");
    for (const auto& p : j.value("premises", json::array())) c.premises.push_back(certificate_from_json(p));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kBadCertificate, e.what());
  }
  return c;
}

}  // namespace partreg
