#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "partreg/poly.hpp"

namespace partreg {

enum class PrStatus { kPr, kNotPr, kUnknown };
std::string_view pr_status_name(PrStatus s);

/// Outcome of Rado's criterion on a linear form sum a_i x_i.
struct RadoVerdict {
  PrStatus status = PrStatus::kNotPr;
  /// Positions into the canonical variable order; present iff status is PR.
  std::optional<std::vector<std::size_t>> witness_subset;
  /// Variable names matching witness_subset.
  std::vector<std::string> witness_vars;
};

inline constexpr std::size_t kMaxRadoVars = 40;

/// Smallest nonempty index set J with sum_{j in J} a_j = 0, ties broken by the
/// lexicographically least sorted index list. Exhaustive via meet-in-the-middle.
/// Throws E_ZERO_COEFF, E_TOO_MANY_VARS (n > 40), E_COEFF_RANGE (|a_i| >= 2^62).
std::optional<std::vector<std::size_t>> min_zero_sum_subset(const std::vector<Integer>& coeffs);

/// Rado's criterion on a linear polynomial with zero constant term.
/// Throws E_ZERO_POLY, E_NOT_LINEAR, E_CONST_TERM, E_TOO_MANY_VARS.
RadoVerdict rado_decide(const Polynomial& p);

enum class Rule { kRLin, kCMult, kCSum, kCLift, kCFactorNeg };
std::string_view rule_name(Rule r);
Rule parse_rule(std::string_view s);

/// A checkable proof tree. Every rule concludes PR for its root except
/// C-FACTOR-NEG, which concludes NOT_PR.
///
/// Payload (`data`) per rule:
///   R-LIN        {"J": [var, ...]}
///   C-LIFT       {"base": poly, "x": [var per base variable], "aux": [var, ...],
///                 "F": [[1-based aux index, ...] per base variable]}
///                premises: [R-LIN certificate of base] (optional)
///   C-SUM        {"left": poly, "right": poly, "homogeneous": bool}
///                premises: [left certificate, right certificate]
///   C-MULT       {"divisor": poly, "cofactor": poly}; premises: [divisor certificate]
///   C-FACTOR-NEG {"factors": [poly, ...]}
struct Certificate {
  Polynomial root;
  Rule rule = Rule::kRLin;
  std::vector<Certificate> premises;
  nlohmann::json data = nlohmann::json::object();

  PrStatus conclusion() const { return rule == Rule::kCFactorNeg ? PrStatus::kNotPr : PrStatus::kPr; }
};

struct ValidationResult {
  bool valid = true;
  std::vector<std::string> diagnostics;

  explicit operator bool() const { return valid; }
};

/// Re-checks every node's rule preconditions from scratch.
ValidationResult validate_certificate(const Certificate& c);

nlohmann::json certificate_to_json(const Certificate& c);
/// Throws E_BAD_CERTIFICATE on malformed input (bad polynomials surface as E_SYNTAX).
Certificate certificate_from_json(const nlohmann::json& j);

/// True for a nonzero constant, or for a linear form without constant term that
/// fails Rado's criterion. Either way the factor is not partition regular.
bool factor_is_refuted(const Polynomial& f);

/// Builders used by the deriver and the constructors. They do not validate.
Certificate make_rlin(const Polynomial& p, const RadoVerdict& verdict);

/// Result of matching P = sum a_i x_i Q_{F_i}(y).
struct LiftShape {
  Polynomial base;                   // sum a_i x_i
  std::vector<std::string> x_vars;   // in canonical order of base
  std::vector<std::string> aux;      // sorted
  std::vector<std::vector<std::size_t>> f_sets;  // 1-based indices into aux
};

/// Recognizes the monomial-lift shape: each monomial carries exactly one
/// variable occurring nowhere else with exponent 1 (the least such name is
/// chosen), and the rest of the monomial is squarefree in auxiliary variables.
std::optional<LiftShape> match_lift_shape(const Polynomial& p);

struct DeriveOptions {
  std::size_t budget = 10000;
  /// Candidate divisors for C-MULT (e.g. polynomials listed in a corpus).
  std::vector<Polynomial> hints;
};

/// Bounded proof search. Returns a certificate that validates, or nullopt
/// (UNKNOWN). Never returns a NOT_PR certificate. Throws E_CONST_TERM, E_ZERO_POLY.
std::optional<Certificate> derive_certificate(const Polynomial& p, const DeriveOptions& options = {});

}  // namespace partreg
