#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "partreg/poly.hpp"
#include "partreg/rado.hpp"

namespace partreg {

/// A polynomial built by a closure operator, together with the evidence that
/// travels with it. Consumers re-validate `certificate` rather than trusting it.
struct Constructed {
  Polynomial poly;
  std::optional<Certificate> certificate;
  bool homogeneous = false;
  /// Human-readable account of what the construction guarantees.
  std::string note;
};

/// p * q. With PR evidence for p the result carries a C-MULT certificate.
/// Throws E_ZERO_POLY if q is zero, E_NO_EVIDENCE if evidence is for another root.
Constructed multiple(const Polynomial& p, const Polynomial& q,
                     const std::optional<Certificate>& evidence_p = std::nullopt);

/// p + q for variable-disjoint homogeneous p, q, each with caller-supplied PR
/// evidence. Throws E_SHARED_VARS, E_NOT_HOMOGENEOUS, E_NO_EVIDENCE.
Constructed disjoint_sum(const Polynomial& p, const Polynomial& q, const Certificate& evidence_p,
                         const Certificate& evidence_q);

/// x_1^d ... x_n^d * p(1/x_1, ..., 1/x_n) over the variables of p.
/// Throws E_ZERO_POLY, E_NOT_HOMOGENEOUS.
Polynomial reciprocal(const Polynomial& p);

struct LiftSpec {
  Polynomial base;                               // linear, n variables
  std::vector<std::vector<std::size_t>> f_sets;  // n subsets of {1..m}, 1-based
  std::vector<std::string> aux_names;            // m fresh names
};

/// Q_F as a polynomial: the product of aux[j-1] over j in F (1 when F is empty).
Polynomial q_monomial(const std::vector<std::size_t>& f, const std::vector<std::string>& aux_names);

/// sum_i a_i x_i Q_{F_i}(y) with a C-LIFT certificate. Base variables are taken
/// in canonical order. Throws E_NOT_LINEAR, E_CONST_TERM, E_LIFT_SPEC,
/// E_VAR_CLASH, E_LIFT_GUARD, E_BASE_NOT_PR.
Constructed monomial_lift(const LiftSpec& spec);

using Point = std::map<std::string, Rational>;

/// Root transport for disjoint_sum: x_i = a_i * b_1, y_j = a_1 * b_j, where a_1
/// and b_1 belong to the first variable (canonical order) of p and q.
/// Throws E_SHARED_VARS, E_NOT_HOMOGENEOUS, E_NOT_A_SOLUTION, E_ZERO_ANCHOR.
Point sum_solution_transport(const Polynomial& p, const Polynomial& q, const Point& a, const Point& b);

/// Root transport for reciprocal: with L = lcm(a_i), returns L / a_i.
/// Throws E_NOT_HOMOGENEOUS, E_NOT_A_SOLUTION, E_NONPOSITIVE.
std::map<std::string, Integer> reciprocal_solution_transport(const Polynomial& p,
                                                             const std::map<std::string, Integer>& a);

struct FactorStatus {
  Polynomial factor;
  PrStatus status = PrStatus::kUnknown;
  std::optional<Certificate> certificate;
};

struct FactorReport {
  std::vector<FactorStatus> factors;
  PrStatus conclusion = PrStatus::kUnknown;
  /// C-MULT (PR) or C-FACTOR-NEG (NOT_PR); absent when UNKNOWN.
  std::optional<Certificate> certificate;
};

/// Checks prod(factors) == p exactly, then classifies each factor. Throws
/// E_BAD_FACTORIZATION for an empty list or a product that differs from p.
FactorReport factor_check(const Polynomial& p, const std::vector<Polynomial>& factors,
                          const DeriveOptions& options = {});

}  // namespace partreg
