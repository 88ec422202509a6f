#pragma once

#include <compare>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace partreg {

using Integer = mpz_class;
using Rational = mpq_class;

/// Variables are plain identifiers; their byte-wise lexicographic order is the
/// canonical variable order everywhere in the library.
bool is_valid_var_name(std::string_view name);

/// A power product of variables. Factors are kept sorted by variable name with
/// strictly positive exponents, so the empty product is the constant monomial.
class Monomial {
 public:
  using Factor = std::pair<std::string, unsigned>;

  Monomial() = default;
  /// Normalizes: sorts by name, merges repeated names, drops zero exponents.
  explicit Monomial(std::vector<Factor> factors);
  static Monomial variable(std::string name, unsigned exponent = 1);

  const std::vector<Factor>& factors() const noexcept { return factors_; }
  unsigned degree() const noexcept { return degree_; }
  unsigned exponent(std::string_view var) const;
  bool is_constant() const noexcept { return factors_.empty(); }
  bool is_squarefree() const;
  bool divides(const Monomial& other) const;

  Monomial operator*(const Monomial& other) const;
  /// Requires other.divides(*this).
  Monomial operator/(const Monomial& other) const;

  bool operator==(const Monomial& other) const { return factors_ == other.factors_; }
  /// Graded order: lower total degree first; within a degree, the monomial with
  /// the larger exponent on the earliest variable first (x^2, xy, xz, y^2, ...).
  std::strong_ordering operator<=>(const Monomial& other) const;

 private:
  std::vector<Factor> factors_;
  unsigned degree_ = 0;
};

/// Sparse multivariate polynomial with arbitrary-precision integer coefficients.
/// Immutable value type; the term map never stores zero coefficients.
class Polynomial {
 public:
  using TermMap = std::map<Monomial, Integer>;

  Polynomial() = default;
  explicit Polynomial(TermMap terms);
  static Polynomial constant(const Integer& c);
  static Polynomial variable(const std::string& name);
  static Polynomial term(const Integer& c, Monomial m);

  const TermMap& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }
  Integer coefficient(const Monomial& m) const;

  /// Sorted, duplicate-free.
  std::vector<std::string> variables() const;

  /// Max total degree; throws E_ZERO_POLY on the zero polynomial.
  unsigned degree() const;
  /// All monomials share one total degree. The zero polynomial is not homogeneous.
  bool is_homogeneous() const;
  bool is_linear() const;
  Integer constant_term() const;
  /// (variable, coefficient) in canonical variable order. Throws E_NOT_LINEAR or
  /// E_CONST_TERM.
  std::vector<std::pair<std::string, Integer>> coefficient_vector() const;

  Rational evaluate(const std::map<std::string, Rational>& point) const;

  Polynomial operator-() const;
  Polynomial scaled(const Integer& c) const;
  Polynomial pow(unsigned e) const;
  /// Exact quotient if divisor divides *this, else nullopt. Divisor must be nonzero.
  std::optional<Polynomial> exact_divide(const Polynomial& divisor) const;

  friend Polynomial operator+(const Polynomial& p, const Polynomial& q);
  friend Polynomial operator-(const Polynomial& p, const Polynomial& q);
  friend Polynomial operator*(const Polynomial& p, const Polynomial& q);
  bool operator==(const Polynomial& other) const { return terms_ == other.terms_; }

  /// Canonical text form, e.g. "x + y - z*w". Parses back to the same polynomial.
  std::string to_string() const;

 private:
  TermMap terms_;
};

Polynomial add(const Polynomial& p, const Polynomial& q);
Polynomial mul(const Polynomial& p, const Polynomial& q);
Rational evaluate(const Polynomial& p, const std::map<std::string, Rational>& point);

std::ostream& operator<<(std::ostream& os, const Polynomial& p);
std::string to_string(const Monomial& m);

}  // namespace partreg
