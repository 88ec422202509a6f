#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "partreg/poly.hpp"

namespace partreg {

/// S_level applied to a base symbol. Level 0 is the symbol itself.
struct Atom {
  std::string base;
  unsigned level = 0;

  auto operator<=>(const Atom&) const = default;
};

std::string to_string(const Atom& a);

/// Formal polynomial over atoms with integer coefficients.
class HyperTerm {
 public:
  /// Sorted by atom, positive multiplicities. Empty means the standard unit.
  using Monomial = std::vector<std::pair<Atom, unsigned>>;
  using TermMap = std::map<Monomial, Integer>;

  HyperTerm() = default;
  explicit HyperTerm(TermMap terms);
  static HyperTerm constant(const Integer& c);
  static HyperTerm atom(std::string base, unsigned level = 0, const Integer& coef = 1);

  const TermMap& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool has_atoms() const;
  /// Every monomial is a single atom with multiplicity 1.
  bool is_linear() const;

  HyperTerm scaled(const Integer& c) const;
  friend HyperTerm operator+(const HyperTerm& a, const HyperTerm& b);
  friend HyperTerm operator-(const HyperTerm& a, const HyperTerm& b);
  friend HyperTerm operator*(const HyperTerm& a, const HyperTerm& b);
  bool operator==(const HyperTerm& other) const { return terms_ == other.terms_; }

  /// E.g. "2*eta + S1(eta) + S2(eta)", "alpha*S1(alpha)".
  std::string to_string() const;

 private:
  TermMap terms_;
};

/// 0 without atoms, else max level + 1.
unsigned height(const HyperTerm& t);
/// Raises every atom level by m. Pass a negative m only when every level stays >= 0.
HyperTerm star_shift(const HyperTerm& t, int m);
/// a + S_{h(a)}(b). Throws E_STANDARD_LEFT when a has no atoms.
HyperTerm combine_add(const HyperTerm& a, const HyperTerm& b);
/// a * S_{h(a)}(b). Throws E_STANDARD_LEFT when a has no atoms.
HyperTerm combine_mul(const HyperTerm& a, const HyperTerm& b);

/// Linear terms over one base symbol, compared level by level from the top,
/// the standard part last. Throws E_NONLINEAR_ORDER outside that fragment.
std::strong_ordering term_compare(const HyperTerm& s, const HyperTerm& t);

/// Throws E_UNBOUND_ATOM when an atom has no value.
Integer concretize(const HyperTerm& t, const std::map<Atom, Integer>& valuation);

/// Which ultrafilter each symbol generates, and what is assumed of each ultrafilter.
struct Assumptions {
  std::map<std::string, std::string> ultrafilter_of;  // symbol -> name; default: the symbol itself
  std::map<std::string, bool> additively_idempotent;
  std::map<std::string, bool> multiplicatively_idempotent;

  std::string ultrafilter(const std::string& symbol) const;
  bool add_idem(const std::string& u) const;
  bool mult_idem(const std::string& u) const;
};

/// Ultrafilter expression over named ultrafilters.
struct UExpr {
  enum class Kind { kBase, kOplus, kOdot, kScale };

  Kind kind = Kind::kBase;
  std::string name;          // kBase
  Integer factor = 1;        // kScale
  std::vector<UExpr> args;   // kOplus, kOdot (>= 1); kScale (exactly 1)

  static UExpr base(std::string name);
  static UExpr oplus(std::vector<UExpr> args);
  static UExpr odot(std::vector<UExpr> args);
  static UExpr scale(Integer n, UExpr arg);

  bool operator==(const UExpr& other) const;
  /// E.g. "OPLUS(SCALE(2,U),U)".
  std::string to_string() const;
  /// E.g. "2U (+) U".
  std::string pretty() const;
};

/// The individual rewrite rules of normalization.
enum class URule {
  kFlattenOplus,
  kFlattenOdot,
  kScaleOne,
  kScaleCompose,
  kScaleDistribute,
  kScaleHoist,
  kGcdHoist,
  kMergeOplus,
  kMergeOdot,
  kUnwrap,
};
inline constexpr std::size_t kURuleCount = 10;

/// Applies `rule` at the root of e if it matches.
std::optional<UExpr> apply_rule_at_root(URule rule, const UExpr& e, const Assumptions& asm_);

/// Rewrites to the unique normal form.
UExpr normalize(const UExpr& e, const Assumptions& asm_);
/// Same rules, but each step rewrites a randomly chosen redex. Used to test confluence.
UExpr normalize_random(const UExpr& e, const Assumptions& asm_, std::mt19937_64& rng);

/// Class of ultrafilter generated by t, in normal form. Throws E_NO_DECOMPOSITION.
UExpr infer_class(const HyperTerm& t, const Assumptions& asm_);

struct CheckEntry {
  std::string check;
  std::string status;  // "pass", "fail", or "note" (informational, not counted)
  std::string lhs;
  std::string rhs;
  std::string detail;
};

struct VerificationReport {
  std::string name;
  std::vector<CheckEntry> checks;
  /// Formal identities asserted by the verifier, re-checked numerically under concretize.
  std::vector<HyperTerm> zero_identities;

  bool passed() const;
};

nlohmann::json report_to_json(const VerificationReport& r);

/// Arithmetic progression of length three from 2U (+) U with U additively idempotent.
VerificationReport verify_ap3(bool additively_idempotent = true);
/// Chain of k progressions with ratios n (k+1 entries). Throws E_HYPOTHESIS when
/// adjacent entries coincide or an entry is not positive, E_USAGE on a size mismatch.
VerificationReport verify_chain(int k, const std::vector<Integer>& n);
/// Generators of U for x + y = z*w with U multiplicatively idempotent.
VerificationReport verify_xyzw(bool multiplicatively_idempotent = true);

}  // namespace partreg
