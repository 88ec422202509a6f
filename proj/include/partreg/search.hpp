#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "partreg/error.hpp"
#include "partreg/poly.hpp"

namespace partreg {

enum class SolutionMode { kAny, kDistinct, kNondegenerate };
std::string_view mode_name(SolutionMode m);
/// Accepts ANY, DISTINCT, NONDEGENERATE (case-insensitive). Throws E_USAGE.
SolutionMode parse_mode(std::string_view s);

/// Values follow the canonical variable order of the polynomial.
using Tuple = std::vector<std::int64_t>;

/// colors[i] is the color (1..k) of the integer i + 1.
struct Coloring {
  std::vector<int> colors;

  int n() const { return static_cast<int>(colors.size()); }
  bool operator==(const Coloring&) const = default;
};

/// True iff colors start at 1 and each new color is one more than the largest so far.
bool is_canonical(const Coloring& c);
/// Color classes, e.g. {1,4}/{2,3}.
std::string format_classes(const Coloring& c);

struct SearchStats {
  std::uint64_t nodes = 0;
  std::size_t solutions = 0;
};

struct SearchOptions {
  std::size_t max_solutions = 20'000'000;
  std::uint64_t node_budget = 2'000'000'000;
  unsigned threads = 1;
  /// Number of leading integers whose colorings form the parallel work units.
  int split_depth = 8;
};

/// Raised when a configured cap is exceeded; carries what was done so far.
class LimitError : public Error {
 public:
  LimitError(const std::string& message, SearchStats stats, int at_n = 0)
      : Error(ErrorCode::kLimit, message), stats_(stats), at_n_(at_n) {}
  const SearchStats& stats() const noexcept { return stats_; }
  /// The N being searched when the cap was hit (0 during enumeration).
  int at_n() const noexcept { return at_n_; }

 private:
  SearchStats stats_;
  int at_n_;
};

/// All tuples in {1..N}^n with P = 0 that satisfy the mode, in lexicographic
/// order. Throws E_LIMIT past options.max_solutions or when values could
/// overflow 128-bit evaluation, E_USAGE for N < 1 or a polynomial without variables.
std::vector<Tuple> enumerate_solutions(const Polynomial& p, int n_max, SolutionMode mode,
                                       const SearchOptions& options = {});

/// Lexicographically least monochromatic solution under col, if any.
std::optional<Tuple> check_coloring(const Polynomial& p, const Coloring& col, SolutionMode mode);

enum class OutcomeKind { kForced, kWitness };

struct SearchOutcome {
  OutcomeKind kind = OutcomeKind::kForced;
  std::optional<Coloring> witness;
  SearchStats stats;
};

/// Canonically least k-coloring of {1..N} without a monochromatic solution,
/// or Forced. Deterministic for any thread count, node counts included.
SearchOutcome find_avoiding_coloring(const Polynomial& p, int k, int n_max, SolutionMode mode,
                                     const SearchOptions& options = {});

struct RadoNumberResult {
  /// Least forced N, absent if none up to max_N.
  std::optional<int> n_star;
  /// Avoiding coloring at N* - 1 (or at max_N when n_star is absent). Empty when N* = 1.
  std::optional<Coloring> witness;
  SearchStats stats;
};

/// Scans N = 1, 2, ... up to max_N. Throws E_LIMIT.
RadoNumberResult rado_number(const Polynomial& p, int k, SolutionMode mode, int max_n,
                             const SearchOptions& options = {});

}  // namespace partreg
