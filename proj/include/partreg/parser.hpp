#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "partreg/poly.hpp"

namespace partreg {

// Grammar (whitespace-insensitive):
//   poly   := ['+'|'-'] term (('+'|'-') term)*
//   term   := factor ('*'? factor)*      implicit '*' only after a number: "2x"
//   factor := atom ['^' posint]
//   atom   := integer | identifier | '(' poly ')'
// '^' binds tighter than '*'; a sign may only open a term. U+2212 is read as '-'.
Polynomial parse_poly(std::string_view text);

/// Canonical text; parse_poly(print_poly(p)) == p.
std::string print_poly(const Polynomial& p);

/// "A = B" stored as A - B = 0.
struct Equation {
  Polynomial poly;

  bool operator==(const Equation&) const = default;
};

/// Requires exactly one '='.
Equation parse_equation(std::string_view text);
/// Accepts "A = B" or a bare polynomial P (meaning P = 0).
Equation parse_equation_or_poly(std::string_view text);

enum class ExpectedStatus { kPr, kNotPr, kUnknown };

std::string_view status_name(ExpectedStatus s);
ExpectedStatus parse_status(std::string_view s);

struct CorpusEntry {
  std::string id;
  std::string equation_text;
  Equation equation;
  std::vector<std::string> tags;
  ExpectedStatus expected_status = ExpectedStatus::kUnknown;
  /// Fields this library does not interpret; written back unchanged.
  nlohmann::json extra = nlohmann::json::object();
};

/// One JSON object per line; blank lines are skipped. Throws E_IO,
/// E_SYNTAX (bad JSON or equation, with the line number) or E_DUPLICATE_ID.
std::vector<CorpusEntry> load_corpus(const std::string& path);
std::vector<CorpusEntry> parse_corpus(std::string_view text);
nlohmann::json corpus_entry_to_json(const CorpusEntry& entry);
void save_corpus(const std::string& path, const std::vector<CorpusEntry>& entries);

}  // namespace partreg
