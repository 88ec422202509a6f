#include <fstream>
#include <set>
#include <sstream>

#include "partreg/error.hpp"
#include "partreg/parser.hpp"

namespace partreg {

using nlohmann::json;

namespace {

CorpusEntry entry_from_json(const json& j, int line) {
  auto where = " (line " + std::to_string(line) + ")";
  if (!j.is_object()) throw Error(ErrorCode::kSyntax, "corpus record is not a JSON object" + where);
  CorpusEntry e;
  for (const auto& [key, value] : j.items()) {
    if (key == "id") {
      if (!value.is_string()) throw Error(ErrorCode::kSyntax, "'id' must be a string" + where);
      e.id = value.get<std::string>();
    } else if (key == "equation") {
      if (!value.is_string()) throw Error(ErrorCode::kSyntax, "'equation' must be a string" + where);
      e.equation_text = value.get<std::string>();
    } else if (key == "tags") {
      if (!value.is_array()) throw Error(ErrorCode::kSyntax, "'tags' must be an array" + where);
      for (const auto& t : value) {
        if (!t.is_string()) throw Error(ErrorCode::kSyntax, "tags must be strings" + where);
        e.tags.push_back(t.get<std::string>());
      }
    } else if (key == "expected_status") {
      if (!value.is_string()) throw Error(ErrorCode::kSyntax, "'expected_status' must be a string" + where);
      e.expected_status = parse_status(value.get<std::string>());
    } else {
      e.extra[key] = value;
    }
  }
  if (e.id.empty()) throw Error(ErrorCode::kSyntax, "record without 'id'" + where);
  if (e.equation_text.empty()) throw Error(ErrorCode::kSyntax, "record without 'equation'" + where);
  try {
    e.equation = parse_equation_or_poly(e.equation_text);
  } catch (const Error& err) {
    throw Error(err.code(), std::string("entry '") + e.id + "'" + where + ": " + err.what());
  }
  return e;
}

}  // namespace

std::vector<CorpusEntry> parse_corpus(std::string_view text) {
  std::vector<CorpusEntry> out;
  std::set<std::string> seen;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& err) {
      throw Error(ErrorCode::kSyntax, "bad JSON at line " + std::to_string(lineno) + ": " + err.what());
    }
    CorpusEntry e = entry_from_json(j, lineno);
    if (!seen.insert(e.id).second) {
      throw Error(ErrorCode::kDuplicateId, "duplicate id '" + e.id + "' at line " + std::to_string(lineno));
    }
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<CorpusEntry> load_corpus(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open corpus file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_corpus(buf.str());
}

json corpus_entry_to_json(const CorpusEntry& entry) {
  json j = entry.extra;
  j["id"] = entry.id;
  j["equation"] = entry.equation_text;
  j["tags"] = entry.tags;
  j["expected_status"] = std::string(status_name(entry.expected_status));
  return j;
}

void save_corpus(const std::string& path, const std::vector<CorpusEntry>& entries) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write corpus file '" + path + "'");
  for (const auto& e : entries) out << corpus_entry_to_json(e).dump() << '\n';
  if (!out) throw Error(ErrorCode::kIo, "write failed for '" + path + "'");
}

}  // namespace partreg
