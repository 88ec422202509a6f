#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "partreg/construct.hpp"
#include "partreg/error.hpp"
#include "partreg/hypergen.hpp"
#include "partreg/parser.hpp"
#include "partreg/rado.hpp"
#include "partreg/search.hpp"

namespace partreg::cli {

using nlohmann::json;

namespace {

struct Outcome {
  json result;
  int exit = 0;
};

int exit_for(PrStatus s) {
  switch (s) {
    case PrStatus::kPr: return kExitPr;
    case PrStatus::kNotPr: return kExitNotPr;
    case PrStatus::kUnknown: return kExitUnknown;
  }
  return kExitError;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t") - b + 1);
}

Polynomial equation_poly(const std::string& text) { return parse_equation_or_poly(text).poly; }

// "x=1,y=2/3"
Point parse_point(const std::string& text) {
  Point p;
  for (const auto& part : split(text, ',')) {
    const auto eq = part.find('=');
    if (eq == std::string::npos) throw Error(ErrorCode::kUsage, "expected name=value in '" + part + "'");
    const std::string name = trim(part.substr(0, eq));
    Rational v;
    if (v.set_str(trim(part.substr(eq + 1)), 10) != 0)
      throw Error(ErrorCode::kUsage, "bad number in '" + part + "'");
    v.canonicalize();
    p[name] = v;
  }
  return p;
}

json point_json(const Point& p) {
  json j = json::object();
  for (const auto& [k, v] : p) j[k] = v.get_str();
  return j;
}

// "{1};{};{1,2}"
std::vector<std::vector<std::size_t>> parse_f_sets(const std::string& text) {
  std::vector<std::vector<std::size_t>> out;
  for (auto part : split(text, ';')) {
    part = trim(part);
    if (part.size() < 2 || part.front() != '{' || part.back() != '}')
      throw Error(ErrorCode::kLiftSpec, "expected {i,j,...} but got '" + part + "'");
    std::vector<std::size_t> f;
    const std::string inner = trim(part.substr(1, part.size() - 2));
    if (!inner.empty()) {
      for (const auto& idx : split(inner, ',')) {
        try {
          std::size_t used = 0;
          const long v = std::stol(trim(idx), &used);
          if (v < 1 || used != trim(idx).size()) throw std::invalid_argument("");
          f.push_back(static_cast<std::size_t>(v));
        } catch (const std::exception&) {
          throw Error(ErrorCode::kLiftSpec, "bad index '" + idx + "'");
        }
      }
    }
    out.push_back(std::move(f));
  }
  return out;
}

json certificate_json_checked(const Certificate& c) {
  json j = certificate_to_json(c);
  j["valid"] = validate_certificate(c).valid;
  return j;
}

json decide_poly(const Polynomial& p, const DeriveOptions& opts, int& exit) {
  json r;
  r["polynomial"] = p.to_string();
  if (p.is_zero()) throw Error(ErrorCode::kZeroPoly, "the equation is trivially 0 = 0");
  if (p.is_linear()) {
    const RadoVerdict v = rado_decide(p);
    r["method"] = "rado";
    r["status"] = std::string(pr_status_name(v.status));
    if (v.status == PrStatus::kPr) {
      r["witness_subset"] = v.witness_vars;
      r["certificate"] = certificate_json_checked(make_rlin(p, v));
    } else {
      Certificate c;
      c.root = p;
      c.rule = Rule::kCFactorNeg;
      c.data = json{{"factors", {p.to_string()}}};
      r["certificate"] = certificate_json_checked(c);
    }
    exit = exit_for(v.status);
    return r;
  }
  r["method"] = "derive";
  auto cert = derive_certificate(p, opts);
  if (cert && validate_certificate(*cert).valid) {
    r["status"] = "PR";
    r["certificate"] = certificate_json_checked(*cert);
    exit = kExitPr;
  } else {
    r["status"] = "UNKNOWN";
    r["certificate"] = nullptr;
    exit = kExitUnknown;
  }
  return r;
}

json coloring_json(const std::optional<Coloring>& c) {
  if (!c) return nullptr;
  return c->colors;
}

std::optional<Certificate> evidence_for(const Polynomial& p) {
  if (p.is_zero() || p.constant_term() != 0) return std::nullopt;
  return derive_certificate(p);
}

struct Options {
  // shared
  std::string equation;
  bool no_cache = false;
  bool no_timing = false;
  // decide
  std::vector<std::string> hints;
  std::size_t budget = 10000;
  // search
  int colors = 2;
  int max_n = 0;
  std::string mode;
  std::string find = "rado-number";
  bool ap3 = false;
  unsigned threads = 1;
  std::uint64_t node_budget = 2'000'000'000;
  std::size_t max_solutions = 20'000'000;
  // construct
  std::string op;
  std::string poly, by, left, right, base, f_sets, aux, factors, point, point_left, point_right;
  // symbolic
  std::string verify;
  int k = 1;
  std::string n_list;
  bool no_idempotent = false;
  // batch / validate
  std::string corpus;
  std::string certificate;
};

Outcome cmd_decide(const Options& o) {
  DeriveOptions opts;
  opts.budget = o.budget;
  for (const auto& h : o.hints) opts.hints.push_back(equation_poly(h));
  Outcome out;
  out.result = decide_poly(equation_poly(o.equation), opts, out.exit);
  return out;
}

json search_input(const Options& o, const Polynomial& p, SolutionMode mode) {
  return json{{"polynomial", p.to_string()}, {"k", o.colors},
              {"max_n", o.max_n},            {"mode", std::string(mode_name(mode))},
              {"find", o.find},              {"node_budget", o.node_budget},
              {"max_solutions", o.max_solutions}};
}

Outcome cmd_search(const Options& o, const Polynomial& p, SolutionMode mode) {
  SearchOptions so;
  so.threads = o.threads;
  so.node_budget = o.node_budget;
  so.max_solutions = o.max_solutions;
  Outcome out;
  json r{{"equation", p.to_string()}, {"k", o.colors}, {"constraint", std::string(mode_name(mode))}};
  if (o.find == "witness") {
    const SearchOutcome s = find_avoiding_coloring(p, o.colors, o.max_n, mode, so);
    r["N"] = o.max_n;
    r["outcome"] = s.kind == OutcomeKind::kForced ? "Forced" : "Witness";
    r["witness"] = coloring_json(s.witness);
    if (s.witness) {
      r["witness_classes"] = format_classes(*s.witness);
      r["witness_checked"] = !check_coloring(p, *s.witness, mode).has_value();
    }
    r["nodes"] = s.stats.nodes;
    r["solutions"] = s.stats.solutions;
  } else {
    const RadoNumberResult s = rado_number(p, o.colors, mode, o.max_n, so);
    r["outcome"] = s.n_star ? "Forced" : "Witness";
    r["N"] = s.n_star ? *s.n_star : o.max_n;
    r["rado_number"] = s.n_star ? json(*s.n_star) : json(nullptr);
    r["witness"] = coloring_json(s.witness);
    r["witness_N"] = s.witness ? json(s.witness->n()) : json(nullptr);
    if (s.witness) {
      r["witness_classes"] = format_classes(*s.witness);
      r["witness_checked"] = !check_coloring(p, *s.witness, mode).has_value();
    }
    r["nodes"] = s.stats.nodes;
    r["solutions"] = s.stats.solutions;
  }
  out.result = std::move(r);
  return out;
}

Outcome cmd_construct(const Options& o) {
  Outcome out;
  json r{{"op", o.op}};
  auto need = [&](const std::string& v, const char* flag) {
    if (v.empty()) throw Error(ErrorCode::kUsage, std::string("--op ") + o.op + " needs " + flag);
    return equation_poly(v);
  };
  auto emit = [&](const Constructed& c) {
    r["polynomial"] = c.poly.to_string();
    r["homogeneous"] = c.homogeneous;
    r["note"] = c.note;
    r["certificate"] = c.certificate ? certificate_json_checked(*c.certificate) : json(nullptr);
    if (c.certificate) r["status"] = std::string(pr_status_name(c.certificate->conclusion()));
    if (c.poly.is_linear() && !c.poly.is_zero() && c.poly.constant_term() == 0)
      r["rado"] = std::string(pr_status_name(rado_decide(c.poly).status));
  };

  if (o.op == "multiple") {
    const Polynomial p = need(o.poly, "--poly");
    const Polynomial q = need(o.by, "--by");
    emit(multiple(p, q, evidence_for(p)));
  } else if (o.op == "sum") {
    const Polynomial p = need(o.left, "--left");
    const Polynomial q = need(o.right, "--right");
    auto ep = evidence_for(p);
    auto eq = evidence_for(q);
    if (!p.is_zero() && !q.is_zero()) {
      // Shape errors take precedence over missing evidence.
      auto pv = p.variables(), qv = q.variables();
      std::vector<std::string> shared;
      std::set_intersection(pv.begin(), pv.end(), qv.begin(), qv.end(), std::back_inserter(shared));
      if (shared.empty() && p.is_homogeneous() && q.is_homogeneous()) {
        if (!ep) throw Error(ErrorCode::kNoEvidence, "no PR certificate found for " + p.to_string());
        if (!eq) throw Error(ErrorCode::kNoEvidence, "no PR certificate found for " + q.to_string());
      }
    }
    emit(disjoint_sum(p, q, ep.value_or(Certificate{}), eq.value_or(Certificate{})));
    if (!o.point_left.empty() || !o.point_right.empty()) {
      if (o.point_left.empty() || o.point_right.empty())
        throw Error(ErrorCode::kUsage, "--point-left and --point-right go together");
      r["transported_point"] = point_json(sum_solution_transport(p, q, parse_point(o.point_left), parse_point(o.point_right)));
    }
  } else if (o.op == "reciprocal") {
    const Polynomial p = need(o.poly, "--poly");
    r["polynomial"] = reciprocal(p).to_string();
    if (!o.point.empty()) {
      std::map<std::string, Integer> a;
      for (const auto& [name, v] : parse_point(o.point)) {
        if (v.get_den() != 1) throw Error(ErrorCode::kNonpositive, "value of '" + name + "' is not an integer");
        a[name] = v.get_num();
      }
      json t = json::object();
      for (const auto& [name, v] : reciprocal_solution_transport(p, a)) t[name] = v.get_str();
      r["transported_point"] = t;
    }
  } else if (o.op == "lift") {
    LiftSpec spec;
    spec.base = need(o.base, "--base");
    if (o.f_sets.empty()) throw Error(ErrorCode::kUsage, "--op lift needs --F");
    spec.f_sets = parse_f_sets(o.f_sets);
    if (!o.aux.empty()) {
      for (const auto& y : split(o.aux, ',')) spec.aux_names.push_back(trim(y));
    } else {
      std::size_t m = 0;
      for (const auto& f : spec.f_sets)
        for (auto j : f) m = std::max(m, j);
      for (std::size_t j = 1; j <= m; ++j) spec.aux_names.push_back("y" + std::to_string(j));
    }
    emit(monomial_lift(spec));
  } else if (o.op == "factor-check") {
    const Polynomial p = need(o.poly, "--poly");
    if (o.factors.empty()) throw Error(ErrorCode::kUsage, "--op factor-check needs --factors");
    std::vector<Polynomial> fs;
    for (const auto& f : split(o.factors, ';')) fs.push_back(parse_poly(f));
    const FactorReport rep = factor_check(p, fs);
    r["polynomial"] = p.to_string();
    json factors = json::array();
    for (const auto& f : rep.factors)
      factors.push_back({{"factor", f.factor.to_string()}, {"status", std::string(pr_status_name(f.status))}});
    r["factors"] = factors;
    r["status"] = std::string(pr_status_name(rep.conclusion));
    r["certificate"] = rep.certificate ? certificate_json_checked(*rep.certificate) : json(nullptr);
    out.exit = exit_for(rep.conclusion);
  } else {
    throw Error(ErrorCode::kUsage, "unknown --op '" + o.op + "'");
  }
  out.result = std::move(r);
  return out;
}

std::vector<Integer> parse_n_list(const std::string& text) {
  std::vector<Integer> n;
  for (const auto& part : split(text, ',')) {
    Integer v;
    if (v.set_str(trim(part), 10) != 0) throw Error(ErrorCode::kUsage, "bad ratio '" + part + "'");
    n.push_back(v);
  }
  return n;
}

Outcome cmd_symbolic(const Options& o) {
  VerificationReport rep;
  if (o.verify == "ap3") {
    rep = verify_ap3(!o.no_idempotent);
  } else if (o.verify == "chain") {
    if (o.n_list.empty()) throw Error(ErrorCode::kUsage, "--verify chain needs --n");
    rep = verify_chain(o.k, parse_n_list(o.n_list));
  } else if (o.verify == "xyzw") {
    rep = verify_xyzw(!o.no_idempotent);
  } else {
    throw Error(ErrorCode::kUsage, "unknown --verify '" + o.verify + "' (ap3, chain, xyzw)");
  }
  return Outcome{report_to_json(rep), rep.passed() ? 0 : 1};
}

Outcome cmd_batch(const Options& o) {
  const auto entries = load_corpus(o.corpus);
  // Every corpus polynomial is a candidate divisor for the others.
  DeriveOptions opts;
  for (const auto& e : entries)
    if (!e.equation.poly.is_zero()) opts.hints.push_back(e.equation.poly);
  json rows = json::array();
  int agree = 0, disagree = 0, errors = 0;
  for (const auto& e : entries) {
    json row{{"id", e.id}, {"equation", e.equation_text}, {"expected", std::string(status_name(e.expected_status))}};
    try {
      int code = 0;
      json d = decide_poly(e.equation.poly, opts, code);
      row["status"] = d["status"];
      row["method"] = d["method"];
      if (d["certificate"].is_object()) row["rule"] = d["certificate"]["rule"];
      const bool compared = e.expected_status != ExpectedStatus::kUnknown;
      const bool ok = !compared || d["status"] == status_name(e.expected_status);
      row["agrees"] = compared ? json(ok) : json(nullptr);
      (ok ? agree : disagree) += compared ? 1 : 0;
    } catch (const Error& err) {
      row["status"] = nullptr;
      row["error"] = err.what();
      ++errors;
    }
    rows.push_back(std::move(row));
  }
  Outcome out;
  out.result = json{{"entries", rows}, {"total", entries.size()}, {"agree", agree}, {"disagree", disagree},
                    {"errors", errors}};
  out.exit = disagree == 0 && errors == 0 ? 0 : 1;
  return out;
}

Outcome cmd_validate(const Options& o) {
  json j;
  try {
    if (o.certificate == "-") {
      j = json::parse(std::cin);
    } else {
      std::ifstream in(o.certificate);
      if (!in) throw Error(ErrorCode::kIo, "cannot read " + o.certificate);
      j = json::parse(in);
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kBadCertificate, e.what());
  }
  const Certificate c = certificate_from_json(j);
  const ValidationResult v = validate_certificate(c);
  Outcome out;
  out.result = json{{"root", c.root.to_string()},
                    {"rule", std::string(rule_name(c.rule))},
                    {"conclusion", std::string(pr_status_name(c.conclusion()))},
                    {"valid", v.valid},
                    {"diagnostics", v.diagnostics}};
  out.exit = v.valid ? 0 : 1;
  return out;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Partition-regular polynomial workbench"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub) {
    sub->add_flag("--no-cache", o.no_cache, "Ignore PARTREG_CACHE_DIR");
    sub->add_flag("--no-timing", o.no_timing, "Omit wall_ms so reports are byte-identical");
  };

  auto* decide = app.add_subcommand("decide", "Decide partition regularity of an equation");
  decide->add_option("equation", o.equation, "Equation \"A = B\" or polynomial P (P = 0)")->required();
  decide->add_option("--hint", o.hints, "Candidate divisor for C-MULT");
  decide->add_option("--budget", o.budget, "Proof search budget");
  common(decide);

  auto* search = app.add_subcommand("search", "Search colorings of {1..N}");
  search->add_option("equation", o.equation, "Equation");
  search->add_option("--colors", o.colors, "Number of colors k")->check(CLI::PositiveNumber);
  search->add_option("--max-n", o.max_n, "Largest N (default 100, or 30 with --find witness)");
  search->add_option("--mode", o.mode, "ANY, DISTINCT or NONDEGENERATE");
  search->add_option("--find", o.find, "rado-number or witness")->check(CLI::IsMember({"rado-number", "witness"}));
  search->add_flag("--ap3", o.ap3, "x + z = 2y with DISTINCT values");
  search->add_option("--threads", o.threads, "Worker threads")->check(CLI::PositiveNumber);
  search->add_option("--node-budget", o.node_budget, "Search node budget");
  search->add_option("--max-solutions", o.max_solutions, "Cap on enumerated solutions");
  common(search);

  auto* construct = app.add_subcommand("construct", "Closure constructions");
  construct->add_option("--op", o.op, "multiple, sum, reciprocal, lift or factor-check")->required();
  construct->add_option("--poly", o.poly);
  construct->add_option("--by", o.by, "Multiplier for --op multiple");
  construct->add_option("--left", o.left);
  construct->add_option("--right", o.right);
  construct->add_option("--base", o.base, "Linear base for --op lift");
  construct->add_option("--F", o.f_sets, "Index sets, e.g. \"{1};{};{1,2}\"");
  construct->add_option("--aux", o.aux, "Auxiliary names, comma separated (default y1..ym)");
  construct->add_option("--factors", o.factors, "Factors separated by ';'");
  construct->add_option("--point", o.point, "Root of --poly to transport, e.g. x=1,y=2");
  construct->add_option("--point-left", o.point_left, "Root of --left to transport");
  construct->add_option("--point-right", o.point_right, "Root of --right to transport");
  common(construct);

  auto* symbolic = app.add_subcommand("symbolic", "Verify generator constructions");
  symbolic->add_option("--verify", o.verify, "ap3, chain or xyzw")->required();
  symbolic->add_option("--k", o.k, "Chain length");
  symbolic->add_option("--n", o.n_list, "Ratios n1,...,n(k+1)");
  symbolic->add_flag("--no-idempotent", o.no_idempotent, "Drop the idempotency assumption");
  common(symbolic);

  auto* batch = app.add_subcommand("batch", "Decide every entry of a corpus");
  batch->add_option("--corpus", o.corpus, "JSON-lines corpus")->required();
  common(batch);

  auto* validate = app.add_subcommand("validate", "Validate a certificate JSON file");
  validate->add_option("--certificate", o.certificate, "Path, or - for stdin")->required();
  common(validate);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kExitUsage;
  }

  const auto t0 = std::chrono::steady_clock::now();
  std::string command;
  json input;
  Cache cache = o.no_cache ? Cache("") : Cache::from_env();
  try {
    std::function<Outcome()> job;
    if (decide->parsed()) {
      command = "decide";
      std::vector<std::string> hints;
      for (const auto& h : o.hints) hints.push_back(equation_poly(h).to_string());
      input = {{"polynomial", equation_poly(o.equation).to_string()}, {"hints", hints}, {"budget", o.budget}};
      job = [&] { return cmd_decide(o); };
    } else if (search->parsed()) {
      command = "search";
      if (o.ap3) {
        if (o.equation.empty()) o.equation = "x + z = 2*y";
        if (o.mode.empty()) o.mode = "DISTINCT";
      }
      if (o.equation.empty()) throw Error(ErrorCode::kUsage, "search needs an equation (or --ap3)");
      if (o.max_n == 0) o.max_n = o.find == "witness" ? 30 : 100;
      if (o.max_n < 1) throw Error(ErrorCode::kUsage, "--max-n must be positive");
      const SolutionMode mode = o.mode.empty() ? SolutionMode::kAny : parse_mode(o.mode);
      const Polynomial p = equation_poly(o.equation);
      input = search_input(o, p, mode);
      job = [&o, p, mode] { return cmd_search(o, p, mode); };
    } else if (construct->parsed()) {
      command = "construct";
      input = {{"op", o.op},     {"poly", o.poly},       {"by", o.by},         {"left", o.left},
               {"right", o.right}, {"base", o.base},     {"F", o.f_sets},      {"aux", o.aux},
               {"factors", o.factors}, {"point", o.point}, {"point_left", o.point_left},
               {"point_right", o.point_right}};
      job = [&] { return cmd_construct(o); };
    } else if (symbolic->parsed()) {
      command = "symbolic";
      input = {{"verify", o.verify}, {"k", o.k}, {"n", o.n_list}, {"idempotent", !o.no_idempotent}};
      job = [&] { return cmd_symbolic(o); };
    } else if (batch->parsed()) {
      command = "batch";
      cache = Cache("");  // the corpus file may change under the same path
      input = {{"corpus", o.corpus}};
      job = [&] { return cmd_batch(o); };
    } else {
      command = "validate";
      cache = Cache("");
      input = {{"certificate", o.certificate}};
      job = [&] { return cmd_validate(o); };
    }
    input["command"] = command;

    Outcome result;
    bool cached = false;
    if (auto hit = cache.get(input)) {
      result.result = (*hit).at("result");
      result.exit = (*hit).at("exit").get<int>();
      cached = true;
    } else {
      result = job();
      cache.put(input, json{{"result", result.result}, {"exit", result.exit}});
    }

    json report{{"engine_version", kEngineVersion}, {"command", command}, {"input", input},
                {"result", result.result}, {"exit_code", result.exit}, {"cached", cached}};
    if (!o.no_timing) {
      report["wall_ms"] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    }
    out << report.dump(2) << "\n";
    return result.exit;
  } catch (const LimitError& e) {
    err << e.what() << "\n";
    json report{{"engine_version", kEngineVersion},
                {"command", command},
                {"input", input},
                {"error", {{"code", "E_LIMIT"}, {"message", e.what()}}},
                {"partial", {{"nodes", e.stats().nodes}, {"solutions", e.stats().solutions}, {"at_n", e.at_n()}}},
                {"exit_code", kExitLimit}};
    out << report.dump(2) << "\n";
    return kExitLimit;
  } catch (const Error& e) {
    err << e.what() << "\n";
    return e.code() == ErrorCode::kUsage ? kExitUsage : kExitError;
  }
}

}  // namespace partreg::cli
