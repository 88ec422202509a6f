#include <algorithm>

#include "partreg/error.hpp"
#include "partreg/hypergen.hpp"

namespace partreg {

using nlohmann::json;

bool VerificationReport::passed() const {
  return std::none_of(checks.begin(), checks.end(), [](const CheckEntry& c) { return c.status == "fail"; });
}

json report_to_json(const VerificationReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks) {
    json j{{"check", c.check}, {"status", c.status}, {"lhs", c.lhs}, {"rhs", c.rhs}};
    if (!c.detail.empty()) j["detail"] = c.detail;
    checks.push_back(std::move(j));
  }
  return json{{"verifier", r.name}, {"passed", r.passed()}, {"checks", checks}};
}

namespace {

const char* status(bool ok) { return ok ? "pass" : "fail"; }

void check_identity(VerificationReport& r, const std::string& name, const HyperTerm& lhs, const HyperTerm& rhs) {
  r.checks.push_back({name, status(lhs == rhs), lhs.to_string(), rhs.to_string(), ""});
  r.zero_identities.push_back(lhs - rhs);
}

void check_class(VerificationReport& r, const std::string& name, const HyperTerm& t, const UExpr& target,
                 const Assumptions& a) {
  CheckEntry e{name, "fail", "", target.pretty(), ""};
  try {
    const UExpr got = infer_class(t, a);
    e.lhs = got.pretty();
    e.status = status(got == target);
    if (!(got == target)) e.detail = "class of " + t.to_string() + " is " + got.to_string();
  } catch (const Error& err) {
    e.lhs = "-";
    e.detail = err.what();
  }
  r.checks.push_back(std::move(e));
}

void check_less(VerificationReport& r, const std::string& name, const HyperTerm& s, const HyperTerm& t) {
  CheckEntry e{name, "fail", s.to_string(), t.to_string(), ""};
  try {
    e.status = status(term_compare(s, t) == std::strong_ordering::less);
  } catch (const Error& err) {
    e.detail = err.what();
  }
  r.checks.push_back(std::move(e));
}

}  // namespace

VerificationReport verify_ap3(bool additively_idempotent) {
  VerificationReport r;
  r.name = "ap3";
  Assumptions a;
  a.ultrafilter_of["eta"] = "U";
  a.additively_idempotent["U"] = additively_idempotent;

  const HyperTerm eta0 = HyperTerm::atom("eta", 0), eta1 = HyperTerm::atom("eta", 1), eta2 = HyperTerm::atom("eta", 2);
  const HyperTerm alpha = eta0.scaled(2) + eta2;
  const HyperTerm beta = combine_add(eta0.scaled(2), eta0 + eta1);
  const HyperTerm gamma = combine_add(eta0.scaled(2) + eta1.scaled(2), eta0);

  const UExpr target = normalize(UExpr::oplus({UExpr::scale(2, UExpr::base("U")), UExpr::base("U")}), a);
  check_class(r, "class(alpha)", alpha, target, a);
  check_class(r, "class(beta)", beta, target, a);
  check_class(r, "class(gamma)", gamma, target, a);
  check_less(r, "alpha < beta", alpha, beta);
  check_less(r, "beta < gamma", beta, gamma);
  check_identity(r, "beta - alpha = gamma - beta", beta - alpha, gamma - beta);
  check_identity(r, "beta - alpha = S1(eta)", beta - alpha, eta1);
  return r;
}

VerificationReport verify_chain(int k, const std::vector<Integer>& n) {
  if (k < 1) throw Error(ErrorCode::kUsage, "k must be at least 1");
  if (n.size() != static_cast<std::size_t>(k) + 1)
    throw Error(ErrorCode::kUsage, "expected " + std::to_string(k + 1) + " ratios, got " + std::to_string(n.size()));
  for (std::size_t i = 0; i < n.size(); ++i) {
    if (n[i] < 1) throw Error(ErrorCode::kHypothesis, "n" + std::to_string(i + 1) + " is not positive");
    if (i + 1 < n.size() && n[i] == n[i + 1])
      throw Error(ErrorCode::kHypothesis, "n" + std::to_string(i + 1) + " = n" + std::to_string(i + 2));
  }

  VerificationReport r;
  r.name = "chain";
  Assumptions a;
  a.ultrafilter_of["xi"] = "U";
  a.additively_idempotent["U"] = true;

  std::vector<UExpr> parts;
  for (const auto& ni : n) parts.push_back(UExpr::scale(ni, UExpr::base("U")));
  const UExpr target = normalize(UExpr::oplus(std::move(parts)), a);

  auto S = [](unsigned level, const Integer& c) { return HyperTerm::atom("xi", level, c); };
  HyperTerm alpha;
  for (std::size_t i = 0; i < n.size(); ++i) alpha = alpha + S(static_cast<unsigned>(2 * i), n[i]);

  r.checks.push_back({"naming", "note", "beta_i = alpha_i + n_i*S(2i-1)", "gamma_i = alpha_i + n_(i+1)*S(2i-1)",
                      "for k=1, n=(2,1) (alpha, beta, gamma) here is (alpha, gamma, beta) of the classic triple"});
  for (int i = 1; i <= k; ++i) {
    const std::string tag = "[" + std::to_string(i) + "]";
    const unsigned odd = static_cast<unsigned>(2 * i - 1);
    const HyperTerm beta = alpha + S(odd, n[i - 1]);
    const HyperTerm gamma = alpha + S(odd, n[i]);
    check_less(r, "x" + tag + " < y" + tag, alpha, beta);
    check_less(r, "x" + tag + " < z" + tag, alpha, gamma);
    check_identity(r, "n" + std::to_string(i) + "(z-x)" + tag + " = n" + std::to_string(i + 1) + "(y-x)" + tag,
                   (gamma - alpha).scaled(n[i - 1]), (beta - alpha).scaled(n[i]));
    check_class(r, "class(alpha" + tag + ")", alpha, target, a);
    check_class(r, "class(beta" + tag + ")", beta, target, a);
    check_class(r, "class(gamma" + tag + ")", gamma, target, a);
    if (i < k) {
      const HyperTerm next = gamma;
      check_identity(r, "x[" + std::to_string(i + 1) + "] = z" + tag, next, gamma);
      alpha = next;
    }
  }
  return r;
}

VerificationReport verify_xyzw(bool multiplicatively_idempotent) {
  VerificationReport r;
  r.name = "xyzw";
  Assumptions a;
  for (const char* s : {"alpha", "beta", "gamma"}) a.ultrafilter_of[s] = "U";
  a.multiplicatively_idempotent["U"] = multiplicatively_idempotent;

  const HyperTerm alpha = HyperTerm::atom("alpha"), beta = HyperTerm::atom("beta"), gamma = HyperTerm::atom("gamma");
  const HyperTerm xi1 = combine_mul(alpha, alpha);
  const HyperTerm xi2 = combine_mul(beta, alpha);
  const HyperTerm xi3 = gamma;
  const HyperTerm xi4 = star_shift(alpha, 1);

  // gamma is assumed to be alpha + beta; substitute before expanding.
  const HyperTerm xi3_sub = alpha + beta;
  check_identity(r, "xi1 + xi2 - xi3*xi4 = 0 (gamma := alpha + beta)", xi1 + xi2 - xi3_sub * xi4, HyperTerm());

  const UExpr u = UExpr::base("U");
  check_class(r, "class(xi1)", xi1, u, a);
  check_class(r, "class(xi2)", xi2, u, a);
  check_class(r, "class(xi3)", xi3, u, a);
  check_class(r, "class(xi4)", xi4, u, a);

  const HyperTerm residual = xi1 + xi2 - alpha * xi4;
  r.checks.push_back({"variant xi3 = alpha", "note", residual.to_string(), "0",
                      "with xi3 = alpha the expansion leaves a nonzero residual; xi3 = gamma is required"});
  return r;
}

}  // namespace partreg
