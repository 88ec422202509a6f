#include <doctest.h>

#include <algorithm>
#include <random>

#include "oracles.hpp"
#include "partreg/construct.hpp"
#include "partreg/error.hpp"
#include "partreg/parser.hpp"
#include "partreg/rado.hpp"

using namespace partreg;

namespace {

Polynomial P(const char* s) { return parse_poly(s); }

std::vector<long long> coeffs(const Polynomial& p) {
  std::vector<long long> out;
  for (const auto& [v, c] : p.coefficient_vector()) out.push_back(c.get_si());
  return out;
}

ErrorCode decide_error(const Polynomial& p) {
  try {
    rado_decide(p);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error for " << p);
  return ErrorCode::kUsage;
}

Polynomial linear(const std::vector<std::pair<std::string, long>>& terms) {
  Polynomial p;
  for (const auto& [v, c] : terms) p = p + Polynomial::variable(v).scaled(c);
  return p;
}

}  // namespace

TEST_CASE("decision examples") {
  const RadoVerdict a = rado_decide(P("x - y + z"));
  CHECK(a.status == PrStatus::kPr);
  CHECK(a.witness_vars == std::vector<std::string>{"x", "y"});
  CHECK(rado_decide(P("z + w")).status == PrStatus::kNotPr);
  CHECK_FALSE(rado_decide(P("z + w")).witness_subset);
  const RadoVerdict c = rado_decide(P("2*x1 + 7*x2 - 2*x3"));
  CHECK(c.status == PrStatus::kPr);
  CHECK(c.witness_vars == std::vector<std::string>{"x1", "x3"});
  CHECK(rado_decide(P("x + y - 3*z")).status == PrStatus::kNotPr);
}

TEST_CASE("decision errors") {
  CHECK(decide_error(P("x + y - z*w")) == ErrorCode::kNotLinear);
  CHECK(decide_error(P("x + y - z + 1")) == ErrorCode::kConstTerm);
  CHECK(decide_error(Polynomial()) == ErrorCode::kZeroPoly);
  std::vector<std::pair<std::string, long>> many;
  for (int i = 0; i < 41; ++i) many.emplace_back("v" + std::to_string(100 + i), 1 + i);
  CHECK(decide_error(linear(many)) == ErrorCode::kTooManyVars);
  CHECK_THROWS_WITH_AS(min_zero_sum_subset({1, 0, -1}), doctest::Contains("E_ZERO_COEFF"), Error);
}

TEST_CASE("minimal witness agrees with subset enumeration") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> n(1, 12), c(-9, 9);
  for (int i = 0; i < 400; ++i) {
    std::vector<Integer> a;
    std::vector<long long> al;
    const int len = n(rng);
    while (static_cast<int>(a.size()) < len) {
      const int v = c(rng);
      if (v == 0) continue;
      a.emplace_back(v);
      al.push_back(v);
    }
    const auto got = min_zero_sum_subset(a);
    const auto want = oracle::zero_subset(al);
    REQUIRE(got.has_value() == want.has_value());
    if (got) REQUIRE(*got == *want);
  }
}

TEST_CASE("meet in the middle handles 40 variables") {
  std::vector<Integer> a;
  for (int i = 0; i < 40; ++i) a.emplace_back(Integer(1) << (i + 1));
  CHECK_FALSE(min_zero_sum_subset(a));
  a.back() = -(a[0] + a[5] + a[17]);
  const auto j = min_zero_sum_subset(a);
  REQUIRE(j);
  CHECK(*j == std::vector<std::size_t>{0, 5, 17, 39});
}

TEST_CASE("invariance under renaming, permutation and scaling") {
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<int> n(1, 7), c(-6, 6), s(-5, 5);
  const std::vector<std::string> names{"a", "b", "c", "d", "e", "f", "g"};
  for (int i = 0; i < 300; ++i) {
    std::vector<long> cs;
    const int len = n(rng);
    while (static_cast<int>(cs.size()) < len)
      if (const int v = c(rng); v != 0) cs.push_back(v);
    std::vector<std::pair<std::string, long>> t;
    for (int j = 0; j < len; ++j) t.emplace_back(names[j], cs[j]);
    const RadoVerdict base = rado_decide(linear(t));

    std::vector<std::string> perm(names.begin(), names.begin() + len);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<std::pair<std::string, long>> renamed;
    for (int j = 0; j < len; ++j) renamed.emplace_back("z" + perm[j], cs[j]);
    const RadoVerdict moved = rado_decide(linear(renamed));
    REQUIRE(moved.status == base.status);
    if (base.witness_subset) {
      REQUIRE(moved.witness_subset->size() == base.witness_subset->size());
      long sum = 0;
      for (const auto& v : moved.witness_vars)
        for (const auto& [name, coef] : renamed)
          if (name == v) sum += coef;
      REQUIRE(sum == 0);
    }

    int k = 0;
    while (k == 0) k = s(rng);
    const RadoVerdict scaled = rado_decide(linear(t).scaled(k));
    REQUIRE(scaled.status == base.status);
    REQUIRE(scaled.witness_subset == base.witness_subset);
  }
}

TEST_CASE("derivation examples") {
  const auto xyzw = derive_certificate(P("x + y - z*w"));
  REQUIRE(xyzw);
  CHECK(xyzw->rule == Rule::kCLift);
  CHECK(validate_certificate(*xyzw));
  const Polynomial base = parse_poly(xyzw->data["base"].get<std::string>());
  auto cs = coeffs(base);
  std::sort(cs.begin(), cs.end());
  CHECK(cs == std::vector<long long>{-1, 1, 1});

  const auto lev = derive_certificate(P("2*x1*y1 + 7*x2 - 2*x3*y1*y2"));
  REQUIRE(lev);
  CHECK(lev->rule == Rule::kCLift);
  CHECK(lev->data["base"] == "2*x1 + 7*x2 - 2*x3");
  CHECK(lev->data["F"] == nlohmann::json::parse("[[1],[],[1,2]]"));
  CHECK(validate_certificate(*lev));

  CHECK_FALSE(derive_certificate(P("z + w")));
  CHECK(derive_certificate(P("x - y + z"))->rule == Rule::kRLin);
  CHECK_THROWS_WITH_AS(derive_certificate(P("x*y + 1")), doctest::Contains("E_CONST_TERM"), Error);
}

TEST_CASE("derivation through sums and multiples") {
  const auto sum = derive_certificate(P("x^2 - y^2 + u - v"));
  if (sum) CHECK(validate_certificate(*sum));

  DeriveOptions o;
  o.hints = {P("x + y - z")};
  const auto mult = derive_certificate(P("(x + y - z)*(u + 3*v)"), o);
  REQUIRE(mult);
  CHECK(mult->rule == Rule::kCMult);
  CHECK(validate_certificate(*mult));
  CHECK_FALSE(derive_certificate(P("(x + y - z)*(u + 3*v)")));
}

TEST_CASE("validation rejects broken certificates") {
  Certificate guard;
  guard.root = P("x - y");
  guard.rule = Rule::kCLift;
  guard.data = {{"base", "x - y"}, {"x", {"x", "y"}}, {"aux", nlohmann::json::array()}, {"F", {nlohmann::json::array(), nlohmann::json::array()}}};
  const auto g = validate_certificate(guard);
  CHECK_FALSE(g.valid);
  CHECK_FALSE(g.diagnostics.empty());

  Certificate mult;
  mult.root = P("x*u - y*u + x - y");
  mult.rule = Rule::kCMult;
  mult.data = {{"divisor", "x - y"}, {"cofactor", "u"}};
  mult.premises.push_back(*derive_certificate(P("x - y")));
  CHECK_FALSE(validate_certificate(mult));
  mult.root = P("x*u - y*u");
  CHECK(validate_certificate(mult));

  Certificate rlin = *derive_certificate(P("x - y + z"));
  rlin.data["J"] = {"x", "z"};
  CHECK_FALSE(validate_certificate(rlin));

  Certificate neg;
  neg.root = P("(z + w)*(u + 3*v)");
  neg.rule = Rule::kCFactorNeg;
  neg.data = {{"factors", {"z + w", "u + 3*v"}}};
  CHECK(validate_certificate(neg));
  neg.data = {{"factors", {"z + w", "u - v"}}};
  CHECK_FALSE(validate_certificate(neg));
}

TEST_CASE("certificate JSON round trip") {
  const auto c = derive_certificate(P("2*x1*y1 + 7*x2 - 2*x3*y1*y2"));
  REQUIRE(c);
  const auto j = certificate_to_json(*c);
  const Certificate back = certificate_from_json(j);
  CHECK(certificate_to_json(back) == j);
  CHECK(validate_certificate(back));
  CHECK_THROWS_WITH_AS(certificate_from_json(nlohmann::json{{"rule", "NOPE"}}), doctest::Contains("E_BAD_CERTIFICATE"),
                       Error);
}

TEST_CASE("derived certificates always validate, 500 random lifts") {
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<int> nvars(2, 5), coef(-5, 5), maux(1, 3);
  int lifts = 0;
  while (lifts < 500) {
    const int n = nvars(rng);
    std::vector<std::pair<std::string, long>> t;
    for (int j = 0; j < n; ++j) {
      int c = 0;
      while (c == 0) c = coef(rng);
      t.emplace_back("x" + std::to_string(j + 1), c);
    }
    // Force a zero-sum pair so the base is PR.
    t[1].second = -t[0].second;
    const Polynomial base = linear(t);
    const int m = maux(rng);
    LiftSpec spec{base, {}, {}};
    for (int j = 0; j < m; ++j) spec.aux_names.push_back("y" + std::to_string(j + 1));
    for (int i = 0; i < n; ++i) {
      std::vector<std::size_t> f;
      for (int j = 1; j <= m; ++j)
        if (rng() & 1) f.push_back(j);
      spec.f_sets.push_back(f);
    }
    if (n == 2 && spec.f_sets[0].empty() && spec.f_sets[1].empty()) continue;
    const Constructed lifted = monomial_lift(spec);
    ++lifts;
    const auto c = derive_certificate(lifted.poly);
    REQUIRE_MESSAGE(c, lifted.poly.to_string());
    const auto v = validate_certificate(*c);
    REQUIRE_MESSAGE(v.valid, lifted.poly.to_string());
  }
}
