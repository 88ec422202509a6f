#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "oracles.hpp"
#include "partreg/construct.hpp"
#include "partreg/error.hpp"
#include "partreg/parser.hpp"
#include "properties.hpp"

using namespace partreg;

namespace {

Polynomial P(const char* s) { return parse_poly(s); }

Certificate evidence(const char* s) {
  auto c = derive_certificate(P(s));
  REQUIRE(c);
  return *c;
}

template <class F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::kUsage;
}

Point pt(std::initializer_list<std::pair<const char*, long>> xs) {
  Point p;
  for (const auto& [v, x] : xs) p[v] = x;
  return p;
}

std::vector<Integer> sorted_coeffs(const Polynomial& p) {
  std::vector<Integer> out;
  for (const auto& [m, c] : p.terms()) out.push_back(c);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("multiple") {
  CHECK(multiple(P("x - y"), Polynomial::constant(1)).poly == P("x - y"));
  const Constructed m = multiple(P("x + y - z"), P("w"), evidence("x + y - z"));
  CHECK(m.poly == P("x*w + y*w - z*w"));
  REQUIRE(m.certificate);
  CHECK(m.certificate->rule == Rule::kCMult);
  CHECK(validate_certificate(*m.certificate));
  const Constructed sq = multiple(P("x + y - z"), P("x + y - z"), evidence("x + y - z"));
  CHECK(sq.poly == P("(x + y - z)^2"));
  CHECK(validate_certificate(*sq.certificate));
  CHECK(code_of([] { multiple(P("x - y"), Polynomial()); }) == ErrorCode::kZeroPoly);
  CHECK(code_of([] { multiple(P("x - y"), P("u"), evidence("x + y - z")); }) == ErrorCode::kNoEvidence);
}

TEST_CASE("disjoint sum") {
  const Constructed s = disjoint_sum(P("x - y"), P("z - w"), evidence("x - y"), evidence("z - w"));
  CHECK(s.poly == P("x - y + z - w"));
  CHECK(s.homogeneous);
  REQUIRE(s.certificate);
  CHECK(validate_certificate(*s.certificate));
  CHECK(rado_decide(s.poly).status == PrStatus::kPr);

  CHECK(code_of([] { disjoint_sum(P("x - y + z"), P("y - x + w"), evidence("x - y + z"), evidence("y - x + w")); }) ==
        ErrorCode::kSharedVars);

  Certificate sq;
  sq.root = P("z^2 - w^2");
  sq.rule = Rule::kCMult;
  sq.data = {{"divisor", "z - w"}, {"cofactor", "z + w"}};
  sq.premises.push_back(evidence("z - w"));
  REQUIRE(validate_certificate(sq));
  const Constructed mixed = disjoint_sum(P("x - y"), P("z^2 - w^2"), evidence("x - y"), sq);
  CHECK(mixed.poly == P("x - y + z^2 - w^2"));
  CHECK_FALSE(mixed.homogeneous);
  CHECK(validate_certificate(*mixed.certificate));

  CHECK(code_of([] { disjoint_sum(P("x + y - z*w"), P("u - v"), evidence("x + y - z*w"), evidence("u - v")); }) ==
        ErrorCode::kNotHomogeneous);
  CHECK(code_of([] { disjoint_sum(P("x - y"), P("u - v"), evidence("x + y - z"), evidence("u - v")); }) ==
        ErrorCode::kNoEvidence);
}

TEST_CASE("reciprocal") {
  CHECK(reciprocal(P("x + y - z")) == P("y*z + x*z - x*y"));
  CHECK(reciprocal(P("x - y")) == P("y - x"));
  CHECK(reciprocal(P("x^2 - y*z")) == P("y^2*z^2 - x^2*y*z"));
  CHECK(code_of([] { reciprocal(P("x + y - z*w")); }) == ErrorCode::kNotHomogeneous);
  CHECK(code_of([] { reciprocal(Polynomial()); }) == ErrorCode::kZeroPoly);
}

TEST_CASE("reciprocal evaluation identity and shape, 200 random polynomials") {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<int> nv(1, 4), dd(1, 4), num(1, 9), den(1, 9);
  const std::vector<std::string> all{"a", "b", "c", "d"};
  for (int i = 0; i < 200; ++i) {
    const std::vector<std::string> vars(all.begin(), all.begin() + nv(rng));
    const unsigned d = dd(rng);
    const Polynomial p = oracle::random_homogeneous(rng, vars, d, 4, 9);
    const Polynomial q = reciprocal(p);
    const std::size_t n = p.variables().size();
    REQUIRE(q.size() == p.size());
    REQUIRE(sorted_coeffs(q) == sorted_coeffs(p));
    if (!q.is_zero() && n > 1) REQUIRE(q.degree() == n * d - d);

    Point r, inv;
    Rational prod = 1;
    for (const auto& v : p.variables()) {
      Rational x(num(rng), den(rng));
      x.canonicalize();
      r[v] = x;
      inv[v] = 1 / x;
      for (unsigned e = 0; e < d; ++e) prod *= x;
    }
    REQUIRE(q.evaluate(r) == prod * p.evaluate(inv));
  }
}

TEST_CASE("monomial lift") {
  const Constructed lev = monomial_lift({P("2*x1 + 7*x2 - 2*x3"), {{1}, {}, {1, 2}}, {"y1", "y2"}});
  CHECK(lev.poly == P("2*x1*y1 + 7*x2 - 2*x3*y1*y2"));
  REQUIRE(lev.certificate);
  CHECK(lev.certificate->rule == Rule::kCLift);
  CHECK(validate_certificate(*lev.certificate));

  const Constructed schur = monomial_lift({P("x + y - z"), {{}, {}, {1}}, {"y1"}});
  CHECK(schur.poly == P("x + y - z*y1"));
  CHECK(validate_certificate(*schur.certificate));

  const Constructed flat = monomial_lift({P("x + y - z"), {{}, {}, {}}, {"y1", "y2"}});
  CHECK(flat.poly == P("x + y - z"));
  CHECK(rado_decide(flat.poly).status == PrStatus::kPr);

  CHECK(code_of([] { monomial_lift({P("x - y"), {{}, {}}, {"y1"}}); }) == ErrorCode::kLiftGuard);
  CHECK(code_of([] { monomial_lift({P("x + y - 3*z"), {{1}, {}, {}}, {"y1"}}); }) == ErrorCode::kBaseNotPr);
  CHECK(code_of([] { monomial_lift({P("x + y - z"), {{1}, {}, {}}, {"x"}}); }) == ErrorCode::kVarClash);
  CHECK(code_of([] { monomial_lift({P("x + y - z"), {{1}, {}, {}}, {"y1", "y1"}}); }) == ErrorCode::kVarClash);
  CHECK(code_of([] { monomial_lift({P("x + y - z"), {{2}, {}, {}}, {"y1"}}); }) == ErrorCode::kLiftSpec);
  CHECK(code_of([] { monomial_lift({P("x + y - z"), {{1}, {}}, {"y1"}}); }) == ErrorCode::kLiftSpec);
  CHECK(code_of([] { monomial_lift({P("x"), {{1}}, {"y1"}}); }) == ErrorCode::kLiftSpec);
  CHECK(code_of([] { monomial_lift({P("x + y - z*w"), {{1}, {}, {}}, {"y1"}}); }) == ErrorCode::kNotLinear);
}

TEST_CASE("q monomial") {
  CHECK(q_monomial({}, {"y1"}) == Polynomial::constant(1));
  CHECK(q_monomial({1, 3}, {"a", "b", "c"}) == P("a*c"));
}

TEST_CASE("sum solution transport") {
  const Point r1 = sum_solution_transport(P("x - y"), P("z - w"), pt({{"x", 1}, {"y", 1}}), pt({{"z", 2}, {"w", 2}}));
  CHECK(r1 == pt({{"x", 2}, {"y", 2}, {"z", 2}, {"w", 2}}));

  const Point r2 = sum_solution_transport(P("x + y - z"), P("u + v - w"), pt({{"x", 1}, {"y", 1}, {"z", 2}}),
                                          pt({{"u", 3}, {"v", 4}, {"w", 7}}));
  CHECK(r2 == pt({{"x", 3}, {"y", 3}, {"z", 6}, {"u", 3}, {"v", 4}, {"w", 7}}));
  CHECK(P("x + y - z + u + v - w").evaluate(r2) == 0);

  CHECK(code_of([] {
          sum_solution_transport(P("x - y"), P("z - w"), pt({{"x", 1}, {"y", 2}}), pt({{"z", 2}, {"w", 2}}));
        }) == ErrorCode::kNotASolution);
  CHECK(code_of([] {
          sum_solution_transport(P("x - y"), P("z - w"), pt({{"x", 0}, {"y", 0}}), pt({{"z", 2}, {"w", 2}}));
        }) == ErrorCode::kZeroAnchor);
}

TEST_CASE("reciprocal solution transport") {
  using IP = std::map<std::string, Integer>;
  CHECK(reciprocal_solution_transport(P("x + y - z"), IP{{"x", 1}, {"y", 1}, {"z", 2}}) ==
        IP{{"x", 2}, {"y", 2}, {"z", 1}});
  CHECK(reciprocal_solution_transport(P("x - y"), IP{{"x", 3}, {"y", 3}}) == IP{{"x", 1}, {"y", 1}});
  const IP r = reciprocal_solution_transport(P("x + y - z"), IP{{"x", 2}, {"y", 3}, {"z", 5}});
  CHECK(r == IP{{"x", 15}, {"y", 10}, {"z", 6}});
  CHECK(code_of([] { reciprocal_solution_transport(P("x + y - z"), IP{{"x", 1}, {"y", 2}, {"z", 2}}); }) ==
        ErrorCode::kNotASolution);
  CHECK(code_of([] { reciprocal_solution_transport(P("x - y"), IP{{"x", -1}, {"y", -1}}); }) ==
        ErrorCode::kNonpositive);
}

TEST_CASE("factor check") {
  const FactorReport pr = factor_check(P("(x - y)*(z + w)"), {P("x - y"), P("z + w")});
  CHECK(pr.conclusion == PrStatus::kPr);
  REQUIRE(pr.factors.size() == 2);
  CHECK(pr.factors[0].status == PrStatus::kPr);
  CHECK(pr.factors[1].status == PrStatus::kNotPr);
  REQUIRE(pr.certificate);
  CHECK(validate_certificate(*pr.certificate));

  const FactorReport neg = factor_check(P("(z + w)*(u + 3*v)"), {P("z + w"), P("u + 3*v")});
  CHECK(neg.conclusion == PrStatus::kNotPr);
  REQUIRE(neg.certificate);
  CHECK(neg.certificate->rule == Rule::kCFactorNeg);
  CHECK(validate_certificate(*neg.certificate));

  CHECK(code_of([] { factor_check(P("(z + w)*(u + 3*v)"), {P("z + w"), P("u + v")}); }) ==
        ErrorCode::kBadFactorization);
  CHECK(code_of([] { factor_check(P("z + w"), {}); }) == ErrorCode::kBadFactorization);

  const FactorReport open = factor_check(P("(z + w)*(x^2 + y^2)"), {P("z + w"), P("x^2 + y^2")});
  CHECK(open.conclusion == PrStatus::kUnknown);
  CHECK_FALSE(open.certificate);
}

TEST_CASE("transports end on exact roots, 200 random instances each") {
  std::mt19937_64 rng(37);
  std::uniform_int_distribution<int> small(1, 9), nv(2, 4), coef(-6, 6);

  // A root of p built from two random points: m(a)*p - p(a)*m vanishes at a.
  auto rooted = [&](const std::vector<std::string>& vars, Point& a) {
    for (;;) {
      a.clear();
      for (const auto& v : vars) a[v] = small(rng);
      Polynomial p;
      for (const auto& v : vars) p = p + Polynomial::variable(v).scaled(coef(rng));
      const Polynomial m = Polynomial::variable(vars.back());
      const Rational pa = p.evaluate(a), ma = m.evaluate(a);
      p = p.scaled(Integer(ma.get_num())) - m.scaled(Integer(pa.get_num()));
      if (p.variables().size() == vars.size() && p.evaluate(a) == 0) return p;
    }
  };

  for (int i = 0; i < 200; ++i) {
    Point a, b;
    std::vector<std::string> xs, ys;
    for (int j = nv(rng); j > 0; --j) xs.push_back("x" + std::to_string(j));
    for (int j = nv(rng); j > 0; --j) ys.push_back("y" + std::to_string(j));
    std::sort(xs.begin(), xs.end());
    std::sort(ys.begin(), ys.end());
    const Polynomial p = rooted(xs, a), q = rooted(ys, b);
    const Point r = sum_solution_transport(p, q, a, b);
    REQUIRE((p + q).evaluate(r) == 0);

    std::map<std::string, Integer> ia;
    for (const auto& [v, x] : a) ia[v] = Integer(x.get_num());
    const auto ir = reciprocal_solution_transport(p, ia);
    Point rr;
    for (const auto& [v, x] : ir) {
      REQUIRE(x > 0);
      rr[v] = Rational(x);
    }
    REQUIRE(reciprocal(p).evaluate(rr) == 0);
  }
}

TEST_CASE("linear constructor outputs agree with Rado") {
  const std::vector<Polynomial> outs{
      disjoint_sum(P("x - y"), P("z - w"), evidence("x - y"), evidence("z - w")).poly,
      disjoint_sum(P("a + b - c"), P("d - e"), evidence("a + b - c"), evidence("d - e")).poly,
      monomial_lift({P("x + y - z"), {{}, {}, {}}, {"y1"}}).poly,
      multiple(P("x - y + z"), Polynomial::constant(3), evidence("x - y + z")).poly,
  };
  for (const auto& p : outs) {
    REQUIRE(p.is_linear());
    CHECK(rado_decide(p).status == PrStatus::kPr);
  }
}
