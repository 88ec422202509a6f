#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "partreg/error.hpp"
#include "partreg/parser.hpp"
#include "partreg/poly.hpp"
#include "properties.hpp"

using namespace partreg;

namespace {

Polynomial P(const char* s) { return parse_poly(s); }

Rational at(const Polynomial& p, std::initializer_list<std::pair<const char*, long>> pts) {
  std::map<std::string, Rational> m;
  for (const auto& [v, x] : pts) m[v] = x;
  return p.evaluate(m);
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

}  // namespace

TEST_CASE("addition") {
  CHECK((P("x - y") + P("y - x")).is_zero());
  CHECK(P("x - y + z") + P("y - x + w") == P("z + w"));

  const Polynomial s = P("x + y - z") + P("u + v - w");
  CHECK(s.size() == 6);
  std::mt19937_64 rng(7);
  const std::vector<std::string> vars{"u", "v", "w", "x", "y", "z"};
  for (int i = 0; i < 20; ++i) {
    const auto a = props::random_point(rng, vars);
    CHECK(s.evaluate(a) == a.at("x") + a.at("y") - a.at("z") + a.at("u") + a.at("v") - a.at("w"));
  }
}

TEST_CASE("multiplication") {
  CHECK(P("x - y") * Polynomial::constant(1) == P("x - y"));
  CHECK(P("x - y") * P("x + y") == P("x^2 - y^2"));
  const Polynomial m = P("x + y - z") * P("w");
  CHECK(m == P("x*w + y*w - z*w"));
  std::mt19937_64 rng(11);
  for (int i = 0; i < 20; ++i) {
    const auto a = props::random_point(rng, {"w", "x", "y", "z"});
    CHECK(m.evaluate(a) == (a.at("x") + a.at("y") - a.at("z")) * a.at("w"));
  }
}

TEST_CASE("evaluation") {
  CHECK(at(P("x + y - z"), {{"x", 1}, {"y", 1}, {"z", 2}}) == 0);
  CHECK(at(P("x + y - z*w"), {{"x", 2}, {"y", 2}, {"z", 2}, {"w", 2}}) == 0);
  CHECK(at(P("2*x1*y1 + 7*x2 - 2*x3*y1*y2"), {{"x1", 1}, {"y1", 1}, {"x2", 1}, {"x3", 1}, {"y2", 1}}) == 7);
  CHECK(code_of([] { at(P("x + y"), {{"x", 1}}); }) == ErrorCode::kUnboundVar);

  std::map<std::string, Rational> half{{"x", Rational(1, 2)}, {"y", Rational(1, 3)}};
  CHECK(P("6*x*y - x").evaluate(half) == Rational(1, 2));
}

TEST_CASE("degree and homogeneity") {
  CHECK(P("x + y - z").degree() == 1);
  CHECK(P("x + y - z").is_homogeneous());
  CHECK(P("x + y - z*w").degree() == 2);
  CHECK_FALSE(P("x + y - z*w").is_homogeneous());
  CHECK(P("x^2 - y*z").degree() == 2);
  CHECK(P("x^2 - y*z").is_homogeneous());
  CHECK(code_of([] { Polynomial().degree(); }) == ErrorCode::kZeroPoly);
  CHECK_FALSE(Polynomial().is_homogeneous());
}

TEST_CASE("coefficient vector") {
  using CV = std::vector<std::pair<std::string, Integer>>;
  CHECK(P("x - y + z").coefficient_vector() == CV{{"x", 1}, {"y", -1}, {"z", 1}});
  CHECK(code_of([] { P("x + y - z*w").coefficient_vector(); }) == ErrorCode::kNotLinear);
  CHECK(code_of([] { P("x + y - z + 1").coefficient_vector(); }) == ErrorCode::kConstTerm);
}

TEST_CASE("canonical form stores no zeros") {
  std::mt19937_64 rng(3);
  const std::vector<std::string> vars{"a", "b", "c"};
  for (int i = 0; i < 300; ++i) {
    const Polynomial p = oracle::random_poly(rng, vars, 4, 3, 3);
    const Polynomial q = oracle::random_poly(rng, vars, 4, 3, 3);
    for (const Polynomial& r : {p + q, p * q, p - q}) {
      for (const auto& [m, c] : r.terms()) {
        REQUIRE(c != 0);
        for (const auto& f : m.factors()) REQUIRE(f.second > 0);
      }
    }
  }
}

TEST_CASE("monomial order is graded") {
  CHECK(P("x^2").terms().begin()->first < Monomial({{"x", 1}, {"y", 2}}));
  CHECK(Monomial({{"x", 2}}) < Monomial({{"x", 1}, {"y", 1}}));
  CHECK(Monomial({{"x", 1}, {"y", 1}}) < Monomial({{"y", 2}}));
  CHECK(Monomial() < Monomial::variable("z"));
}

TEST_CASE("big coefficients stay exact") {
  const Polynomial p = P("123456789012345678901234567890*x - y");
  Integer c("123456789012345678901234567890");
  CHECK(p.pow(3).coefficient(Monomial::variable("x", 3)) == c * c * c);
}

TEST_CASE("homogeneity agrees with the scaling law") {
  std::mt19937_64 rng(19);
  const std::vector<std::string> vars{"x", "y", "z"};
  std::uniform_int_distribution<int> cd(2, 5), dd(1, 3);
  for (int i = 0; i < 100; ++i) {
    const bool homog = i % 2 == 0;
    const Polynomial p = homog ? oracle::random_homogeneous(rng, vars, dd(rng), 4, 6)
                               : oracle::random_poly(rng, vars, 4, 3, 6) + P("x");
    if (p.is_zero()) continue;
    const unsigned d = p.degree();
    bool law = true;
    for (int j = 0; j < 100 && law; ++j) {
      const auto a = props::random_point(rng, vars);
      Rational c(cd(rng), cd(rng));
      c.canonicalize();
      auto ca = a;
      for (auto& [v, x] : ca) x *= c;
      Rational cpow = 1;
      for (unsigned e = 0; e < d; ++e) cpow *= c;
      law = p.evaluate(ca) == cpow * p.evaluate(a);
    }
    CHECK_MESSAGE(law == p.is_homogeneous(), p.to_string());
  }
}

TEST_CASE("ring axioms, 1000 random triples") {
  const auto r = props::ring_axioms(101, 1000);
  CHECK_MESSAGE(r.ok(), r.first_failure);
  CHECK(r.cases == 1000);
}
