#include <gtest/gtest.h>

#include <cmath>

#include "hamil/parse.hpp"
#include "hamil/polynomial.hpp"

using namespace hamil;

namespace {

ChartPtr xyz() { return make_chart({"x", "y", "z"}, {"a", "b"}); }

Expr P(const std::string& s, const ChartPtr& c) { return parse(s, *c); }

}  // namespace

TEST(Parse, PrintsCanonically) {
  auto c = xyz();
  EXPECT_EQ(to_string(P("x - 2*y + 3", c)), "x - 2*y + 3");
  EXPECT_EQ(to_string(P("-x*y", c)), "-x*y");
  EXPECT_EQ(to_string(P("x^2/(y+1)", c)), "x^2/(y + 1)");
  EXPECT_EQ(to_string(P("0.25*x", c)), "1/4*x");
}

TEST(Parse, Errors) {
  auto c = xyz();
  EXPECT_THROW(P("x +", c), ParseError);
  EXPECT_THROW(P("q + 1", c), ParseError);
  EXPECT_THROW(P("foo(x)", c), ParseError);
  EXPECT_THROW(P("x/0", c), ParseError);
  EXPECT_THROW(P("x^y", c), ParseError);
  try {
    P("x + w", c);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 4u);
  }
}

TEST(Normalize, ExpandsAndCancels) {
  auto c = xyz();
  EXPECT_TRUE(normalizes_to_zero(P("(x+y)^2 - x^2 - 2*x*y - y^2", c)));
  EXPECT_TRUE(normalizes_to_zero(P("1/(x-1) - 1/(x+1) - 2/(x^2-1)", c)));
  EXPECT_FALSE(normalizes_to_zero(P("1/(x-1) - 1/(x+1)", c)));
  auto nf = normal_form(P("x/x", c));
  EXPECT_TRUE(nf.expr.is_one());
  ASSERT_EQ(nf.assumptions.size(), 1u);
  EXPECT_EQ(to_string(nf.assumptions[0]), "x");
  auto nf2 = normal_form(P("(2*x+2)/(x+1)", c));
  EXPECT_EQ(to_string(nf2.expr), "2");
}

TEST(Normalize, KernelsAndRoots) {
  auto c = xyz();
  EXPECT_TRUE(normalizes_to_zero(P("sin(x+y) - sin(y+x)", c)));
  EXPECT_TRUE(normalizes_to_zero(P("sqrt(x^2+1)^2 - x^2 - 1", c)));
  EXPECT_TRUE(normalizes_to_zero(P("exp(log(x*(x+1))) - exp(log(x^2+x))", c)));
  EXPECT_TRUE(normalizes_to_zero(P("(x^2+1)^(3/2) - (x^2+1)*sqrt(x^2+1)", c)));
  EXPECT_TRUE(normalizes_to_zero(P("(x+1)^(2/4) - sqrt(x+1)", c)));
  EXPECT_FALSE(normalizes_to_zero(P("sin(x)^2 + cos(x)^2 - 1", c)));
}

TEST(Diff, MatchesFiniteDifferences) {
  auto c = xyz();
  Expr f = P("(x^2+y^2)/(x^2+y^2+z^2+1)^2 + sin(x*z) + sqrt(y^2+1)", c);
  std::vector<double> pt{0.3, -0.7, 1.1};
  for (int i = 0; i < 3; ++i) {
    Expr df = diff(f, i);
    auto plus = pt, minus = pt;
    const double h = 1e-6;
    plus[i] += h;
    minus[i] -= h;
    double fd = (eval(f, plus, {}) - eval(f, minus, {})) / (2 * h);
    EXPECT_NEAR(eval(df, pt, {}), fd, 1e-7);
  }
}

TEST(Normalize, PreservesValue) {
  auto c = xyz();
  Expr f = P("(x+a)^3/(x*y - y) + b*exp(z)*(x-1)/(y*(x-1))", c);
  Expr g = normalize(f);
  std::vector<double> pt{0.4, 1.3, -0.2};
  Bindings bind{{"a", 0.5}, {"b", -1.5}};
  EXPECT_NEAR(eval(f, pt, bind), eval(g, pt, bind), 1e-12);
}
