#include <gtest/gtest.h>

#include "hamil/parse.hpp"
#include "hamil/polynomial.hpp"
#include "random_fields.hpp"

using namespace hamil;
using namespace testing_support;

namespace {

ChartPtr R(int m) {
  std::vector<std::string> names;
  for (int i = 1; i <= m; ++i) names.push_back("x" + std::to_string(i));
  return make_chart(names);
}

Expr P(const std::string& s, const ChartPtr& c) { return parse(s, *c); }

bool same(const Expr& a, const Expr& b) { return normalizes_to_zero(a - b); }

}  // namespace

TEST(Wedge, Basics) {
  auto c = make_chart({"x", "y", "z"});
  Form dx = coordinate_form(c, 0), dy = coordinate_form(c, 1);
  Form w = wedge(dx, dy);
  EXPECT_EQ(w.entries().size(), 1u);
  EXPECT_TRUE(w.get({0, 1}).is_one());
  EXPECT_TRUE(wedge(dx, dx).structurally_zero());
  Form dh = wedge(differential(c, P("x^2", c)), differential(c, P("y", c)));
  EXPECT_TRUE(same(dh.get({0, 1}), P("2*x", c)));
  EXPECT_EQ(dh.normalized().entries().size(), 1u);
}

TEST(Wedge, GradedCommutative) {
  std::mt19937 rng(7);
  auto c = R(4);
  for (int a = 0; a <= 2; ++a)
    for (int b = 0; b <= 2; ++b) {
      auto A = random_graded<Variance::covariant>(rng, c, a, 2);
      auto B = random_graded<Variance::covariant>(rng, c, b, 2);
      Form diff = wedge(A, B) - wedge(B, A).scaled((a * b) % 2 ? -1 : 1);
      EXPECT_TRUE(exactly_zero(diff)) << a << " " << b;
    }
}

TEST(ExteriorDerivative, Examples) {
  auto c = make_chart({"x", "y", "z"});
  Form w(c, 1);
  w.add({1}, P("x", c));
  Form dw = d(w).normalized();
  EXPECT_EQ(dw.entries().size(), 1u);
  EXPECT_TRUE(dw.get({0, 1}).is_one());
  Form ex = wedge(differential(c, P("x*y^2 + sin(z)", c)), differential(c, P("exp(x*z)", c)));
  EXPECT_TRUE(exactly_zero(d(ex)));
}

TEST(ExteriorDerivative, LeafwiseClosedAngularForm) {
  auto c = make_chart({"x", "y1", "y2", "y3"}, {"b"});
  Expr s = P("y1^2 + y2^2", c);
  Form rho(c, 1);
  rho.add({1}, exp(P("b", c)) * c->x(2) / s);
  rho.add({2}, -(exp(P("b", c)) * c->x(1)) / s);
  EXPECT_TRUE(exactly_zero(d(rho)));
}

TEST(ExteriorDerivative, SquareIsZero) {
  std::mt19937 rng(11);
  auto c = R(4);
  for (int k = 0; k <= 2; ++k) {
    auto w = random_graded<Variance::covariant>(rng, c, k, 3);
    EXPECT_TRUE(exactly_zero(d(d(w)))) << k;
  }
  // rational coefficients
  Form w(c, 1);
  w.add({0}, P("x2/(x1^2 + x3^2 + 1)", c));
  w.add({2}, P("x1*x4/(x2 - 3)", c));
  EXPECT_TRUE(exactly_zero(d(d(w))));
}

TEST(Interior, Convention) {
  auto c = make_chart({"x", "y", "z"});
  MultiVector dx = coordinate_vector(c, 0), dy = coordinate_vector(c, 1);
  Form xy = wedge(coordinate_form(c, 0), coordinate_form(c, 1));
  Form r = interior(dx, xy);
  EXPECT_TRUE(r.get({1}).is_one());
  Form vol = euclidean_volume(c).form();
  Form r2 = interior(wedge(dx, dy), vol);
  // i_{dx^dy} = i_dx o i_dy, so the result is -dz
  EXPECT_EQ(to_string(r2.get({2})), "-1");
  EXPECT_TRUE(same(r2.get({2}), interior(dx, interior(dy, vol)).get({2})));

  auto t = make_chart({"p1", "p2"});
  MultiVector pi = wedge(coordinate_vector(t, 0), coordinate_vector(t, 1));
  EXPECT_EQ(to_string(interior(pi, euclidean_volume(t).form()).scalar_value()), "-1");
}

TEST(Interior, CompositionRule) {
  std::mt19937 rng(5);
  auto c = R(4);
  for (int trial = 0; trial < 5; ++trial) {
    MultiVector a = random_vector_field(rng, c, 1);
    MultiVector b = random_vector_field(rng, c, 1);
    auto w = random_graded<Variance::covariant>(rng, c, 3, 1);
    EXPECT_TRUE(exactly_zero(interior(wedge(a, b), w) - interior(a, interior(b, w))));
  }
}

TEST(Sharp, TorusAnchor) {
  auto t = make_chart({"p1", "p2"});
  MultiVector pi = wedge(coordinate_vector(t, 0), coordinate_vector(t, 1));
  Expr h = P("-cos(3*p1 - 2*p2)", t);
  MultiVector x = sharp(pi, differential(t, h));
  EXPECT_TRUE(same(x.get({0}), P("2*sin(3*p1 - 2*p2)", t)));
  EXPECT_TRUE(same(x.get({1}), P("3*sin(3*p1 - 2*p2)", t)));
  EXPECT_TRUE(sharp(pi, Form(t, 1)).structurally_zero());
  EXPECT_TRUE(sharp(MultiVector(t, 2), differential(t, h)).structurally_zero());
}

TEST(Sharp, HamiltonianCommutesWithVolume) {
  // i_{pi#dh} Omega = dh ^ i_pi Omega
  std::mt19937 rng(3);
  for (int m : {2, 3, 4}) {
    auto c = R(m);
    auto pi = random_graded<Variance::contravariant>(rng, c, 2, 2);
    Expr h = random_poly(rng, *c, 3);
    Form vol = euclidean_volume(c).form();
    Form lhs = interior(sharp(pi, differential(c, h)), vol);
    Form rhs = wedge(differential(c, h), interior(pi, vol));
    EXPECT_TRUE(exactly_zero(lhs - rhs)) << m;
  }
}

TEST(LieBracket, Examples) {
  auto c1 = make_chart({"x"});
  MultiVector dx = coordinate_vector(c1, 0);
  MultiVector xdx = vector_field(c1, {c1->x(0)});
  EXPECT_TRUE(exactly_zero(lie_bracket(dx, xdx) - dx));
  MultiVector X = vector_field(c1, {P("x^2", c1)});
  EXPECT_TRUE(exactly_zero(lie_bracket(X, xdx) + X));
}

TEST(LieBracket, JacobiIdentity) {
  std::mt19937 rng(9);
  auto c = R(3);
  for (int trial = 0; trial < 5; ++trial) {
    auto X = random_vector_field(rng, c, 2), Y = random_vector_field(rng, c, 2), Z = random_vector_field(rng, c, 2);
    auto j = lie_bracket(X, lie_bracket(Y, Z)) + lie_bracket(Y, lie_bracket(Z, X)) + lie_bracket(Z, lie_bracket(X, Y));
    EXPECT_TRUE(exactly_zero(j));
  }
}

TEST(Schouten, ReducesToLieBracket) {
  std::mt19937 rng(1);
  auto c = R(3);
  auto X = random_vector_field(rng, c, 2), Y = random_vector_field(rng, c, 2);
  EXPECT_TRUE(exactly_zero(schouten(X, Y) - lie_bracket(X, Y)));
}

TEST(Schouten, ConstantBivectorIsPoisson) {
  auto c = R(4);
  MultiVector pi(c, 2);
  pi.add({0, 1}, 1);
  pi.add({2, 3}, 1);
  EXPECT_TRUE(schouten(pi, pi).structurally_zero());
}

TEST(Schouten, GradedAntisymmetry) {
  std::mt19937 rng(21);
  auto c = R(4);
  for (int a = 1; a <= 2; ++a)
    for (int b = 1; b <= 2; ++b) {
      auto A = random_graded<Variance::contravariant>(rng, c, a, 2);
      auto B = random_graded<Variance::contravariant>(rng, c, b, 2);
      int s = ((a - 1) * (b - 1)) % 2 ? -1 : 1;
      EXPECT_TRUE(exactly_zero(schouten(A, B) + schouten(B, A).scaled(s))) << a << b;
    }
}

TEST(Schouten, GradedLeibniz) {
  // [A, B^C] = [A,B]^C + (-1)^{(a-1)b} B^[A,C]
  std::mt19937 rng(22);
  auto c = R(4);
  for (int a = 1; a <= 2; ++a) {
    auto A = random_graded<Variance::contravariant>(rng, c, a, 2);
    auto B = random_vector_field(rng, c, 2);
    auto C = random_vector_field(rng, c, 1);
    int s = ((a - 1) * 1) % 2 ? -1 : 1;
    auto lhs = schouten(A, wedge(B, C));
    auto rhs = wedge(schouten(A, B), C) + wedge(B, schouten(A, C)).scaled(s);
    EXPECT_TRUE(exactly_zero(lhs - rhs)) << a;
  }
}

TEST(Schouten, DecomposableIdentity) {
  std::mt19937 rng(4);
  for (int m : {3, 4}) {
    auto c = R(m);
    for (int trial = 0; trial < 4; ++trial) {
      auto X = random_vector_field(rng, c, 2), Y = random_vector_field(rng, c, 2);
      auto pi = wedge(Y, X);
      auto id = schouten(pi, pi) - wedge(wedge(lie_bracket(X, Y), X), Y).scaled(2);
      EXPECT_TRUE(exactly_zero(id));
    }
  }
}

TEST(Schouten, MatchesCurlFormulaInDimensionThree) {
  // pi <-> v with pi^{23} = v1, pi^{31} = v2, pi^{12} = v3; [pi,pi] is a
  // fixed multiple of v . curl v.
  std::mt19937 rng(8);
  auto c = R(3);
  std::optional<Rational> ratio;
  for (int trial = 0; trial < 6; ++trial) {
    auto v = random_vector_field(rng, c, 2).components();
    MultiVector pi(c, 2);
    pi.add({1, 2}, v[0]);
    pi.add({2, 0}, v[1]);
    pi.add({0, 1}, v[2]);
    Expr curl0 = diff(v[2], 1) - diff(v[1], 2);
    Expr curl1 = diff(v[0], 2) - diff(v[2], 0);
    Expr curl2 = diff(v[1], 0) - diff(v[0], 1);
    Expr vc = normalize(v[0] * curl0 + v[1] * curl1 + v[2] * curl2);
    Expr j = normalize(schouten(pi, pi).get({0, 1, 2}));
    if (vc.is_zero()) {
      EXPECT_TRUE(j.is_zero());
      continue;
    }
    Expr q = normalize(j / vc);
    ASSERT_TRUE(q.is_constant()) << to_string(q);
    if (ratio) EXPECT_EQ(*ratio, q.value());
    ratio = q.value();
  }
  ASSERT_TRUE(ratio.has_value());
  EXPECT_EQ(abs(*ratio), 2);
}

TEST(LieDerivative, CartanMatchesCoordinateFormula) {
  std::mt19937 rng(12);
  auto c = R(3);
  auto X = random_vector_field(rng, c, 2);
  auto w = random_graded<Variance::covariant>(rng, c, 1, 2);
  Form lw = lie_derivative(X, w);
  auto xs = X.components();
  for (int i = 0; i < 3; ++i) {
    std::vector<Expr> terms;
    for (int j = 0; j < 3; ++j) {
      terms.push_back(xs[j] * diff(w.get({i}), j));
      terms.push_back(w.get({j}) * diff(xs[j], i));
    }
    EXPECT_TRUE(same(lw.get({i}), make_add(terms)));
  }
}

TEST(LieDerivative, FirstIntegrals) {
  auto c = make_chart({"x", "y", "z"}, {"lambda"});
  MultiVector dz = coordinate_vector(c, 2);
  EXPECT_TRUE(normalizes_to_zero(lie_derivative(dz, P("(x^2+y^2)/2", c))));
  MultiVector X = vector_field(c, {P("2*x*z + lambda*y", c), P("2*y*z - lambda*x", c), P("1 - x^2 - y^2 + z^2", c)});
  Expr cc = P("(x^2+y^2)/(x^2+y^2+z^2+1)^2", c);
  EXPECT_TRUE(normalizes_to_zero(lie_derivative(X, cc)));
  VolumeForm omega{c, P("(x^2+y^2+z^2+1)^(-3)", c)};
  EXPECT_TRUE(normalizes_to_zero(divergence(X, omega)));
  // the density with exponent -2 is not invariant: div = 2z
  VolumeForm squared{c, P("(x^2+y^2+z^2+1)^(-2)", c)};
  EXPECT_TRUE(normalizes_to_zero(divergence(X, squared) - 2 * c->x(2)));
}

TEST(LieDerivative, LeibnizWithVolume) {
  std::mt19937 rng(13);
  auto c = R(3);
  auto X = random_vector_field(rng, c, 2);
  auto pi = random_graded<Variance::contravariant>(rng, c, 2, 2);
  VolumeForm omega{c, P("x1^2 + 1", c)};
  Form lhs = lie_derivative(X, bivector_to_form(omega, pi));
  Form rhs = interior(lie_derivative(X, pi), omega.form()) + interior(pi, lie_derivative(X, omega.form()));
  EXPECT_TRUE(exactly_zero(lhs - rhs));
}

TEST(Divergence, Examples) {
  auto c1 = make_chart({"x"});
  EXPECT_TRUE(divergence(vector_field(c1, {c1->x(0)}), euclidean_volume(c1)).is_one());
  auto c2 = make_chart({"x", "y"});
  EXPECT_TRUE(normalizes_to_zero(divergence(coordinate_vector(c2, 0), euclidean_volume(c2))));
  // Ax . d/dx has divergence trace A
  auto c3 = R(3);
  Matrix A{{1, 2, 0}, {0, -3, 5}, {7, 0, 4}};
  std::vector<Expr> comps;
  for (int i = 0; i < 3; ++i) comps.push_back(A(i, 0) * c3->x(0) + A(i, 1) * c3->x(1) + A(i, 2) * c3->x(2));
  EXPECT_TRUE(same(divergence(vector_field(c3, comps), euclidean_volume(c3)), 2));
  // L_X Omega = div Omega
  std::mt19937 rng(2);
  auto X = random_vector_field(rng, c3, 2);
  VolumeForm omega{c3, P("1/(x1^2 + x2^2 + 1)", c3)};
  Form lhs = lie_derivative(X, omega.form());
  EXPECT_TRUE(exactly_zero(lhs - omega.form().scaled(divergence(X, omega))));
}

TEST(Correspondence, RoundTrip) {
  std::mt19937 rng(14);
  auto c = R(4);
  auto pi = random_graded<Variance::contravariant>(rng, c, 2, 2);
  VolumeForm omega{c, P("x1^2 + x2^2 + 1", c)};
  MultiVector back = form_to_bivector(omega, bivector_to_form(omega, pi));
  EXPECT_TRUE(exactly_zero(back - pi));
  EXPECT_TRUE(form_to_bivector(omega, Form(c, 2)).structurally_zero());
  EXPECT_TRUE(bivector_to_form(omega, MultiVector(c, 2)).structurally_zero());
}

TEST(Correspondence, ExactFormInR3) {
  auto c = make_chart({"x", "y", "z"});
  Expr f = P("(x^2+y^2+z^2)/2", c);
  Form dc = differential(c, 2 * f * f);
  VolumeForm omega = euclidean_volume(c);
  MultiVector pi = form_to_bivector(omega, dc);
  EXPECT_TRUE(exactly_zero(bivector_to_form(omega, pi) - dc));
}

TEST(Rank, Examples) {
  auto c = R(4);
  MultiVector pi = wedge(coordinate_vector(c, 0), coordinate_vector(c, 1));
  std::vector<double> pt{0.3, 0.1, -0.5, 1.2};
  EXPECT_EQ(rank_at(pi, pt, {}), 2);
  EXPECT_EQ(rank_at(MultiVector(c, 2), pt, {}), 0);
  Form rho = wedge(differential(c, P("x1^2 + x3", c)), differential(c, P("x2*x4", c)));
  EXPECT_EQ(rank_at(rho, pt, {}), 2);
  MultiVector sym = pi + wedge(coordinate_vector(c, 2), coordinate_vector(c, 3));
  EXPECT_EQ(rank_at(sym, pt, {}), 4);
}

TEST(Metric, InverseAndInvariance) {
  auto c = make_chart({"x", "y"});
  Metric g = make_metric(c, Matrix{{P("1 + x^2", c), P("x*y", c)}, {P("x*y", c), P("1 + y^2", c)}});
  EXPECT_TRUE(equal_exact(g.g * g.eta, Matrix::identity(2)));
  Metric e = make_metric(c, Matrix::identity(2));
  MultiVector rot = vector_field(c, {c->x(1), -c->x(0)});
  Matrix l = lie_derivative(rot, e);
  EXPECT_TRUE(equal_exact(l, Matrix(2, 2)));
  EXPECT_THROW(make_metric(c, Matrix{{1, 2}, {3, 4}}), std::invalid_argument);
}
