#include <gtest/gtest.h>

#include "hamil/constructions.hpp"
#include "hamil/conventions.hpp"
#include "hamil/parse.hpp"
#include "hamil/polynomial.hpp"
#include "random_fields.hpp"

using namespace hamil;
using namespace testing_support;

namespace {

Expr P(const std::string& s, const ChartPtr& c) { return parse(s, *c); }

bool same(const Expr& a, const Expr& b) { return normalizes_to_zero(a - b); }

MultiVector V(const ChartPtr& c, const std::vector<std::string>& comps) {
  std::vector<Expr> es;
  for (const auto& s : comps) es.push_back(P(s, c));
  return vector_field(c, es);
}

Verdict verdict_of(const HamiltonizationResult& r, const std::string& claim) {
  const Certificate* c = r.find(claim);
  EXPECT_NE(c, nullptr) << claim;
  return c ? c->verdict() : Verdict::Unknown;
}

bool lambda_is(const HamiltonizationResult& r, const Rational& q) {
  return r.lambda && same(*r.lambda, Expr(q));
}

SamplerConfig cfg;

}  // namespace

TEST(FlaschkaRatiu, CylindricalCasimir) {
  auto c = make_chart({"x", "y", "z"});
  auto r = flaschka_ratiu(euclidean_volume(c), {P("(x^2+y^2)/2", c)}, cfg);
  MultiVector expected = wedge(V(c, {"-y", "x", "0"}), coordinate_vector(c, 2));
  EXPECT_TRUE(exactly_zero(r.pi - expected) || exactly_zero(r.pi + expected));
  EXPECT_EQ(verdict_of(r, "jacobi"), Verdict::Zero);
  EXPECT_EQ(verdict_of(r, "casimir c1"), Verdict::Zero);
}

TEST(FlaschkaRatiu, PlanarIsInverseOfVolume) {
  auto c = make_chart({"x", "y"});
  auto r = flaschka_ratiu(euclidean_volume(c), {}, cfg);
  EXPECT_EQ(r.pi.entries().size(), 1u);
  EXPECT_TRUE(same(r.pi.get({0, 1}), Expr(-1)));
}

TEST(FlaschkaRatiu, FourDimensionalLinearCasimirs) {
  // a = (0,0,2), v = (1,0,0), w = (0,1/2,0): l = a.y + v.x, phi = w.y - ... linear data
  auto c = make_chart({"x1", "x2", "y1", "y2"});
  auto r = flaschka_ratiu(euclidean_volume(c), {P("2*y2 + x1", c), P("y1/2", c)}, cfg);
  EXPECT_EQ(verdict_of(r, "jacobi"), Verdict::Zero);
  EXPECT_EQ(verdict_of(r, "casimir c1"), Verdict::Zero);
  EXPECT_EQ(verdict_of(r, "casimir c2"), Verdict::Zero);
  for (const auto& [idx, e] : r.pi.entries()) EXPECT_TRUE(normalize(e).is_constant());
}

TEST(FlaschkaRatiu, RandomInstancesHaveRankAtMostTwo) {
  std::mt19937 rng(11);
  for (int m = 3; m <= 4; ++m) {
    auto c = make_chart(m == 3 ? std::vector<std::string>{"a", "b", "e"} : std::vector<std::string>{"a", "b", "e", "f"});
    for (int k = 0; k < 3; ++k) {
      std::vector<Expr> cs;
      for (int i = 0; i < m - 2; ++i) cs.push_back(random_poly(rng, *c, 2));
      auto r = flaschka_ratiu(euclidean_volume(c), cs, cfg);
      EXPECT_EQ(verdict_of(r, "jacobi"), Verdict::Zero);
      for (const auto& s : sample_points(*c, cfg)) {
        int rk = rank_at(r.pi, s.x, s.params);
        EXPECT_TRUE(rk == 0 || rk == 2);
      }
    }
  }
}

TEST(IntegrableFamily, LinearRankOne) {
  auto c0 = make_chart({"x1", "x2", "x3"});
  auto c = with_excluded(c0, P("x3", c0));
  MultiVector x = V(c, {"x2", "0", "0"});
  auto fam = integrable_family(x, {P("x2*x3", c), P("x3", c)}, euclidean_volume(c), cfg);
  ASSERT_EQ(fam.size(), 2u);
  for (const auto& r : fam) {
    EXPECT_EQ(verdict_of(r, "jacobi"), Verdict::Zero);
    EXPECT_EQ(verdict_of(r, "hamiltonization"), Verdict::Zero);
    EXPECT_EQ(verdict_of(r, "delta"), Verdict::Zero);
    EXPECT_EQ(verdict_of(r, "compatibility"), Verdict::Zero);
    EXPECT_TRUE(lambda_is(r, 1));
  }
  EXPECT_EQ(*fam[1].family_index, 2);
}

TEST(IntegrableFamily, NonlinearTorusField) {
  auto c0 = make_chart({"x", "y", "z"});
  auto c = with_excluded(c0, P("x", c0));
  MultiVector x = V(c, {"2*x*z", "2*y*z", "1 - x^2 - y^2 + z^2"});
  std::vector<Expr> h{P("(x^2+y^2)/(x^2+y^2+z^2+1)^2", c), P("y/x", c)};
  auto fam = integrable_family(x, h, euclidean_volume(c), cfg);
  ASSERT_EQ(fam.size(), 2u);
  for (const auto& r : fam) {
    EXPECT_EQ(verdict_of(r, "jacobi"), Verdict::Zero);
    EXPECT_EQ(verdict_of(r, "hamiltonization"), Verdict::Zero);
    EXPECT_EQ(verdict_of(r, "delta"), Verdict::Zero);
    EXPECT_EQ(verdict_of(r, "compatibility"), Verdict::Zero);
  }
}

TEST(IntegrableFamily, RejectsNonIntegral) {
  auto c = make_chart({"x", "y"});
  EXPECT_THROW(integrable_family(V(c, {"1", "0"}), {P("x", c)}, euclidean_volume(c), cfg), PreconditionError);
}

TEST(LinearFR, RankOneInstanceMeasuresLambda) {
  auto c = make_chart({"x1", "x2", "x3"});
  Matrix a{{0, 1, 0}, {0, 0, 0}, {0, 0, 0}};
  Matrix p{{0}, {1}, {0}};
  auto r = linear_fr(c, p, a, cfg);
  EXPECT_EQ(r.pi.entries().size(), 1u);
  EXPECT_TRUE(same(r.pi.get({0, 2}), Expr(-1)) || same(r.pi.get({0, 2}), Expr(1)));
  EXPECT_EQ(verdict_of(r, "jacobi"), Verdict::Zero);
  EXPECT_EQ(verdict_of(r, "casimir c1"), Verdict::Zero);
  EXPECT_EQ(verdict_of(r, "hamiltonization"), Verdict::Zero);
  EXPECT_TRUE(lambda_is(r, conventions::linear_fr_lambda()));
  EXPECT_TRUE(lambda_is(r, Rational(-1, 2)));
}

TEST(LinearFR, PlanarEmptyP) {
  auto c = make_chart({"x1", "x2"});
  auto r = linear_fr(c, Matrix(2, 0), Matrix{{0, 1}, {0, 0}}, cfg);
  EXPECT_TRUE(same(r.pi.get({0, 1}), Expr(-1)));
  EXPECT_EQ(verdict_of(r, "hamiltonization"), Verdict::Zero);
  // WA is symmetric here, so no factor 1/2 appears
  EXPECT_TRUE(lambda_is(r, -1));
}

TEST(LinearFR, FourDimensionalCasimirs) {
  auto c = make_chart({"x1", "x2", "x3", "x4"});
  Matrix a{{1, 2, 0, 1}, {3, -1, 2, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}};
  Matrix p{{0, 0}, {0, 0}, {1, 1}, {0, 2}};
  auto r = linear_fr(c, p, a, cfg);
  EXPECT_EQ(verdict_of(r, "jacobi"), Verdict::Zero);
  EXPECT_EQ(verdict_of(r, "casimir c1"), Verdict::Zero);
  EXPECT_EQ(verdict_of(r, "casimir c2"), Verdict::Zero);
  // x^T (WA) x only sees the symmetric part of WA; off the leaf through 0
  // pi#dh is not proportional to X
  EXPECT_EQ(verdict_of(r, "hamiltonization"), Verdict::NonZero);
}

TEST(LinearFR, Preconditions) {
  auto c = make_chart({"x1", "x2", "x3"});
  EXPECT_THROW(linear_fr(c, Matrix{{0}, {1}, {0}}, Matrix{{1, 0, 0}, {0, 0, 0}, {0, 0, 0}}, cfg), PreconditionError);
  EXPECT_THROW(linear_fr(c, Matrix{{1}, {0}, {0}}, Matrix{{0, 1, 0}, {0, 0, 0}, {0, 0, 0}}, cfg), PreconditionError);
  EXPECT_THROW(linear_fr(c, Matrix{{0}, {0}, {0}}, Matrix{{0, 1, 0}, {0, 0, 0}, {0, 0, 0}}, cfg), PreconditionError);
}

TEST(Primitive, PlanarArea) {
  auto c = make_chart({"x", "y"});
  Form w = wedge(coordinate_form(c, 0), coordinate_form(c, 1));
  Form rho = primitive(w);
  EXPECT_TRUE(same(rho.get({0}), P("-y/2", c)));
  EXPECT_TRUE(same(rho.get({1}), P("x/2", c)));
  EXPECT_TRUE(primitive(Form(c, 1)).structurally_zero());
}

TEST(Primitive, InvertsDOnRandomClosedForms) {
  std::mt19937 rng(5);
  auto c = make_chart({"x", "y", "z", "w"});
  for (int trial = 0; trial < 8; ++trial) {
    int k = trial % 3;
    Form w = d(random_graded<Variance::covariant>(rng, c, k, 2));
    std::vector<Rational> base{Rational(trial % 2), Rational(-1), Rational(1, 2), Rational(0)};
    EXPECT_TRUE(exactly_zero(d(primitive(w, base)) - w)) << trial;
  }
}

TEST(Primitive, RejectsOpenForms) {
  auto c = make_chart({"x", "y"});
  Form w(c, 1);
  w.add({1}, P("x", c));
  EXPECT_THROW(primitive(w), ConstructionError);
  Form t(c, 1);
  t.add({0}, P("sin(x)", c));
  EXPECT_THROW(primitive(t), ConstructionError);
}

TEST(IntegratingFactor, Examples) {
  auto c = make_chart({"x", "y", "z"});
  Form exact = differential(c, P("x*y + z^2", c));
  auto basis = integrating_factor(exact, 1);
  bool has_one = false;
  for (const auto& b : basis) has_one = has_one || same(b, Expr(1));
  EXPECT_TRUE(has_one);

  Form xdy(c, 1);
  xdy.add({1}, P("x", c));
  EXPECT_TRUE(integrating_factor(xdy, 4).empty());

  Form planted(c, 1);
  planted.add({0}, P("4*x*y", c));
  planted.add({1}, P("1 + x^2", c));
  auto found = integrating_factor(planted, 2);
  ASSERT_EQ(found.size(), 1u);
  Expr ratio = normalize(found[0] / P("1 + x^2", c));
  EXPECT_TRUE(ratio.is_constant());
  EXPECT_FALSE(ratio.is_zero());
}

TEST(Unimodularize, PlantedPipelineMeasuresSigma) {
  auto c = make_chart({"x", "y", "z"});
  Form rho(c, 1);
  rho.add({0}, P("4*x*y", c));
  rho.add({1}, P("1 + x^2", c));
  MultiVector x = V(c, {"0", "0", "-2*x"});
  Form prim = primitive(interior(x, euclidean_volume(c).form()));
  EXPECT_TRUE(exactly_zero(d(prim) - d(rho)));
  auto r = unimodularize(x, euclidean_volume(c), rho, P("1 + x^2", c), cfg);
  EXPECT_EQ(verdict_of(r, "jacobi"), Verdict::Zero);
  EXPECT_EQ(verdict_of(r, "hamiltonization"), Verdict::Zero);
  EXPECT_EQ(verdict_of(r, "modular"), Verdict::Zero);
  EXPECT_TRUE(lambda_is(r, 1));
  bool measured = false;
  for (const auto& [name, v] : r.scalars)
    if (name == "sigma_measured") {
      measured = true;
      EXPECT_TRUE(same(v, Expr(conventions::kModularSign)));
    }
  EXPECT_TRUE(measured);
}

TEST(Unimodularize, HyperbolicFieldWithRationalFactor) {
  auto c0 = make_chart({"x", "y", "z"});
  auto c = with_excluded(c0, P("z", c0));
  MultiVector x = V(c, {"x", "-y", "0"});
  Form rho = primitive(interior(x, euclidean_volume(c).form()));
  EXPECT_TRUE(integrating_factor(rho, 4).empty());
  auto r = unimodularize(x, euclidean_volume(c), rho, P("-3/z^3", c), cfg);
  EXPECT_EQ(verdict_of(r, "jacobi"), Verdict::Zero);
  EXPECT_EQ(verdict_of(r, "hamiltonization"), Verdict::Zero);
  EXPECT_EQ(verdict_of(r, "modular"), Verdict::Zero);
  EXPECT_TRUE(lambda_is(r, 1));
}

TEST(Unimodularize, Planar) {
  auto c0 = make_chart({"x", "y"});
  auto c = with_excluded(c0, P("x^2 + y^2", c0));
  MultiVector x = V(c, {"y", "-x"});
  Form rho = Form::scalar(c, P("(x^2+y^2)/2", c));
  auto r = unimodularize(x, euclidean_volume(c), rho, P("2/(x^2+y^2)", c), cfg);
  EXPECT_TRUE(same(r.pi.get({0, 1}), Expr(-1)));
  EXPECT_EQ(verdict_of(r, "hamiltonization"), Verdict::Zero);
  EXPECT_EQ(verdict_of(r, "modular"), Verdict::Zero);
  EXPECT_TRUE(lambda_is(r, 1));
}

TEST(Unimodularize, RejectsRankFour) {
  auto c = make_chart({"x1", "x2", "x3", "x4"});
  Form rho = wedge(coordinate_form(c, 0), coordinate_form(c, 1)) + wedge(coordinate_form(c, 2), coordinate_form(c, 3));
  EXPECT_THROW(unimodularize(MultiVector(c, 1), euclidean_volume(c), rho, Expr(1), cfg), ConstructionError);
}

TEST(Unimodularize, RejectsWrongPrimitive) {
  auto c = make_chart({"x", "y", "z"});
  Form rho(c, 1);
  rho.add({1}, P("x", c));
  EXPECT_THROW(unimodularize(V(c, {"1", "0", "0"}), euclidean_volume(c), rho, Expr(1), cfg), PreconditionError);
}

namespace {

struct LeafwiseFixture {
  ChartPtr c;
  VolumeForm omega;
  Form alpha, beta;
  MultiVector x;
  Expr h;
};

LeafwiseFixture leafwise_fixture() {
  auto c0 = make_chart({"x", "y1", "y2", "y3"});
  auto c = with_excluded(c0, P("y1^2 + y2^2", c0));
  LeafwiseFixture f{c, VolumeForm{c, P("1/(y1^2+y2^2)", c)}, coordinate_form(c, 0), Form(c, 1),
                 V(c, {"0", "y3*y1", "y3*y2", "y1^2 + y2^2"}), P("-(exp(log(y1^2+y2^2)) - y3^2)/2", c)};
  f.beta.add({1}, P("y2/(y1^2+y2^2)", c));
  f.beta.add({2}, P("-y1/(y1^2+y2^2)", c));
  return f;
}

}  // namespace

TEST(Foliated, RadialWorkedExample) {
  auto f = leafwise_fixture();
  auto r = foliated_build(f.omega, {f.alpha}, f.beta, cfg, FoliatedOptions{f.x, f.h});
  MultiVector expected = wedge(V(f.c, {"0", "y1", "y2", "0"}), coordinate_vector(f.c, 3)).scaled(-1);
  EXPECT_TRUE(exactly_zero(r.pi - expected));
  EXPECT_EQ(verdict_of(r, "jacobi"), Verdict::Zero);
  EXPECT_EQ(verdict_of(r, "closed"), Verdict::Zero);
  EXPECT_EQ(verdict_of(r, "poisson_vector_field"), Verdict::Zero);
  const Certificate* hc = r.find("hamiltonization");
  ASSERT_NE(hc, nullptr);
  EXPECT_NE(hc->verdict(), Verdict::NonZero);
  EXPECT_TRUE(lambda_is(r, 1));
  EXPECT_LE(hc->identities[0].state.residual_max, 1e-9);
}

TEST(Foliated, EmptyAlphaMatchesFlaschkaRatiu) {
  auto c = make_chart({"x", "y", "z"});
  Form beta = differential(c, P("x*y", c));
  auto r = foliated_build(euclidean_volume(c), {}, beta, cfg);
  auto fr = flaschka_ratiu(euclidean_volume(c), {P("x*y", c)}, cfg);
  EXPECT_TRUE(exactly_zero(r.pi - fr.pi));
}

TEST(Foliated, RejectsNonIntegrablePair) {
  auto c = make_chart({"x1", "x2", "x3", "x4"});
  Form a1(c, 1), a2(c, 1);
  a1.add({0}, Expr(1));
  a1.add({1}, P("x3", c));
  a2.add({3}, Expr(1));
  a2.add({2}, P("x1", c));
  // d(a1) ^ a2 = dx3^dx2^(dx4 + x1 dx3) != 0
  EXPECT_THROW(foliated_build(euclidean_volume(c), {a1, a2}, Form::scalar(c, Expr(1)), cfg), PreconditionError);
}

namespace {

struct Homogeneous {
  ChartPtr c;
  MultiVector x, e;
  Expr h;
};

Homogeneous homogeneous_fixture() {
  auto c0 = make_chart({"x1", "x2", "x3"});
  auto c = with_excluded(with_excluded(with_excluded(c0, P("x1", c0)), P("x2", c0)), P("x3", c0));
  return {c, V(c, {"x1*(x2-x3)", "x2*(x3-x1)", "x3*(x1-x2)"}), V(c, {"x1", "x2", "x3"}), P("x1*x2*x3", c)};
}

}  // namespace

TEST(Hojman, HomogeneousExample) {
  auto f = homogeneous_fixture();
  auto r = hojman(f.x, f.h, f.e, cfg);
  EXPECT_EQ(verdict_of(r, "jacobi"), Verdict::Zero);
  EXPECT_EQ(verdict_of(r, "hamiltonization"), Verdict::Zero);
  EXPECT_TRUE(lambda_is(r, 1));
}

TEST(Hojman, EulerExample) {
  auto c0 = make_chart({"x1", "x2"});
  auto c = with_excluded(with_excluded(c0, P("x1", c0)), P("x2", c0));
  auto r = hojman(V(c, {"x1", "-x2"}), P("x1*x2", c), V(c, {"x1", "x2"}), cfg);
  EXPECT_EQ(verdict_of(r, "jacobi"), Verdict::Zero);
  EXPECT_EQ(verdict_of(r, "hamiltonization"), Verdict::Zero);
  EXPECT_TRUE(lambda_is(r, 1));
  // (1/h) E ^ X differs by the constant dh(E)/h = 2
  MultiVector pi_h = wedge(V(c, {"x1", "x2"}), V(c, {"x1", "-x2"})).scaled(P("1/(x1*x2)", c));
  Certificate alt = hamiltonization_check(pi_h, P("x1*x2", c), V(c, {"x1", "-x2"}), cfg);
  ASSERT_TRUE(alt.lambda);
  EXPECT_TRUE(same(*alt.lambda, Expr(2)));
}

TEST(Hojman, RejectsDegenerateZ) {
  auto f = homogeneous_fixture();
  EXPECT_THROW(hojman(f.x, f.h, f.x, cfg), PreconditionError);
}

TEST(NormalClass, HomogeneousExample) {
  auto f = homogeneous_fixture();
  MultiVector y = f.e.scaled(Expr(1) / (Expr(3) * f.h));
  Certificate c = normal_class_check(f.x, f.h, y, cfg);
  EXPECT_EQ(c.verdict(), Verdict::Zero);
  std::mt19937 rng(3);
  MultiVector y2 = y + f.x.scaled(random_poly(rng, *f.c, 2));
  Certificate c2 = normal_class_check(f.x, f.h, y2, cfg);
  for (std::size_t i = 0; i < c.identities.size(); ++i)
    EXPECT_EQ(c.identities[i].state.verdict, c2.identities[i].state.verdict);
}

TEST(NormalClass, MissingNormalization) {
  auto c = make_chart({"x", "y"});
  Certificate cert = normal_class_check(V(c, {"1", "0"}), P("y", c), V(c, {"1", "0"}), cfg);
  EXPECT_EQ(cert.find("dh(Y) X - X")->state.verdict, Verdict::NonZero);
}

TEST(Decomposable, Examples) {
  auto c = make_chart({"x", "y", "z"});
  auto r = decomposable(V(c, {"1", "0", "0"}), V(c, {"0", "1", "0"}), cfg);
  EXPECT_TRUE(same(r.pi.get({1, 0}), Expr(1)));
  EXPECT_EQ(verdict_of(r, "jacobi"), Verdict::Zero);
  auto bad = decomposable(V(c, {"1", "0", "0"}), V(c, {"0", "1", "x"}), cfg);
  EXPECT_EQ(verdict_of(bad, "decomposable_identity"), Verdict::Zero);
  EXPECT_EQ(verdict_of(bad, "jacobi"), Verdict::NonZero);
}

TEST(Decomposable, IdentityOnRandomFields) {
  std::mt19937 rng(21);
  auto c = make_chart({"a", "b", "e", "f"});
  for (int i = 0; i < 5; ++i) {
    auto r = decomposable(random_vector_field(rng, c, 2), random_vector_field(rng, c, 2), cfg);
    EXPECT_EQ(verdict_of(r, "decomposable_identity"), Verdict::Zero);
  }
}

TEST(MetricNormal, Rotation) {
  auto c0 = make_chart({"x", "y"});
  auto c = with_excluded(c0, P("x^2+y^2", c0));
  auto g = make_metric(c, Matrix::identity(2));
  auto r = metric_normal(V(c, {"y", "-x"}), P("(x^2+y^2)/2", c), g, cfg);
  ASSERT_EQ(r.vectors.size(), 1u);
  EXPECT_TRUE(exactly_zero(r.vectors[0].second - V(c, {"x/(x^2+y^2)", "y/(x^2+y^2)"})));
  EXPECT_EQ(verdict_of(r, "invariance"), Verdict::Zero);
  EXPECT_EQ(verdict_of(r, "jacobi"), Verdict::Zero);
  EXPECT_EQ(verdict_of(r, "hamiltonization"), Verdict::Zero);
  EXPECT_TRUE(lambda_is(r, 1));
}

TEST(MetricNormal, TrivialAndCriticalPoint) {
  auto c = make_chart({"x", "y"});
  auto g = make_metric(c, Matrix::identity(2));
  auto r = metric_normal(V(c, {"0", "1"}), P("x", c), g, cfg);
  EXPECT_TRUE(same(r.pi.get({0, 1}), Expr(1)));
  EXPECT_TRUE(lambda_is(r, 1));
  SamplerConfig line = cfg;
  line.box = {{-1e-6, 1e-6}, {-1.0, 1.0}};
  EXPECT_THROW(metric_normal(V(c, {"0", "1"}), P("x^2/2", c), g, line), PreconditionError);
}

namespace {

struct BiRotation {
  ChartPtr c;
  MultiVector x1, x2, y1, y2, r1;
  Expr h1, h2;
};

BiRotation birotation() {
  auto c0 = make_chart({"x1", "x2", "x3", "x4"});
  auto c = with_excluded(with_excluded(c0, P("x1^2+x2^2", c0)), P("x3^2+x4^2", c0));
  return {c,
          V(c, {"-x2", "x1", "0", "0"}),
          V(c, {"0", "0", "-x4", "x3"}),
          V(c, {"x1/(x1^2+x2^2)", "x2/(x1^2+x2^2)", "0", "0"}),
          V(c, {"0", "0", "x3/(x3^2+x4^2)", "x4/(x3^2+x4^2)"}),
          V(c, {"x1", "x2", "0", "0"}),
          P("(x1^2+x2^2)/2", c),
          P("(x3^2+x4^2)/2", c)};
}

}  // namespace

TEST(Torus2, BiRotation) {
  auto f = birotation();
  auto r = torus2(f.x1, f.x2, f.h1, f.h2, f.y1, f.y2, cfg);
  for (const char* claim : {"preconditions", "torus2_identity", "momentum_brackets", "jacobi", "momentum"})
    EXPECT_EQ(verdict_of(r, claim), Verdict::Zero) << claim;
  for (const auto& [name, v] : r.scalars)
    if (name == "rank_min" || name == "rank_max") EXPECT_TRUE(same(v, Expr(4))) << name;
}

TEST(Torus2, PlantedViolation) {
  auto f = birotation();
  MultiVector y2 = f.y2 + f.r1;
  EXPECT_THROW(torus2(f.x1, f.x2, f.h1, f.h2, f.y1, y2, cfg), PreconditionError);
  auto r = torus2(f.x1, f.x2, f.h1, f.h2, f.y1, y2, cfg, Torus2Options{false});
  EXPECT_EQ(verdict_of(r, "torus2_identity"), Verdict::Zero);
  EXPECT_EQ(verdict_of(r, "jacobi"), Verdict::NonZero);
}

TEST(Torus2, ReducesToDecomposable) {
  auto f = birotation();
  MultiVector zero(f.c, 1);
  auto r = torus2(f.x1, zero, f.h1, Expr(0), f.y1, zero, cfg);
  auto d1 = decomposable(f.x1, f.y1, cfg);
  EXPECT_TRUE(exactly_zero(r.pi - d1.pi));
  EXPECT_EQ(verdict_of(r, "jacobi"), Verdict::Zero);
}
