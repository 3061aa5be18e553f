#include "hamil/poisson.hpp"

#include <algorithm>
#include <cmath>

#include "hamil/polynomial.hpp"

namespace hamil {

void Certificate::add(std::string name, TriState t) {
  merge_assumptions(assumptions, t.assumptions);
  identities.push_back({std::move(name), std::move(t)});
}

Verdict Certificate::verdict() const {
  Verdict v = Verdict::Zero;
  for (const auto& id : identities) {
    if (id.state.verdict == Verdict::NonZero) return Verdict::NonZero;
    if (id.state.verdict == Verdict::Unknown) v = Verdict::Unknown;
  }
  return v;
}

const Identity* Certificate::find(const std::string& name) const {
  for (const auto& id : identities)
    if (id.name == name) return &id;
  return nullptr;
}

bool Certificate::exact() const {
  return lambda && lambda_constant && !lambda_numeric && lambda->is_one();
}

ChartPtr merge_charts(const ChartPtr& a, const ChartPtr& b) {
  if (!a) return b;
  if (!b || a == b) return a;
  if (!a->same_coordinates(*b)) throw ChartMismatch();
  ChartPtr out = a;
  for (const auto& e : b->excluded)
    if (std::find(a->excluded.begin(), a->excluded.end(), e) == a->excluded.end()) out = with_excluded(out, e);
  return out;
}

namespace {

template <class T>
TriState check_entries(const T& t, const SamplerConfig& cfg, const ChartPtr& chart) {
  std::vector<Expr> es;
  for (const auto& [idx, c] : t.entries()) es.push_back(c);
  const ChartPtr& ch = chart ? chart : t.chart();
  return all_zero(es, *ch, cfg);
}

Certificate make_cert(std::string claim, const SamplerConfig& cfg) {
  Certificate c;
  c.claim = std::move(claim);
  c.sampler = cfg;
  return c;
}

// Small-denominator rational within tol of v.
std::optional<Rational> recognize(double v, double tol) {
  for (long q = 1; q <= 12; ++q) {
    double p = std::round(v * static_cast<double>(q));
    if (std::fabs(p / static_cast<double>(q) - v) <= tol * std::max(1.0, std::fabs(v))) {
      Rational r(static_cast<long>(p), q);
      r.canonicalize();
      return r;
    }
  }
  return std::nullopt;
}

}  // namespace

TriState check_zero(const MultiVector& t, const SamplerConfig& cfg, const ChartPtr& chart) {
  return check_entries(t, cfg, chart);
}

TriState check_zero(const Form& t, const SamplerConfig& cfg, const ChartPtr& chart) {
  return check_entries(t, cfg, chart);
}

Certificate jacobi_check(const MultiVector& pi, const SamplerConfig& cfg) {
  if (pi.grade() != 2) throw std::invalid_argument("jacobi_check needs a bivector");
  Certificate c = make_cert("jacobi", cfg);
  c.add("[pi,pi]", check_zero(schouten(pi, pi), cfg));
  return c;
}

MultiVector hamiltonian_vf(const MultiVector& pi, const Expr& h) {
  return sharp(pi, differential(pi.chart(), h));
}

Certificate casimir_check(const MultiVector& pi, const Expr& cfun, const SamplerConfig& cfg,
                          const VolumeForm* omega) {
  Certificate c = make_cert("casimir", cfg);
  Form dc = differential(pi.chart(), cfun);
  c.add("pi#dc", check_zero(sharp(pi, dc), cfg));
  if (omega) {
    ChartPtr ch = merge_charts(pi.chart(), omega->chart);
    c.add("dc^i_pi(Omega)", check_zero(wedge(dc, bivector_to_form(*omega, pi)), cfg, ch));
  }
  return c;
}

Certificate poisson_vf_check(const MultiVector& pi, const MultiVector& x, const SamplerConfig& cfg) {
  Certificate c = make_cert("poisson_vector_field", cfg);
  ChartPtr ch = merge_charts(pi.chart(), x.chart());
  c.add("L_X pi", check_zero(schouten(x, pi), cfg, ch));
  return c;
}

MultiVector modular_vf(const MultiVector& pi, const VolumeForm& omega) {
  MultiVector z(merge_charts(pi.chart(), omega.chart), 1);
  for (int i = 0; i < pi.dim(); ++i) z.add({i}, divergence(sharp(pi, coordinate_form(pi.chart(), i)), omega));
  return z;
}

Certificate conformal_identity_check(const MultiVector& pi, const Expr& f, const SamplerConfig& cfg) {
  Certificate pre = jacobi_check(pi, cfg);
  if (pre.verdict() == Verdict::NonZero) throw PreconditionError("conformal identity needs a Poisson bivector");
  Certificate c = make_cert("conformal_identity", cfg);
  c.add("[pi,pi]", pre.identities[0].state);
  MultiVector fpi = pi.scaled(f);
  MultiVector lhs = schouten(fpi, fpi);
  MultiVector rhs = wedge(sharp(pi, differential(pi.chart(), f)), pi).scaled(2 * f);
  c.add("[f pi,f pi] + 2f pi#df^pi", check_zero(lhs + rhs, cfg));
  c.add("[f pi,f pi]", check_zero(lhs, cfg));
  return c;
}

Certificate hamiltonization_check(const MultiVector& pi, const Expr& h, const MultiVector& x,
                                  const SamplerConfig& cfg) {
  Certificate c = make_cert("hamiltonization", cfg);
  ChartPtr ch = merge_charts(pi.chart(), x.chart());
  MultiVector r = hamiltonian_vf(pi, h);
  auto xs = x.components();
  auto rs = r.components();

  std::optional<std::size_t> pivot;
  for (std::size_t i = 0; i < xs.size(); ++i)
    if (!normalizes_to_zero(xs[i])) {
      pivot = i;
      break;
    }
  if (!pivot) {
    for (std::size_t i = 0; i < rs.size(); ++i) c.details.emplace_back("R" + std::to_string(i + 1), to_string(normalize(rs[i])));
    c.add("pi#dh", check_zero(r, cfg, ch));
    return c;
  }

  NormalForm lam = normal_form(rs[*pivot] / xs[*pivot]);
  merge_assumptions(c.assumptions, lam.assumptions);
  merge_assumptions(c.assumptions, {normalize(xs[*pivot])});
  Expr lambda = lam.expr;
  if (!lambda.is_constant() && !lam.rf.depends_on_coords()) {
    // depends on parameters only: still a constant on the chart
    c.lambda_constant = true;
  } else if (lambda.is_constant()) {
    c.lambda_constant = true;
  } else if (!lam.rf.is_rational()) {
    auto pts = sample_points(*ch, cfg);
    double lo = INFINITY, hi = -INFINITY, sum = 0;
    int n = 0;
    for (const auto& s : pts) {
      try {
        double v = eval(lambda, s.x, s.params);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
        sum += v;
        ++n;
      } catch (const EvalError&) {
      }
    }
    if (n > 0 && hi - lo <= cfg.tolerance * std::max(1.0, std::fabs(hi))) {
      if (auto q = recognize(sum / n, cfg.tolerance)) {
        c.details.emplace_back("lambda_symbolic", to_string(lambda));
        lambda = Expr(*q);
        c.lambda_constant = true;
        c.lambda_numeric = true;
      }
    }
  }
  c.lambda = lambda;

  MultiVector res = r - x.scaled(lambda);
  c.add("pi#dh - lambda*X", check_zero(res, cfg, ch));
  if (!c.lambda_constant) c.add("d(lambda)", check_zero(differential(ch, lambda), cfg, ch));
  return c;
}

}  // namespace hamil
