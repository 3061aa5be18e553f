#include "hamil/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hamil/conventions.hpp"
#include "hamil/polynomial.hpp"

namespace hamil {

bool HamiltonizationResult::certified() const {
  const Certificate* j = find("jacobi");
  return !j || j->verdict() != Verdict::NonZero;
}

const Certificate* HamiltonizationResult::find(const std::string& claim) const {
  for (const auto& c : certificates)
    if (c.claim == claim) return &c;
  return nullptr;
}

namespace {

std::string format_point(const std::vector<double>& x) {
  std::ostringstream os;
  os.precision(6);
  os << "(";
  for (std::size_t i = 0; i < x.size(); ++i) os << (i ? ", " : "") << x[i];
  os << ")";
  return os.str();
}

// Adds the identity and raises when it is witnessed false.
void require(Certificate& c, const std::string& name, TriState t, bool strict = true) {
  bool bad = t.is_nonzero();
  std::string where = bad && !t.witness.empty() ? " at " + format_point(t.witness) : "";
  c.add(name, std::move(t));
  if (bad && strict) throw PreconditionError("hypothesis '" + name + "' fails" + where);
}

Certificate new_cert(std::string claim, const SamplerConfig& cfg) {
  Certificate c;
  c.claim = std::move(claim);
  c.sampler = cfg;
  return c;
}

ChartPtr exclude_unless_constant(const ChartPtr& chart, const Expr& f) {
  Expr n = normalize(f);
  if (n.is_constant()) return chart;
  if (std::find(chart->excluded.begin(), chart->excluded.end(), n) != chart->excluded.end()) return chart;
  return with_excluded(chart, n);
}

template <class T>
T rechart(const T& t, const ChartPtr& chart) {
  T out(chart, t.grade());
  for (const auto& [idx, c] : t.entries()) out.set(idx, c);
  return out;
}

bool is_polynomial_coefficient(const Expr& e) {
  RatFunc rf = to_ratfunc(e);
  return rf.is_polynomial() && rf.is_rational();
}

Certificate hamiltonization_for(const MultiVector& pi, const Expr& h, const MultiVector& x,
                                const SamplerConfig& cfg, HamiltonizationResult& r) {
  Certificate c = hamiltonization_check(pi, h, x, cfg);
  r.lambda = c.lambda;
  return c;
}

}  // namespace

void require_nonvanishing(const Expr& f, const Chart& chart, const SamplerConfig& cfg, const std::string& what) {
  Expr n = normalize(f);
  if (n.is_constant()) {
    if (n.is_zero()) throw PreconditionError(what + " vanishes identically");
    return;
  }
  for (const auto& s : sample_points(chart, cfg)) {
    double v;
    try {
      v = eval(f, s.x, s.params);
    } catch (const EvalError&) {
      throw PreconditionError(what + " cannot be evaluated at " + format_point(s.x));
    }
    if (std::fabs(v) <= cfg.tolerance) throw PreconditionError(what + " vanishes at " + format_point(s.x));
  }
}

// ---------------------------------------------------------------------------

HamiltonizationResult flaschka_ratiu(const VolumeForm& omega, const std::vector<Expr>& c, const SamplerConfig& cfg) {
  const ChartPtr& chart = omega.chart;
  const int m = chart->dim();
  if (m < 2 || static_cast<int>(c.size()) != m - 2)
    throw std::invalid_argument("flaschka_ratiu needs m - 2 functions on a chart of dimension m >= 2");
  require_nonvanishing(omega.density, *chart, cfg, "volume density");
  std::vector<Form> dcs;
  for (const auto& ci : c) dcs.push_back(differential(chart, ci));
  Form rho = wedge_all(chart, dcs);

  HamiltonizationResult r;
  r.construction = "flaschka_ratiu";
  r.pi = form_to_bivector(omega, rho).normalized();
  r.forms.emplace_back("rho", rho.normalized());
  r.certificates.push_back(jacobi_check(r.pi, cfg));
  for (std::size_t i = 0; i < c.size(); ++i) {
    Certificate cc = casimir_check(r.pi, c[i], cfg, &omega);
    cc.claim = "casimir c" + std::to_string(i + 1);
    r.certificates.push_back(std::move(cc));
  }
  return r;
}

// ---------------------------------------------------------------------------

std::vector<HamiltonizationResult> integrable_family(const MultiVector& x, const std::vector<Expr>& h,
                                                     const VolumeForm& omega, const SamplerConfig& cfg) {
  ChartPtr chart = merge_charts(x.chart(), omega.chart);
  const int m = chart->dim();
  if (x.grade() != 1) throw std::invalid_argument("integrable_family needs a vector field");
  if (m < 2 || static_cast<int>(h.size()) != m - 1)
    throw std::invalid_argument("integrable_family needs m - 1 first integrals");
  require_nonvanishing(omega.density, *chart, cfg, "volume density");

  Certificate pre = new_cert("preconditions", cfg);
  for (std::size_t j = 0; j < h.size(); ++j)
    require(pre, "L_X h" + std::to_string(j + 1), is_zero(lie_derivative(x, h[j]), *chart, cfg));

  std::vector<Form> dh;
  for (const auto& hj : h) dh.push_back(differential(chart, hj));
  for (const auto& s : sample_points(*chart, cfg)) {
    std::vector<std::vector<double>> jac;
    for (const auto& form : dh) {
      std::vector<double> row(static_cast<std::size_t>(m), 0.0);
      for (const auto& [idx, c] : form.entries()) row[static_cast<std::size_t>(idx[0])] = eval(c, s.x, s.params);
      jac.push_back(std::move(row));
    }
    if (numeric_rank(jac) < m - 1)
      throw PreconditionError("first integrals are dependent at " + format_point(s.x));
  }

  std::vector<HamiltonizationResult> out;
  auto xs = x.components();
  for (int i = 0; i < m - 1; ++i) {
    std::vector<Form> others;
    for (int j = 0; j < m - 1; ++j)
      if (j != i) others.push_back(dh[static_cast<std::size_t>(j)]);
    MultiVector psi = form_to_bivector(omega, wedge_all(chart, others)).normalized();
    MultiVector s = sharp(psi, dh[static_cast<std::size_t>(i)]);
    auto ss = s.components();

    std::optional<std::size_t> k;
    for (std::size_t q = 0; q < xs.size(); ++q)
      if (!normalizes_to_zero(xs[q])) {
        k = q;
        break;
      }
    if (!k) throw ConstructionError("X is identically zero");
    if (s.normalized().structurally_zero())
      throw ConstructionError("sharp(psi_" + std::to_string(i + 1) + ", dh_" + std::to_string(i + 1) +
                              ") is identically zero");
    if (normalizes_to_zero(ss[*k]))
      throw ConstructionError("f_" + std::to_string(i + 1) + " ratio is undefined on the leading component of X");
    Expr f = normalize(xs[*k] / ss[*k]);
    ChartPtr ci = exclude_unless_constant(chart, ss[*k]);
    TriState consistent = check_zero(x - s.scaled(f), cfg, ci);
    if (consistent.is_nonzero())
      throw ConstructionError("f_" + std::to_string(i + 1) + " ratio is inconsistent at " +
                              format_point(consistent.witness));

    HamiltonizationResult r;
    r.construction = "integrable_family";
    r.family_index = i + 1;
    r.pi = rechart(psi.scaled(f).normalized(), ci);
    r.h = h[static_cast<std::size_t>(i)];
    r.scalars.emplace_back("f", f);
    r.vectors.emplace_back("psi", psi);
    r.certificates.push_back(pre);
    Certificate ratio = new_cert("ratio", cfg);
    ratio.add("X - f sharp(psi,dh)", consistent);
    r.certificates.push_back(std::move(ratio));
    r.certificates.push_back(jacobi_check(r.pi, cfg));
    r.certificates.push_back(hamiltonization_for(r.pi, h[static_cast<std::size_t>(i)], x, cfg, r));
    Certificate cas = new_cert("delta", cfg);
    for (int j = 0; j < m - 1; ++j) {
      if (j == i) continue;
      cas.add("pi" + std::to_string(i + 1) + "#dh" + std::to_string(j + 1),
              check_zero(sharp(r.pi, dh[static_cast<std::size_t>(j)]), cfg, ci));
    }
    r.certificates.push_back(std::move(cas));
    out.push_back(std::move(r));
  }

  for (std::size_t i = 0; i < out.size(); ++i) {
    Certificate comp = new_cert("compatibility", cfg);
    for (std::size_t j = 0; j < out.size(); ++j) {
      if (j == i) continue;
      ChartPtr both = merge_charts(out[i].pi.chart(), out[j].pi.chart());
      comp.add("[pi" + std::to_string(i + 1) + ",pi" + std::to_string(j + 1) + "]",
               check_zero(schouten(out[i].pi, out[j].pi), cfg, both));
    }
    out[i].certificates.push_back(std::move(comp));
  }
  return out;
}

// ---------------------------------------------------------------------------

HamiltonizationResult linear_fr(const ChartPtr& chart, const Matrix& p, const Matrix& a, const SamplerConfig& cfg) {
  const int n = chart->dim();
  if (n < 2 || a.rows() != n || a.cols() != n || p.rows() != n || p.cols() != n - 2)
    throw std::invalid_argument("linear_fr needs A of size n x n and P of size n x (n-2)");
  Certificate pre = new_cert("preconditions", cfg);
  std::vector<Expr> diag;
  for (int i = 0; i < n; ++i) diag.push_back(a(i, i));
  if (!normalizes_to_zero(make_add(diag))) throw PreconditionError("trace A is not zero");
  if (rank(p) != n - 2) throw PreconditionError("columns of P are dependent");
  if (!equal_exact(a.transpose() * p, Matrix(n, n - 2))) throw PreconditionError("columns of P are not in ker A^T");

  MultiVector pi(chart, 2);
  Matrix w(n, n);
  std::vector<Expr> minors;
  std::vector<Expr> squares;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Expr dij = minor_without_rows(p, i, j);
      minors.push_back(dij);
      squares.push_back(dij * dij);
    }
  Expr norm2 = normalize(make_add(squares));
  if (normalizes_to_zero(norm2)) throw PreconditionError("columns of P are dependent");
  std::size_t q = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j, ++q) {
      Expr dij = minors[q];
      bool even = (i + j) % 2 == 0;
      pi.add({i, j}, even ? dij : -dij);
      Expr wij = normalize((even ? -dij : dij) / norm2);
      w(i, j) = wij;
      w(j, i) = -wij;
    }
  pi = pi.normalized();

  Form omega(chart, 2);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) omega.add({i, j}, w(i, j));

  Matrix xs(n, 1);
  for (int i = 0; i < n; ++i) xs(i, 0) = chart->x(i);
  Matrix ax = a * xs;
  Matrix quad = xs.transpose() * (w * ax);
  Expr h = normalize(Rational(1, 2) * quad(0, 0));
  MultiVector x = vector_field(chart, ax.column(0)).normalized();

  HamiltonizationResult r;
  r.construction = "linear_fr";
  r.pi = pi;
  r.h = h;
  r.forms.emplace_back("omega", omega);
  r.vectors.emplace_back("X", x);
  r.scalars.emplace_back("norm2", norm2);
  r.certificates.push_back(jacobi_check(pi, cfg));
  for (int k = 0; k < n - 2; ++k) {
    std::vector<Expr> terms;
    for (int i = 0; i < n; ++i) terms.push_back(p(i, k) * chart->x(i));
    Certificate cc = casimir_check(pi, make_add(terms), cfg);
    cc.claim = "casimir c" + std::to_string(k + 1);
    r.certificates.push_back(std::move(cc));
  }
  r.certificates.push_back(hamiltonization_for(pi, h, x, cfg, r));
  return r;
}

// ---------------------------------------------------------------------------

Form primitive(const Form& w, const std::vector<Rational>& base) {
  const ChartPtr& chart = w.chart();
  const int m = chart->dim();
  const int k = w.grade();
  if (k < 1) throw std::invalid_argument("primitive needs a form of grade >= 1");
  if (!base.empty() && static_cast<int>(base.size()) != m) throw std::invalid_argument("base point dimension mismatch");
  for (const auto& [idx, c] : w.entries())
    if (!is_polynomial_coefficient(c)) throw ConstructionError("primitive needs polynomial coefficients");
  if (!d(w).normalized().structurally_zero()) throw ConstructionError("form is not closed");

  std::vector<Expr> b(static_cast<std::size_t>(m), Expr(0));
  for (std::size_t i = 0; i < base.size(); ++i) b[i] = Expr(base[i]);
  const Expr t = Expr::param("_t");

  Form integrated(chart, k);
  for (const auto& [idx, f] : w.entries()) {
    Expr g = f;
    for (int i = 0; i < m; ++i) {
      const auto ui = static_cast<std::size_t>(i);
      g = substitute(g, i, b[ui] + t * (chart->x(i) - b[ui]));
    }
    RatFunc rf = to_ratfunc(g);
    Poly acc;
    for (const auto& [mono, coef] : rf.num().terms()) {
      int deg = 0;
      Monomial rest;
      for (const auto& [atom, e] : mono) {
        if (atom->kind == Atom::Kind::param && atom->key == "_t")
          deg = e;
        else
          rest.emplace_back(atom, e);
      }
      acc.add_term(rest, coef / Rational(k + deg));
    }
    integrated.set(idx, acc.to_expr());
  }
  std::vector<Expr> radial;
  for (int i = 0; i < m; ++i) radial.push_back(chart->x(i) - b[static_cast<std::size_t>(i)]);
  return interior(vector_field(chart, radial), integrated).normalized();
}

// ---------------------------------------------------------------------------

namespace {

struct RowKey {
  Index index;
  Monomial mono;
  bool operator<(const RowKey& o) const {
    if (index != o.index) return index < o.index;
    return compare_monomials(mono, o.mono) > 0;
  }
};

void monomials_up_to(int m, int bound, std::vector<std::vector<int>>& out) {
  std::vector<int> e(static_cast<std::size_t>(m), 0);
  for (int deg = 0; deg <= bound; ++deg) {
    auto rec = [&](auto& self, int var, int left) -> void {
      if (var == m - 1) {
        e[static_cast<std::size_t>(var)] = left;
        out.push_back(e);
        return;
      }
      for (int p = left; p >= 0; --p) {
        e[static_cast<std::size_t>(var)] = p;
        self(self, var + 1, left - p);
      }
    };
    if (m == 0) break;
    rec(rec, 0, deg);
  }
}

}  // namespace

std::vector<Expr> integrating_factor(const Form& rho, int degree_bound) {
  const ChartPtr& chart = rho.chart();
  const int m = chart->dim();
  if (degree_bound < 0) throw std::invalid_argument("degree bound must be non-negative");
  for (const auto& [idx, c] : rho.entries())
    if (!is_polynomial_coefficient(c)) throw ConstructionError("integrating_factor needs polynomial coefficients");
  if (rho.normalized().structurally_zero()) return {};

  std::vector<std::vector<int>> exps;
  monomials_up_to(m, degree_bound, exps);
  std::vector<Expr> monos;
  for (const auto& e : exps) {
    std::vector<Expr> fs{Expr(1)};
    for (int i = 0; i < m; ++i)
      if (e[static_cast<std::size_t>(i)] > 0) fs.push_back(make_pow(chart->x(i), e[static_cast<std::size_t>(i)]));
    monos.push_back(make_mul(std::move(fs)));
  }

  std::map<RowKey, std::map<std::size_t, Rational>> rows;
  for (std::size_t col = 0; col < monos.size(); ++col) {
    Form f = d(rho.scaled(monos[col]));
    for (const auto& [idx, c] : f.entries()) {
      RatFunc rf = to_ratfunc(c);
      for (const auto& [mono, coef] : rf.num().terms()) rows[RowKey{idx, mono}][col] += coef;
    }
  }
  Matrix sys(static_cast<int>(rows.size()), static_cast<int>(monos.size()));
  int r = 0;
  for (const auto& [key, entries] : rows) {
    for (const auto& [col, v] : entries) sys(r, static_cast<int>(col)) = Expr(v);
    ++r;
  }
  std::vector<Expr> out;
  for (const auto& v : nullspace(sys)) {
    std::vector<Expr> terms;
    for (std::size_t col = 0; col < monos.size(); ++col)
      if (!v[col].is_zero()) terms.push_back(v[col] * monos[col]);
    out.push_back(normalize(make_add(std::move(terms))));
  }
  return out;
}

// ---------------------------------------------------------------------------

HamiltonizationResult unimodularize(const MultiVector& x, const VolumeForm& omega, const Form& rho, const Expr& a,
                                    const SamplerConfig& cfg) {
  ChartPtr chart = merge_charts(merge_charts(x.chart(), omega.chart), rho.chart());
  const int m = chart->dim();
  if (x.grade() != 1 || rho.grade() != m - 2)
    throw std::invalid_argument("unimodularize needs a vector field and an (m-2)-form");
  require_nonvanishing(omega.density, *chart, cfg, "volume density");
  ChartPtr work = exclude_unless_constant(chart, a);

  Certificate pre = new_cert("preconditions", cfg);
  require(pre, "i_X Omega - d rho", check_zero(interior(x, omega.form()) - d(rho), cfg, chart));
  require(pre, "d(a rho)", check_zero(d(rho.scaled(a)), cfg, work));
  int max_rank = 0;
  for (const auto& s : sample_points(*work, cfg)) {
    int rk = rank_at(rho, s.x, s.params);
    if (rk > 2) throw ConstructionError("rho has rank " + std::to_string(rk) + " > 2 at " + format_point(s.x));
    max_rank = std::max(max_rank, rk);
  }

  HamiltonizationResult r;
  r.construction = "unimodularize";
  r.pi = rechart(form_to_bivector(omega, rho.scaled(a)).normalized(), work);
  r.h = normalize(Expr(1) / a);
  r.certificates.push_back(pre);
  r.certificates.push_back(jacobi_check(r.pi, cfg));
  r.certificates.push_back(hamiltonization_for(r.pi, *r.h, x, cfg, r));

  // pi is unimodular for Omega; X is the modular field of h pi, i_{h pi} Omega = rho.
  Certificate mod = new_cert("modular", cfg);
  mod.add("modular_vf(pi,Omega)", check_zero(modular_vf(r.pi, omega), cfg, work));
  MultiVector hpi = form_to_bivector(omega, rho).normalized();
  MultiVector z = modular_vf(hpi, omega);
  auto xs = x.components();
  auto zs = z.components();
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (normalizes_to_zero(xs[i])) continue;
    Expr sigma = normalize(zs[i] / xs[i]);
    r.scalars.emplace_back("sigma_measured", sigma);
    break;
  }
  mod.add("modular_vf(h pi,Omega) - sigma X",
          check_zero(z - x.scaled(conventions::kModularSign), cfg, work));
  r.certificates.push_back(std::move(mod));
  r.scalars.emplace_back("max_rank_rho", Expr(max_rank));
  return r;
}

// ---------------------------------------------------------------------------

HamiltonizationResult foliated_build(const VolumeForm& omega, const std::vector<Form>& alpha, const Form& beta,
                                     const SamplerConfig& cfg, const FoliatedOptions& opts) {
  ChartPtr chart = merge_charts(omega.chart, beta.chart());
  if (opts.x) chart = merge_charts(chart, opts.x->chart());
  const int m = chart->dim();
  for (const auto& al : alpha)
    if (al.grade() != 1) throw std::invalid_argument("foliated_build needs 1-forms alpha_i");
  if (static_cast<int>(alpha.size()) + beta.grade() != m - 2)
    throw std::invalid_argument("foliated_build needs k + grade(beta) = m - 2");
  require_nonvanishing(omega.density, *chart, cfg, "volume density");

  Certificate pre = new_cert("preconditions", cfg);
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    std::vector<Form> rest;
    for (std::size_t j = 0; j < alpha.size(); ++j)
      if (j != i) rest.push_back(alpha[j]);
    require(pre, "integrability alpha" + std::to_string(i + 1),
            check_zero(wedge(d(alpha[i]), wedge_all(chart, rest)), cfg, chart));
  }
  std::vector<Form> all = alpha;
  all.push_back(beta);
  Form full = wedge_all(chart, all);

  HamiltonizationResult r;
  r.construction = "foliated_build";
  Certificate closed = new_cert("closed", cfg);
  closed.add("d(alpha^beta)", check_zero(d(full), cfg, chart));
  r.pi = form_to_bivector(omega, full).normalized();
  r.forms.emplace_back("rho", full.normalized());
  r.certificates.push_back(pre);
  r.certificates.push_back(std::move(closed));
  r.certificates.push_back(jacobi_check(r.pi, cfg));
  if (opts.x) {
    r.certificates.push_back(poisson_vf_check(r.pi, *opts.x, cfg));
    if (opts.h) {
      r.h = *opts.h;
      r.certificates.push_back(hamiltonization_for(r.pi, *opts.h, *opts.x, cfg, r));
    }
  }
  return r;
}

// ---------------------------------------------------------------------------

Certificate normal_class_check(const MultiVector& x, const Expr& h, const MultiVector& y, const SamplerConfig& cfg) {
  ChartPtr chart = merge_charts(x.chart(), y.chart());
  Certificate c = new_cert("normal_class", cfg);
  Expr dhy = pairing(differential(chart, h), y);
  MultiVector br = lie_bracket(x, y);
  c.add("dh(Y) X - X", check_zero(x.scaled(dhy) - x, cfg, chart));
  c.add("[X,Y]^X^Y", check_zero(wedge(wedge(br, x), y), cfg, chart));
  c.add("[X,Y]^X", check_zero(wedge(br, x), cfg, chart));
  return c;
}

HamiltonizationResult decomposable(const MultiVector& x, const MultiVector& y, const SamplerConfig& cfg) {
  ChartPtr chart = merge_charts(x.chart(), y.chart());
  HamiltonizationResult r;
  r.construction = "decomposable";
  r.pi = rechart(wedge(y, x).normalized(), chart);
  Certificate id = new_cert("decomposable_identity", cfg);
  MultiVector rhs = wedge(wedge(lie_bracket(x, y), x), y).scaled(2);
  id.add("[pi,pi] - 2[X,Y]^X^Y", check_zero(schouten(r.pi, r.pi) - rhs, cfg, chart));
  r.certificates.push_back(std::move(id));
  r.certificates.push_back(jacobi_check(r.pi, cfg));
  return r;
}

HamiltonizationResult hojman(const MultiVector& x, const Expr& h, const MultiVector& z, const SamplerConfig& cfg) {
  ChartPtr chart = merge_charts(x.chart(), z.chart());
  Certificate pre = new_cert("preconditions", cfg);
  require(pre, "L_X h", is_zero(lie_derivative(x, h), *chart, cfg));
  Expr dhz = normalize(pairing(differential(chart, h), z));
  require_nonvanishing(dhz, *chart, cfg, "dh(Z)");
  require(pre, "[X,Z]^X^Z", check_zero(wedge(wedge(lie_bracket(x, z), x), z), cfg, chart));

  ChartPtr work = exclude_unless_constant(chart, dhz);
  HamiltonizationResult r;
  r.construction = "hojman";
  r.pi = rechart(wedge(z, x).scaled(Expr(1) / dhz).normalized(), work);
  r.h = h;
  r.scalars.emplace_back("dh(Z)", dhz);
  r.certificates.push_back(pre);
  r.certificates.push_back(jacobi_check(r.pi, cfg));
  r.certificates.push_back(hamiltonization_for(r.pi, h, x, cfg, r));
  return r;
}

HamiltonizationResult metric_normal(const MultiVector& x, const Expr& h, const Metric& g, const SamplerConfig& cfg) {
  ChartPtr chart = merge_charts(x.chart(), g.chart);
  Form dh = differential(chart, h);
  Expr q = normalize(dual_pairing(g, dh, dh));
  require_nonvanishing(q, *chart, cfg, "eta(dh,dh)");
  ChartPtr work = exclude_unless_constant(chart, q);
  MultiVector y0 = rechart(dual_sharp(g, dh).scaled(Expr(1) / q).normalized(), work);

  Certificate inv = new_cert("invariance", cfg);
  Matrix lg = lie_derivative(x, g);
  std::vector<Expr> entries;
  for (int i = 0; i < lg.rows(); ++i)
    for (int j = i; j < lg.cols(); ++j) entries.push_back(lg(i, j));
  inv.add("L_X g", all_zero(entries, *chart, cfg));
  inv.add("[X,Y0]", check_zero(lie_bracket(x, y0), cfg, work));

  HamiltonizationResult r = decomposable(rechart(x, work), y0, cfg);
  r.construction = "metric_normal";
  r.h = h;
  r.vectors.emplace_back("Y0", y0);
  r.certificates.insert(r.certificates.begin(), std::move(inv));
  r.certificates.push_back(hamiltonization_for(r.pi, h, x, cfg, r));
  return r;
}

// ---------------------------------------------------------------------------

HamiltonizationResult torus2(const MultiVector& x1, const MultiVector& x2, const Expr& h1, const Expr& h2,
                             const MultiVector& y1, const MultiVector& y2, const SamplerConfig& cfg,
                             const Torus2Options& opts) {
  ChartPtr chart = merge_charts(merge_charts(x1.chart(), x2.chart()), merge_charts(y1.chart(), y2.chart()));
  const bool strict = opts.strict;
  Form dh1 = differential(chart, h1);
  Form dh2 = differential(chart, h2);

  Certificate pre = new_cert("preconditions", cfg);
  require(pre, "[X1,X2]", check_zero(lie_bracket(x1, x2), cfg, chart), strict);
  require(pre, "[X1,Y1]", check_zero(lie_bracket(x1, y1), cfg, chart), strict);
  require(pre, "[X1,Y2]", check_zero(lie_bracket(x1, y2), cfg, chart), strict);
  require(pre, "[X2,Y1]", check_zero(lie_bracket(x2, y1), cfg, chart), strict);
  require(pre, "[X2,Y2]", check_zero(lie_bracket(x2, y2), cfg, chart), strict);
  auto condition = [&](const Form& dh, const MultiVector& xi) {
    return x1.scaled(pairing(dh, y1)) + x2.scaled(pairing(dh, y2)) - xi;
  };
  require(pre, "condition h1", check_zero(condition(dh1, x1), cfg, chart), strict);
  require(pre, "condition h2", check_zero(condition(dh2, x2), cfg, chart), strict);

  HamiltonizationResult r;
  r.construction = "torus2";
  r.pi = rechart((wedge(y1, x1) + wedge(y2, x2)).normalized(), chart);
  r.certificates.push_back(pre);

  MultiVector yy = lie_bracket(y1, y2);
  Certificate ident = new_cert("torus2_identity", cfg);
  ident.add("[pi,pi] - 2[Y1,Y2]^X1^X2",
            check_zero(schouten(r.pi, r.pi) - wedge(wedge(yy, x1), x2).scaled(2), cfg, chart));
  r.certificates.push_back(std::move(ident));

  Certificate lem = new_cert("momentum_brackets", cfg);
  lem.add("dh1([Y1,Y2])", is_zero(pairing(dh1, yy), *chart, cfg));
  lem.add("dh2([Y1,Y2])", is_zero(pairing(dh2, yy), *chart, cfg));
  r.certificates.push_back(std::move(lem));
  r.certificates.push_back(jacobi_check(r.pi, cfg));

  std::vector<std::string> params = chart->params;
  std::string n1 = "xi1", n2 = "xi2";
  while (chart->has_param(n1) || chart->coord_index(n1)) n1 += "_";
  while (chart->has_param(n2) || chart->coord_index(n2)) n2 += "_";
  params.push_back(n1);
  params.push_back(n2);
  ChartPtr pc = make_chart(chart->coords, params, chart->excluded, chart->bindings);
  Expr xi1 = Expr::param(n1), xi2 = Expr::param(n2);
  MultiVector pi_p = rechart(r.pi, pc);
  MultiVector mom = sharp(pi_p, differential(pc, xi1 * h1 + xi2 * h2)) -
                    rechart(x1, pc).scaled(xi1) - rechart(x2, pc).scaled(xi2);
  Certificate mc = new_cert("momentum", cfg);
  mc.add("pi#d(xi.h) - xi_M", check_zero(mom, cfg, pc));
  r.certificates.push_back(std::move(mc));

  int lo = chart->dim(), hi = 0;
  for (const auto& s : sample_points(*chart, cfg)) {
    int rk = rank_at(r.pi, s.x, s.params);
    lo = std::min(lo, rk);
    hi = std::max(hi, rk);
  }
  r.scalars.emplace_back("rank_min", Expr(lo));
  r.scalars.emplace_back("rank_max", Expr(hi));
  return r;
}

}  // namespace hamil
