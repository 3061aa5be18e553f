#include "hamil/exterior.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <numeric>

#include "hamil/polynomial.hpp"

namespace hamil {

namespace {

void require_same_chart(const ChartPtr& a, const ChartPtr& b) {
  if (a == b) return;
  if (!a || !b || !a->same_coordinates(*b)) throw ChartMismatch();
}

// Removes the entry at `pos` from `idx`.
Index without(const Index& idx, std::size_t pos) {
  Index out;
  out.reserve(idx.size() - 1);
  for (std::size_t k = 0; k < idx.size(); ++k)
    if (k != pos) out.push_back(idx[k]);
  return out;
}

Index concat(std::initializer_list<const Index*> parts) {
  Index out;
  for (const Index* p : parts) out.insert(out.end(), p->begin(), p->end());
  return out;
}

}  // namespace

int permutation_sign(const Index& idx) {
  int sign = 1;
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = i + 1; j < idx.size(); ++j) {
      if (idx[i] == idx[j]) return 0;
      if (idx[i] > idx[j]) sign = -sign;
    }
  return sign;
}

// ---------------------------------------------------------------------------
// Graded

template <Variance V>
Graded<V>::Graded(ChartPtr chart, int grade) : chart_(std::move(chart)), grade_(grade) {
  if (!chart_) throw std::invalid_argument("tensor without a chart");
  if (grade < 0) throw std::invalid_argument("negative grade");
}

template <Variance V>
Graded<V> Graded<V>::scalar(ChartPtr chart, const Expr& f) {
  Graded g(std::move(chart), 0);
  g.add({}, f);
  return g;
}

template <Variance V>
Expr Graded<V>::get(const Index& idx) const {
  int s = permutation_sign(idx);
  if (s == 0) return 0;
  Index sorted = idx;
  std::sort(sorted.begin(), sorted.end());
  auto it = entries_.find(sorted);
  if (it == entries_.end()) return 0;
  return s > 0 ? it->second : -it->second;
}

template <Variance V>
void Graded<V>::add(Index idx, const Expr& c) {
  if (static_cast<int>(idx.size()) != grade_) throw std::invalid_argument("index length does not match grade");
  for (int i : idx)
    if (i < 0 || i >= dim()) throw std::invalid_argument("coordinate index out of range");
  if (c.is_zero()) return;
  int s = permutation_sign(idx);
  if (s == 0) return;
  std::sort(idx.begin(), idx.end());
  Expr v = s > 0 ? c : -c;
  auto it = entries_.find(idx);
  if (it == entries_.end()) {
    entries_.emplace(std::move(idx), v);
  } else {
    it->second = it->second + v;
    if (it->second.is_zero()) entries_.erase(it);
  }
}

template <Variance V>
void Graded<V>::set(const Index& sorted, const Expr& c) {
  if (static_cast<int>(sorted.size()) != grade_) throw std::invalid_argument("index length does not match grade");
  if (!std::is_sorted(sorted.begin(), sorted.end()) || permutation_sign(sorted) == 0)
    throw std::invalid_argument("index must be strictly increasing");
  for (int i : sorted)
    if (i < 0 || i >= dim()) throw std::invalid_argument("coordinate index out of range");
  if (c.is_zero())
    entries_.erase(sorted);
  else
    entries_[sorted] = c;
}

template <Variance V>
std::vector<Expr> Graded<V>::components() const {
  if (grade_ != 1) throw std::invalid_argument("components() needs grade 1");
  std::vector<Expr> out(static_cast<std::size_t>(dim()), Expr(0));
  for (const auto& [idx, c] : entries_) out[static_cast<std::size_t>(idx[0])] = c;
  return out;
}

template <Variance V>
Expr Graded<V>::scalar_value() const {
  if (grade_ != 0) throw std::invalid_argument("scalar_value() needs grade 0");
  auto it = entries_.find(Index{});
  return it == entries_.end() ? Expr(0) : it->second;
}

template <Variance V>
Graded<V> Graded<V>::normalized() const {
  Graded out(chart_, grade_);
  for (const auto& [idx, c] : entries_) {
    Expr n = normalize(c);
    if (!n.is_zero()) out.entries_.emplace(idx, n);
  }
  return out;
}

template <Variance V>
Graded<V> Graded<V>::scaled(const Expr& f) const {
  Graded out(chart_, grade_);
  if (f.is_zero()) return out;
  for (const auto& [idx, c] : entries_) out.entries_.emplace(idx, f.is_one() ? c : f * c);
  return out;
}

template <Variance V>
Graded<V>& Graded<V>::operator+=(const Graded& o) {
  if (!chart_) return *this = o;
  if (!o.chart_) return *this;
  require_same_chart(chart_, o.chart_);
  if (grade_ != o.grade_) throw std::invalid_argument("adding tensors of different grades");
  for (const auto& [idx, c] : o.entries_) add(idx, c);
  return *this;
}

template <Variance V>
Graded<V>& Graded<V>::operator-=(const Graded& o) {
  return *this += o.scaled(-1);
}

template class Graded<Variance::contravariant>;
template class Graded<Variance::covariant>;

// ---------------------------------------------------------------------------
// Helpers

MultiVector vector_field(const ChartPtr& chart, const std::vector<Expr>& components) {
  if (static_cast<int>(components.size()) != chart->dim())
    throw std::invalid_argument("vector field needs one component per coordinate");
  MultiVector v(chart, 1);
  for (int i = 0; i < chart->dim(); ++i) v.add({i}, components[static_cast<std::size_t>(i)]);
  return v;
}

Form one_form(const ChartPtr& chart, const std::vector<Expr>& components) {
  if (static_cast<int>(components.size()) != chart->dim())
    throw std::invalid_argument("1-form needs one component per coordinate");
  Form f(chart, 1);
  for (int i = 0; i < chart->dim(); ++i) f.add({i}, components[static_cast<std::size_t>(i)]);
  return f;
}

MultiVector coordinate_vector(const ChartPtr& chart, int i) {
  MultiVector v(chart, 1);
  v.add({i}, 1);
  return v;
}

Form coordinate_form(const ChartPtr& chart, int i) {
  Form f(chart, 1);
  f.add({i}, 1);
  return f;
}

Form differential(const ChartPtr& chart, const Expr& f) {
  Form df(chart, 1);
  for (int i = 0; i < chart->dim(); ++i) df.add({i}, diff(f, i));
  return df;
}

// ---------------------------------------------------------------------------
// Products

template <Variance V>
Graded<V> wedge(const Graded<V>& a, const Graded<V>& b) {
  require_same_chart(a.chart(), b.chart());
  Graded<V> out(a.chart(), a.grade() + b.grade());
  if (out.grade() > a.dim()) return out;
  for (const auto& [i, f] : a.entries())
    for (const auto& [j, g] : b.entries()) {
      Index k = concat({&i, &j});
      if (permutation_sign(k) == 0) continue;
      out.add(std::move(k), f.is_one() ? g : (g.is_one() ? f : f * g));
    }
  return out;
}

template MultiVector wedge(const MultiVector&, const MultiVector&);
template Form wedge(const Form&, const Form&);

template <Variance V>
Graded<V> wedge_all(const ChartPtr& chart, const std::vector<Graded<V>>& factors) {
  Graded<V> acc = Graded<V>::scalar(chart, 1);
  for (const auto& f : factors) acc = wedge(acc, f);
  return acc;
}

template MultiVector wedge_all(const ChartPtr&, const std::vector<MultiVector>&);
template Form wedge_all(const ChartPtr&, const std::vector<Form>&);

Form d(const Form& w) {
  Form out(w.chart(), w.grade() + 1);
  if (out.grade() > w.dim()) return out;
  for (const auto& [idx, f] : w.entries())
    for (int k = 0; k < w.dim(); ++k) {
      if (std::find(idx.begin(), idx.end(), k) != idx.end()) continue;
      Expr df = diff(f, k);
      if (df.is_zero()) continue;
      Index j{k};
      j.insert(j.end(), idx.begin(), idx.end());
      out.add(std::move(j), df);
    }
  return out;
}

namespace {

// i_{e_J}(e^I) as (sign, remaining index); sign 0 when J is not contained in I.
// Contractions are applied from the last entry of J to the first.
std::pair<int, Index> contract(const Index& j, const Index& i) {
  Index rest = i;
  int sign = 1;
  for (auto it = j.rbegin(); it != j.rend(); ++it) {
    auto pos = std::find(rest.begin(), rest.end(), *it);
    if (pos == rest.end()) return {0, {}};
    if ((pos - rest.begin()) % 2) sign = -sign;
    rest.erase(pos);
  }
  return {sign, rest};
}

template <Variance A, Variance B>
Graded<B> contract_into(const Graded<A>& a, const Graded<B>& t) {
  require_same_chart(a.chart(), t.chart());
  if (a.grade() > t.grade()) return Graded<B>(t.chart(), 0);
  Graded<B> out(t.chart(), t.grade() - a.grade());
  for (const auto& [j, f] : a.entries())
    for (const auto& [i, g] : t.entries()) {
      auto [s, rest] = contract(j, i);
      if (s == 0) continue;
      Expr c = f.is_one() ? g : (g.is_one() ? f : f * g);
      out.add(std::move(rest), s > 0 ? c : -c);
    }
  return out;
}

}  // namespace

Form interior(const MultiVector& a, const Form& w) { return contract_into(a, w); }

MultiVector interior(const Form& a, const MultiVector& t) { return contract_into(a, t); }

MultiVector sharp(const MultiVector& pi, const Form& alpha) {
  if (pi.grade() != 2 || alpha.grade() != 1) throw std::invalid_argument("sharp needs a bivector and a 1-form");
  return interior(alpha, pi);
}

Expr pairing(const Form& alpha, const MultiVector& x) {
  if (alpha.grade() != 1 || x.grade() != 1) throw std::invalid_argument("pairing needs a 1-form and a vector field");
  require_same_chart(alpha.chart(), x.chart());
  std::vector<Expr> terms;
  for (const auto& [i, a] : alpha.entries()) {
    auto it = x.entries().find(i);
    if (it != x.entries().end()) terms.push_back(a * it->second);
  }
  return make_add(std::move(terms));
}

Expr directional(const MultiVector& x, const Expr& f) {
  if (x.grade() != 1) throw std::invalid_argument("directional derivative needs a vector field");
  std::vector<Expr> terms;
  for (const auto& [i, c] : x.entries()) {
    Expr df = diff(f, i[0]);
    if (!df.is_zero()) terms.push_back(c * df);
  }
  return make_add(std::move(terms));
}

// ---------------------------------------------------------------------------
// Brackets

MultiVector lie_bracket(const MultiVector& x, const MultiVector& y) {
  if (x.grade() != 1 || y.grade() != 1) throw std::invalid_argument("Lie bracket needs vector fields");
  require_same_chart(x.chart(), y.chart());
  MultiVector out(x.chart(), 1);
  for (int i = 0; i < x.dim(); ++i) {
    Expr yi = y.get({i});
    Expr xi = x.get({i});
    out.add({i}, directional(x, yi) - directional(y, xi));
  }
  return out;
}

MultiVector schouten(const MultiVector& a, const MultiVector& b) {
  if (a.grade() < 1 || b.grade() < 1) throw std::invalid_argument("Schouten bracket needs grades >= 1");
  require_same_chart(a.chart(), b.chart());
  MultiVector out(a.chart(), a.grade() + b.grade() - 1);
  if (out.grade() > a.dim()) return out;
  for (const auto& [I, f] : a.entries())
    for (const auto& [J, g] : b.entries()) {
      const Index i_rest0 = without(I, 0);
      const Index j_rest0 = without(J, 0);
      // [f d_I0, g d_J0]
      {
        Expr c1 = f * diff(g, I[0]);
        Expr c2 = -(g * diff(f, J[0]));
        Index k1{J[0]};
        Index k2{I[0]};
        if (!diff(g, I[0]).is_zero()) out.add(concat({&k1, &i_rest0, &j_rest0}), c1);
        if (!diff(f, J[0]).is_zero()) out.add(concat({&k2, &i_rest0, &j_rest0}), c2);
      }
      // [f d_I0, d_Jj] = -(d_Jj f) d_I0, with g d_J0 kept among the Y's
      for (std::size_t j = 1; j < J.size(); ++j) {
        Expr df = diff(f, J[j]);
        if (df.is_zero()) continue;
        Index k{I[0]};
        Index jr = without(J, j);
        Expr c = -(df * g);
        if ((j % 2) == 1) c = -c;
        out.add(concat({&k, &i_rest0, &jr}), c);
      }
      // [d_Ii, g d_J0] = (d_Ii g) d_J0, with f d_I0 kept among the X's
      for (std::size_t i = 1; i < I.size(); ++i) {
        Expr dg = diff(g, I[i]);
        if (dg.is_zero()) continue;
        Index k{J[0]};
        Index ir = without(I, i);
        Expr c = dg * f;
        if ((i % 2) == 1) c = -c;
        out.add(concat({&k, &ir, &j_rest0}), c);
      }
    }
  return out;
}

Expr lie_derivative(const MultiVector& x, const Expr& f) { return directional(x, f); }

Form lie_derivative(const MultiVector& x, const Form& w) {
  if (x.grade() != 1) throw std::invalid_argument("Lie derivative needs a vector field");
  Form a = interior(x, d(w));
  if (w.grade() == 0) return a;
  return a + d(interior(x, w));
}

MultiVector lie_derivative(const MultiVector& x, const MultiVector& t) {
  if (x.grade() != 1) throw std::invalid_argument("Lie derivative needs a vector field");
  if (t.grade() == 0) return MultiVector::scalar(t.chart(), directional(x, t.scalar_value()));
  return schouten(x, t);
}

// ---------------------------------------------------------------------------
// Volume forms

Form VolumeForm::form() const {
  Form w(chart, chart->dim());
  Index all(static_cast<std::size_t>(chart->dim()));
  std::iota(all.begin(), all.end(), 0);
  w.add(all, density);
  return w;
}

VolumeForm euclidean_volume(const ChartPtr& chart) { return VolumeForm{chart, Expr(1)}; }

Expr divergence(const MultiVector& x, const VolumeForm& omega) {
  if (x.grade() != 1) throw std::invalid_argument("divergence needs a vector field");
  require_same_chart(x.chart(), omega.chart);
  std::vector<Expr> terms;
  const bool unit = omega.density.is_one();
  for (const auto& [i, c] : x.entries()) terms.push_back(diff(unit ? c : omega.density * c, i[0]));
  Expr s = make_add(std::move(terms));
  return unit ? s : s / omega.density;
}

Form bivector_to_form(const VolumeForm& omega, const MultiVector& pi) {
  if (pi.grade() != 2) throw std::invalid_argument("correspondence needs a bivector");
  return interior(pi, omega.form());
}

MultiVector form_to_bivector(const VolumeForm& omega, const Form& rho) {
  const int m = omega.chart->dim();
  if (rho.grade() != m - 2) throw std::invalid_argument("correspondence needs an (m-2)-form");
  require_same_chart(omega.chart, rho.chart());
  Index all(static_cast<std::size_t>(m));
  std::iota(all.begin(), all.end(), 0);
  MultiVector pi(omega.chart, 2);
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      auto [s, rest] = contract({i, j}, all);
      Expr c = rho.get(rest);
      if (c.is_zero()) continue;
      Expr v = omega.density.is_one() ? c : c / omega.density;
      pi.add({i, j}, s > 0 ? v : -v);
    }
  return pi;
}

std::vector<std::vector<double>> bivector_matrix(const MultiVector& pi, std::span<const double> x,
                                                 const Bindings& params) {
  const auto m = static_cast<std::size_t>(pi.dim());
  std::vector<std::vector<double>> a(m, std::vector<double>(m, 0.0));
  for (const auto& [idx, c] : pi.entries()) {
    double v = eval(c, x, params);
    a[static_cast<std::size_t>(idx[0])][static_cast<std::size_t>(idx[1])] = v;
    a[static_cast<std::size_t>(idx[1])][static_cast<std::size_t>(idx[0])] = -v;
  }
  return a;
}

int numeric_rank(const std::vector<std::vector<double>>& m) {
  const auto n = static_cast<Eigen::Index>(m.size());
  if (n == 0) return 0;
  const auto c = static_cast<Eigen::Index>(m[0].size());
  Eigen::MatrixXd a(n, c);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < c; ++j) a(i, j) = m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0;
  int r = 0;
  for (Eigen::Index k = 0; k < s.size(); ++k)
    if (s(k) > 1e-9 * s(0)) ++r;
  return r;
}

int rank_at(const MultiVector& pi, std::span<const double> x, const Bindings& params) {
  if (pi.grade() != 2) throw std::invalid_argument("rank needs a bivector");
  return numeric_rank(bivector_matrix(pi, x, params));
}

int rank_at(const Form& rho, std::span<const double> x, const Bindings& params) {
  const int m = rho.dim();
  if (rho.grade() == m - 2) return rank_at(form_to_bivector(euclidean_volume(rho.chart()), rho), x, params);
  if (rho.grade() != 2) throw std::invalid_argument("rank needs a 2-form or an (m-2)-form");
  const auto n = static_cast<std::size_t>(m);
  std::vector<std::vector<double>> a(n, std::vector<double>(n, 0.0));
  for (const auto& [idx, c] : rho.entries()) {
    double v = eval(c, x, params);
    a[static_cast<std::size_t>(idx[0])][static_cast<std::size_t>(idx[1])] = v;
    a[static_cast<std::size_t>(idx[1])][static_cast<std::size_t>(idx[0])] = -v;
  }
  return numeric_rank(a);
}

// ---------------------------------------------------------------------------
// Metrics

Metric make_metric(const ChartPtr& chart, const Matrix& g) {
  const int m = chart->dim();
  if (g.rows() != m || g.cols() != m) throw std::invalid_argument("metric must be m x m");
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      if (!normalizes_to_zero(g(i, j) - g(j, i))) throw std::invalid_argument("metric is not symmetric");
  return Metric{chart, g, inverse(g)};
}

Expr dual_pairing(const Metric& g, const Form& a, const Form& b) {
  if (a.grade() != 1 || b.grade() != 1) throw std::invalid_argument("dual pairing needs 1-forms");
  std::vector<Expr> terms;
  for (const auto& [i, ai] : a.entries())
    for (const auto& [j, bj] : b.entries()) {
      const Expr& e = g.eta(i[0], j[0]);
      if (!e.is_zero()) terms.push_back(e * ai * bj);
    }
  return make_add(std::move(terms));
}

MultiVector dual_sharp(const Metric& g, const Form& a) {
  if (a.grade() != 1) throw std::invalid_argument("dual sharp needs a 1-form");
  MultiVector out(g.chart, 1);
  for (int i = 0; i < g.chart->dim(); ++i)
    for (const auto& [j, aj] : a.entries()) {
      const Expr& e = g.eta(i, j[0]);
      if (!e.is_zero()) out.add({i}, e * aj);
    }
  return out;
}

Matrix lie_derivative(const MultiVector& x, const Metric& g) {
  const int m = g.chart->dim();
  auto xs = x.components();
  Matrix out(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      std::vector<Expr> terms{directional(x, g.g(i, j))};
      for (int k = 0; k < m; ++k) {
        terms.push_back(g.g(k, j) * diff(xs[static_cast<std::size_t>(k)], i));
        terms.push_back(g.g(i, k) * diff(xs[static_cast<std::size_t>(k)], j));
      }
      out(i, j) = make_add(std::move(terms));
    }
  return out;
}

}  // namespace hamil
