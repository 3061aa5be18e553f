#pragma once

#include <random>

#include "hamil/exterior.hpp"

namespace testing_support {

using namespace hamil;

// Random polynomial with small integer coefficients.
inline Expr random_poly(std::mt19937& rng, const Chart& chart, int degree, int terms = 4) {
  std::uniform_int_distribution<int> coef(-3, 3);
  std::uniform_int_distribution<int> var(0, chart.dim() - 1);
  std::uniform_int_distribution<int> deg(0, degree);
  std::vector<Expr> ts;
  for (int t = 0; t < terms; ++t) {
    int c = coef(rng);
    if (c == 0) continue;
    std::vector<Expr> fs{Expr(c)};
    int dd = deg(rng);
    for (int k = 0; k < dd; ++k) fs.push_back(chart.x(var(rng)));
    ts.push_back(make_mul(std::move(fs)));
  }
  return make_add(std::move(ts));
}

inline MultiVector random_vector_field(std::mt19937& rng, const ChartPtr& chart, int degree) {
  std::vector<Expr> cs;
  for (int i = 0; i < chart->dim(); ++i) cs.push_back(random_poly(rng, *chart, degree));
  return vector_field(chart, cs);
}

template <Variance V>
Graded<V> random_graded(std::mt19937& rng, const ChartPtr& chart, int grade, int degree) {
  Graded<V> t(chart, grade);
  const int m = chart->dim();
  // all increasing tuples
  std::vector<Index> tuples;
  Index cur;
  auto rec = [&](auto& self, int start) -> void {
    if (static_cast<int>(cur.size()) == grade) {
      tuples.push_back(cur);
      return;
    }
    for (int i = start; i < m; ++i) {
      cur.push_back(i);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  for (const auto& idx : tuples) t.add(idx, random_poly(rng, *chart, degree, 3));
  return t;
}

template <class T>
bool exactly_zero(const T& t) {
  return t.normalized().structurally_zero();
}

}  // namespace testing_support
