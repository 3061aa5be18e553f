#pragma once

// Coordinate exterior algebra on a single chart.  Multivector fields and
// differential forms are sparse maps from strictly increasing index tuples
// (0-based) to coefficients; an absent key is a zero coefficient.
// Coefficients are not normalized until asked (normalized()) or compared.
//
// Sign conventions are listed in hamil/conventions.hpp.

#include <map>
#include <stdexcept>
#include <vector>

#include "hamil/expr.hpp"
#include "hamil/linalg.hpp"

namespace hamil {

enum class Variance { contravariant, covariant };

using Index = std::vector<int>;

class ChartMismatch : public std::invalid_argument {
 public:
  ChartMismatch() : std::invalid_argument("tensors live on different charts") {}
};

template <Variance V>
class Graded {
 public:
  using Entries = std::map<Index, Expr>;

  Graded() = default;
  Graded(ChartPtr chart, int grade);
  static Graded scalar(ChartPtr chart, const Expr& f);

  const ChartPtr& chart() const { return chart_; }
  int dim() const { return chart_->dim(); }
  int grade() const { return grade_; }
  static constexpr Variance variance() { return V; }
  const Entries& entries() const { return entries_; }

  Expr get(const Index& idx) const;  // any order; sign of the sorting permutation applied
  // Adds c to the coefficient of the (possibly unsorted) index.  Repeated
  // indices give zero.
  void add(Index idx, const Expr& c);
  void set(const Index& sorted, const Expr& c);

  // Component list for grade 1, coefficient for grade 0.
  std::vector<Expr> components() const;
  Expr scalar_value() const;

  bool structurally_zero() const { return entries_.empty(); }
  Graded normalized() const;
  Graded scaled(const Expr& f) const;

  Graded& operator+=(const Graded& o);
  Graded& operator-=(const Graded& o);
  friend Graded operator+(Graded a, const Graded& b) { return a += b; }
  friend Graded operator-(Graded a, const Graded& b) { return a -= b; }
  friend Graded operator-(const Graded& a) { return a.scaled(-1); }
  friend Graded operator*(const Expr& f, const Graded& a) { return a.scaled(f); }

 private:
  ChartPtr chart_;
  int grade_ = 0;
  Entries entries_;
};

using MultiVector = Graded<Variance::contravariant>;
using Form = Graded<Variance::covariant>;

extern template class Graded<Variance::contravariant>;
extern template class Graded<Variance::covariant>;

// Construction helpers.
MultiVector vector_field(const ChartPtr& chart, const std::vector<Expr>& components);
Form one_form(const ChartPtr& chart, const std::vector<Expr>& components);
MultiVector coordinate_vector(const ChartPtr& chart, int i);  // d/dx^i
Form coordinate_form(const ChartPtr& chart, int i);           // dx^i
Form differential(const ChartPtr& chart, const Expr& f);      // df

// Sign of the permutation sorting `idx`; 0 on repeated entries.
int permutation_sign(const Index& idx);

template <Variance V>
Graded<V> wedge(const Graded<V>& a, const Graded<V>& b);
template <Variance V>
Graded<V> wedge_all(const ChartPtr& chart, const std::vector<Graded<V>>& factors);  // empty: scalar 1

Form d(const Form& w);

// Interior product of a multivector into a form.  For a vector,
// i_v(dx^{j1}^...^dx^{jk}) = sum_s (-1)^(s-1) v^{js} dx^{j1}^..(js omitted)..^dx^{jk};
// for multivectors i_{A^B} = i_A o i_B.
Form interior(const MultiVector& a, const Form& w);
// Interior product of a form into a multivector, same rules with roles swapped.
// sharp(pi, alpha) = interior(alpha, pi).
MultiVector interior(const Form& a, const MultiVector& t);
MultiVector sharp(const MultiVector& pi, const Form& alpha);
// alpha(X) for a 1-form and a vector field.
Expr pairing(const Form& alpha, const MultiVector& x);
// X(f).
Expr directional(const MultiVector& x, const Expr& f);

MultiVector lie_bracket(const MultiVector& x, const MultiVector& y);
// Schouten-Nijenhuis bracket for grades >= 1, extended from the Lie bracket
// by [X1^..^Xa, Y1^..^Yb] = sum (-1)^(i+j) [Xi,Yj]^X1..^Xi..^Xa^Y1..^Yj..^Yb.
MultiVector schouten(const MultiVector& a, const MultiVector& b);

Expr lie_derivative(const MultiVector& x, const Expr& f);
Form lie_derivative(const MultiVector& x, const Form& w);
MultiVector lie_derivative(const MultiVector& x, const MultiVector& t);

struct VolumeForm {
  ChartPtr chart;
  Expr density;  // Omega = density dx^1^...^dx^m

  Form form() const;
};

VolumeForm euclidean_volume(const ChartPtr& chart);

// div with L_X Omega = div * Omega.
Expr divergence(const MultiVector& x, const VolumeForm& omega);

// i_pi Omega for a bivector, and its inverse for an (m-2)-form.
Form bivector_to_form(const VolumeForm& omega, const MultiVector& pi);
MultiVector form_to_bivector(const VolumeForm& omega, const Form& rho);

// Antisymmetric coefficient matrix [pi^{ij}] at a point.
std::vector<std::vector<double>> bivector_matrix(const MultiVector& pi, std::span<const double> x,
                                                 const Bindings& params);
// Numeric rank: singular values above 1e-9 times the largest.
int numeric_rank(const std::vector<std::vector<double>>& m);
int rank_at(const MultiVector& pi, std::span<const double> x, const Bindings& params);
// (m-2)-forms through the correspondence with the unit volume form; 2-forms directly.
int rank_at(const Form& rho, std::span<const double> x, const Bindings& params);

struct Metric {
  ChartPtr chart;
  Matrix g;
  Matrix eta;  // exact inverse
};

// Throws std::invalid_argument when g is not symmetric, SingularMatrix when
// not invertible.
Metric make_metric(const ChartPtr& chart, const Matrix& g);
// eta(alpha, beta) and eta-sharp.
Expr dual_pairing(const Metric& g, const Form& a, const Form& b);
MultiVector dual_sharp(const Metric& g, const Form& a);
// (L_X g)_{ij}.
Matrix lie_derivative(const MultiVector& x, const Metric& g);

}  // namespace hamil
