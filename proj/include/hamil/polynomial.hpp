#pragma once

// Exact rational normal form.
//
// An expression is mapped to a quotient of polynomials over Q whose
// indeterminates ("atoms") are chart coordinates, parameters, opaque kernel
// applications such as sin(x + y) (with a normalized argument), and roots
// b^(1/r) of normalized bases.  The numerator is fully expanded with
// collected terms; the denominator is kept as a product of canonical factors
// (primitive integer polynomials with positive leading coefficient, plus
// single-atom factors).  No multivariate gcd is computed: a denominator
// factor is cancelled only when it divides the numerator exactly, and every
// such cancellation is recorded as a nonvanishing assumption.

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hamil/expr.hpp"

namespace hamil {

class Poly;

struct Atom {
  enum class Kind { coord, param, kernel, root };
  Kind kind;
  int index = -1;        // coordinate index
  std::string key;       // coordinate/parameter name, or printed kernel/root expression
  Expr expr;             // the expression this atom stands for
  Expr base;             // root atoms: the normalized base
  int degree = 1;        // root atoms: r in b^(1/r)
  std::shared_ptr<const Poly> base_poly;  // root atoms with a polynomial base
};

// Atoms are interned; equal atoms share one address.
const Atom* intern_atom(Atom atom);
int compare_atoms(const Atom* a, const Atom* b);

using Monomial = std::vector<std::pair<const Atom*, int>>;  // sorted by atom, exponents > 0

int compare_monomials(const Monomial& a, const Monomial& b);  // lex, first atom most significant
struct MonomialGreater {
  bool operator()(const Monomial& a, const Monomial& b) const { return compare_monomials(a, b) > 0; }
};
Monomial monomial_mul(const Monomial& a, const Monomial& b);
int total_degree(const Monomial& m);

// Sparse polynomial over Q.  Terms are ordered with the lex-leading term first.
class Poly {
 public:
  using Terms = std::map<Monomial, Rational, MonomialGreater>;

  Poly() = default;
  explicit Poly(const Rational& c);
  static Poly atom(const Atom* a, int exponent = 1);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_value() const;  // 0 when not constant
  const Monomial& leading_monomial() const { return terms_.begin()->first; }
  const Rational& leading_coeff() const { return terms_.begin()->second; }

  void add_term(const Monomial& m, const Rational& c);
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly operator-() const;
  Poly scaled(const Rational& c) const;
  Poly times_monomial(const Monomial& m, const Rational& c) const;
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly pow(unsigned n) const;

  // Quotient when `d` divides this polynomial exactly.
  std::optional<Poly> exact_divide(const Poly& d) const;

  // Monomial gcd of all terms.
  Monomial monomial_content() const;

  std::vector<const Atom*> atoms() const;
  Expr to_expr() const;

  friend int compare(const Poly& a, const Poly& b);
  friend bool operator==(const Poly& a, const Poly& b) { return compare(a, b) == 0; }

 private:
  Terms terms_;
};

// Quotient num / prod(factor^mult).
class RatFunc {
 public:
  using Factor = std::pair<Poly, int>;

  RatFunc() = default;
  explicit RatFunc(Poly num) : num_(std::move(num)) {}
  RatFunc(Poly num, std::vector<Factor> den);

  const Poly& num() const { return num_; }
  const std::vector<Factor>& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.empty(); }
  // True when every atom is a coordinate or parameter.
  bool is_rational() const;
  bool depends_on_coords() const;
  bool denominator_depends_on_coords() const;
  std::optional<Rational> constant() const;

  RatFunc operator+(const RatFunc& o) const;
  RatFunc operator-(const RatFunc& o) const;
  RatFunc operator-() const;
  RatFunc operator*(const RatFunc& o) const;
  RatFunc operator/(const RatFunc& o) const { return *this * o.inverse(); }
  RatFunc inverse() const;  // throws std::domain_error when zero
  RatFunc pow(long n) const;

  // Cancel denominator factors dividing the numerator; cancelled factors are
  // appended to `assumptions` (as expressions) when provided.
  void cancel(std::vector<Expr>* assumptions = nullptr);

  Poly expanded_denominator() const;
  Expr to_expr() const;

  friend bool operator==(const RatFunc& a, const RatFunc& b);

 private:
  Poly num_;
  std::vector<Factor> den_;  // sorted by compare(Poly), canonical factors
};

struct NormalForm {
  RatFunc rf;
  Expr expr;
  std::vector<Expr> assumptions;  // nonvanishing factors cancelled while normalizing
};

RatFunc to_ratfunc(const Expr& e, std::vector<Expr>* assumptions = nullptr);
NormalForm normal_form(const Expr& e);
Expr normalize(const Expr& e);
// Exact decision on the cross-multiplied numerator.
bool normalizes_to_zero(const Expr& e);

// Adds the items of `extra` to `into`, skipping structural duplicates.
void merge_assumptions(std::vector<Expr>& into, const std::vector<Expr>& extra);

}  // namespace hamil
