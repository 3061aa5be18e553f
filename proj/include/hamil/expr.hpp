#pragma once

// Immutable symbolic scalar expressions over a single coordinate chart.
//
// An Expr is a cheap handle to a shared, immutable node.  The arithmetic
// operators and the free construction functions apply only light, local
// simplifications (constant folding, flattening of nested sums/products,
// identity elements).  Canonical forms are produced by normalize() in
// polynomial.hpp.

#include <gmpxx.h>

#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace hamil {

using Rational = mpq_class;

enum class Kernel { exp, log, sin, cos, abs };

const char* kernel_name(Kernel k);

class Expr {
 public:
  enum class Kind { constant, coord, param, add, mul, div, pow, func };

  Expr();  // the constant 0
  Expr(long value);  // NOLINT(google-explicit-constructor)
  Expr(int value) : Expr(static_cast<long>(value)) {}  // NOLINT
  Expr(const Rational& value);  // NOLINT

  static Expr coord(int index, std::string name);
  static Expr param(std::string name);

  Kind kind() const;
  bool is_constant() const { return kind() == Kind::constant; }
  bool is_zero() const;  // literally the constant 0
  bool is_one() const;

  const Rational& value() const;          // constant
  int coord_index() const;                // coord
  const std::string& name() const;        // coord, param
  std::span<const Expr> operands() const; // add, mul, div {num, den}, pow {base}, func {arg}
  const Rational& exponent() const;       // pow
  Kernel kernel() const;                  // func

  // Identity of the underlying node; equal pointers imply structural equality.
  const void* id() const { return node_.get(); }

  struct Node;

 private:
  explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;

  friend Expr make_add(std::vector<Expr>);
  friend Expr make_mul(std::vector<Expr>);
  friend Expr make_div(Expr, Expr);
  friend Expr make_pow(Expr, Rational);
  friend Expr make_func(Kernel, Expr);
  friend Expr raw_node(Kind, std::vector<Expr>, Rational, Kernel);
};

// Smart constructors.
Expr make_add(std::vector<Expr> terms);
Expr make_mul(std::vector<Expr> factors);
Expr make_div(Expr num, Expr den);
Expr make_pow(Expr base, Rational exponent);
Expr make_func(Kernel k, Expr arg);

Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr& operator+=(Expr& a, const Expr& b);
Expr& operator-=(Expr& a, const Expr& b);
Expr& operator*=(Expr& a, const Expr& b);

Expr pow(const Expr& base, const Rational& exponent);
Expr exp(const Expr& a);
Expr log(const Expr& a);
Expr sin(const Expr& a);
Expr cos(const Expr& a);
Expr abs(const Expr& a);
Expr sqrt(const Expr& a);

// Total structural order; 0 iff structurally equal.
int compare(const Expr& a, const Expr& b);
inline bool operator==(const Expr& a, const Expr& b) { return compare(a, b) == 0; }
inline bool operator!=(const Expr& a, const Expr& b) { return compare(a, b) != 0; }
struct ExprLess {
  bool operator()(const Expr& a, const Expr& b) const { return compare(a, b) < 0; }
};

// Printing in the input grammar; parse(to_string(e)) reproduces e.
std::string to_string(const Expr& e);
std::ostream& operator<<(std::ostream& os, const Expr& e);
std::string to_string(const Rational& q);

// Partial derivative with respect to chart coordinate `index`; parameters are constants.
// abs'(u) is taken as abs(u)/u, the sign function away from u = 0.
Expr diff(const Expr& e, int index);

bool depends_on_coord(const Expr& e, int index);
bool depends_on_any_coord(const Expr& e);
bool contains_kernel(const Expr& e);  // opaque kernels or non-integer powers
void collect_params(const Expr& e, std::vector<std::string>& out);

// Substitute coordinate `index` by `value` everywhere.
Expr substitute(const Expr& e, int index, const Expr& value);

// ---------------------------------------------------------------------------

class EvalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Bindings = std::map<std::string, double>;

// IEEE double evaluation.  Throws EvalError on a division by a value with
// magnitude below 1e-300, on an unbound parameter, or on a non-finite result.
double eval(const Expr& e, std::span<const double> point, const Bindings& params);

// ---------------------------------------------------------------------------

// A single coordinate chart: coordinate names, excluded loci (zero sets
// removed from the domain), and named parameters with optional bindings.
struct Chart {
  std::vector<std::string> coords;
  std::vector<Expr> excluded;
  std::vector<std::string> params;
  Bindings bindings;

  int dim() const { return static_cast<int>(coords.size()); }
  std::optional<int> coord_index(const std::string& name) const;
  bool has_param(const std::string& name) const;
  Expr x(int index) const { return Expr::coord(index, coords.at(static_cast<std::size_t>(index))); }
  Expr x(const std::string& name) const;

  // Throws std::invalid_argument on empty / duplicate / clashing names.
  void validate() const;
  bool same_coordinates(const Chart& other) const { return coords == other.coords; }
};

using ChartPtr = std::shared_ptr<const Chart>;

ChartPtr make_chart(std::vector<std::string> coords, std::vector<std::string> params = {},
                    std::vector<Expr> excluded = {}, Bindings bindings = {});

// Same chart with an extra excluded locus.
ChartPtr with_excluded(const ChartPtr& chart, const Expr& locus);

}  // namespace hamil
