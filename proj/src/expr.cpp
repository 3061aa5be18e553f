#include "hamil/expr.hpp"

#include <algorithm>
#include <cmath>
#include <regex>
#include <set>
#include <sstream>

namespace hamil {

struct Expr::Node {
  Kind kind;
  Rational value;  // constant value or pow exponent
  int index = -1;
  std::string name;
  std::vector<Expr> ops;
  Kernel kernel = Kernel::exp;
};

const char* kernel_name(Kernel k) {
  switch (k) {
    case Kernel::exp: return "exp";
    case Kernel::log: return "log";
    case Kernel::sin: return "sin";
    case Kernel::cos: return "cos";
    case Kernel::abs: return "abs";
  }
  return "?";
}

namespace {

std::shared_ptr<const Expr::Node> zero_node() {
  static const auto z = [] {
    auto n = std::make_shared<Expr::Node>();
    n->kind = Expr::Kind::constant;
    n->value = 0;
    return std::shared_ptr<const Expr::Node>(n);
  }();
  return z;
}

}  // namespace

Expr raw_node(Expr::Kind kind, std::vector<Expr> ops, Rational value, Kernel k) {
  auto n = std::make_shared<Expr::Node>();
  n->kind = kind;
  n->ops = std::move(ops);
  n->value = std::move(value);
  n->kernel = k;
  return Expr(std::shared_ptr<const Expr::Node>(std::move(n)));
}

Expr::Expr() : node_(zero_node()) {}

Expr::Expr(long value) : Expr(Rational(value)) {}

Expr::Expr(const Rational& value) {
  if (value == 0) {
    node_ = zero_node();
    return;
  }
  auto n = std::make_shared<Node>();
  n->kind = Kind::constant;
  n->value = value;
  n->value.canonicalize();
  node_ = std::move(n);
}

Expr Expr::coord(int index, std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::coord;
  n->index = index;
  n->name = std::move(name);
  return Expr(std::shared_ptr<const Node>(std::move(n)));
}

Expr Expr::param(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::param;
  n->name = std::move(name);
  return Expr(std::shared_ptr<const Node>(std::move(n)));
}

Expr::Kind Expr::kind() const { return node_->kind; }
bool Expr::is_zero() const { return node_->kind == Kind::constant && node_->value == 0; }
bool Expr::is_one() const { return node_->kind == Kind::constant && node_->value == 1; }
const Rational& Expr::value() const { return node_->value; }
int Expr::coord_index() const { return node_->index; }
const std::string& Expr::name() const { return node_->name; }
std::span<const Expr> Expr::operands() const { return node_->ops; }
const Rational& Expr::exponent() const { return node_->value; }
Kernel Expr::kernel() const { return node_->kernel; }

// ---------------------------------------------------------------------------
// Smart constructors

Expr make_add(std::vector<Expr> terms) {
  std::vector<Expr> out;
  out.reserve(terms.size());
  Rational c = 0;
  auto push = [&](const Expr& t) {
    if (t.is_constant())
      c += t.value();
    else
      out.push_back(t);
  };
  for (const auto& t : terms) {
    if (t.kind() == Expr::Kind::add) {
      for (const auto& s : t.operands()) push(s);
    } else {
      push(t);
    }
  }
  if (c != 0) out.emplace_back(c);
  if (out.empty()) return Expr();
  if (out.size() == 1) return out.front();
  return raw_node(Expr::Kind::add, std::move(out), 0, Kernel::exp);
}

Expr make_mul(std::vector<Expr> factors) {
  std::vector<Expr> out;
  out.reserve(factors.size() + 1);
  Rational c = 1;
  auto push = [&](const Expr& f) {
    if (f.is_constant())
      c *= f.value();
    else
      out.push_back(f);
  };
  for (const auto& f : factors) {
    if (f.kind() == Expr::Kind::mul) {
      for (const auto& s : f.operands()) push(s);
    } else {
      push(f);
    }
  }
  if (c == 0) return Expr();
  if (out.empty()) return Expr(c);
  if (c != 1) out.insert(out.begin(), Expr(c));
  if (out.size() == 1) return out.front();
  return raw_node(Expr::Kind::mul, std::move(out), 0, Kernel::exp);
}

Expr make_div(Expr num, Expr den) {
  if (den.is_constant()) {
    if (den.value() == 0) throw std::domain_error("division by the constant zero");
    Rational inv = 1 / den.value();
    return make_mul({Expr(inv), std::move(num)});
  }
  if (num.is_zero()) return Expr();
  return raw_node(Expr::Kind::div, {std::move(num), std::move(den)}, 0, Kernel::exp);
}

namespace {

bool is_integer(const Rational& q) { return q.get_den() == 1; }

Rational rational_int_pow(const Rational& base, long n) {
  if (n < 0) {
    if (base == 0) throw std::domain_error("zero raised to a negative power");
    return rational_int_pow(1 / base, -n);
  }
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), static_cast<unsigned long>(n));
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), static_cast<unsigned long>(n));
  Rational r(num, den);
  r.canonicalize();
  return r;
}

}  // namespace

Expr make_pow(Expr base, Rational exponent) {
  exponent.canonicalize();
  if (exponent == 0) return Expr(1);
  if (exponent == 1) return base;
  if (base.is_constant()) {
    if (is_integer(exponent)) {
      if (!exponent.get_num().fits_slong_p()) throw std::domain_error("exponent too large");
      return Expr(rational_int_pow(base.value(), exponent.get_num().get_si()));
    }
    if (base.value() == 1) return Expr(1);
    if (base.value() == 0 && exponent > 0) return Expr();
  }
  if (base.kind() == Expr::Kind::pow && is_integer(exponent)) {
    Rational e = base.exponent() * exponent;
    return make_pow(base.operands()[0], e);
  }
  return raw_node(Expr::Kind::pow, {std::move(base)}, std::move(exponent), Kernel::exp);
}

Expr make_func(Kernel k, Expr arg) {
  if (arg.is_constant()) {
    const Rational& v = arg.value();
    switch (k) {
      case Kernel::exp: if (v == 0) return Expr(1); break;
      case Kernel::log: if (v == 1) return Expr(); break;
      case Kernel::sin: if (v == 0) return Expr(); break;
      case Kernel::cos: if (v == 0) return Expr(1); break;
      case Kernel::abs: return Expr(Rational(abs(v)));
    }
  }
  return raw_node(Expr::Kind::func, {std::move(arg)}, 0, k);
}

Expr operator+(const Expr& a, const Expr& b) { return make_add({a, b}); }
Expr operator-(const Expr& a, const Expr& b) { return make_add({a, -b}); }
Expr operator-(const Expr& a) { return make_mul({Expr(-1), a}); }
Expr operator*(const Expr& a, const Expr& b) { return make_mul({a, b}); }
Expr operator/(const Expr& a, const Expr& b) { return make_div(a, b); }
Expr& operator+=(Expr& a, const Expr& b) { return a = a + b; }
Expr& operator-=(Expr& a, const Expr& b) { return a = a - b; }
Expr& operator*=(Expr& a, const Expr& b) { return a = a * b; }

Expr pow(const Expr& base, const Rational& exponent) { return make_pow(base, exponent); }
Expr exp(const Expr& a) { return make_func(Kernel::exp, a); }
Expr log(const Expr& a) { return make_func(Kernel::log, a); }
Expr sin(const Expr& a) { return make_func(Kernel::sin, a); }
Expr cos(const Expr& a) { return make_func(Kernel::cos, a); }
Expr abs(const Expr& a) { return make_func(Kernel::abs, a); }
Expr sqrt(const Expr& a) { return make_pow(a, Rational(1, 2)); }

// ---------------------------------------------------------------------------

int compare(const Expr& a, const Expr& b) {
  if (a.id() == b.id()) return 0;
  if (a.kind() != b.kind()) return a.kind() < b.kind() ? -1 : 1;
  switch (a.kind()) {
    case Expr::Kind::constant:
      return cmp(a.value(), b.value()) < 0 ? -1 : (a.value() == b.value() ? 0 : 1);
    case Expr::Kind::coord:
      if (a.coord_index() != b.coord_index()) return a.coord_index() < b.coord_index() ? -1 : 1;
      return a.name().compare(b.name()) < 0 ? -1 : (a.name() == b.name() ? 0 : 1);
    case Expr::Kind::param: {
      int c = a.name().compare(b.name());
      return c < 0 ? -1 : (c > 0 ? 1 : 0);
    }
    case Expr::Kind::pow:
      if (a.exponent() != b.exponent()) return a.exponent() < b.exponent() ? -1 : 1;
      break;
    case Expr::Kind::func:
      if (a.kernel() != b.kernel()) return a.kernel() < b.kernel() ? -1 : 1;
      break;
    default:
      break;
  }
  auto ao = a.operands();
  auto bo = b.operands();
  if (ao.size() != bo.size()) return ao.size() < bo.size() ? -1 : 1;
  for (std::size_t i = 0; i < ao.size(); ++i) {
    int c = compare(ao[i], bo[i]);
    if (c != 0) return c;
  }
  return 0;
}

// ---------------------------------------------------------------------------
// Printing

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

namespace {

void print(std::ostream& os, const Expr& e);

bool negative_term(const Expr& t) {
  if (t.is_constant()) return t.value() < 0;
  if (t.kind() == Expr::Kind::mul) {
    const Expr& f0 = t.operands()[0];
    return f0.is_constant() && f0.value() < 0;
  }
  return false;
}

Expr negated(const Expr& t) {
  if (t.is_constant()) return Expr(Rational(-t.value()));
  std::vector<Expr> fs(t.operands().begin(), t.operands().end());
  fs[0] = Expr(Rational(-fs[0].value()));
  return make_mul(std::move(fs));
}

void print_paren(std::ostream& os, const Expr& e, bool paren) {
  if (paren) os << '(';
  print(os, e);
  if (paren) os << ')';
}

bool atomic(const Expr& e) {
  switch (e.kind()) {
    case Expr::Kind::coord:
    case Expr::Kind::param:
    case Expr::Kind::func:
      return true;
    case Expr::Kind::constant:
      return e.value() >= 0 && e.value().get_den() == 1;
    default:
      return false;
  }
}

void print_factor(std::ostream& os, const Expr& f) {
  bool paren = f.kind() == Expr::Kind::add || f.kind() == Expr::Kind::div ||
               (f.is_constant() && f.value() < 0);
  print_paren(os, f, paren);
}

void print(std::ostream& os, const Expr& e) {
  switch (e.kind()) {
    case Expr::Kind::constant:
      os << to_string(e.value());
      return;
    case Expr::Kind::coord:
    case Expr::Kind::param:
      os << e.name();
      return;
    case Expr::Kind::add: {
      bool first = true;
      for (const auto& t : e.operands()) {
        if (first) {
          print(os, t);
          first = false;
        } else if (negative_term(t)) {
          os << " - ";
          print(os, negated(t));
        } else {
          os << " + ";
          print(os, t);
        }
      }
      return;
    }
    case Expr::Kind::mul: {
      auto fs = e.operands();
      std::size_t start = 0;
      if (fs[0].is_constant()) {
        if (fs[0].value() == -1) {
          os << '-';
        } else {
          os << to_string(fs[0].value()) << '*';
        }
        start = 1;
      }
      for (std::size_t i = start; i < fs.size(); ++i) {
        if (i > start) os << '*';
        print_factor(os, fs[i]);
      }
      return;
    }
    case Expr::Kind::div: {
      const Expr& n = e.operands()[0];
      const Expr& d = e.operands()[1];
      print_paren(os, n, n.kind() == Expr::Kind::add);
      os << '/';
      bool paren = d.kind() == Expr::Kind::add || d.kind() == Expr::Kind::mul ||
                   d.kind() == Expr::Kind::div || d.is_constant();
      print_paren(os, d, paren);
      return;
    }
    case Expr::Kind::pow: {
      const Expr& b = e.operands()[0];
      print_paren(os, b, !atomic(b));
      const Rational& q = e.exponent();
      if (q.get_den() == 1 && q > 0)
        os << '^' << to_string(q);
      else
        os << "^(" << to_string(q) << ')';
      return;
    }
    case Expr::Kind::func:
      os << kernel_name(e.kernel()) << '(';
      print(os, e.operands()[0]);
      os << ')';
      return;
  }
}

}  // namespace

std::string to_string(const Expr& e) {
  std::ostringstream os;
  print(os, e);
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Expr& e) {
  print(os, e);
  return os;
}

// ---------------------------------------------------------------------------
// Differentiation

Expr diff(const Expr& e, int index) {
  switch (e.kind()) {
    case Expr::Kind::constant:
    case Expr::Kind::param:
      return Expr();
    case Expr::Kind::coord:
      return Expr(e.coord_index() == index ? 1 : 0);
    case Expr::Kind::add: {
      std::vector<Expr> ts;
      for (const auto& t : e.operands()) {
        Expr dt = diff(t, index);
        if (!dt.is_zero()) ts.push_back(std::move(dt));
      }
      return make_add(std::move(ts));
    }
    case Expr::Kind::mul: {
      auto fs = e.operands();
      std::vector<Expr> ts;
      for (std::size_t i = 0; i < fs.size(); ++i) {
        Expr di = diff(fs[i], index);
        if (di.is_zero()) continue;
        std::vector<Expr> prod(fs.begin(), fs.end());
        prod[i] = di;
        ts.push_back(make_mul(std::move(prod)));
      }
      return make_add(std::move(ts));
    }
    case Expr::Kind::div: {
      const Expr& n = e.operands()[0];
      const Expr& d = e.operands()[1];
      Expr dn = diff(n, index);
      Expr dd = diff(d, index);
      Expr r;
      if (!dn.is_zero()) r = make_div(dn, d);
      if (!dd.is_zero()) r = r - make_div(n * dd, make_pow(d, 2));
      return r;
    }
    case Expr::Kind::pow: {
      const Expr& b = e.operands()[0];
      Expr db = diff(b, index);
      if (db.is_zero()) return Expr();
      const Rational& q = e.exponent();
      return make_mul({Expr(q), make_pow(b, q - 1), db});
    }
    case Expr::Kind::func: {
      const Expr& a = e.operands()[0];
      Expr da = diff(a, index);
      if (da.is_zero()) return Expr();
      switch (e.kernel()) {
        case Kernel::exp: return e * da;
        case Kernel::log: return make_div(da, a);
        case Kernel::sin: return cos(a) * da;
        case Kernel::cos: return -(sin(a) * da);
        case Kernel::abs: return make_div(e, a) * da;
      }
    }
  }
  return Expr();
}

bool depends_on_coord(const Expr& e, int index) {
  if (e.kind() == Expr::Kind::coord) return e.coord_index() == index;
  for (const auto& o : e.operands())
    if (depends_on_coord(o, index)) return true;
  return false;
}

bool depends_on_any_coord(const Expr& e) {
  if (e.kind() == Expr::Kind::coord) return true;
  for (const auto& o : e.operands())
    if (depends_on_any_coord(o)) return true;
  return false;
}

bool contains_kernel(const Expr& e) {
  if (e.kind() == Expr::Kind::func) return true;
  if (e.kind() == Expr::Kind::pow && e.exponent().get_den() != 1) return true;
  for (const auto& o : e.operands())
    if (contains_kernel(o)) return true;
  return false;
}

void collect_params(const Expr& e, std::vector<std::string>& out) {
  if (e.kind() == Expr::Kind::param) {
    if (std::find(out.begin(), out.end(), e.name()) == out.end()) out.push_back(e.name());
    return;
  }
  for (const auto& o : e.operands()) collect_params(o, out);
}

Expr substitute(const Expr& e, int index, const Expr& value) {
  switch (e.kind()) {
    case Expr::Kind::constant:
    case Expr::Kind::param:
      return e;
    case Expr::Kind::coord:
      return e.coord_index() == index ? value : e;
    case Expr::Kind::add:
    case Expr::Kind::mul: {
      std::vector<Expr> ops;
      for (const auto& o : e.operands()) ops.push_back(substitute(o, index, value));
      return e.kind() == Expr::Kind::add ? make_add(std::move(ops)) : make_mul(std::move(ops));
    }
    case Expr::Kind::div:
      return make_div(substitute(e.operands()[0], index, value),
                      substitute(e.operands()[1], index, value));
    case Expr::Kind::pow:
      return make_pow(substitute(e.operands()[0], index, value), e.exponent());
    case Expr::Kind::func:
      return make_func(e.kernel(), substitute(e.operands()[0], index, value));
  }
  return e;
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

constexpr double kTinyDenominator = 1e-300;

double rational_power(double b, const Rational& q) {
  if (q.get_den() == 1) {
    long n = q.get_num().get_si();
    if (n < 0 && std::fabs(b) < kTinyDenominator) throw EvalError("pole in negative power");
    return std::pow(b, static_cast<double>(n));
  }
  double p = q.get_num().get_d();
  double r = q.get_den().get_d();
  if (b < 0) {
    if (q.get_den().get_ui() % 2 == 0) throw EvalError("even root of a negative value");
    double mag = std::pow(-b, p / r);
    bool odd_num = mpz_odd_p(q.get_num_mpz_t()) != 0;
    return odd_num ? -mag : mag;
  }
  if (q < 0 && b < kTinyDenominator) throw EvalError("pole in negative power");
  return std::pow(b, p / r);
}

double eval_rec(const Expr& e, std::span<const double> pt, const Bindings& params) {
  switch (e.kind()) {
    case Expr::Kind::constant:
      return e.value().get_d();
    case Expr::Kind::coord:
      return pt[static_cast<std::size_t>(e.coord_index())];
    case Expr::Kind::param: {
      auto it = params.find(e.name());
      if (it == params.end()) throw EvalError("unbound parameter '" + e.name() + "'");
      return it->second;
    }
    case Expr::Kind::add: {
      double s = 0;
      for (const auto& t : e.operands()) s += eval_rec(t, pt, params);
      return s;
    }
    case Expr::Kind::mul: {
      double p = 1;
      for (const auto& f : e.operands()) p *= eval_rec(f, pt, params);
      return p;
    }
    case Expr::Kind::div: {
      double n = eval_rec(e.operands()[0], pt, params);
      double d = eval_rec(e.operands()[1], pt, params);
      if (std::fabs(d) < kTinyDenominator) throw EvalError("division by zero");
      return n / d;
    }
    case Expr::Kind::pow:
      return rational_power(eval_rec(e.operands()[0], pt, params), e.exponent());
    case Expr::Kind::func: {
      double a = eval_rec(e.operands()[0], pt, params);
      switch (e.kernel()) {
        case Kernel::exp: return std::exp(a);
        case Kernel::log:
          if (a <= 0) throw EvalError("log of a non-positive value");
          return std::log(a);
        case Kernel::sin: return std::sin(a);
        case Kernel::cos: return std::cos(a);
        case Kernel::abs: return std::fabs(a);
      }
    }
  }
  return 0;
}

}  // namespace

double eval(const Expr& e, std::span<const double> point, const Bindings& params) {
  double v = eval_rec(e, point, params);
  if (!std::isfinite(v)) throw EvalError("non-finite value");
  return v;
}

// ---------------------------------------------------------------------------
// Chart

std::optional<int> Chart::coord_index(const std::string& name) const {
  for (std::size_t i = 0; i < coords.size(); ++i)
    if (coords[i] == name) return static_cast<int>(i);
  return std::nullopt;
}

bool Chart::has_param(const std::string& name) const {
  return std::find(params.begin(), params.end(), name) != params.end();
}

Expr Chart::x(const std::string& name) const {
  auto i = coord_index(name);
  if (!i) throw std::invalid_argument("unknown coordinate '" + name + "'");
  return x(*i);
}

void Chart::validate() const {
  static const std::regex ident("[A-Za-z_][A-Za-z0-9_]*");
  static const std::set<std::string> reserved{"exp", "log", "sin", "cos", "sqrt", "abs"};
  if (coords.empty()) throw std::invalid_argument("chart dimension must be at least 1");
  std::set<std::string> seen;
  auto check = [&](const std::string& n) {
    if (!std::regex_match(n, ident)) throw std::invalid_argument("invalid identifier '" + n + "'");
    if (reserved.count(n)) throw std::invalid_argument("reserved identifier '" + n + "'");
    if (!seen.insert(n).second) throw std::invalid_argument("duplicate name '" + n + "'");
  };
  for (const auto& c : coords) check(c);
  for (const auto& p : params) check(p);
  for (const auto& [k, v] : bindings)
    if (!has_param(k)) throw std::invalid_argument("binding for unknown parameter '" + k + "'");
}

ChartPtr make_chart(std::vector<std::string> coords, std::vector<std::string> params,
                    std::vector<Expr> excluded, Bindings bindings) {
  auto c = std::make_shared<Chart>();
  c->coords = std::move(coords);
  c->params = std::move(params);
  c->excluded = std::move(excluded);
  c->bindings = std::move(bindings);
  c->validate();
  return c;
}

ChartPtr with_excluded(const ChartPtr& chart, const Expr& locus) {
  auto c = std::make_shared<Chart>(*chart);
  c->excluded.push_back(locus);
  return c;
}

}  // namespace hamil
