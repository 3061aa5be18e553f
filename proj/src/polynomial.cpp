#include "hamil/polynomial.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <tuple>

namespace hamil {

// ---------------------------------------------------------------------------
// Atoms

namespace {

using AtomKey = std::tuple<int, int, int, std::string>;

struct AtomRegistry {
  std::mutex mu;
  std::map<AtomKey, std::unique_ptr<Atom>> atoms;
};

AtomRegistry& registry() {
  static AtomRegistry r;
  return r;
}

}  // namespace

const Atom* intern_atom(Atom atom) {
  AtomKey key{static_cast<int>(atom.kind), atom.index, atom.degree, atom.key};
  auto& reg = registry();
  std::lock_guard<std::mutex> lock(reg.mu);
  auto it = reg.atoms.find(key);
  if (it != reg.atoms.end()) return it->second.get();
  auto ptr = std::make_unique<Atom>(std::move(atom));
  const Atom* raw = ptr.get();
  reg.atoms.emplace(std::move(key), std::move(ptr));
  return raw;
}

int compare_atoms(const Atom* a, const Atom* b) {
  if (a == b) return 0;
  if (a->kind != b->kind) return a->kind < b->kind ? -1 : 1;
  if (a->index != b->index) return a->index < b->index ? -1 : 1;
  if (a->degree != b->degree) return a->degree < b->degree ? -1 : 1;
  int c = a->key.compare(b->key);
  return c < 0 ? -1 : (c > 0 ? 1 : 0);
}

int compare_monomials(const Monomial& a, const Monomial& b) {
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() && j < b.size()) {
    int c = compare_atoms(a[i].first, b[j].first);
    if (c < 0) return 1;
    if (c > 0) return -1;
    if (a[i].second != b[j].second) return a[i].second > b[j].second ? 1 : -1;
    ++i;
    ++j;
  }
  if (i < a.size()) return 1;
  if (j < b.size()) return -1;
  return 0;
}

Monomial monomial_mul(const Monomial& a, const Monomial& b) {
  Monomial out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && compare_atoms(a[i].first, b[j].first) < 0)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || compare_atoms(a[i].first, b[j].first) > 0) {
      out.push_back(b[j++]);
    } else {
      out.emplace_back(a[i].first, a[i].second + b[j].second);
      ++i;
      ++j;
    }
  }
  return out;
}

int total_degree(const Monomial& m) {
  int d = 0;
  for (const auto& [a, e] : m) d += e;
  return d;
}

namespace {

bool monomial_divides(const Monomial& d, const Monomial& m) {
  std::size_t j = 0;
  for (const auto& [a, e] : d) {
    while (j < m.size() && compare_atoms(m[j].first, a) < 0) ++j;
    if (j == m.size() || m[j].first != a || m[j].second < e) return false;
  }
  return true;
}

Monomial monomial_div(const Monomial& m, const Monomial& d) {
  Monomial out;
  std::size_t j = 0;
  for (const auto& [a, e] : m) {
    int sub = 0;
    if (j < d.size() && d[j].first == a) sub = d[j++].second;
    if (e - sub > 0) out.emplace_back(a, e - sub);
  }
  return out;
}

Expr atom_power_expr(const Atom* a, int e) {
  if (a->kind == Atom::Kind::root) return make_pow(a->base, Rational(e, a->degree));
  return make_pow(a->expr, e);
}

}  // namespace

// ---------------------------------------------------------------------------
// Poly

Poly::Poly(const Rational& c) {
  if (c != 0) terms_.emplace(Monomial{}, c);
}

Poly Poly::atom(const Atom* a, int exponent) {
  Poly p;
  p.terms_.emplace(Monomial{{a, exponent}}, Rational(1));
  return p;
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

Rational Poly::constant_value() const {
  if (terms_.size() == 1 && terms_.begin()->first.empty()) return terms_.begin()->second;
  return 0;
}

void Poly::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Poly& Poly::operator+=(const Poly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Poly Poly::operator-() const { return scaled(-1); }

Poly Poly::scaled(const Rational& c) const {
  Poly out;
  if (c == 0) return out;
  for (const auto& [m, v] : terms_) out.terms_.emplace_hint(out.terms_.end(), m, v * c);
  return out;
}

Poly Poly::times_monomial(const Monomial& mono, const Rational& c) const {
  Poly out;
  if (c == 0) return out;
  for (const auto& [m, v] : terms_) out.terms_.emplace_hint(out.terms_.end(), monomial_mul(m, mono), v * c);
  return out;
}

Poly operator*(const Poly& a, const Poly& b) {
  Poly out;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) out.add_term(monomial_mul(ma, mb), ca * cb);
  return out;
}

Poly Poly::pow(unsigned n) const {
  Poly result(1);
  Poly base = *this;
  while (n > 0) {
    if (n & 1u) result = result * base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return result;
}

std::optional<Poly> Poly::exact_divide(const Poly& d) const {
  if (d.is_zero()) throw std::domain_error("polynomial division by zero");
  Poly r = *this;
  Poly q;
  const Monomial& md = d.leading_monomial();
  const Rational& cd = d.leading_coeff();
  while (!r.is_zero()) {
    const Monomial& mr = r.leading_monomial();
    if (!monomial_divides(md, mr)) return std::nullopt;
    Monomial m = monomial_div(mr, md);
    Rational c = r.leading_coeff() / cd;
    q.add_term(m, c);
    r -= d.times_monomial(m, c);
  }
  return q;
}

Monomial Poly::monomial_content() const {
  if (terms_.empty()) return {};
  Monomial g = terms_.begin()->first;
  for (const auto& [m, c] : terms_) {
    Monomial next;
    std::size_t j = 0;
    for (const auto& [a, e] : g) {
      while (j < m.size() && compare_atoms(m[j].first, a) < 0) ++j;
      if (j < m.size() && m[j].first == a) next.emplace_back(a, std::min(e, m[j].second));
    }
    g = std::move(next);
    if (g.empty()) break;
  }
  return g;
}

std::vector<const Atom*> Poly::atoms() const {
  std::vector<const Atom*> out;
  for (const auto& [m, c] : terms_)
    for (const auto& [a, e] : m)
      if (std::find(out.begin(), out.end(), a) == out.end()) out.push_back(a);
  return out;
}

Expr Poly::to_expr() const {
  std::vector<std::pair<const Monomial*, const Rational*>> ordered;
  for (const auto& [m, c] : terms_) ordered.emplace_back(&m, &c);
  std::stable_sort(ordered.begin(), ordered.end(), [](const auto& x, const auto& y) {
    return total_degree(*x.first) > total_degree(*y.first);
  });
  std::vector<Expr> ts;
  for (const auto& [m, c] : ordered) {
    std::vector<Expr> fs{Expr(*c)};
    for (const auto& [a, e] : *m) fs.push_back(atom_power_expr(a, e));
    ts.push_back(make_mul(std::move(fs)));
  }
  return make_add(std::move(ts));
}

int compare(const Poly& a, const Poly& b) {
  auto ia = a.terms_.begin();
  auto ib = b.terms_.begin();
  for (; ia != a.terms_.end() && ib != b.terms_.end(); ++ia, ++ib) {
    int c = compare_monomials(ia->first, ib->first);
    if (c != 0) return c;
    if (ia->second != ib->second) return ia->second < ib->second ? -1 : 1;
  }
  if (ia != a.terms_.end()) return 1;
  if (ib != b.terms_.end()) return -1;
  return 0;
}

// ---------------------------------------------------------------------------
// Canonical factors

namespace {

struct Factored {
  Rational scalar;
  std::vector<RatFunc::Factor> factors;
};

void sort_factors(std::vector<RatFunc::Factor>& fs) {
  std::sort(fs.begin(), fs.end(), [](const auto& a, const auto& b) { return compare(a.first, b.first) < 0; });
  std::vector<RatFunc::Factor> merged;
  for (auto& f : fs) {
    if (!merged.empty() && merged.back().first == f.first)
      merged.back().second += f.second;
    else
      merged.push_back(std::move(f));
  }
  merged.erase(std::remove_if(merged.begin(), merged.end(), [](const auto& f) { return f.second == 0; }),
               merged.end());
  fs = std::move(merged);
}

// p = scalar * prod(factors); factors are single atoms or primitive integer
// polynomials with positive leading coefficient and trivial monomial content.
Factored factor_out(const Poly& p) {
  Factored out;
  Monomial mc = p.monomial_content();
  Poly rest;
  for (const auto& [m, c] : p.terms()) rest.add_term(monomial_div(m, mc), c);
  for (const auto& [a, e] : mc) out.factors.emplace_back(Poly::atom(a), e);

  mpz_class lcm_den = 1;
  mpz_class gcd_num = 0;
  for (const auto& [m, c] : rest.terms()) {
    mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), c.get_den_mpz_t());
    mpz_gcd(gcd_num.get_mpz_t(), gcd_num.get_mpz_t(), c.get_num_mpz_t());
  }
  Rational scale(lcm_den, gcd_num);
  scale.canonicalize();
  if (rest.leading_coeff() < 0) scale = -scale;
  Poly prim = rest.scaled(scale);
  out.scalar = 1 / scale;
  if (!prim.is_constant()) out.factors.emplace_back(std::move(prim), 1);
  return out;
}

std::vector<RatFunc::Factor> factor_lcm(const std::vector<RatFunc::Factor>& a,
                                        const std::vector<RatFunc::Factor>& b) {
  std::vector<RatFunc::Factor> out;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() || j < b.size()) {
    int c = i == a.size() ? 1 : j == b.size() ? -1 : compare(a[i].first, b[j].first);
    if (c < 0) {
      out.push_back(a[i++]);
    } else if (c > 0) {
      out.push_back(b[j++]);
    } else {
      out.emplace_back(a[i].first, std::max(a[i].second, b[j].second));
      ++i;
      ++j;
    }
  }
  return out;
}

// prod over L of f^(mult_L - mult_A)
Poly cofactor(const std::vector<RatFunc::Factor>& lcm, const std::vector<RatFunc::Factor>& a) {
  Poly out(1);
  std::size_t j = 0;
  for (const auto& [f, k] : lcm) {
    int have = 0;
    if (j < a.size() && a[j].first == f) have = a[j++].second;
    if (k > have) out = out * f.pow(static_cast<unsigned>(k - have));
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// RatFunc

RatFunc::RatFunc(Poly num, std::vector<Factor> den) : num_(std::move(num)), den_(std::move(den)) {
  sort_factors(den_);
  if (num_.is_zero()) den_.clear();
}

bool RatFunc::is_rational() const {
  auto ok = [](const Poly& p) {
    for (const Atom* a : p.atoms())
      if (a->kind == Atom::Kind::kernel || a->kind == Atom::Kind::root) return false;
    return true;
  };
  if (!ok(num_)) return false;
  for (const auto& [f, k] : den_)
    if (!ok(f)) return false;
  return true;
}

namespace {
bool has_coord_atom(const Poly& p) {
  for (const Atom* a : p.atoms()) {
    if (a->kind == Atom::Kind::coord) return true;
    if ((a->kind == Atom::Kind::kernel || a->kind == Atom::Kind::root) && depends_on_any_coord(a->expr))
      return true;
  }
  return false;
}
}  // namespace

bool RatFunc::depends_on_coords() const {
  if (has_coord_atom(num_)) return true;
  return denominator_depends_on_coords();
}

bool RatFunc::denominator_depends_on_coords() const {
  for (const auto& [f, k] : den_)
    if (has_coord_atom(f)) return true;
  return false;
}

std::optional<Rational> RatFunc::constant() const {
  if (den_.empty() && num_.is_constant()) return num_.constant_value();
  return std::nullopt;
}

RatFunc RatFunc::operator+(const RatFunc& o) const {
  if (is_zero()) return o;
  if (o.is_zero()) return *this;
  if (den_.size() == o.den_.size() &&
      std::equal(den_.begin(), den_.end(), o.den_.begin(),
                 [](const Factor& a, const Factor& b) { return a.second == b.second && a.first == b.first; })) {
    return RatFunc(num_ + o.num_, den_);
  }
  auto l = factor_lcm(den_, o.den_);
  Poly n = num_ * cofactor(l, den_) + o.num_ * cofactor(l, o.den_);
  return RatFunc(std::move(n), std::move(l));
}

RatFunc RatFunc::operator-() const {
  RatFunc r = *this;
  r.num_ = -r.num_;
  return r;
}

RatFunc RatFunc::operator-(const RatFunc& o) const { return *this + (-o); }

RatFunc RatFunc::operator*(const RatFunc& o) const {
  if (is_zero() || o.is_zero()) return RatFunc();
  std::vector<Factor> fs = den_;
  fs.insert(fs.end(), o.den_.begin(), o.den_.end());
  return RatFunc(num_ * o.num_, std::move(fs));
}

RatFunc RatFunc::inverse() const {
  if (is_zero()) throw std::domain_error("division by an expression that normalizes to zero");
  Factored f = factor_out(num_);
  Poly n = expanded_denominator().scaled(1 / f.scalar);
  return RatFunc(std::move(n), std::move(f.factors));
}

RatFunc RatFunc::pow(long n) const {
  if (n < 0) return inverse().pow(-n);
  if (n == 0) return RatFunc(Poly(1));
  std::vector<Factor> fs = den_;
  for (auto& [f, k] : fs) k *= static_cast<int>(n);
  return RatFunc(num_.pow(static_cast<unsigned>(n)), std::move(fs));
}

void RatFunc::cancel(std::vector<Expr>* assumptions) {
  if (num_.is_zero()) {
    den_.clear();
    return;
  }
  for (auto& [f, k] : den_) {
    while (k > 0) {
      auto q = num_.exact_divide(f);
      if (!q) break;
      num_ = std::move(*q);
      --k;
      if (assumptions) merge_assumptions(*assumptions, {f.to_expr()});
    }
  }
  den_.erase(std::remove_if(den_.begin(), den_.end(), [](const Factor& f) { return f.second == 0; }), den_.end());
}

Poly RatFunc::expanded_denominator() const {
  Poly d(1);
  for (const auto& [f, k] : den_) d = d * f.pow(static_cast<unsigned>(k));
  return d;
}

Expr RatFunc::to_expr() const {
  Expr n = num_.to_expr();
  if (den_.empty()) return n;
  std::vector<Expr> fs;
  for (const auto& [f, k] : den_) fs.push_back(make_pow(f.to_expr(), k));
  return make_div(n, make_mul(std::move(fs)));
}

bool operator==(const RatFunc& a, const RatFunc& b) {
  if (!(a.num_ == b.num_) || a.den_.size() != b.den_.size()) return false;
  for (std::size_t i = 0; i < a.den_.size(); ++i)
    if (a.den_[i].second != b.den_[i].second || !(a.den_[i].first == b.den_[i].first)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Expr -> RatFunc

namespace {

RatFunc convert(const Expr& e, std::vector<Expr>* as);

RatFunc atom_rf(const Atom* a, long exponent) {
  if (exponent >= 0) return RatFunc(Poly::atom(a, static_cast<int>(exponent)));
  return RatFunc(Poly(1), {{Poly::atom(a), static_cast<int>(-exponent)}});
}

// Rewrites root(b, r)^e with e >= r as b^(e div r) * root(b, r)^(e mod r)
// when b is a polynomial, and root(b, r)^e with gcd(e, r) = g > 1 as
// root(b, r/g)^(e/g).
const Atom* root_atom(const Expr& base, int degree, std::shared_ptr<const Poly> base_poly);

Poly reduce_roots(const Poly& p) {
  Poly out;
  bool changed = false;
  for (const auto& [m, c] : p.terms()) {
    Poly term(c);
    Monomial keep;
    for (const auto& [a, e] : m) {
      if (a->kind != Atom::Kind::root) {
        keep.emplace_back(a, e);
        continue;
      }
      int ex = e;
      const Atom* at = a;
      if (at->base_poly && ex >= at->degree) {
        term = term * at->base_poly->pow(static_cast<unsigned>(ex / at->degree));
        ex %= at->degree;
        changed = true;
      }
      if (ex == 0) continue;
      int g = std::gcd(ex, at->degree);
      if (g > 1) {
        at = root_atom(at->base, at->degree / g, at->base_poly);
        ex /= g;
        changed = true;
      }
      term = term * Poly::atom(at, ex);
    }
    out += term.times_monomial(keep, 1);
  }
  if (!changed) return p;
  return reduce_roots(out);
}

const Atom* root_atom(const Expr& base, int degree, std::shared_ptr<const Poly> base_poly) {
  Atom a;
  a.kind = Atom::Kind::root;
  a.degree = degree;
  a.base = base;
  a.expr = make_pow(base, Rational(1, degree));
  a.key = to_string(base);
  a.base_poly = std::move(base_poly);
  return intern_atom(std::move(a));
}

RatFunc inverse_of(const Expr& d, std::vector<Expr>* as) {
  switch (d.kind()) {
    case Expr::Kind::constant:
      if (d.value() == 0) throw std::domain_error("division by zero");
      return RatFunc(Poly(Rational(1 / d.value())));
    case Expr::Kind::mul: {
      RatFunc r(Poly(1));
      for (const auto& f : d.operands()) r = r * inverse_of(f, as);
      return r;
    }
    case Expr::Kind::div:
      return convert(d.operands()[1], as) * inverse_of(d.operands()[0], as);
    case Expr::Kind::pow:
      if (d.exponent().get_den() == 1) {
        long n = d.exponent().get_num().get_si();
        if (n > 0) return inverse_of(d.operands()[0], as).pow(n);
        return convert(d.operands()[0], as).pow(-n);
      }
      return convert(d, as).inverse();
    default:
      return convert(d, as).inverse();
  }
}

Expr normalized_expr(const Expr& e, std::vector<Expr>* as) {
  RatFunc rf = convert(e, as);
  rf = RatFunc(reduce_roots(rf.num()), rf.den());
  rf.cancel(as);
  return rf.to_expr();
}

RatFunc convert(const Expr& e, std::vector<Expr>* as) {
  switch (e.kind()) {
    case Expr::Kind::constant:
      return RatFunc(Poly(e.value()));
    case Expr::Kind::coord: {
      Atom a;
      a.kind = Atom::Kind::coord;
      a.index = e.coord_index();
      a.key = e.name();
      a.expr = e;
      return RatFunc(Poly::atom(intern_atom(std::move(a))));
    }
    case Expr::Kind::param: {
      Atom a;
      a.kind = Atom::Kind::param;
      a.key = e.name();
      a.expr = e;
      return RatFunc(Poly::atom(intern_atom(std::move(a))));
    }
    case Expr::Kind::add: {
      RatFunc r;
      for (const auto& t : e.operands()) r = r + convert(t, as);
      return r;
    }
    case Expr::Kind::mul: {
      RatFunc r(Poly(1));
      for (const auto& f : e.operands()) {
        r = r * convert(f, as);
        if (r.is_zero()) break;
      }
      return r;
    }
    case Expr::Kind::div:
      return convert(e.operands()[0], as) * inverse_of(e.operands()[1], as);
    case Expr::Kind::pow: {
      const Rational& q = e.exponent();
      const Expr& b = e.operands()[0];
      if (q.get_den() == 1) {
        long n = q.get_num().get_si();
        if (n >= 0) return convert(b, as).pow(n);
        return inverse_of(b, as).pow(-n);
      }
      RatFunc brf = convert(b, as);
      brf = RatFunc(reduce_roots(brf.num()), brf.den());
      brf.cancel(as);
      Expr bn = brf.to_expr();
      if (bn.is_constant() && (bn.value() == 0 || bn.value() == 1)) return RatFunc(Poly(bn.value()));
      std::shared_ptr<const Poly> bp;
      if (brf.is_polynomial()) bp = std::make_shared<const Poly>(brf.num());
      long p = q.get_num().get_si();
      int r = static_cast<int>(q.get_den().get_si());
      const Atom* a = root_atom(bn, r, bp);
      RatFunc out = atom_rf(a, p);
      return RatFunc(reduce_roots(out.num()), out.den());
    }
    case Expr::Kind::func: {
      Expr arg = normalized_expr(e.operands()[0], as);
      Expr f = make_func(e.kernel(), arg);
      if (f.is_constant()) return RatFunc(Poly(f.value()));
      Atom a;
      a.kind = Atom::Kind::kernel;
      a.key = to_string(f);
      a.expr = f;
      return RatFunc(Poly::atom(intern_atom(std::move(a))));
    }
  }
  return RatFunc();
}

}  // namespace

RatFunc to_ratfunc(const Expr& e, std::vector<Expr>* assumptions) {
  RatFunc rf = convert(e, assumptions);
  rf = RatFunc(reduce_roots(rf.num()), rf.den());
  rf.cancel(assumptions);
  return rf;
}

NormalForm normal_form(const Expr& e) {
  NormalForm nf;
  nf.rf = to_ratfunc(e, &nf.assumptions);
  nf.expr = nf.rf.to_expr();
  return nf;
}

Expr normalize(const Expr& e) { return to_ratfunc(e).to_expr(); }

bool normalizes_to_zero(const Expr& e) { return convert(e, nullptr).is_zero(); }

void merge_assumptions(std::vector<Expr>& into, const std::vector<Expr>& extra) {
  for (const auto& e : extra)
    if (std::find(into.begin(), into.end(), e) == into.end()) into.push_back(e);
}

}  // namespace hamil
