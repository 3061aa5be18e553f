#include "hamil/parse.hpp"

#include <cctype>

namespace hamil {

namespace {

class Parser {
 public:
  Parser(std::string_view text, const Chart& chart) : s_(text), chart_(chart) {}

  Expr run() {
    Expr e = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  Expr expr() {
    std::vector<Expr> terms{term()};
    for (;;) {
      if (accept('+'))
        terms.push_back(term());
      else if (accept('-'))
        terms.push_back(-term());
      else
        break;
    }
    return make_add(std::move(terms));
  }

  Expr term() {
    Expr acc = unary();
    for (;;) {
      if (accept('*')) {
        acc = acc * unary();
      } else if (peek() == '/') {
        std::size_t at = pos_;
        ++pos_;
        Expr d = unary();
        if (d.is_zero()) throw ParseError("division by zero", at);
        acc = acc / d;
      } else {
        break;
      }
    }
    return acc;
  }

  Expr unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  Expr power() {
    Expr base = primary();
    if (peek() == '^') {
      std::size_t at = ++pos_;
      Expr ex = unary();
      if (!ex.is_constant()) throw ParseError("exponent must be a rational literal", at);
      try {
        return make_pow(base, ex.value());
      } catch (const std::domain_error& err) {
        throw ParseError(err.what(), at);
      }
    }
    return base;
  }

  Expr number() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    std::string digits(s_.substr(start, pos_ - start));
    mpz_class den = 1;
    if (pos_ < s_.size() && s_[pos_] == '.') {
      ++pos_;
      std::size_t fs = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      std::string frac(s_.substr(fs, pos_ - fs));
      if (digits.empty() && frac.empty()) fail("malformed number");
      digits += frac;
      for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    }
    if (digits.empty()) fail("malformed number");
    Rational q(mpz_class(digits, 10), den);
    q.canonicalize();
    return Expr(q);
  }

  Expr primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (c == '(') {
      ++pos_;
      Expr e = expr();
      if (!accept(')')) fail("expected ')'");
      return e;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ++pos_;
      std::string id(s_.substr(start, pos_ - start));
      if (peek() == '(') {
        static const std::pair<const char*, int> funcs[] = {
            {"exp", 0}, {"log", 1}, {"sin", 2}, {"cos", 3}, {"abs", 4}, {"sqrt", 5}};
        for (const auto& [name, code] : funcs) {
          if (id != name) continue;
          ++pos_;
          Expr arg = expr();
          if (!accept(')')) fail("expected ')'");
          switch (code) {
            case 0: return exp(arg);
            case 1: return log(arg);
            case 2: return sin(arg);
            case 3: return cos(arg);
            case 4: return abs(arg);
            default: return sqrt(arg);
          }
        }
        throw ParseError("unknown function '" + id + "'", start);
      }
      if (auto i = chart_.coord_index(id)) return Expr::coord(*i, id);
      if (chart_.has_param(id)) return Expr::param(id);
      throw ParseError("unknown identifier '" + id + "'", start);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view s_;
  const Chart& chart_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse(std::string_view text, const Chart& chart) { return Parser(text, chart).run(); }

}  // namespace hamil
