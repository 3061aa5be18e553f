#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "hamil/expr.hpp"

namespace hamil {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, std::size_t position)
      : std::runtime_error(msg + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// Grammar:
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := ('-' | '+') unary | power
//   power   := primary ('^' unary)?          right-associative; exponent must fold to a rational
//   primary := number | ident | func '(' expr ')' | '(' expr ')'
//   func    := exp | log | sin | cos | sqrt | abs
//   number  := digits ('.' digits)?           decimals are converted exactly
// Identifiers must be coordinates or parameters of the chart.
Expr parse(std::string_view text, const Chart& chart);

}  // namespace hamil
