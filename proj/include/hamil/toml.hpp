#pragma once

// Reader for the TOML subset used by problem files: [table] and [a.b]
// headers, [[array.of.tables]], bare or quoted keys, basic and literal
// strings, decimal numbers, booleans, arrays and inline tables.  Arrays and
// inline tables may span lines.  Dates, multi-line strings and dotted keys
// on the left of '=' are not supported.

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hamil::toml {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int column, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg),
        line(line),
        column(column) {}
  int line;
  int column;
};

struct Value {
  enum class Kind { string, number, boolean, array, table };
  Kind kind = Kind::table;
  std::string text;  // string contents, or the number literal as written
  bool boolean = false;
  std::vector<Value> items;                         // array
  std::vector<std::pair<std::string, Value>> keys;  // table, in file order
  int line = 0;

  bool is_string() const { return kind == Kind::string; }
  bool is_number() const { return kind == Kind::number; }
  bool is_array() const { return kind == Kind::array; }
  bool is_table() const { return kind == Kind::table; }
  const Value* find(std::string_view key) const;
  double as_double() const;  // numbers only
  const char* kind_name() const;
};

// The root table.
Value parse(std::string_view text);

}  // namespace hamil::toml
