#include "hamil/toml.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>
#include <tuple>

namespace hamil::toml {

const Value* Value::find(std::string_view key) const {
  for (const auto& [k, v] : keys)
    if (k == key) return &v;
  return nullptr;
}

double Value::as_double() const { return std::strtod(text.c_str(), nullptr); }

const char* Value::kind_name() const {
  switch (kind) {
    case Kind::string: return "string";
    case Kind::number: return "number";
    case Kind::boolean: return "boolean";
    case Kind::array: return "array";
    case Kind::table: return "table";
  }
  return "?";
}

namespace {

using Path = std::vector<std::pair<std::string, int>>;  // key, array element or -1

Value& resolve(Value& root, const Path& path) {
  Value* t = &root;
  for (const auto& [key, idx] : path) {
    for (auto& [k, v] : t->keys)
      if (k == key) {
        t = idx < 0 ? &v : &v.items[static_cast<std::size_t>(idx)];
        break;
      }
  }
  return *t;
}

class Reader {
 public:
  explicit Reader(std::string_view s) : s_(s) {}

  Value document() {
    Value root;
    root.line = 1;
    // Pointers into the tree move when tables grow, so the current table is
    // re-resolved from its path.
    Path current;
    while (true) {
      skip_blank_lines();
      if (eof()) break;
      if (peek() == '[') {
        current = header(root);
      } else {
        auto [key, line, col] = read_key();
        skip_inline_ws();
        expect('=');
        skip_inline_ws();
        Value v = value();
        insert(resolve(root, current), key, std::move(v), line, col);
      }
      end_of_line();
    }
    return root;
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
  int line_ = 1;
  std::size_t line_start_ = 0;

  bool eof() const { return pos_ >= s_.size(); }
  char peek() const { return eof() ? '\0' : s_[pos_]; }
  int column() const { return static_cast<int>(pos_ - line_start_) + 1; }

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(line_, column(), msg); }

  char get() {
    char c = s_[pos_++];
    if (c == '\n') {
      ++line_;
      line_start_ = pos_;
    }
    return c;
  }

  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    get();
  }

  void skip_inline_ws() {
    while (!eof() && (peek() == ' ' || peek() == '\t')) get();
  }

  void skip_comment() {
    if (peek() == '#')
      while (!eof() && peek() != '\n') get();
  }

  // Whitespace, newlines and comments (inside arrays and inline tables).
  void skip_all() {
    while (!eof()) {
      char c = peek();
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        get();
      } else if (c == '#') {
        skip_comment();
      } else {
        break;
      }
    }
  }

  void skip_blank_lines() { skip_all(); }

  void end_of_line() {
    skip_inline_ws();
    skip_comment();
    if (peek() == '\r') get();
    if (eof()) return;
    if (peek() != '\n') fail("unexpected trailing characters");
    get();
  }

  static bool bare_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-'; }

  std::tuple<std::string, int, int> read_key() {
    int line = line_, col = column();
    if (peek() == '"' || peek() == '\'') return {read_string(), line, col};
    std::string k;
    while (!eof() && bare_char(peek())) k += get();
    if (k.empty()) fail("expected a key");
    return {k, line, col};
  }

  std::string read_string() {
    char q = get();
    std::string out;
    while (true) {
      if (eof() || peek() == '\n') fail("unterminated string");
      char c = get();
      if (c == q) break;
      if (c == '\\' && q == '"') {
        if (eof()) fail("unterminated string");
        char e = get();
        switch (e) {
          case 'n': out += '\n'; break;
          case 't': out += '\t'; break;
          case '"': out += '"'; break;
          case '\\': out += '\\'; break;
          default: fail(std::string("unknown escape \\") + e);
        }
      } else {
        out += c;
      }
    }
    return out;
  }

  Value value() {
    Value v;
    v.line = line_;
    char c = peek();
    if (c == '"' || c == '\'') {
      v.kind = Value::Kind::string;
      v.text = read_string();
    } else if (c == '[') {
      v.kind = Value::Kind::array;
      get();
      skip_all();
      while (peek() != ']') {
        v.items.push_back(value());
        skip_all();
        if (peek() == ',') {
          get();
          skip_all();
        } else if (peek() != ']') {
          fail("expected ',' or ']' in array");
        }
      }
      get();
    } else if (c == '{') {
      v.kind = Value::Kind::table;
      get();
      skip_all();
      while (peek() != '}') {
        auto [key, line, col] = read_key();
        skip_inline_ws();
        expect('=');
        skip_all();
        insert(v, key, value(), line, col);
        skip_all();
        if (peek() == ',') {
          get();
          skip_all();
        } else if (peek() != '}') {
          fail("expected ',' or '}' in inline table");
        }
      }
      get();
    } else if (s_.substr(pos_, 4) == "true" && !bare_char(s_.size() > pos_ + 4 ? s_[pos_ + 4] : ' ')) {
      v.kind = Value::Kind::boolean;
      v.boolean = true;
      for (int i = 0; i < 4; ++i) get();
    } else if (s_.substr(pos_, 5) == "false" && !bare_char(s_.size() > pos_ + 5 ? s_[pos_ + 5] : ' ')) {
      v.kind = Value::Kind::boolean;
      for (int i = 0; i < 5; ++i) get();
    } else if (c == '+' || c == '-' || std::isdigit(static_cast<unsigned char>(c))) {
      v.kind = Value::Kind::number;
      std::size_t start = pos_;
      while (!eof() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '.' || peek() == '+' ||
                        peek() == '-' || peek() == '_'))
        get();
      for (char ch : s_.substr(start, pos_ - start))
        if (ch != '_') v.text += ch;
      double d;
      auto [p, ec] = std::from_chars(v.text.data() + (v.text[0] == '+'), v.text.data() + v.text.size(), d);
      if (ec != std::errc() || p != v.text.data() + v.text.size()) fail("malformed number '" + v.text + "'");
    } else {
      fail("expected a value");
    }
    return v;
  }

  void insert(Value& table, const std::string& key, Value v, int line, int col) {
    if (table.find(key)) throw ParseError(line, col, "duplicate key '" + key + "'");
    table.keys.emplace_back(key, std::move(v));
  }

  Path header(Value& root) {
    int line = line_, col = column();
    get();
    bool array = peek() == '[';
    if (array) get();
    std::vector<std::string> names;
    while (true) {
      skip_inline_ws();
      names.push_back(std::get<0>(read_key()));
      skip_inline_ws();
      if (peek() == '.') {
        get();
        continue;
      }
      break;
    }
    expect(']');
    if (array) expect(']');

    Path path;
    Value* t = &root;
    for (std::size_t i = 0; i < names.size(); ++i) {
      const std::string& key = names[i];
      const bool last = i + 1 == names.size();
      Value* existing = nullptr;
      for (auto& [k, v] : t->keys)
        if (k == key) existing = &v;
      if (!existing) {
        Value fresh;
        fresh.line = line;
        if (last && array) fresh.kind = Value::Kind::array;
        t->keys.emplace_back(key, std::move(fresh));
        existing = &t->keys.back().second;
      }
      if (last && array) {
        if (!existing->is_array()) throw ParseError(line, col, "'" + key + "' is not an array of tables");
        Value tbl;
        tbl.line = line;
        existing->items.push_back(std::move(tbl));
        path.emplace_back(key, static_cast<int>(existing->items.size()) - 1);
        return path;
      }
      if (existing->is_table()) {
        path.emplace_back(key, -1);
        t = existing;
      } else if (!last && existing->is_array() && !existing->items.empty() && existing->items.back().is_table()) {
        path.emplace_back(key, static_cast<int>(existing->items.size()) - 1);
        t = &existing->items.back();
      } else {
        throw ParseError(line, col, "'" + key + "' is not a table");
      }
    }
    return path;
  }
};

}  // namespace

Value parse(std::string_view text) { return Reader(text).document(); }

}  // namespace hamil::toml
