#include "hamil/problem.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "hamil/parse.hpp"
#include "hamil/polynomial.hpp"
#include "hamil/tasks.hpp"

namespace hamil {

const char* object_kind_name(ObjectKind k) {
  switch (k) {
    case ObjectKind::function: return "function";
    case ObjectKind::vector: return "vector";
    case ObjectKind::multivector: return "multivector";
    case ObjectKind::form: return "form";
    case ObjectKind::volume: return "volume";
    case ObjectKind::metric: return "metric";
    case ObjectKind::matrix: return "matrix";
    case ObjectKind::point: return "point";
  }
  return "?";
}

namespace {

using toml::Value;

[[noreturn]] void fail(const Value& v, const std::string& msg) { throw ProblemError(v.line, msg); }

const Value& need(const Value& table, const std::string& key, const std::string& where) {
  const Value* v = table.find(key);
  if (!v) fail(table, where + " needs '" + key + "'");
  return *v;
}

std::string as_string(const Value& v, const std::string& what) {
  if (!v.is_string()) fail(v, what + " must be a string, got " + v.kind_name());
  return v.text;
}

double as_number(const Value& v, const std::string& what) {
  if (!v.is_number()) fail(v, what + " must be a number, got " + v.kind_name());
  return v.as_double();
}

std::vector<std::string> as_strings(const Value& v, const std::string& what) {
  if (v.is_string()) return {v.text};
  if (!v.is_array()) fail(v, what + " must be a string or an array of strings");
  std::vector<std::string> out;
  for (const auto& it : v.items) out.push_back(as_string(it, what));
  return out;
}

std::vector<double> as_numbers(const Value& v, const std::string& what) {
  if (!v.is_array()) fail(v, what + " must be an array of numbers");
  std::vector<double> out;
  for (const auto& it : v.items) out.push_back(as_number(it, what));
  return out;
}

void check_keys(const Value& table, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& [k, v] : table.keys)
    if (!allowed.count(k)) fail(v, "unknown key '" + k + "' in " + where);
}

Expr expr_of(const Value& v, const Chart& chart, const std::string& what) {
  std::string text;
  if (v.is_string())
    text = v.text;
  else if (v.is_number())
    text = v.text;
  else
    fail(v, what + " must be an expression string or a number");
  try {
    return parse(text, chart);
  } catch (const std::exception& e) {
    fail(v, what + ": " + e.what());
  }
}

Index parse_index(const Value& at, const std::string& key, const Chart& chart) {
  Index idx;
  std::stringstream ss(key);
  std::string part;
  while (std::getline(ss, part, ',')) {
    auto b = part.find_first_not_of(' ');
    auto e = part.find_last_not_of(' ');
    if (b == std::string::npos) fail(at, "empty index component in '" + key + "'");
    part = part.substr(b, e - b + 1);
    if (auto ci = chart.coord_index(part)) {
      idx.push_back(*ci);
      continue;
    }
    int i = 0;
    try {
      std::size_t used = 0;
      i = std::stoi(part, &used);
      if (used != part.size()) throw std::invalid_argument(part);
    } catch (const std::exception&) {
      fail(at, "index '" + key + "' must list 1-based integers or coordinate names");
    }
    if (i < 1 || i > chart.dim()) fail(at, "index " + std::to_string(i) + " out of range 1.." + std::to_string(chart.dim()));
    idx.push_back(i - 1);
  }
  Index sorted = idx;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) fail(at, "index '" + key + "' repeats a slot");
  return idx;
}

template <class T>
void fill_entries(T& t, const Value& entries, const ChartPtr& chart, const std::string& name) {
  if (!entries.is_table()) fail(entries, name + ": entries must be an inline table");
  for (const auto& [key, coeff] : entries.keys) {
    Index idx = key.empty() ? Index{} : parse_index(coeff, key, *chart);
    if (static_cast<int>(idx.size()) != t.grade())
      fail(coeff, name + ": index '" + key + "' does not have " + std::to_string(t.grade()) + " entries");
    t.add(idx, expr_of(coeff, *chart, name));
  }
}

Matrix matrix_of(const Value& v, const Chart& chart, const std::string& name) {
  if (!v.is_array()) fail(v, name + " must be an array of rows");
  std::vector<std::vector<Expr>> rows;
  std::size_t width = 0;
  for (const auto& row : v.items) {
    if (!row.is_array()) fail(row, name + ": every row must be an array");
    std::vector<Expr> r;
    for (const auto& e : row.items) r.push_back(expr_of(e, chart, name));
    if (!rows.empty() && r.size() != width) fail(row, name + ": rows have different lengths");
    width = r.size();
    rows.push_back(std::move(r));
  }
  if (rows.empty()) return Matrix(0, 0);
  return Matrix::from_rows(rows);
}

Object object_of(const std::string& name, const Value& v, const ChartPtr& chart) {
  const int m = chart->dim();
  Object o;
  o.line = v.line;
  if (v.is_string() || v.is_number()) {
    o.kind = ObjectKind::function;
    o.expr = expr_of(v, *chart, name);
    return o;
  }
  if (!v.is_table() || v.keys.empty()) fail(v, "object '" + name + "' must be an expression or an inline table");
  const std::string& tag = v.keys.front().first;
  const Value& body = v.keys.front().second;
  if (tag == "function") {
    check_keys(v, {"function"}, name);
    o.kind = ObjectKind::function;
    o.expr = expr_of(body, *chart, name);
  } else if (tag == "vector" || tag == "one_form") {
    check_keys(v, {tag}, name);
    if (!body.is_array() || static_cast<int>(body.items.size()) != m)
      fail(body, name + ": needs " + std::to_string(m) + " components");
    std::vector<Expr> cs;
    for (const auto& it : body.items) cs.push_back(expr_of(it, *chart, name));
    if (tag == "vector") {
      o.kind = ObjectKind::vector;
      o.mv = vector_field(chart, cs);
    } else {
      o.kind = ObjectKind::form;
      o.form = one_form(chart, cs);
    }
  } else if (tag == "bivector" || tag == "multivector") {
    int grade = 2;
    const Value* entries = &body;
    if (tag == "multivector") {
      check_keys(v, {"multivector", "entries"}, name);
      grade = static_cast<int>(as_number(body, name + ".multivector"));
      entries = &need(v, "entries", name);
    } else {
      check_keys(v, {"bivector"}, name);
    }
    if (grade < 0 || grade > m) fail(body, name + ": grade out of range");
    o.kind = grade == 1 ? ObjectKind::vector : ObjectKind::multivector;
    o.mv = MultiVector(chart, grade);
    fill_entries(o.mv, *entries, chart, name);
  } else if (tag == "form") {
    check_keys(v, {"form", "entries", "value"}, name);
    int grade = static_cast<int>(as_number(body, name + ".form"));
    if (grade < 0 || grade > m) fail(body, name + ": grade out of range");
    o.kind = ObjectKind::form;
    o.form = Form(chart, grade);
    if (const Value* val = v.find("value")) {
      if (grade != 0) fail(*val, name + ": 'value' is only for 0-forms");
      o.form = Form::scalar(chart, expr_of(*val, *chart, name));
    } else {
      fill_entries(o.form, need(v, "entries", name), chart, name);
    }
  } else if (tag == "volume") {
    check_keys(v, {"volume"}, name);
    o.kind = ObjectKind::volume;
    o.volume = VolumeForm{chart, expr_of(body, *chart, name)};
  } else if (tag == "metric") {
    check_keys(v, {"metric"}, name);
    o.kind = ObjectKind::metric;
    Matrix g = matrix_of(body, *chart, name);
    if (g.rows() != m || g.cols() != m) fail(body, name + ": metric must be " + std::to_string(m) + "x" + std::to_string(m));
    try {
      o.metric = make_metric(chart, g);
    } catch (const std::exception& e) {
      fail(body, name + ": " + e.what());
    }
  } else if (tag == "matrix") {
    check_keys(v, {"matrix"}, name);
    o.kind = ObjectKind::matrix;
    o.matrix = matrix_of(body, *chart, name);
  } else if (tag == "point") {
    check_keys(v, {"point"}, name);
    o.kind = ObjectKind::point;
    if (!body.is_array() || static_cast<int>(body.items.size()) != m)
      fail(body, name + ": point needs " + std::to_string(m) + " coordinates");
    for (const auto& it : body.items) {
      Expr e = normalize(expr_of(it, *chart, name));
      if (!e.is_constant()) fail(it, name + ": point coordinates must be rational constants");
      o.point.push_back(e.value());
    }
  } else {
    fail(v, "object '" + name + "' has unknown type '" + tag + "'");
  }
  return o;
}

ChartPtr chart_of(const Value& doc) {
  const Value* man = doc.find("manifold");
  if (!man || !man->is_table()) throw ProblemError(0, "missing [manifold] section");
  check_keys(*man, {"dim", "coords", "exclude", "params"}, "[manifold]");
  std::vector<std::string> coords = as_strings(need(*man, "coords", "[manifold]"), "coords");
  if (const Value* dim = man->find("dim"))
    if (static_cast<int>(as_number(*dim, "dim")) != static_cast<int>(coords.size()))
      fail(*dim, "dim does not match the number of coords");
  std::vector<std::string> params;
  if (const Value* p = man->find("params")) params = as_strings(*p, "params");
  Bindings bindings;
  if (const Value* ps = doc.find("params")) {
    if (!ps->is_table()) fail(*ps, "[params] must be a table");
    for (const auto& [k, v] : ps->keys) {
      if (std::find(params.begin(), params.end(), k) == params.end()) params.push_back(k);
      if (v.is_number())
        bindings[k] = v.as_double();
      else if (!(v.is_string() && v.text == "free"))
        fail(v, "parameter '" + k + "' must be a number or \"free\"");
    }
  }
  ChartPtr chart;
  try {
    chart = make_chart(coords, params, {}, bindings);
  } catch (const std::exception& e) {
    fail(*man, e.what());
  }
  if (const Value* ex = man->find("exclude"))
    for (const auto& s : as_strings(*ex, "exclude")) chart = with_excluded(chart, expr_of(Value{Value::Kind::string, s, false, {}, {}, ex->line}, *chart, "exclude"));
  return chart;
}

SamplerConfig sampler_of(const Value* ver, int m) {
  SamplerConfig cfg;
  if (!ver) return cfg;
  if (const Value* v = ver->find("samples")) cfg.samples = static_cast<int>(as_number(*v, "samples"));
  if (const Value* v = ver->find("seed")) cfg.seed = static_cast<std::uint64_t>(std::stoull(v->text));
  if (const Value* v = ver->find("tolerance")) cfg.tolerance = as_number(*v, "tolerance");
  if (const Value* v = ver->find("delta")) cfg.delta = as_number(*v, "delta");
  if (const Value* v = ver->find("param_range")) {
    auto r = as_numbers(*v, "param_range");
    if (r.size() != 2) fail(*v, "param_range needs two numbers");
    cfg.param_range = {r[0], r[1]};
  }
  if (const Value* v = ver->find("box")) {
    if (!v->is_array() || v->items.empty()) fail(*v, "box must be [lo, hi] or a list of [lo, hi]");
    if (v->items[0].is_number()) {
      auto r = as_numbers(*v, "box");
      if (r.size() != 2) fail(*v, "box needs two numbers");
      cfg.box.assign(static_cast<std::size_t>(m), {r[0], r[1]});
    } else {
      for (const auto& it : v->items) {
        auto r = as_numbers(it, "box");
        if (r.size() != 2) fail(it, "box intervals need two numbers");
        cfg.box.emplace_back(r[0], r[1]);
      }
      if (static_cast<int>(cfg.box.size()) != m) fail(*v, "box needs one interval per coordinate");
    }
  }
  try {
    cfg.validate();
  } catch (const std::exception& e) {
    fail(*ver, e.what());
  }
  return cfg;
}

void require_object(const ProblemSpec& p, const Value& at, const std::string& name, ObjectKind kind,
                    const std::string& role) {
  auto it = p.objects.find(name);
  if (it == p.objects.end()) fail(at, "undefined object '" + name + "'");
  ObjectKind have = it->second.kind;
  bool ok = have == kind || (kind == ObjectKind::multivector && have == ObjectKind::multivector);
  if (!ok)
    fail(at, "'" + role + "' needs a " + std::string(object_kind_name(kind)) + ", but '" + name + "' is a " +
                 object_kind_name(have));
}

TaskDef task_of(const Value& t, const ProblemSpec& p, int ordinal) {
  if (!t.is_table()) fail(t, "tasks must be tables");
  check_keys(t, {"name", "kind", "inputs", "options", "expect", "expect_error", "expect_lambda"}, "task");
  TaskDef def;
  def.line = t.line;
  def.kind = as_string(need(t, "kind", "task"), "kind");
  def.name = t.find("name") ? as_string(*t.find("name"), "name") : def.kind + "#" + std::to_string(ordinal);
  const TaskInfo* info = find_task(def.kind);
  if (!info) fail(need(t, "kind", "task"), "unknown task kind '" + def.kind + "'");

  const Value* inputs = t.find("inputs");
  if (inputs && !inputs->is_table()) fail(*inputs, "inputs must be a table");
  if (inputs)
    for (const auto& [role, v] : inputs->keys) {
      const InputSpec* spec = nullptr;
      for (const auto& s : info->inputs)
        if (s.role == role) spec = &s;
      if (!spec) fail(v, def.kind + " has no input '" + role + "'");
      if (!spec->list && !v.is_string()) fail(v, "input '" + role + "' takes one object name");
      auto names = as_strings(v, "input '" + role + "'");
      for (const auto& n : names) require_object(p, v, n, spec->kind, role);
      def.inputs[role] = names;
    }
  for (const auto& s : info->inputs)
    if (s.required && !def.inputs.count(s.role)) fail(t, def.kind + " needs input '" + s.role + "'");

  if (const Value* o = t.find("options")) {
    if (!o->is_table()) fail(*o, "options must be a table");
    for (const auto& [k, v] : o->keys)
      if (std::find(info->options.begin(), info->options.end(), k) == info->options.end())
        fail(v, def.kind + " has no option '" + k + "'");
    def.options = *o;
  }
  if (const Value* e = t.find("expect")) {
    if (!e->is_table()) fail(*e, "expect must be a table of claim = verdict");
    for (const auto& [k, v] : e->keys) {
      std::string verdict = as_string(v, "expect." + k);
      if (verdict != "Zero" && verdict != "NonZero" && verdict != "Unknown")
        fail(v, "expected verdict must be Zero, NonZero or Unknown");
      def.expect[k] = verdict;
    }
  }
  if (const Value* e = t.find("expect_error")) {
    if (e->kind != Value::Kind::boolean) fail(*e, "expect_error must be a boolean");
    def.expect_error = e->boolean;
  }
  if (const Value* e = t.find("expect_lambda")) {
    if (e->is_number()) {
      def.expect_lambda = e->text;
    } else {
      def.expect_lambda = as_string(*e, "expect_lambda");
    }
  }
  return def;
}

FlowDef flow_of(const Value& f, const ProblemSpec& p, int ordinal) {
  if (!f.is_table()) fail(f, "flows must be tables");
  check_keys(f, {"name", "field", "invariants", "bivector", "hamiltonian", "start", "T", "dt", "max_drift",
                 "max_deviation", "params"},
             "flow");
  FlowDef d;
  d.line = f.line;
  d.name = f.find("name") ? as_string(*f.find("name"), "name") : "flow#" + std::to_string(ordinal);
  const Value& field = need(f, "field", "flow");
  d.field = as_string(field, "field");
  require_object(p, field, d.field, ObjectKind::vector, "field");
  if (const Value* inv = f.find("invariants")) {
    d.invariants = as_strings(*inv, "invariants");
    for (const auto& n : d.invariants) require_object(p, *inv, n, ObjectKind::function, "invariants");
  }
  if (const Value* b = f.find("bivector")) {
    d.bivector = as_string(*b, "bivector");
    require_object(p, *b, *d.bivector, ObjectKind::multivector, "bivector");
  }
  if (const Value* h = f.find("hamiltonian")) {
    d.hamiltonian = as_string(*h, "hamiltonian");
    require_object(p, *h, *d.hamiltonian, ObjectKind::function, "hamiltonian");
  }
  if (d.bivector.has_value() != d.hamiltonian.has_value()) fail(f, "bivector and hamiltonian go together");
  const Value& start = need(f, "start", "flow");
  d.start = as_numbers(start, "start");
  if (static_cast<int>(d.start.size()) != p.chart->dim()) fail(start, "start needs one value per coordinate");
  if (const Value* v = f.find("T")) d.horizon = as_number(*v, "T");
  if (const Value* v = f.find("dt")) d.dt = as_number(*v, "dt");
  if (const Value* v = f.find("max_drift")) d.max_drift = as_number(*v, "max_drift");
  if (const Value* v = f.find("max_deviation")) d.max_deviation = as_number(*v, "max_deviation");
  if (const Value* ps = f.find("params")) {
    if (!ps->is_table()) fail(*ps, "params must be a table");
    for (const auto& [k, v] : ps->keys) {
      if (!p.chart->has_param(k)) fail(v, "unknown parameter '" + k + "'");
      d.params[k] = as_number(v, k);
    }
  }
  return d;
}

}  // namespace

ProblemSpec parse_problem(std::string_view text, const std::string& source) {
  ProblemSpec p;
  p.source = source;
  const Value doc = toml::parse(text);
  check_keys(doc, {"manifold", "params", "objects", "tasks", "verify"}, "the problem file");
  p.chart = chart_of(doc);

  if (const Value* objs = doc.find("objects")) {
    if (!objs->is_table()) fail(*objs, "[objects] must be a table");
    for (const auto& [name, v] : objs->keys) {
      if (p.chart->coord_index(name) || p.chart->has_param(name))
        fail(v, "object name '" + name + "' clashes with a coordinate or parameter");
      p.objects.emplace(name, object_of(name, v, p.chart));
    }
  }

  const Value* ver = doc.find("verify");
  if (ver && !ver->is_table()) fail(*ver, "[verify] must be a table");
  if (ver) check_keys(*ver, {"samples", "seed", "tolerance", "delta", "box", "param_range", "flow"}, "[verify]");
  p.sampler = sampler_of(ver, p.chart->dim());

  if (const Value* tasks = doc.find("tasks")) {
    if (!tasks->is_array()) fail(*tasks, "tasks must be written as [[tasks]] tables");
    std::set<std::string> names;
    int k = 0;
    for (const auto& t : tasks->items) {
      p.tasks.push_back(task_of(t, p, ++k));
      if (!names.insert(p.tasks.back().name).second) fail(t, "duplicate task name '" + p.tasks.back().name + "'");
    }
  }
  if (ver)
    if (const Value* flows = ver->find("flow")) {
      if (!flows->is_array()) fail(*flows, "flows must be written as [[verify.flow]] tables");
      int k = 0;
      for (const auto& f : flows->items) p.flows.push_back(flow_of(f, p, ++k));
    }
  return p;
}

ProblemSpec load_problem(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ProblemError(0, "cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_problem(ss.str(), path);
}

std::optional<bool> option_bool(const TaskDef& t, const std::string& key) {
  const Value* v = t.options.find(key);
  if (!v) return std::nullopt;
  if (v->kind != Value::Kind::boolean) fail(*v, "option '" + key + "' must be a boolean");
  return v->boolean;
}

std::optional<double> option_number(const TaskDef& t, const std::string& key) {
  const Value* v = t.options.find(key);
  if (!v) return std::nullopt;
  return as_number(*v, "option '" + key + "'");
}

std::optional<std::string> option_string(const TaskDef& t, const std::string& key) {
  const Value* v = t.options.find(key);
  if (!v) return std::nullopt;
  return as_string(*v, "option '" + key + "'");
}

}  // namespace hamil
