#pragma once

// Problem files: a TOML subset with sections [manifold], [params],
// [objects], [[tasks]] and [verify].  The grammar is described in
// docs/problem_format.md.

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hamil/exterior.hpp"
#include "hamil/linalg.hpp"
#include "hamil/sampling.hpp"
#include "hamil/toml.hpp"

namespace hamil {

class ProblemError : public std::runtime_error {
 public:
  ProblemError(int line, const std::string& msg)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg), line(line) {}
  int line;
};

enum class ObjectKind { function, vector, multivector, form, volume, metric, matrix, point };
const char* object_kind_name(ObjectKind k);

struct Object {
  ObjectKind kind = ObjectKind::function;
  int line = 0;
  Expr expr;            // function
  MultiVector mv;       // vector, multivector
  Form form;            // form
  VolumeForm volume;    // volume
  std::optional<Metric> metric;
  Matrix matrix;        // matrix
  std::vector<Rational> point;
};

struct TaskDef {
  std::string name;
  std::string kind;
  int line = 0;
  // role -> object names (one entry unless the role takes a list)
  std::map<std::string, std::vector<std::string>> inputs;
  toml::Value options;  // table, empty when absent
  std::map<std::string, std::string> expect;  // claim -> verdict name
  bool expect_error = false;
  std::optional<std::string> expect_lambda;
};

struct FlowDef {
  std::string name;
  int line = 0;
  std::string field;
  std::vector<std::string> invariants;
  std::optional<std::string> bivector, hamiltonian;
  std::vector<double> start;
  double horizon = 10;
  double dt = 1e-3;
  double max_drift = 1e-6;
  double max_deviation = 1e-9;
  Bindings params;
};

struct ProblemSpec {
  std::string source;
  ChartPtr chart;
  std::map<std::string, Object> objects;
  std::vector<TaskDef> tasks;
  SamplerConfig sampler;
  std::vector<FlowDef> flows;

  const Object& object(const std::string& name) const { return objects.at(name); }
};

// Throws toml::ParseError or ProblemError.
ProblemSpec parse_problem(std::string_view text, const std::string& source = "<input>");
ProblemSpec load_problem(const std::string& path);

// Helpers shared with the runner.
std::optional<bool> option_bool(const TaskDef& t, const std::string& key);
std::optional<double> option_number(const TaskDef& t, const std::string& key);
std::optional<std::string> option_string(const TaskDef& t, const std::string& key);

}  // namespace hamil
