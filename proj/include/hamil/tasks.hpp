#pragma once

#include <string>
#include <vector>

#include "hamil/problem.hpp"

namespace hamil {

struct InputSpec {
  std::string role;
  ObjectKind kind;
  bool list = false;
  bool required = true;
};

struct TaskInfo {
  std::string id;
  bool construction = true;
  std::string summary;
  std::vector<InputSpec> inputs;
  std::vector<std::string> options;
  std::vector<std::string> hypotheses;
  std::vector<std::string> claims;
};

// Constructions first, in a fixed order, then the check_* kinds.
const std::vector<TaskInfo>& task_catalog();
const TaskInfo* find_task(const std::string& id);

std::string list_tasks_text();
// Throws std::invalid_argument on an unknown id.
std::string explain_text(const std::string& id);

}  // namespace hamil
