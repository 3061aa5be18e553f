#pragma once

#include <cstdint>
#include <optional>

#include "hamil/problem.hpp"
#include "hamil/report.hpp"

namespace hamil {

struct RunOptions {
  bool fail_fast = false;
  bool timings = false;  // off by default so reports are byte-reproducible
  std::optional<std::uint64_t> seed;
  std::optional<int> samples;
  std::optional<double> tolerance;
};

// Runs the tasks and flows in file order.  A task passes when it raised no
// error (or raised one and expect_error is set) and no certificate is NonZero
// unless that verdict is listed under expect.  exit_code is 0 when every task
// and flow passes, 1 otherwise.
Report run_problem(const ProblemSpec& spec, const RunOptions& opts = {});

}  // namespace hamil
