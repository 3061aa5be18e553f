#pragma once

// Numeric back end: residual statistics over sample sets and fixed-step RK4
// conservation checks along trajectories.

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hamil/exterior.hpp"
#include "hamil/sampling.hpp"

namespace hamil {

struct ResidualStats {
  double max = 0;
  double mean = 0;
  int evaluated = 0;  // points where every coefficient evaluated
  int skipped = 0;
};

// max/mean of |value| over points and coefficients.  Points where evaluation
// fails are skipped; throws std::runtime_error when more than half are.
ResidualStats residual_stats(const std::vector<Expr>& coefficients, const std::vector<Sample>& points);
ResidualStats residual_stats(const Expr& e, const std::vector<Sample>& points);
template <Variance V>
ResidualStats residual_stats(const Graded<V>& t, const std::vector<Sample>& points) {
  std::vector<Expr> cs;
  for (const auto& [idx, c] : t.entries()) cs.push_back(c);
  return residual_stats(cs, points);
}

struct FlowReport {
  std::vector<double> start;
  std::vector<double> end;
  double dt = 0;
  double horizon = 0;
  int steps = 0;  // steps actually taken
  bool truncated = false;
  std::string truncation_reason;
  // max over the trajectory of |c(t) - c(0)|, divided by |c(0)| when that exceeds 1e-6
  std::vector<std::pair<std::string, double>> drift;
  // max over the trajectory of max_i |X^i - (pi#dh)^i|
  std::optional<double> field_deviation;
};

struct FlowInput {
  MultiVector x;
  std::vector<std::pair<std::string, Expr>> invariants;
  std::optional<MultiVector> pi;
  std::optional<Expr> h;
  std::vector<double> start;
  double horizon = 10;
  double dt = 1e-3;
  Bindings params;  // chart bindings are added automatically
};

// Classical RK4 with fixed step.  The trajectory is truncated (and flagged)
// when it leaves the sampler box, comes within delta of an excluded locus, or
// fails to evaluate.  Throws std::invalid_argument on dt <= 0 or a start point
// that is not admissible.
FlowReport flow_conservation(const FlowInput& in, const SamplerConfig& cfg);

}  // namespace hamil
