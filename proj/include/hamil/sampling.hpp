#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "hamil/expr.hpp"

namespace hamil {

struct SamplerConfig {
  std::vector<std::pair<double, double>> box;  // empty: [-2, 2] for every coordinate
  std::pair<double, double> param_range{-2.0, 2.0};  // for parameters without a binding
  int samples = 64;
  std::uint64_t seed = 42;
  double tolerance = 1e-9;
  double delta = 1e-3;  // rejection margin around excluded loci

  // Throws std::invalid_argument.
  void validate() const;
  std::pair<double, double> interval(int coord) const;
};

struct Sample {
  std::vector<double> x;
  Bindings params;  // chart bindings plus drawn values for unbound parameters
};

class DegenerateDomain : public std::runtime_error {
 public:
  DegenerateDomain() : std::runtime_error("degenerate sampling domain") {}
};

// Uniform draws in the box, rejecting points within delta of an excluded
// locus.  Deterministic under the seed: one mt19937_64 stream, 53-bit
// mantissa conversion, coordinates drawn before parameters.  Throws
// DegenerateDomain when more than 99% of draws are rejected.
std::vector<Sample> sample_points(const Chart& chart, const SamplerConfig& cfg);

// Uniform double in [0, 1) from the top 53 bits of a 64-bit draw.
double unit_double(std::uint64_t bits);

}  // namespace hamil
