#pragma once

#include <string>
#include <vector>

#include "hamil/expr.hpp"
#include "hamil/sampling.hpp"

namespace hamil {

enum class Verdict { Zero, NonZero, Unknown };

const char* verdict_name(Verdict v);

struct TriState {
  Verdict verdict = Verdict::Unknown;
  double residual_max = 0;   // max |value| over admissible samples
  double residual_mean = 0;
  int evaluated = 0;         // samples where evaluation succeeded
  int skipped = 0;           // samples where evaluation failed
  std::vector<double> witness;  // NonZero: the point with the largest |value|
  Bindings witness_params;
  std::vector<Expr> assumptions;  // nonvanishing factors cancelled by normalization

  bool is_zero() const { return verdict == Verdict::Zero; }
  bool is_nonzero() const { return verdict == Verdict::NonZero; }
};

// Zero when the exact normal form vanishes.  Otherwise the expression is
// evaluated on the sample set: a numerator that is nonzero in the rational
// subclass always yields NonZero (witness = largest |value|); expressions with
// opaque kernels yield NonZero when some |value| exceeds the tolerance and
// Unknown otherwise.  Throws DegenerateDomain, or std::runtime_error when more
// than half of the samples fail to evaluate.
TriState is_zero(const Expr& e, const Chart& chart, const SamplerConfig& cfg);
TriState is_zero(const Expr& e, const Chart& chart, const std::vector<Sample>& points, double tolerance);

// Several expressions that must all vanish, sharing one sample set.
TriState all_zero(const std::vector<Expr>& es, const Chart& chart, const SamplerConfig& cfg);

// Combine verdicts of components of one identity.
TriState combine(const std::vector<TriState>& parts);

}  // namespace hamil
