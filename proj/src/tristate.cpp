#include "hamil/tristate.hpp"

#include <cmath>

#include "hamil/polynomial.hpp"

namespace hamil {

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Zero: return "Zero";
    case Verdict::NonZero: return "NonZero";
    case Verdict::Unknown: return "Unknown";
  }
  return "?";
}

namespace {

TriState decide(const Expr& e, const NormalForm& nf, const std::vector<Sample>& points, double tolerance) {
  TriState t;
  t.assumptions = nf.assumptions;
  if (nf.rf.is_zero()) {
    t.verdict = Verdict::Zero;
    return t;
  }
  const bool exact_nonzero = nf.rf.is_rational();
  double sum = 0;
  const Sample* arg = nullptr;
  for (const auto& s : points) {
    double v;
    try {
      v = std::fabs(eval(e, s.x, s.params));
    } catch (const EvalError&) {
      ++t.skipped;
      continue;
    }
    ++t.evaluated;
    sum += v;
    if (!arg || v > t.residual_max) {
      t.residual_max = v;
      arg = &s;
    }
  }
  if (t.skipped * 2 > static_cast<int>(points.size()))
    throw std::runtime_error("evaluation failed at more than half of the samples");
  t.residual_mean = t.evaluated ? sum / t.evaluated : 0;
  if (exact_nonzero || t.residual_max > tolerance) {
    t.verdict = Verdict::NonZero;
    if (arg) {
      t.witness = arg->x;
      t.witness_params = arg->params;
    }
  } else {
    t.verdict = Verdict::Unknown;
  }
  return t;
}

}  // namespace

TriState is_zero(const Expr& e, const Chart&, const std::vector<Sample>& points, double tolerance) {
  return decide(e, normal_form(e), points, tolerance);
}

TriState is_zero(const Expr& e, const Chart& chart, const SamplerConfig& cfg) {
  NormalForm nf = normal_form(e);
  if (nf.rf.is_zero()) return decide(e, nf, {}, cfg.tolerance);
  return decide(e, nf, sample_points(chart, cfg), cfg.tolerance);
}

TriState combine(const std::vector<TriState>& parts) {
  TriState out;
  out.verdict = Verdict::Zero;
  double sum = 0;
  double best_nonzero = -1;
  for (const auto& p : parts) {
    merge_assumptions(out.assumptions, p.assumptions);
    if (p.verdict == Verdict::Zero) continue;
    if (p.verdict == Verdict::NonZero) {
      if (out.verdict != Verdict::NonZero || p.residual_max > best_nonzero) {
        best_nonzero = p.residual_max;
        out.witness = p.witness;
        out.witness_params = p.witness_params;
      }
      out.verdict = Verdict::NonZero;
    } else if (out.verdict == Verdict::Zero) {
      out.verdict = Verdict::Unknown;
    }
    out.residual_max = std::max(out.residual_max, p.residual_max);
    sum += p.residual_mean;
    out.evaluated = std::max(out.evaluated, p.evaluated);
    out.skipped = std::max(out.skipped, p.skipped);
  }
  if (!parts.empty()) out.residual_mean = sum / static_cast<double>(parts.size());
  return out;
}

TriState all_zero(const std::vector<Expr>& es, const Chart& chart, const SamplerConfig& cfg) {
  std::vector<TriState> parts;
  std::vector<Sample> pts;
  bool have_points = false;
  for (const auto& e : es) {
    NormalForm nf = normal_form(e);
    if (!nf.rf.is_zero() && !have_points) {
      pts = sample_points(chart, cfg);
      have_points = true;
    }
    parts.push_back(decide(e, nf, pts, cfg.tolerance));
  }
  return combine(parts);
}

}  // namespace hamil
