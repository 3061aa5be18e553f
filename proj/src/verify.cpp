#include "hamil/verify.hpp"

#include <cmath>
#include <stdexcept>

#include "hamil/polynomial.hpp"

namespace hamil {

ResidualStats residual_stats(const std::vector<Expr>& coefficients, const std::vector<Sample>& points) {
  ResidualStats st;
  double sum = 0;
  long count = 0;
  for (const auto& p : points) {
    std::vector<double> vals;
    try {
      for (const auto& c : coefficients) vals.push_back(std::fabs(eval(c, p.x, p.params)));
    } catch (const EvalError&) {
      ++st.skipped;
      continue;
    }
    ++st.evaluated;
    for (double v : vals) {
      st.max = std::max(st.max, v);
      sum += v;
      ++count;
    }
  }
  if (2 * st.skipped > static_cast<int>(points.size()))
    throw std::runtime_error("evaluation failed at more than half of the samples");
  st.mean = count ? sum / static_cast<double>(count) : 0.0;
  return st;
}

ResidualStats residual_stats(const Expr& e, const std::vector<Sample>& points) {
  return residual_stats(std::vector<Expr>{e}, points);
}

namespace {

struct Field {
  std::vector<Expr> comps;
  const Bindings* params;

  std::vector<double> operator()(const std::vector<double>& p) const {
    std::vector<double> out(comps.size());
    for (std::size_t i = 0; i < comps.size(); ++i) out[i] = eval(comps[i], p, *params);
    return out;
  }
};

std::vector<double> axpy(const std::vector<double>& x, double a, const std::vector<double>& k) {
  std::vector<double> out(x);
  for (std::size_t i = 0; i < x.size(); ++i) out[i] += a * k[i];
  return out;
}

// Empty string when admissible.
std::string inadmissible(const Chart& chart, const SamplerConfig& cfg, const std::vector<double>& p,
                         const Bindings& params) {
  for (int i = 0; i < chart.dim(); ++i) {
    auto [lo, hi] = cfg.interval(i);
    double v = p[static_cast<std::size_t>(i)];
    if (!std::isfinite(v) || v < lo || v > hi) return "left the box";
  }
  for (const auto& locus : chart.excluded) {
    double v;
    try {
      v = eval(locus, p, params);
    } catch (const EvalError&) {
      return "evaluation failed";
    }
    if (std::fabs(v) < cfg.delta) return "reached an excluded locus";
  }
  return {};
}

}  // namespace

FlowReport flow_conservation(const FlowInput& in, const SamplerConfig& cfg) {
  const ChartPtr& chart = in.x.chart();
  const int m = chart->dim();
  if (in.x.grade() != 1) throw std::invalid_argument("flow needs a vector field");
  if (!(in.dt > 0) || !(in.horizon >= 0)) throw std::invalid_argument("flow needs dt > 0 and T >= 0");
  if (static_cast<int>(in.start.size()) != m) throw std::invalid_argument("start point dimension mismatch");
  if (in.pi.has_value() != in.h.has_value()) throw std::invalid_argument("pi and h go together");

  Bindings params = chart->bindings;
  for (const auto& [k, v] : in.params) params[k] = v;
  if (auto why = inadmissible(*chart, cfg, in.start, params); !why.empty())
    throw std::invalid_argument("start point is not admissible: " + why);

  Field f{in.x.components(), &params};
  std::vector<Expr> diffs;
  if (in.pi) {
    auto r = sharp(*in.pi, differential(chart, *in.h)).components();
    for (int i = 0; i < m; ++i) diffs.push_back(f.comps[static_cast<std::size_t>(i)] - r[static_cast<std::size_t>(i)]);
  }

  FlowReport rep;
  rep.start = in.start;
  rep.dt = in.dt;
  rep.horizon = in.horizon;
  std::vector<double> c0;
  for (const auto& [name, c] : in.invariants) {
    c0.push_back(eval(c, in.start, params));
    rep.drift.emplace_back(name, 0.0);
  }
  if (in.pi) rep.field_deviation = 0.0;

  auto observe = [&](const std::vector<double>& p) {
    for (std::size_t k = 0; k < c0.size(); ++k) {
      double d = std::fabs(eval(in.invariants[k].second, p, params) - c0[k]);
      if (std::fabs(c0[k]) > 1e-6) d /= std::fabs(c0[k]);
      rep.drift[k].second = std::max(rep.drift[k].second, d);
    }
    for (const auto& e : diffs) *rep.field_deviation = std::max(*rep.field_deviation, std::fabs(eval(e, p, params)));
  };

  std::vector<double> p = in.start;
  const long n = std::lround(in.horizon / in.dt);
  try {
    observe(p);
    for (long s = 0; s < n; ++s) {
      auto k1 = f(p);
      auto k2 = f(axpy(p, in.dt / 2, k1));
      auto k3 = f(axpy(p, in.dt / 2, k2));
      auto k4 = f(axpy(p, in.dt, k3));
      std::vector<double> q(p);
      for (int i = 0; i < m; ++i) {
        auto u = static_cast<std::size_t>(i);
        q[u] += in.dt / 6 * (k1[u] + 2 * k2[u] + 2 * k3[u] + k4[u]);
      }
      if (auto why = inadmissible(*chart, cfg, q, params); !why.empty()) {
        rep.truncated = true;
        rep.truncation_reason = why;
        break;
      }
      p = std::move(q);
      ++rep.steps;
      observe(p);
    }
  } catch (const EvalError& e) {
    rep.truncated = true;
    rep.truncation_reason = std::string("evaluation failed: ") + e.what();
  }
  rep.end = p;
  return rep;
}

}  // namespace hamil
