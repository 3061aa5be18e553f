#include "hamil/sampling.hpp"

#include <cmath>
#include <random>

namespace hamil {

void SamplerConfig::validate() const {
  if (samples < 1) throw std::invalid_argument("sample count must be at least 1");
  if (!(tolerance > 0)) throw std::invalid_argument("tolerance must be positive");
  if (delta < 0) throw std::invalid_argument("rejection margin must be non-negative");
  for (const auto& [lo, hi] : box)
    if (!(lo < hi)) throw std::invalid_argument("empty sampling interval");
  if (!(param_range.first <= param_range.second)) throw std::invalid_argument("empty parameter range");
}

std::pair<double, double> SamplerConfig::interval(int coord) const {
  if (box.empty()) return {-2.0, 2.0};
  return box.at(static_cast<std::size_t>(coord));
}

double unit_double(std::uint64_t bits) { return static_cast<double>(bits >> 11) * 0x1.0p-53; }

std::vector<Sample> sample_points(const Chart& chart, const SamplerConfig& cfg) {
  cfg.validate();
  const int m = chart.dim();
  if (!cfg.box.empty() && static_cast<int>(cfg.box.size()) != m)
    throw std::invalid_argument("sampling box dimension does not match the chart");

  std::vector<std::string> free;
  for (const auto& p : chart.params)
    if (!chart.bindings.count(p)) free.push_back(p);

  std::mt19937_64 rng(cfg.seed);
  auto draw = [&](double lo, double hi) { return lo + (hi - lo) * unit_double(rng()); };

  std::vector<Sample> out;
  const long max_draws = 100L * cfg.samples;
  long draws = 0;
  while (static_cast<int>(out.size()) < cfg.samples && draws < max_draws) {
    ++draws;
    Sample s;
    s.x.resize(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
      auto [lo, hi] = cfg.interval(i);
      s.x[static_cast<std::size_t>(i)] = draw(lo, hi);
    }
    s.params = chart.bindings;
    for (const auto& p : free) s.params[p] = draw(cfg.param_range.first, cfg.param_range.second);
    bool ok = true;
    for (const auto& locus : chart.excluded) {
      try {
        if (std::fabs(eval(locus, s.x, s.params)) < cfg.delta) ok = false;
      } catch (const EvalError&) {
        ok = false;
      }
      if (!ok) break;
    }
    if (ok) out.push_back(std::move(s));
  }
  if (static_cast<int>(out.size()) < cfg.samples) throw DegenerateDomain();
  return out;
}

}  // namespace hamil
