#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hamil/exterior.hpp"
#include "hamil/tristate.hpp"

namespace hamil {

struct Identity {
  std::string name;
  TriState state;
};

struct Certificate {
  std::string claim;
  std::vector<Identity> identities;
  SamplerConfig sampler;
  std::vector<Expr> assumptions;
  std::optional<Expr> lambda;          // pi#dh = lambda X
  bool lambda_constant = false;
  bool lambda_numeric = false;         // recognized from samples, not proved
  std::vector<std::pair<std::string, std::string>> details;

  void add(std::string name, TriState t);
  Verdict verdict() const;             // Zero iff every identity is Zero
  const Identity* find(const std::string& name) const;
  bool exact() const;                  // lambda proved constant and equal to 1
};

class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Charts with the same coordinates; excluded loci are united.
ChartPtr merge_charts(const ChartPtr& a, const ChartPtr& b);

// Every coefficient must vanish; one sample set per call.
TriState check_zero(const MultiVector& t, const SamplerConfig& cfg, const ChartPtr& chart = nullptr);
TriState check_zero(const Form& t, const SamplerConfig& cfg, const ChartPtr& chart = nullptr);

Certificate jacobi_check(const MultiVector& pi, const SamplerConfig& cfg);
MultiVector hamiltonian_vf(const MultiVector& pi, const Expr& h);
// pi#dc = 0, and dc ^ i_pi Omega = 0 when a volume form is given.
Certificate casimir_check(const MultiVector& pi, const Expr& c, const SamplerConfig& cfg,
                          const VolumeForm* omega = nullptr);
Certificate poisson_vf_check(const MultiVector& pi, const MultiVector& x, const SamplerConfig& cfg);
// Component i is div_Omega(pi#dx^i).
MultiVector modular_vf(const MultiVector& pi, const VolumeForm& omega);
// [f pi, f pi] + 2 f (pi#df) ^ pi = 0.  Throws PreconditionError when pi is
// witnessed not to be Poisson.
Certificate conformal_identity_check(const MultiVector& pi, const Expr& f, const SamplerConfig& cfg);
// R = pi#dh; lambda = R_i / X_i on the first component of X that is not
// identically zero, then R - lambda X is certified.  When lambda is not
// provably constant but its sampled values agree with a small rational to
// within the tolerance, that rational is used and the certificate is Unknown
// at best.  For X = 0 the certificate carries R = 0 instead.
Certificate hamiltonization_check(const MultiVector& pi, const Expr& h, const MultiVector& x,
                                  const SamplerConfig& cfg);

}  // namespace hamil
