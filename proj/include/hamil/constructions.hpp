#pragma once

// Hamiltonization recipes.  Every construction returns its objects together
// with certificates; hypotheses that are witnessed false raise
// PreconditionError (or ConstructionError when the recipe itself cannot be
// completed).

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hamil/exterior.hpp"
#include "hamil/linalg.hpp"
#include "hamil/poisson.hpp"

namespace hamil {

class ConstructionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct HamiltonizationResult {
  std::string construction;
  MultiVector pi;
  std::optional<Expr> h;
  std::optional<Expr> lambda;
  std::optional<int> family_index;  // 1-based
  std::vector<Certificate> certificates;
  std::vector<std::pair<std::string, MultiVector>> vectors;
  std::vector<std::pair<std::string, Form>> forms;
  std::vector<std::pair<std::string, Expr>> scalars;
  std::vector<std::pair<std::string, std::string>> notes;

  // The Jacobi certificate, if any, is not NonZero.
  bool certified() const;
  const Certificate* find(const std::string& claim) const;
};

// |f| > tolerance at every sample; throws PreconditionError naming the point.
void require_nonvanishing(const Expr& f, const Chart& chart, const SamplerConfig& cfg, const std::string& what);

// i_pi Omega = dc_1 ^ ... ^ dc_{m-2}.
HamiltonizationResult flaschka_ratiu(const VolumeForm& omega, const std::vector<Expr>& c, const SamplerConfig& cfg);

// pi_i with pi_i#dh_j = delta_ij X, from i_{psi_i} Omega = dh_1^..(dh_i omitted)..^dh_{m-1}.
std::vector<HamiltonizationResult> integrable_family(const MultiVector& x, const std::vector<Expr>& h,
                                                     const VolumeForm& omega, const SamplerConfig& cfg);

// Constant Poisson structure, leafwise symplectic form and quadratic
// Hamiltonian of a linear field X = Ax.d/dx with Casimirs v_i.x, v_i the
// columns of P.
HamiltonizationResult linear_fr(const ChartPtr& chart, const Matrix& p, const Matrix& a, const SamplerConfig& cfg);

// Radial homotopy primitive of a closed polynomial form of grade >= 1.
Form primitive(const Form& w, const std::vector<Rational>& base = {});

// Basis of the polynomials a of total degree <= bound with d(a rho) = 0.
std::vector<Expr> integrating_factor(const Form& rho, int degree_bound = 4);

// pi from i_pi Omega = a rho and h = 1/a on {a != 0}.
HamiltonizationResult unimodularize(const MultiVector& x, const VolumeForm& omega, const Form& rho, const Expr& a,
                                    const SamplerConfig& cfg);

struct FoliatedOptions {
  std::optional<MultiVector> x;
  std::optional<Expr> h;
};

// pi from i_pi Omega = alpha_1 ^ ... ^ alpha_k ^ beta.
HamiltonizationResult foliated_build(const VolumeForm& omega, const std::vector<Form>& alpha, const Form& beta,
                                     const SamplerConfig& cfg, const FoliatedOptions& opts = {});

// dh(Y) X = X, [X,Y]^X^Y = 0 and [X,Y]^X = 0.
Certificate normal_class_check(const MultiVector& x, const Expr& h, const MultiVector& y, const SamplerConfig& cfg);

// pi = Y ^ X with [pi,pi] = 2 [X,Y]^X^Y.
HamiltonizationResult decomposable(const MultiVector& x, const MultiVector& y, const SamplerConfig& cfg);

// pi = (1/dh(Z)) Z ^ X.
HamiltonizationResult hojman(const MultiVector& x, const Expr& h, const MultiVector& z, const SamplerConfig& cfg);

// Y0 = eta#dh / eta(dh,dh), then pi = Y0 ^ X.
HamiltonizationResult metric_normal(const MultiVector& x, const Expr& h, const Metric& g, const SamplerConfig& cfg);

struct Torus2Options {
  // Raise PreconditionError when a hypothesis is witnessed false; otherwise
  // record it and continue.
  bool strict = true;
};

// pi = Y1^X1 + Y2^X2.
HamiltonizationResult torus2(const MultiVector& x1, const MultiVector& x2, const Expr& h1, const Expr& h2,
                             const MultiVector& y1, const MultiVector& y2, const SamplerConfig& cfg,
                             const Torus2Options& opts = {});

}  // namespace hamil
