#pragma once

// Sign and normalization conventions.  See docs/CONVENTIONS.md.
//
//  * sharp:     (pi#a)^j = sum_i pi^{ij} a_i, so i_a(d1^d2) = a(d1) d2 - a(d2) d1.
//               Anchored by the torus field 2 sin(u) d1 + 3 sin(u) d2 = pi#dh,
//               pi = d1^d2, h = -cos(u), u = 3 p1 - 2 p2.
//  * interior:  i_v(dx^{j1}^...^dx^{jk}) = sum_s (-1)^(s-1) v^{js} (..js omitted..),
//               i_{A^B} = i_A o i_B; hence i_{d1^d2}(dx1^dx2) = -1 and
//               i_{dx^dy}(dx^dy^dz) = -dz.
//  * (m-2)-form <-> bivector: i_pi Omega = rho with the interior above.
//  * modular:   Z^i = div_Omega(pi#dx^i).
//
// The two measured constants below are checked by the acceptance suite
// against fresh runs of the oracles.

#include "hamil/expr.hpp"

namespace hamil::conventions {

// Example linear_fr instance A = [[0,1,0],[0,0,0],[0,0,0]], P = (0,1,0)^T:
// pi#dh = lambda X for h = 1/2 x^T (W A) x.
inline constexpr long kLinearFrLambdaNum = -1;
inline constexpr long kLinearFrLambdaDen = 2;

// unimodularize: modular_vf(h pi, Omega) = sigma X where i_{h pi} Omega = rho.
inline constexpr int kModularSign = -1;

inline Rational linear_fr_lambda() { return Rational(kLinearFrLambdaNum, kLinearFrLambdaDen); }

}  // namespace hamil::conventions
