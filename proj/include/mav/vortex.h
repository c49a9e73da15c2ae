#pragma once
#include "mav/rational.h"
#include "mav/solver.h"

namespace mav {

// Second Chern character slopes of the rank-2 extension bundle on the product
// surface, as exact fractions: mu_ma_sub for the sub-line-bundle, mu_ma_total
// for the whole bundle. ma_stable means sub < total. mumford_gap is the
// classical slope difference deg(S) - deg(V)/2 against the product
// polarization, computed from the full intersection numbers.
struct SlopeRecord {
  Rational mu_ma_sub;
  Rational mu_ma_total;
  bool ma_stable = false;
  long long mumford_gap = 0;
  long long ch2_sub = 0, ch2_total = 0;
  long long deg_sub = 0, deg_total = 0;
};

SlopeRecord ma_slopes(int r1, int r2);
long long mumford_gap(int r1, int r2);

// Residuals of the two reduced scalar equations at a solved t = 1 state,
// given the recovered second factor potential v (F_f2 = CI(v)):
//   R1 = 2 (F_h + F_f2 + r1 omega)(2 r2 + phi2) - G - mu omega
//   R2 = 2 (F_f2 + r1 omega)(2 + 2 r2 - phi2) - G - mu omega
struct ReducedResiduals {
  Density11 R1, R2;
  double sup1 = 0.0, sup2 = 0.0;
};
ReducedResiduals reduced_system_residuals(VortexProblem& prob, const ScalarField& psi,
                                          const ScalarField& v);

// The four Griffiths-positivity margins of the vortex metric, evaluated
// directly from the solution fields (not from the solved equation's closed
// forms):
//   m1: F_h + F_f2 + r1 omega            > 0
//   m2: F_f2 + r1 omega                  > 0
//   m3: (2 r2 + 2) - phi2                > 0
//   m4: F_h (2 r2 + 2 - phi2) + (4 r2 + 2)(F_f2 + r1 omega) - G  >= 0
// Each reported value is the minimum over grid sites; min_margin is the least.
struct GriffithsMargins {
  double m1 = 0.0, m2 = 0.0, m3 = 0.0, m4 = 0.0;
  double min_margin = 0.0;
};
GriffithsMargins griffiths_margins(VortexProblem& prob, const ScalarField& psi,
                                   const ScalarField& v);

// Pointwise 2 tr(F^F) - tr(F)^2 density of the rank-2 vortex bundle against
// vol_Sigma ^ omega_FS, from the reduced block data
//   P1 = F_h + F_f2 + r1 omega, q1 = 2 r2 + phi2,
//   P2 = F_f2 + r1 omega,       q2 = 2 r2 + 2 - phi2,
//   F12 ^ F21 = -G:
// gap = 2 (P1 - P2)(q1 - q2) - 4 G. Non-positive at a solved state.
Density11 vortex_chern_gap(VortexProblem& prob, const ScalarField& psi, const ScalarField& v);

} // namespace mav
