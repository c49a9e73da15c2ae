#pragma once
#include <memory>
#include <optional>
#include <vector>

#include "mav/grid.h"
#include "mav/spectral.h"
#include "mav/theta.h"

namespace mav {

struct VortexConfig {
  int r1 = 3;
  int r2 = 2;
  cplx tau = cplx(0.0, 1.0);
  int n = 64;
  int theta_truncation = 12;
  double tol_newton = 1e-11;
  double tol_path = 1e-11;
  double t_step_init = 0.1;
  double t_step_min = 1e-4;
  int max_newton = 12;
  bool allow_unstable = false;

  // mu = 2 (r2 (r1+1) + r1 (r2+1)); alpha = mu / (2 r2 (2 r2 + 2)).
  // alpha > 1 exactly when r1 > r2, the slope-stability condition.
  double mu() const { return 2.0 * (double(r2) * (r1 + 1) + double(r1) * (r2 + 1)); }
  double alpha() const { return mu() / (2.0 * r2 * (2.0 * r2 + 2.0)); }
  // the juncture constant (mu + 1) / (1 + 2 r2 (2 r2 + 2))
  double juncture_target() const { return (mu() + 1.0) / (1.0 + 2.0 * r2 * (2.0 * r2 + 2.0)); }

  void validate() const;
};

// Data of the metric h_t = h0 e^{-psi} at path parameter t: the section norm,
// the gradient density G = i grad phi ^ grad phi-dag / (2 pi area form), and
// the scalar factors I = 2 r2 + t |phi|^2, II = 2 + 2 r2 - t |phi|^2.
// While max |phi|^2 <= 1 + 1e-8 these satisfy I >= 2 r2 and II >= 2 r2 + 1
// up to the same slack.
struct MetricState {
  double t = 0.0;
  ScalarField psi;
  ScalarField phi2;
  Density11 G;
  std::vector<double> I, II;
  // internals reused by the linearization
  std::vector<double> upow;  // u^{1-t}
  std::vector<double> numer; // mu u^{1-t} omega + t G
  Density11 rhs;             // (1 - phi2) numer / (I II)
  std::vector<cplx> coeff;   // dz-coefficient of grad^{1,0} phi
  std::vector<double> h;     // h0 e^{-psi}
};

struct PathPoint {
  double t = 0.0;
  int newton_iters = 0;
  double residual_norm = 0.0;
};

struct Monitors {
  double max_phi2 = 0.0;
  double degree = 0.0;
  std::optional<double> juncture_value; // only at t = 1 with max phi2 < 1 - 1e-12
  double psi_min = 0.0, psi_max = 0.0;
};

struct SolutionReport {
  bool converged = false;
  std::optional<ErrorCode> failure;
  std::vector<PathPoint> t_history;
  Monitors monitors;
  ScalarField psi_final;
};

// mean-zero warm-start perturbation used by the uniqueness study
struct WarmStartPerturbation {
  double amplitude = 0.0;
  int kx = 1, ky = 0;
};

class VortexProblem {
public:
  explicit VortexProblem(const VortexConfig& cfg);

  const VortexConfig& cfg() const { return cfg_; }
  const TorusGrid& grid() const { return grid_; }
  const ThetaSection& section() const { return sec_; }
  SpectralEngine& engine() { return *eng_; }
  double omega() const { return omega_; } // omega_Sigma as a density: 1/Im tau
  const std::vector<double>& u() const { return u_; }

  MetricState make_state(const ScalarField& psi, double t);

  // R(psi, t) = omega + CI(psi) - (1 - phi2)(mu u^{1-t} omega + t G)/(I II)
  Density11 mav_residual(const MetricState& st);

  // Frechet derivative of R at st applied to w (exact for the discrete map)
  Density11 mav_linearize_apply(const MetricState& st, const ScalarField& w);

  // One damped Newton iteration at fixed t: solves the linearization by
  // preconditioned restarted GMRES and backtracks on the sup-norm.
  // Throws LinearSolveFailure / DampingFloor.
  void newton_step(ScalarField& psi, double t);

  // Newton loop at fixed t; returns iterations used, or nullopt if the
  // residual did not reach tol within max_newton iterations.
  std::optional<int> newton_solve(ScalarField& psi, double t, double tol, double* res_out);

  Monitors monitors_of(const ScalarField& psi, double t);

private:
  VortexConfig cfg_;
  TorusGrid grid_;
  ThetaSection sec_;
  std::unique_ptr<SpectralEngine> eng_;
  std::vector<double> u_;
  double omega_ = 0.0;
};

SolutionReport continuity_solve(const VortexConfig& cfg,
                                const WarmStartPerturbation& pert = {});

struct F2Recovery {
  ScalarField v;       // potential: F_f2 = CI(v)
  ScalarField f2;      // conformal factor e^{-v}
  double integral = 0.0;  // of (mu omega + G)/(2 II); must be r1
  double roundtrip = 0.0; // sup |CI(v) - (RHS - r1 omega)|
};

// Recovers the second metric factor from a solved t = 1 state. Throws
// SolvabilityFailure when the integral gate |integral - r1| > 1e-6 fails.
F2Recovery recover_f2(VortexProblem& prob, const ScalarField& psi);

} // namespace mav
