#include "mav/solver.h"

#include <cmath>
#include <functional>

#include "mav/kernels.h"

namespace mav {

void VortexConfig::validate() const {
  if (r1 < 1 || r1 > 64 || r2 < 1 || r2 > 64)
    throw MavError(ErrorCode::ConfigParseError, "r1, r2 must be in 1..64");
  if (!(tol_newton > 0.0) || !(tol_path > 0.0))
    throw MavError(ErrorCode::ConfigParseError, "tolerances must be positive");
  if (!(t_step_init > 0.0) || !(t_step_min > 0.0) || t_step_init > 1.0)
    throw MavError(ErrorCode::ConfigParseError, "bad continuation step sizes");
  if (max_newton < 1) throw MavError(ErrorCode::ConfigParseError, "max_newton must be >= 1");
}

VortexProblem::VortexProblem(const VortexConfig& cfg) : cfg_(cfg) {
  cfg_.validate();
  grid_ = make_grid(cfg_.tau, cfg_.n);
  sec_ = make_theta_section(grid_, cfg_.theta_truncation);
  eng_ = std::make_unique<SpectralEngine>(grid_);
  omega_ = 1.0 / grid_.q();
  double a = cfg_.alpha();
  u_.resize(grid_.size());
  for (size_t i = 0; i < u_.size(); i++) u_[i] = 1.0 / (a * (1.0 - sec_.phi2_0[i]));
}

MetricState VortexProblem::make_state(const ScalarField& psi, double t) {
  require_same_grid(psi.grid, grid_, "make_state");
  size_t N = grid_.size();
  MetricState st;
  st.t = t;
  st.psi = psi;
  st.phi2 = ScalarField(grid_);
  kernels::scale_exp(sec_.phi2_0.data(), psi.v.data(), st.phi2.v.data(), N);
  st.h.resize(N);
  kernels::scale_exp(sec_.h0.data(), psi.v.data(), st.h.data(), N);

  std::vector<cplx> psiz = eng_->grad_z(psi);
  st.coeff.resize(N);
  int n = grid_.n;
  double q = grid_.q();
  for (int jb = 0; jb < n; jb++) {
    double y = q * double(jb) / n;
    for (int ja = 0; ja < n; ja++) {
      size_t i = size_t(jb) * n + ja;
      st.coeff[i] = sec_.theta_p[i] + (cplx(0.0, 2.0 * M_PI * y / q) - psiz[i]) * sec_.theta[i];
    }
  }
  st.G = Density11(grid_);
  kernels::grad_density(st.coeff.data(), st.h.data(), st.G.v.data(), N);

  st.upow.resize(N);
  kernels::pow_field(u_.data(), 1.0 - t, st.upow.data(), N);

  st.I.resize(N);
  st.II.resize(N);
  for (size_t i = 0; i < N; i++) {
    st.I[i] = 2.0 * cfg_.r2 + t * st.phi2.v[i];
    st.II[i] = 2.0 + 2.0 * cfg_.r2 - t * st.phi2.v[i];
  }
  st.numer.resize(N);
  kernels::axpby(cfg_.mu() * omega_, st.upow.data(), t, st.G.v.data(), st.numer.data(), N);
  st.rhs = Density11(grid_);
  kernels::vortex_rhs(st.phi2.v.data(), st.upow.data(), st.G.v.data(), omega_, cfg_.mu(), t,
                      cfg_.r2, st.rhs.v.data(), N);
  return st;
}

Density11 VortexProblem::mav_residual(const MetricState& st) {
  Density11 ci = eng_->curvature_increment(st.psi);
  Density11 R(grid_);
  for (size_t i = 0; i < R.v.size(); i++) R.v[i] = omega_ + ci.v[i] - st.rhs.v[i];
  return R;
}

Density11 VortexProblem::mav_linearize_apply(const MetricState& st, const ScalarField& w) {
  require_same_grid(w.grid, grid_, "mav_linearize_apply");
  Density11 ciw = eng_->curvature_increment(w);
  std::vector<cplx> wz = eng_->grad_z(w);
  Density11 out(grid_);
  kernels::linearize_pointwise(w.v.data(), ciw.v.data(), wz.data(), st.coeff.data(),
                               sec_.theta.data(), st.h.data(), st.G.v.data(), st.phi2.v.data(),
                               st.numer.data(), st.rhs.v.data(), st.I.data(), st.II.data(), st.t,
                               out.v.data(), out.v.size());
  return out;
}

// --- restarted GMRES with Givens rotations, matrix-free ---------------------

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); i++) s += a[i] * b[i];
  return s;
}
double nrm2(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

using Op = std::function<std::vector<double>(const std::vector<double>&)>;

bool gmres(const Op& A, const std::vector<double>& b, std::vector<double>& x, int restart,
           int maxit, double rtol) {
  size_t N = b.size();
  x.assign(N, 0.0);
  double bn = nrm2(b);
  if (bn == 0.0) return true;
  double target = rtol * bn;

  std::vector<double> r = b; // x = 0
  int total = 0;
  while (total < maxit) {
    double beta = nrm2(r);
    if (beta <= target) return true;
    int m = restart;
    std::vector<std::vector<double>> V(m + 1);
    std::vector<std::vector<double>> H(m + 1, std::vector<double>(m, 0.0));
    std::vector<double> cs(m, 0.0), sn(m, 0.0), g(m + 1, 0.0);
    V[0] = r;
    for (auto& v : V[0]) v /= beta;
    g[0] = beta;
    int j = 0;
    for (; j < m && total < maxit; j++, total++) {
      std::vector<double> w = A(V[j]);
      for (int i = 0; i <= j; i++) {
        H[i][j] = dot(w, V[i]);
        for (size_t k = 0; k < N; k++) w[k] -= H[i][j] * V[i][k];
      }
      H[j + 1][j] = nrm2(w);
      if (H[j + 1][j] > 1e-300) {
        V[j + 1] = w;
        for (auto& v : V[j + 1]) v /= H[j + 1][j];
      }
      for (int i = 0; i < j; i++) {
        double t0 = cs[i] * H[i][j] + sn[i] * H[i + 1][j];
        H[i + 1][j] = -sn[i] * H[i][j] + cs[i] * H[i + 1][j];
        H[i][j] = t0;
      }
      double d = std::hypot(H[j][j], H[j + 1][j]);
      if (d == 0.0) break; // dead column, solve without it
      cs[j] = H[j][j] / d;
      sn[j] = H[j + 1][j] / d;
      H[j][j] = d;
      H[j + 1][j] = 0.0;
      g[j + 1] = -sn[j] * g[j];
      g[j] = cs[j] * g[j];
      if (std::fabs(g[j + 1]) <= target) { j++; break; }
    }
    int k = j; // dimension of the solved least-squares system
    std::vector<double> y(k, 0.0);
    for (int i = k - 1; i >= 0; i--) {
      double s = g[i];
      for (int l = i + 1; l < k; l++) s -= H[i][l] * y[l];
      y[i] = s / H[i][i];
    }
    for (int i = 0; i < k; i++)
      for (size_t l = 0; l < N; l++) x[l] += y[i] * V[i][l];
    std::vector<double> Ax = A(x);
    r.resize(N);
    for (size_t l = 0; l < N; l++) r[l] = b[l] - Ax[l];
    double rn = nrm2(r);
    if (rn <= target) return true;
    // A healthy preconditioned system contracts by orders of magnitude per
    // cycle; a near-singular linearization barely moves. Bail out instead of
    // burning the full iteration budget on it.
    if (rn > 0.9 * beta) return false;
  }
  return nrm2(r) <= target;
}

} // namespace

void VortexProblem::newton_step(ScalarField& psi, double t) {
  MetricState st = make_state(psi, t);
  Density11 R = mav_residual(st);
  double res0 = sup_abs(R.v);

  const double kappa = 1.0;
  std::vector<double> b(R.v.size());
  for (size_t i = 0; i < b.size(); i++) b[i] = -R.v[i];
  b = eng_->shifted_inverse(b, kappa);
  Op A = [&](const std::vector<double>& v) {
    ScalarField w(grid_);
    w.v = v;
    Density11 dr = mav_linearize_apply(st, w);
    return eng_->shifted_inverse(dr.v, kappa);
  };
  std::vector<double> dir;
  if (!gmres(A, b, dir, 80, 800, 1e-12))
    throw MavError(ErrorCode::LinearSolveFailure,
                   "GMRES stalled at t = " + std::to_string(t));

  double lam = 1.0;
  while (lam >= 1.0 / 1024.0) {
    ScalarField trial = psi;
    for (size_t i = 0; i < trial.v.size(); i++) trial.v[i] += lam * dir[i];
    MetricState ts = make_state(trial, t);
    Density11 Rt = mav_residual(ts);
    double res = sup_abs(Rt.v);
    if (std::isfinite(res) && res < res0 * (1.0 - 0.2 * lam)) {
      psi = trial;
      return;
    }
    lam *= 0.5;
  }
  throw MavError(ErrorCode::DampingFloor,
                 "no damped Newton decrease at t = " + std::to_string(t));
}

std::optional<int> VortexProblem::newton_solve(ScalarField& psi, double t, double tol,
                                               double* res_out) {
  for (int it = 0; it <= cfg_.max_newton; it++) {
    MetricState st = make_state(psi, t);
    double res = sup_abs(mav_residual(st).v);
    if (res_out) *res_out = res;
    if (res < tol) return it;
    if (it == cfg_.max_newton) break;
    newton_step(psi, t);
  }
  return std::nullopt;
}

Monitors VortexProblem::monitors_of(const ScalarField& psi, double t) {
  Monitors mon;
  MetricState st = make_state(psi, t);
  mon.max_phi2 = field_max(st.phi2.v);
  Density11 F(grid_);
  Density11 ci = eng_->curvature_increment(psi);
  for (size_t i = 0; i < F.v.size(); i++) F.v[i] = omega_ + ci.v[i];
  mon.degree = integrate(F);
  mon.psi_min = field_min(psi.v);
  mon.psi_max = field_max(psi.v);
  bool finite = std::isfinite(mon.max_phi2) && std::isfinite(mon.degree) &&
                std::isfinite(mon.psi_min) && std::isfinite(mon.psi_max);
  if (t == 1.0 && finite && mon.max_phi2 < 1.0 - 1e-12) {
    Density11 j(grid_);
    for (size_t i = 0; i < j.v.size(); i++) j.v[i] = F.v[i] / (1.0 - st.phi2.v[i]);
    mon.juncture_value = integrate(j);
  }
  return mon;
}

SolutionReport continuity_solve(const VortexConfig& cfg, const WarmStartPerturbation& pert) {
  cfg.validate();
  if (cfg.r1 <= cfg.r2 && !cfg.allow_unstable)
    throw MavError(ErrorCode::StabilityGate,
                   "r1 <= r2 is outside the stable range; pass allow_unstable to attempt it");

  VortexProblem prob(cfg);
  SolutionReport rep;
  ScalarField psi(prob.grid());
  if (pert.amplitude != 0.0) {
    int n = prob.grid().n;
    for (int jb = 0; jb < n; jb++)
      for (int ja = 0; ja < n; ja++)
        psi.at(ja, jb) += pert.amplitude *
                          std::cos(2.0 * M_PI * (double(pert.kx) * ja + double(pert.ky) * jb) / n);
  }

  double tol = std::min(cfg.tol_newton, cfg.tol_path);
  auto fail = [&](ErrorCode code, double t_last) {
    rep.converged = false;
    rep.failure = code;
    rep.monitors = prob.monitors_of(psi, t_last);
    rep.psi_final = psi;
    return rep;
  };

  // monitor rails checked on every accepted state
  auto rails_ok = [&](double t) {
    Monitors m = prob.monitors_of(psi, t);
    bool finite = std::isfinite(m.max_phi2) && std::isfinite(m.psi_min) && std::isfinite(m.psi_max);
    return finite && m.max_phi2 <= 1.0 + 1e-6 && m.psi_min >= -50.0 && m.psi_max <= 50.0;
  };

  // t = 0 start: psi = 0 solves the equation exactly, so this is a residual
  // check unless a warm-start perturbation was requested
  double res = 0.0;
  auto it0 = [&]() -> std::optional<int> {
    try {
      return prob.newton_solve(psi, 0.0, tol, &res);
    } catch (const MavError&) { return std::nullopt; }
  }();
  if (!it0) return fail(ErrorCode::StepFloorReached, 0.0);
  if (!rails_ok(0.0)) return fail(ErrorCode::MonitorViolation, 0.0);
  rep.t_history.push_back({0.0, *it0, res});

  double t = 0.0, step = cfg.t_step_init;
  ErrorCode floor_code = ErrorCode::StepFloorReached;
  int attempts = 0;
  while (t < 1.0 - 1e-12) {
    if (++attempts > 3000 || rep.t_history.size() > 600) return fail(floor_code, t);
    double t_try = std::min(1.0, t + step);
    ScalarField trial = psi;
    std::optional<int> its;
    try {
      its = prob.newton_solve(trial, t_try, tol, &res);
    } catch (const MavError& e) {
      if (e.code() != ErrorCode::DampingFloor && e.code() != ErrorCode::LinearSolveFailure) throw;
      its = std::nullopt;
    }
    bool ok = its.has_value();
    if (ok) {
      ScalarField keep = psi;
      psi = trial;
      if (!rails_ok(t_try)) {
        // converged onto an unphysical branch: retry shorter unless at floor
        psi = keep;
        ok = false;
        floor_code = ErrorCode::MonitorViolation;
      }
    }
    if (ok) {
      t = t_try;
      rep.t_history.push_back({t, *its, res});
      step = std::min(step * 1.4, 0.25);
    } else {
      step *= 0.5;
      if (step < cfg.t_step_min) return fail(floor_code, t);
    }
  }
  rep.converged = true;
  rep.monitors = prob.monitors_of(psi, 1.0);
  rep.psi_final = psi;
  return rep;
}

F2Recovery recover_f2(VortexProblem& prob, const ScalarField& psi) {
  MetricState st = prob.make_state(psi, 1.0);
  const TorusGrid& g = prob.grid();
  Density11 rhs_f2(g);
  for (size_t i = 0; i < rhs_f2.v.size(); i++) rhs_f2.v[i] = st.numer[i] / (2.0 * st.II[i]);
  F2Recovery rec;
  rec.integral = integrate(rhs_f2);
  double r1 = prob.cfg().r1;
  if (std::fabs(rec.integral - r1) > 1e-6)
    throw MavError(ErrorCode::SolvabilityFailure,
                   "second-factor degree integral is " + std::to_string(rec.integral) +
                       ", expected " + std::to_string(r1));
  Density11 dev(g);
  for (size_t i = 0; i < dev.v.size(); i++) dev.v[i] = rhs_f2.v[i] - r1 * prob.omega();
  rec.v = prob.engine().poisson_solve(dev);
  rec.f2 = ScalarField(g);
  for (size_t i = 0; i < rec.f2.v.size(); i++) rec.f2.v[i] = std::exp(-rec.v.v[i]);
  Density11 ci = prob.engine().curvature_increment(rec.v);
  double rt = 0.0;
  for (size_t i = 0; i < ci.v.size(); i++) rt = std::max(rt, std::fabs(ci.v[i] - dev.v[i]));
  rec.roundtrip = rt;
  return rec;
}

} // namespace mav
