#include "mav/theta.h"

#include <cmath>

#include "mav/kernels.h"

namespace mav {

cplx theta_eval(cplx z, cplx tau, int truncation, int deriv) {
  cplx s = 0.0;
  for (int m = -truncation; m <= truncation; m++) {
    cplx e = std::exp(cplx(0.0, M_PI) * (double(m) * m) * tau + cplx(0.0, 2.0 * M_PI * m) * z);
    cplx f = cplx(0.0, 2.0 * M_PI * m);
    if (deriv == 1) e *= f;
    if (deriv == 2) e *= f * f;
    s += e;
  }
  return s;
}

// log |phi|^2_{h0}/A = log|theta|^2 - 2 pi y^2 / q and its (a,b)-gradient
// and Hessian, for locating the continuum maximum by Newton.
static void logphi2_derivs(cplx z, cplx tau, int T, double b, double* grad, double* hess) {
  double q = tau.imag();
  cplx th = theta_eval(z, tau, T, 0);
  cplx w = theta_eval(z, tau, T, 1) / th;
  cplx wp = theta_eval(z, tau, T, 2) / th - w * w;
  double y = q * b;
  grad[0] = 2.0 * (w).real();
  grad[1] = 2.0 * (tau * w).real() - 4.0 * M_PI * y;
  hess[0] = 2.0 * wp.real();               // d2/da2
  hess[1] = 2.0 * (tau * wp).real();       // d2/dadb
  hess[2] = 2.0 * (tau * tau * wp).real() - 4.0 * M_PI * q; // d2/db2
}

static double logphi2(cplx z, cplx tau, int T, double b) {
  double q = tau.imag();
  double y = q * b;
  return 2.0 * std::log(std::abs(theta_eval(z, tau, T, 0))) - 2.0 * M_PI * y * y / q;
}

ThetaSection make_theta_section(const TorusGrid& g, int truncation) {
  if (truncation < 8)
    throw MavError(ErrorCode::ConfigParseError,
                   "theta truncation must be >= 8, got " + std::to_string(truncation));
  ThetaSection sec;
  sec.grid = g;
  sec.truncation = truncation;

  int n = g.n;
  sec.theta.resize(g.size());
  sec.theta_p.resize(g.size());
  sec.h0.resize(g.size());
  sec.phi2_0.resize(g.size());

  // Peak of |theta|^2 e^{-2 pi y^2/q}: coarse scan, then Newton on the log.
  // This fixes the normalization from the continuum function, so A does not
  // depend on the solver grid.
  double best = -1e300, ba = 0.0, bb = 0.0;
  const int scan = 256;
  for (int ib = 0; ib < scan; ib++) {
    for (int ia = 0; ia < scan; ia++) {
      double a = double(ia) / scan, b = double(ib) / scan;
      cplx z = cplx(a, 0.0) + g.tau * b;
      double f = logphi2(z, g.tau, truncation, b);
      if (f > best) { best = f; ba = a; bb = b; }
    }
  }
  double a = ba, b = bb;
  for (int it = 0; it < 40; it++) {
    cplx z = cplx(a, 0.0) + g.tau * b;
    double gr[2], he[3];
    logphi2_derivs(z, g.tau, truncation, b, gr, he);
    double det = he[0] * he[2] - he[1] * he[1];
    if (det == 0.0) break;
    double da = (he[2] * gr[0] - he[1] * gr[1]) / det;
    double db = (he[0] * gr[1] - he[1] * gr[0]) / det;
    a -= da; b -= db;
    if (std::fabs(da) + std::fabs(db) < 1e-15) break;
  }
  double polished = logphi2(cplx(a, 0.0) + g.tau * b, g.tau, truncation, b);
  double peak = std::exp(std::max(polished, best)); // guard against a diverged Newton
  sec.A = 0.49 / peak;

  double q = g.q();
  for (int jb = 0; jb < n; jb++) {
    double bb2 = double(jb) / n;
    double y = q * bb2;
    double h = sec.A * std::exp(-2.0 * M_PI * y * y / q);
    for (int ja = 0; ja < n; ja++) {
      cplx z = g.point(ja, jb);
      size_t i = size_t(jb) * n + ja;
      sec.theta[i] = theta_eval(z, g.tau, truncation, 0);
      sec.theta_p[i] = theta_eval(z, g.tau, truncation, 1);
      sec.h0[i] = h;
      sec.phi2_0[i] = std::norm(sec.theta[i]) * h;
    }
  }
  return sec;
}

ScalarField phi_norm_sq(const ThetaSection& sec, const ScalarField& psi) {
  require_same_grid(sec.grid, psi.grid, "phi_norm_sq");
  ScalarField out(sec.grid);
  kernels::scale_exp(sec.phi2_0.data(), psi.v.data(), out.v.data(), out.v.size());
  return out;
}

Density11 connection_gradient_density(const ThetaSection& sec, const ScalarField& psi,
                                      SpectralEngine& eng) {
  require_same_grid(sec.grid, psi.grid, "connection_gradient_density");
  const TorusGrid& g = sec.grid;
  int n = g.n;
  double q = g.q();
  std::vector<cplx> psiz = eng.grad_z(psi);
  std::vector<cplx> coeff(g.size());
  for (int jb = 0; jb < n; jb++) {
    double y = q * double(jb) / n;
    for (int ja = 0; ja < n; ja++) {
      size_t i = size_t(jb) * n + ja;
      coeff[i] = sec.theta_p[i] + (cplx(0.0, 2.0 * M_PI * y / q) - psiz[i]) * sec.theta[i];
    }
  }
  std::vector<double> h(g.size());
  kernels::scale_exp(sec.h0.data(), psi.v.data(), h.data(), h.size());
  Density11 out(g);
  kernels::grad_density(coeff.data(), h.data(), out.v.data(), out.v.size());
  return out;
}

} // namespace mav
