#include "mav/kernels.h"

#include <cmath>

namespace mav::kernels {

static Exec g_exec = Exec::omp;
Exec get_exec() { return g_exec; }
void set_exec(Exec e) { g_exec = e; }

void scale_exp_serial(const double* base, const double* psi, double* out, size_t n) {
  for (size_t i = 0; i < n; i++) out[i] = base[i] * std::exp(-psi[i]);
}
void scale_exp_omp(const double* base, const double* psi, double* out, size_t n) {
#pragma omp parallel for schedule(static)
  for (long i = 0; i < (long)n; i++) out[i] = base[i] * std::exp(-psi[i]);
}
void scale_exp(const double* base, const double* psi, double* out, size_t n) {
  g_exec == Exec::omp ? scale_exp_omp(base, psi, out, n) : scale_exp_serial(base, psi, out, n);
}

void axpby_serial(double a, const double* x, double b, const double* y, double* out, size_t n) {
  for (size_t i = 0; i < n; i++) out[i] = a * x[i] + b * y[i];
}
void axpby_omp(double a, const double* x, double b, const double* y, double* out, size_t n) {
#pragma omp parallel for schedule(static)
  for (long i = 0; i < (long)n; i++) out[i] = a * x[i] + b * y[i];
}
void axpby(double a, const double* x, double b, const double* y, double* out, size_t n) {
  g_exec == Exec::omp ? axpby_omp(a, x, b, y, out, n) : axpby_serial(a, x, b, y, out, n);
}

void multiply_serial(const double* x, const double* y, double* out, size_t n) {
  for (size_t i = 0; i < n; i++) out[i] = x[i] * y[i];
}
void multiply_omp(const double* x, const double* y, double* out, size_t n) {
#pragma omp parallel for schedule(static)
  for (long i = 0; i < (long)n; i++) out[i] = x[i] * y[i];
}
void multiply(const double* x, const double* y, double* out, size_t n) {
  g_exec == Exec::omp ? multiply_omp(x, y, out, n) : multiply_serial(x, y, out, n);
}

void pow_field_serial(const double* x, double s, double* out, size_t n) {
  for (size_t i = 0; i < n; i++) out[i] = std::pow(x[i], s);
}
void pow_field_omp(const double* x, double s, double* out, size_t n) {
#pragma omp parallel for schedule(static)
  for (long i = 0; i < (long)n; i++) out[i] = std::pow(x[i], s);
}
void pow_field(const double* x, double s, double* out, size_t n) {
  g_exec == Exec::omp ? pow_field_omp(x, s, out, n) : pow_field_serial(x, s, out, n);
}

void grad_density_serial(const std::complex<double>* wz, const double* h, double* g, size_t n) {
  for (size_t i = 0; i < n; i++) g[i] = std::norm(wz[i]) * h[i] * M_1_PI;
}
void grad_density_omp(const std::complex<double>* wz, const double* h, double* g, size_t n) {
#pragma omp parallel for schedule(static)
  for (long i = 0; i < (long)n; i++) g[i] = std::norm(wz[i]) * h[i] * M_1_PI;
}
void grad_density(const std::complex<double>* wz, const double* h, double* g, size_t n) {
  g_exec == Exec::omp ? grad_density_omp(wz, h, g, n) : grad_density_serial(wz, h, g, n);
}

void vortex_rhs_serial(const double* phi2, const double* upow, const double* g, double omega,
                       double mu, double t, int r2, double* rhs, size_t n) {
  for (size_t i = 0; i < n; i++) {
    double I = 2.0 * r2 + t * phi2[i];
    double II = 2.0 + 2.0 * r2 - t * phi2[i];
    rhs[i] = (1.0 - phi2[i]) * (mu * upow[i] * omega + t * g[i]) / (I * II);
  }
}
void vortex_rhs_omp(const double* phi2, const double* upow, const double* g, double omega,
                    double mu, double t, int r2, double* rhs, size_t n) {
#pragma omp parallel for schedule(static)
  for (long i = 0; i < (long)n; i++) {
    double I = 2.0 * r2 + t * phi2[i];
    double II = 2.0 + 2.0 * r2 - t * phi2[i];
    rhs[i] = (1.0 - phi2[i]) * (mu * upow[i] * omega + t * g[i]) / (I * II);
  }
}
void vortex_rhs(const double* phi2, const double* upow, const double* g, double omega,
                double mu, double t, int r2, double* rhs, size_t n) {
  g_exec == Exec::omp ? vortex_rhs_omp(phi2, upow, g, omega, mu, t, r2, rhs, n)
                      : vortex_rhs_serial(phi2, upow, g, omega, mu, t, r2, rhs, n);
}

void linearize_pointwise_serial(const double* w, const double* ciw, const std::complex<double>* wz,
                                const std::complex<double>* coeff, const std::complex<double>* theta,
                                const double* h, const double* g, const double* phi2,
                                const double* numer, const double* rhs, const double* I,
                                const double* II, double t, double* out, size_t n) {
  for (size_t i = 0; i < n; i++) {
    double dG = -2.0 * (std::conj(coeff[i]) * theta[i] * wz[i]).real() * h[i] * M_1_PI - w[i] * g[i];
    out[i] = ciw[i] - (w[i] * phi2[i] * numer[i] + (1.0 - phi2[i]) * t * dG) / (I[i] * II[i]) +
             rhs[i] * t * w[i] * phi2[i] * (1.0 / II[i] - 1.0 / I[i]);
  }
}
void linearize_pointwise_omp(const double* w, const double* ciw, const std::complex<double>* wz,
                             const std::complex<double>* coeff, const std::complex<double>* theta,
                             const double* h, const double* g, const double* phi2,
                             const double* numer, const double* rhs, const double* I,
                             const double* II, double t, double* out, size_t n) {
#pragma omp parallel for schedule(static)
  for (long i = 0; i < (long)n; i++) {
    double dG = -2.0 * (std::conj(coeff[i]) * theta[i] * wz[i]).real() * h[i] * M_1_PI - w[i] * g[i];
    out[i] = ciw[i] - (w[i] * phi2[i] * numer[i] + (1.0 - phi2[i]) * t * dG) / (I[i] * II[i]) +
             rhs[i] * t * w[i] * phi2[i] * (1.0 / II[i] - 1.0 / I[i]);
  }
}
void linearize_pointwise(const double* w, const double* ciw, const std::complex<double>* wz,
                         const std::complex<double>* coeff, const std::complex<double>* theta,
                         const double* h, const double* g, const double* phi2,
                         const double* numer, const double* rhs, const double* I,
                         const double* II, double t, double* out, size_t n) {
  g_exec == Exec::omp
      ? linearize_pointwise_omp(w, ciw, wz, coeff, theta, h, g, phi2, numer, rhs, I, II, t, out, n)
      : linearize_pointwise_serial(w, ciw, wz, coeff, theta, h, g, phi2, numer, rhs, I, II, t, out, n);
}

double sup_abs_serial(const double* x, size_t n) {
  double m = 0.0;
  for (size_t i = 0; i < n; i++) m = std::max(m, std::fabs(x[i]));
  return m;
}
double sup_abs_omp(const double* x, size_t n) {
  double m = 0.0;
#pragma omp parallel for schedule(static) reduction(max : m)
  for (long i = 0; i < (long)n; i++) m = std::max(m, std::fabs(x[i]));
  return m;
}

} // namespace mav::kernels
