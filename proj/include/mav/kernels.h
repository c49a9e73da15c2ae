#pragma once
#include <complex>
#include <cstddef>

// Pointwise grid kernels on raw arrays. Every kernel has an OpenMP variant and
// a serial reference variant with identical arithmetic; tests compare the two
// and the benchmark tool times them. Library code calls the dispatching
// wrappers, which honor set_exec().

namespace mav::kernels {

enum class Exec { serial, omp };

Exec get_exec();
void set_exec(Exec e);

// out = base * exp(-psi)
void scale_exp_serial(const double* base, const double* psi, double* out, size_t n);
void scale_exp_omp(const double* base, const double* psi, double* out, size_t n);
void scale_exp(const double* base, const double* psi, double* out, size_t n);

// out = a*x + b*y
void axpby_serial(double a, const double* x, double b, const double* y, double* out, size_t n);
void axpby_omp(double a, const double* x, double b, const double* y, double* out, size_t n);
void axpby(double a, const double* x, double b, const double* y, double* out, size_t n);

// out = x * y
void multiply_serial(const double* x, const double* y, double* out, size_t n);
void multiply_omp(const double* x, const double* y, double* out, size_t n);
void multiply(const double* x, const double* y, double* out, size_t n);

// out = x^s
void pow_field_serial(const double* x, double s, double* out, size_t n);
void pow_field_omp(const double* x, double s, double* out, size_t n);
void pow_field(const double* x, double s, double* out, size_t n);

// g = |wz|^2 * h / pi   (connection-gradient density from the dz-coefficient)
void grad_density_serial(const std::complex<double>* wz, const double* h, double* g, size_t n);
void grad_density_omp(const std::complex<double>* wz, const double* h, double* g, size_t n);
void grad_density(const std::complex<double>* wz, const double* h, double* g, size_t n);

// rhs = (1 - phi2) * (mu * upow * omega + t * g) / ((2 r2 + t phi2) (2 + 2 r2 - t phi2))
void vortex_rhs_serial(const double* phi2, const double* upow, const double* g, double omega,
                       double mu, double t, int r2, double* rhs, size_t n);
void vortex_rhs_omp(const double* phi2, const double* upow, const double* g, double omega,
                    double mu, double t, int r2, double* rhs, size_t n);
void vortex_rhs(const double* phi2, const double* upow, const double* g, double omega,
                double mu, double t, int r2, double* rhs, size_t n);

// pointwise part of the residual linearization: with
//   dG = -2 Re(conj(coeff) theta wz) h / pi - w g,
//   out = ciw - (w phi2 numer + (1-phi2) t dG)/(I II) + rhs t w phi2 (1/II - 1/I)
void linearize_pointwise_serial(const double* w, const double* ciw, const std::complex<double>* wz,
                                const std::complex<double>* coeff, const std::complex<double>* theta,
                                const double* h, const double* g, const double* phi2,
                                const double* numer, const double* rhs, const double* I,
                                const double* II, double t, double* out, size_t n);
void linearize_pointwise_omp(const double* w, const double* ciw, const std::complex<double>* wz,
                             const std::complex<double>* coeff, const std::complex<double>* theta,
                             const double* h, const double* g, const double* phi2,
                             const double* numer, const double* rhs, const double* I,
                             const double* II, double t, double* out, size_t n);
void linearize_pointwise(const double* w, const double* ciw, const std::complex<double>* wz,
                         const std::complex<double>* coeff, const std::complex<double>* theta,
                         const double* h, const double* g, const double* phi2,
                         const double* numer, const double* rhs, const double* I,
                         const double* II, double t, double* out, size_t n);

double sup_abs_serial(const double* x, size_t n);
double sup_abs_omp(const double* x, size_t n);

} // namespace mav::kernels
