// Times the serial reference kernels against their OpenMP variants, plus the
// FFT-bound spectral operations that dominate the solver when the pointwise
// work is cheap. Usage: mav_bench [--n SIZE] [--reps R]

#include <chrono>
#include <cstdio>
#include <cstring>
#include <functional>
#include <string>
#include <vector>

#include <omp.h>

#include "mav/kernels.h"
#include "mav/rng.h"
#include "mav/spectral.h"

using mav::cplx;
using clk = std::chrono::steady_clock;

namespace {

double best_of(int reps, const std::function<void()>& fn) {
  double best = 1e300;
  for (int r = 0; r < reps; r++) {
    auto t0 = clk::now();
    fn();
    auto t1 = clk::now();
    best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
  }
  return best;
}

void row(const char* name, double serial_s, double omp_s) {
  std::printf("%-22s %10.3f us %10.3f us   x%.2f\n", name, serial_s * 1e6, omp_s * 1e6,
              serial_s / omp_s);
}

} // namespace

int main(int argc, char** argv) {
  int n = 256;
  int reps = 20;
  for (int i = 1; i < argc; i++) {
    if (!std::strcmp(argv[i], "--n") && i + 1 < argc) n = std::atoi(argv[++i]);
    else if (!std::strcmp(argv[i], "--reps") && i + 1 < argc) reps = std::atoi(argv[++i]);
    else { std::fprintf(stderr, "usage: mav_bench [--n SIZE] [--reps R]\n"); return 2; }
  }
  if (n < 8 || reps < 1) { std::fprintf(stderr, "bad arguments\n"); return 2; }

  const size_t m = size_t(n) * size_t(n);
  std::printf("grid %d x %d (%zu points), best of %d reps, %d OpenMP threads\n\n", n, n, m, reps,
              omp_get_max_threads());

  mav::Rng rng(7);
  std::vector<double> a(m), b(m), c(m), out(m);
  std::vector<cplx> wz(m), coeff(m), th(m);
  for (size_t i = 0; i < m; i++) {
    a[i] = 0.5 + 0.4 * rng.uniform();
    b[i] = rng.gaussian();
    c[i] = 0.1 + 0.8 * rng.uniform();
    wz[i] = cplx(rng.gaussian(), rng.gaussian());
    coeff[i] = cplx(rng.gaussian(), rng.gaussian());
    th[i] = cplx(rng.gaussian(), rng.gaussian());
  }

  std::printf("%-22s %13s %13s %7s\n", "kernel", "serial", "omp", "speedup");

  row("scale_exp",
      best_of(reps, [&] { mav::kernels::scale_exp_serial(a.data(), b.data(), out.data(), m); }),
      best_of(reps, [&] { mav::kernels::scale_exp_omp(a.data(), b.data(), out.data(), m); }));

  row("axpby",
      best_of(reps, [&] { mav::kernels::axpby_serial(1.3, a.data(), -0.7, b.data(), out.data(), m); }),
      best_of(reps, [&] { mav::kernels::axpby_omp(1.3, a.data(), -0.7, b.data(), out.data(), m); }));

  row("multiply",
      best_of(reps, [&] { mav::kernels::multiply_serial(a.data(), b.data(), out.data(), m); }),
      best_of(reps, [&] { mav::kernels::multiply_omp(a.data(), b.data(), out.data(), m); }));

  row("pow_field",
      best_of(reps, [&] { mav::kernels::pow_field_serial(a.data(), 0.37, out.data(), m); }),
      best_of(reps, [&] { mav::kernels::pow_field_omp(a.data(), 0.37, out.data(), m); }));

  row("grad_density",
      best_of(reps, [&] { mav::kernels::grad_density_serial(wz.data(), a.data(), out.data(), m); }),
      best_of(reps, [&] { mav::kernels::grad_density_omp(wz.data(), a.data(), out.data(), m); }));

  row("vortex_rhs",
      best_of(reps, [&] {
        mav::kernels::vortex_rhs_serial(c.data(), a.data(), b.data(), 1.0, 26.0, 0.5, 2,
                                        out.data(), m);
      }),
      best_of(reps, [&] {
        mav::kernels::vortex_rhs_omp(c.data(), a.data(), b.data(), 1.0, 26.0, 0.5, 2, out.data(),
                                     m);
      }));

  {
    std::vector<double> numer(m), rhs(m), I(m), II(m);
    for (size_t i = 0; i < m; i++) {
      numer[i] = 26.0 + b[i];
      rhs[i] = 0.9 * a[i];
      I[i] = 4.0 + 0.5 * c[i];
      II[i] = 6.0 - 0.5 * c[i];
    }
    row("linearize_pointwise",
        best_of(reps, [&] {
          mav::kernels::linearize_pointwise_serial(a.data(), b.data(), wz.data(), coeff.data(),
                                                   th.data(), a.data(), b.data(), c.data(),
                                                   numer.data(), rhs.data(), I.data(), II.data(),
                                                   0.5, out.data(), m);
        }),
        best_of(reps, [&] {
          mav::kernels::linearize_pointwise_omp(a.data(), b.data(), wz.data(), coeff.data(),
                                                th.data(), a.data(), b.data(), c.data(),
                                                numer.data(), rhs.data(), I.data(), II.data(), 0.5,
                                                out.data(), m);
        }));
  }

  row("sup_abs",
      best_of(reps, [&] { mav::kernels::sup_abs_serial(b.data(), m); }),
      best_of(reps, [&] { mav::kernels::sup_abs_omp(b.data(), m); }));

  // FFT-bound operations for scale; these have no serial/omp split (FFTW plans
  // are single-threaded here) but they bound what kernel speedups can buy.
  mav::TorusGrid g = mav::make_grid(cplx(0.0, 1.0), n);
  mav::SpectralEngine eng(g);
  mav::ScalarField psi(g);
  for (size_t i = 0; i < m; i++) psi.v[i] = 0.01 * b[i];
  double tci = best_of(reps, [&] { eng.curvature_increment(psi); });
  double tgz = best_of(reps, [&] { eng.grad_z(psi); });
  std::printf("\n%-22s %10.3f us\n", "curvature_increment", tci * 1e6);
  std::printf("%-22s %10.3f us\n", "grad_z", tgz * 1e6);
  return 0;
}
