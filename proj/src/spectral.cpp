#include "mav/spectral.h"

#include <fftw3.h>

#include <cmath>

namespace mav {

// fftfreq for even n: 0, 1, ..., n/2-1, -n/2, ..., -1
static int freq(int m, int n) { return m < n / 2 ? m : m - n; }

SpectralEngine::SpectralEngine(const TorusGrid& g) : grid_(g), buf_(g.size()) {
  int n = grid_.n;
  // storage is v[jb*n + ja] (a fastest), so n0 = b-dimension, n1 = a-dimension
  fwd_ = reinterpret_cast<fftw_plan_s*>(
      fftw_plan_dft_2d(n, n, reinterpret_cast<fftw_complex*>(buf_.data()),
                       reinterpret_cast<fftw_complex*>(buf_.data()), FFTW_FORWARD, FFTW_ESTIMATE));
  bwd_ = reinterpret_cast<fftw_plan_s*>(
      fftw_plan_dft_2d(n, n, reinterpret_cast<fftw_complex*>(buf_.data()),
                       reinterpret_cast<fftw_complex*>(buf_.data()), FFTW_BACKWARD, FFTW_ESTIMATE));

  double p = grid_.p(), q = grid_.q();
  lap_.resize(grid_.size());
  gradz_.resize(grid_.size());
  for (int mb = 0; mb < n; mb++) {
    for (int ma = 0; ma < n; ma++) {
      int j = freq(ma, n), k = freq(mb, n);
      double wy = (k - p * j) / q;
      lap_[size_t(mb) * n + ma] = -M_PI * (double(j) * j + wy * wy);
      // first derivatives zero the Nyquist modes (no symmetric choice exists)
      int jt = (ma == n / 2) ? 0 : j;
      int kt = (mb == n / 2) ? 0 : k;
      double wyt = (kt - p * jt) / q;
      // psi_z = (psi_x - i psi_y)/2 -> (2 pi i j + 2 pi wy)/2 per harmonic
      gradz_[size_t(mb) * n + ma] = cplx(M_PI * wyt, M_PI * jt);
    }
  }
}

SpectralEngine::~SpectralEngine() {
  fftw_destroy_plan(reinterpret_cast<fftw_plan>(fwd_));
  fftw_destroy_plan(reinterpret_cast<fftw_plan>(bwd_));
}

void SpectralEngine::forward() { fftw_execute(reinterpret_cast<fftw_plan>(fwd_)); }

void SpectralEngine::backward() {
  fftw_execute(reinterpret_cast<fftw_plan>(bwd_));
  double s = 1.0 / double(grid_.size());
  for (auto& c : buf_) c *= s;
}

Density11 SpectralEngine::curvature_increment(const ScalarField& psi) {
  require_same_grid(psi.grid, grid_, "curvature_increment");
  for (size_t i = 0; i < buf_.size(); i++) buf_[i] = psi.v[i];
  forward();
  for (size_t i = 0; i < buf_.size(); i++) buf_[i] *= lap_[i];
  backward();
  Density11 out(grid_);
  for (size_t i = 0; i < buf_.size(); i++) out.v[i] = buf_[i].real();
  return out;
}

ScalarField SpectralEngine::poisson_solve(const Density11& f) {
  require_same_grid(f.grid, grid_, "poisson_solve");
  double mean = integrate(f) / grid_.area();
  if (std::fabs(mean) > 1e-5)
    throw MavError(ErrorCode::NonZeroMean,
                   "poisson_solve input has mean " + std::to_string(mean));
  for (size_t i = 0; i < buf_.size(); i++) buf_[i] = f.v[i];
  forward();
  buf_[0] = 0.0;
  for (size_t i = 1; i < buf_.size(); i++) buf_[i] /= lap_[i];
  backward();
  ScalarField out(grid_);
  for (size_t i = 0; i < buf_.size(); i++) out.v[i] = buf_[i].real();
  return out;
}

std::vector<cplx> SpectralEngine::grad_z(const ScalarField& psi) {
  require_same_grid(psi.grid, grid_, "grad_z");
  for (size_t i = 0; i < buf_.size(); i++) buf_[i] = psi.v[i];
  forward();
  for (size_t i = 0; i < buf_.size(); i++) buf_[i] *= gradz_[i];
  backward();
  return buf_;
}

std::vector<double> SpectralEngine::shifted_inverse(const std::vector<double>& r, double kappa) {
  for (size_t i = 0; i < buf_.size(); i++) buf_[i] = r[i];
  forward();
  for (size_t i = 0; i < buf_.size(); i++) buf_[i] /= (lap_[i] - kappa);
  backward();
  std::vector<double> out(grid_.size());
  for (size_t i = 0; i < buf_.size(); i++) out[i] = buf_[i].real();
  return out;
}

} // namespace mav
