#pragma once
#include <vector>

#include "mav/grid.h"

struct fftw_plan_s;

namespace mav {

// Fourier-space differential operators on the torus C/(Z + tau Z).
// With z = a + tau*b, tau = p + iq, the real coordinates are x = a + p b,
// y = q b, so d/dx = d/da and d/dy = (d/db - p d/da)/q. A lattice harmonic
// e^{2 pi i (j a + k b)} therefore has
//   d/dx  symbol 2 pi i j,
//   d/dy  symbol 2 pi i (k - p j)/q,
//   Laplacian symbol -4 pi^2 [ j^2 + (k - p j)^2 / q^2 ].
// curvature_increment is i del dbar psi / (2 pi) as a density against dx dy,
// i.e. Lap(psi)/(4 pi), symbol -pi [ j^2 + (k - p j)^2 / q^2 ].
class SpectralEngine {
public:
  explicit SpectralEngine(const TorusGrid& g);
  ~SpectralEngine();
  SpectralEngine(const SpectralEngine&) = delete;
  SpectralEngine& operator=(const SpectralEngine&) = delete;

  const TorusGrid& grid() const { return grid_; }

  Density11 curvature_increment(const ScalarField& psi);

  // Inverse of curvature_increment on mean-zero data; the zero mode of the
  // input must vanish (|mean| > 1e-5 raises NonZeroMean; anything smaller is
  // projected out) and the returned potential is mean-zero.
  ScalarField poisson_solve(const Density11& f);

  // dz-coefficient of the (1,0) gradient: psi_z = (psi_x - i psi_y)/2.
  // Nyquist rows/columns are dropped from first-derivative symbols.
  std::vector<cplx> grad_z(const ScalarField& psi);

  // (curvature_increment - kappa)^{-1}, kappa > 0; used as a preconditioner.
  std::vector<double> shifted_inverse(const std::vector<double>& r, double kappa);

private:
  void forward();
  void backward();

  TorusGrid grid_;
  std::vector<cplx> buf_;
  std::vector<double> lap_;    // curvature_increment symbol
  std::vector<cplx> gradz_;    // grad_z symbol
  fftw_plan_s* fwd_ = nullptr;
  fftw_plan_s* bwd_ = nullptr;
};

} // namespace mav
