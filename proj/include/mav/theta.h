#pragma once
#include <vector>

#include "mav/grid.h"
#include "mav/spectral.h"

namespace mav {

// theta(z) = sum_m exp(i pi m^2 tau + 2 pi i m z), |m| <= truncation,
// deriv picks d^deriv/dz^deriv (0, 1 or 2). Quasi-periodicity:
// theta(z+1) = theta(z), theta(z+tau) = exp(-i pi tau - 2 pi i z) theta(z).
cplx theta_eval(cplx z, cplx tau, int truncation, int deriv = 0);

// The holomorphic section phi = theta of the degree-one line bundle, with the
// reference metric h0 = A exp(-2 pi y^2 / Im tau). |phi|^2_{h0} is doubly
// periodic; A is normalized so its continuum maximum equals 0.49.
struct ThetaSection {
  TorusGrid grid;
  int truncation = 12;
  double A = 1.0;
  std::vector<cplx> theta;   // theta(z) at grid sites
  std::vector<cplx> theta_p; // theta'(z)
  std::vector<double> h0;    // A exp(-2 pi y^2 / q)
  std::vector<double> phi2_0; // |phi|^2_{h0}
};

ThetaSection make_theta_section(const TorusGrid& g, int truncation);

// |phi|^2 under h = h0 e^{-psi}
ScalarField phi_norm_sq(const ThetaSection& sec, const ScalarField& psi);

// density of i grad^{1,0} phi wedge grad^{0,1} phi^dagger against dx dy, where
// grad is the Chern connection of h0 e^{-psi}: the dz-coefficient is
// theta' + (2 pi i y / q - psi_z) theta and the density is |coeff|^2 h / pi.
Density11 connection_gradient_density(const ThetaSection& sec, const ScalarField& psi,
                                      SpectralEngine& eng);

} // namespace mav
