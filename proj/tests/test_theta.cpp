#include <doctest.h>

#include <cmath>

#include "mav/rng.h"
#include "mav/theta.h"

using namespace mav;

TEST_CASE("theta satisfies the lattice transformation laws") {
  for (cplx tau : {cplx(0.0, 1.0), cplx(0.3, 1.2)}) {
    Rng rng(11);
    for (int s = 0; s < 6; s++) {
      cplx z(rng.uniform(), rng.uniform() * tau.imag());
      cplx t0 = theta_eval(z, tau, 12);
      CHECK(std::abs(theta_eval(z + 1.0, tau, 12) - t0) < 1e-12 * (1.0 + std::abs(t0)));
      cplx factor = std::exp(cplx(0, -M_PI) * tau - cplx(0, 2 * M_PI) * z);
      cplx lhs = theta_eval(z + tau, tau, 12);
      CHECK(std::abs(lhs - factor * t0) < 1e-11 * (1.0 + std::abs(lhs)));
    }
  }
}

TEST_CASE("theta derivatives agree with difference quotients") {
  cplx tau(0.2, 1.1);
  Rng rng(5);
  const double h = 1e-5;
  for (int s = 0; s < 5; s++) {
    cplx z(rng.uniform(), rng.uniform());
    for (int d = 0; d < 2; d++) {
      cplx exact = theta_eval(z, tau, 12, d + 1);
      cplx fd = (theta_eval(z + h, tau, 12, d) - theta_eval(z - h, tau, 12, d)) / (2.0 * h);
      CHECK(std::abs(exact - fd) < 1e-6 * (1.0 + std::abs(exact)));
    }
  }
}

TEST_CASE("section normalization puts the sup of |phi|^2 at 0.49") {
  TorusGrid g = make_grid(cplx(0.0, 1.0), 64);
  ThetaSection sec = make_theta_section(g, 12);

  // fine off-lattice sampling must stay below the calibrated sup and come
  // close to it somewhere
  double fine_max = 0.0;
  const int m = 301;
  for (int jb = 0; jb < m; jb++)
    for (int ja = 0; ja < m; ja++) {
      double a = (ja + 0.31) / m, b = (jb + 0.17) / m;
      cplx z = cplx(a, 0.0) + g.tau * b;
      double y = z.imag();
      double val = sec.A * std::norm(theta_eval(z, g.tau, 12)) * std::exp(-2.0 * M_PI * y * y);
      fine_max = std::max(fine_max, val);
    }
  CHECK(fine_max <= 0.49 + 1e-9);
  CHECK(fine_max >= 0.49 - 1e-3);
  CHECK(field_max(sec.phi2_0) <= 0.49 + 1e-12);

  // stored arrays are consistent with each other
  for (int jb = 0; jb < g.n; jb += 7)
    for (int ja = 0; ja < g.n; ja += 7) {
      size_t i = size_t(jb) * g.n + ja;
      CHECK(sec.phi2_0[i] ==
            doctest::Approx(std::norm(sec.theta[i]) * sec.h0[i]).epsilon(1e-14));
    }

  CHECK_THROWS_AS(make_theta_section(g, 4), MavError);
}

namespace {

ScalarField random_band_limited(const TorusGrid& g, uint64_t seed, double amp) {
  Rng rng(seed);
  ScalarField psi(g);
  for (int j = -5; j <= 5; j++)
    for (int k = -5; k <= 5; k++) {
      if (j == 0 && k == 0) continue;
      double cr = amp * rng.gaussian(), ci = amp * rng.gaussian();
      for (int jb = 0; jb < g.n; jb++)
        for (int ja = 0; ja < g.n; ja++) {
          double ph = 2.0 * M_PI * (double(j) * ja + double(k) * jb) / g.n;
          psi.at(ja, jb) += cr * std::cos(ph) + ci * std::sin(ph);
        }
    }
  return psi;
}

} // namespace

TEST_CASE("Bochner identity couples the section, curvature and gradient density") {
  // For any metric h0 e^{-psi} on the degree-one bundle,
  //   CI(|phi|^2) = G - F_h |phi|^2
  // pointwise, with F_h = omega + CI(psi). This ties the theta arrays, the
  // spectral operator and the gradient kernel together; a wrong constant in
  // any of them breaks it. |phi|^2 is not band-limited, so the spectral
  // operator sees aliasing; at n = 128 that sits below 1e-11 while at n = 64
  // it would still be ~1e-6.
  TorusGrid g = make_grid(cplx(0.0, 1.0), 128);
  SpectralEngine eng(g);
  ThetaSection sec = make_theta_section(g, 12);
  const double omega = 1.0 / g.q();

  for (uint64_t seed = 1; seed <= 10; seed++) {
    ScalarField psi = random_band_limited(g, seed, 0.02);
    ScalarField phi2 = phi_norm_sq(sec, psi);
    Density11 G = connection_gradient_density(sec, psi, eng);
    Density11 ciPsi = eng.curvature_increment(psi);
    ScalarField p2f(g);
    p2f.v = phi2.v;
    Density11 lhs = eng.curvature_increment(p2f);

    double scale = sup_abs(G.v) + omega;
    double worst = 0.0;
    for (size_t i = 0; i < lhs.v.size(); i++) {
      double fh = omega + ciPsi.v[i];
      worst = std::max(worst, std::fabs(lhs.v[i] - (G.v[i] - fh * phi2.v[i])));
    }
    CHECK(worst < 1e-8 * scale);

    // integrated form: the left side has no mean, so int G = int F_h phi2
    Density11 fhp(g);
    for (size_t i = 0; i < fhp.v.size(); i++) fhp.v[i] = (omega + ciPsi.v[i]) * phi2.v[i];
    CHECK(std::fabs(integrate(G) - integrate(fhp)) < 1e-10);
  }
}
