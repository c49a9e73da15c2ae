#include <doctest.h>

#include <cmath>

#include "mav/grid.h"
#include "mav/kernels.h"
#include "mav/rng.h"
#include "mav/spectral.h"
#include "oracles.h"

using namespace mav;

namespace {

ScalarField cosine(const TorusGrid& g, int j, int k) {
  ScalarField f(g);
  for (int jb = 0; jb < g.n; jb++)
    for (int ja = 0; ja < g.n; ja++)
      f.at(ja, jb) = std::cos(2.0 * M_PI * (double(j) * ja + double(k) * jb) / g.n);
  return f;
}

} // namespace

TEST_CASE("grid construction rejects bad parameters") {
  CHECK_THROWS_AS(make_grid(cplx(0.5, 0.0), 64), MavError);
  CHECK_THROWS_AS(make_grid(cplx(0.0, -1.0), 64), MavError);
  CHECK_THROWS_AS(make_grid(cplx(0.0, 1.0), 48), MavError); // not a power of two
  CHECK_THROWS_AS(make_grid(cplx(0.0, 1.0), 4), MavError);  // too small
  try {
    make_grid(cplx(0.0, -1.0), 64);
  } catch (const MavError& e) {
    CHECK(e.code() == ErrorCode::NonPositiveImaginaryPart);
    CHECK(error_exit_code(e.code()) == 2);
  }
  TorusGrid g = make_grid(cplx(0.5, 2.0), 8);
  CHECK(g.p() == 0.5);
  CHECK(g.area() == 2.0);
  CHECK(g.size() == 64);
}

TEST_CASE("integration is exact for constants and kills pure modes") {
  TorusGrid g = make_grid(cplx(0.0, 1.5), 32);
  Density11 one(g, 2.0);
  CHECK(integrate(one) == doctest::Approx(2.0 * 1.5).epsilon(1e-15));
  ScalarField c = cosine(g, 3, -2);
  CHECK(std::fabs(integrate(c)) < 1e-13);
}

TEST_CASE("curvature increment matches hand-derived mode values") {
  // z = a + tau b; the operator is (1/4pi)[d_a^2 + (d_b - p d_a)^2 / q^2]
  TorusGrid g = make_grid(cplx(0.0, 1.0), 32);
  SpectralEngine eng(g);
  ScalarField c = cosine(g, 1, 0);
  Density11 ci = eng.curvature_increment(c);
  for (size_t i = 0; i < ci.v.size(); i++)
    CHECK(ci.v[i] == doctest::Approx(-M_PI * c.v[i]).epsilon(1e-12));

  // sheared torus: the cross term matters
  TorusGrid gs = make_grid(cplx(0.5, 1.0), 32);
  SpectralEngine engs(gs);
  ScalarField cb = cosine(gs, 0, 1);
  Density11 cib = engs.curvature_increment(cb);
  for (size_t i = 0; i < cib.v.size(); i++)
    CHECK(cib.v[i] == doctest::Approx(-M_PI * cb.v[i]).epsilon(1e-12));
  ScalarField cab = cosine(gs, 1, 1); // (d_b - p d_a)^2 -> -(2 pi)^2 (1-p)^2
  Density11 ciab = engs.curvature_increment(cab);
  for (size_t i = 0; i < ciab.v.size(); i++)
    CHECK(ciab.v[i] == doctest::Approx(-1.25 * M_PI * cab.v[i]).epsilon(1e-12));
}

TEST_CASE("curvature increment agrees with the finite-difference oracle") {
  TorusGrid g = make_grid(cplx(0.3, 0.8), 128);
  SpectralEngine eng(g);
  Rng rng(42);
  ScalarField psi(g);
  for (int j = -4; j <= 4; j++)
    for (int k = -4; k <= 4; k++) {
      double cr = rng.gaussian(), ciq = rng.gaussian();
      for (int jb = 0; jb < g.n; jb++)
        for (int ja = 0; ja < g.n; ja++) {
          double ph = 2.0 * M_PI * (double(j) * ja + double(k) * jb) / g.n;
          psi.at(ja, jb) += cr * std::cos(ph) + ciq * std::sin(ph);
        }
    }
  Density11 ci = eng.curvature_increment(psi);
  std::vector<double> fd = oracles::fd_curvature_increment(psi);
  double scale = sup_abs(ci.v);
  CHECK(scale > 1.0); // the comparison below is non-vacuous
  for (size_t i = 0; i < ci.v.size(); i++) CHECK(std::fabs(ci.v[i] - fd[i]) < 2e-3 * scale);
}

TEST_CASE("poisson solve inverts the curvature increment on mean-zero data") {
  TorusGrid g = make_grid(cplx(0.0, 1.0), 64);
  SpectralEngine eng(g);
  Rng rng(7);
  Density11 f(g);
  for (int j = -5; j <= 5; j++)
    for (int k = -5; k <= 5; k++) {
      if (j == 0 && k == 0) continue;
      double cr = rng.gaussian();
      for (int jb = 0; jb < g.n; jb++)
        for (int ja = 0; ja < g.n; ja++)
          f.v[size_t(jb) * g.n + ja] +=
              cr * std::cos(2.0 * M_PI * (double(j) * ja + double(k) * jb) / g.n);
    }
  ScalarField u = eng.poisson_solve(f);
  CHECK(std::fabs(integrate(u)) < 1e-10);
  Density11 back = eng.curvature_increment(u);
  for (size_t i = 0; i < back.v.size(); i++)
    CHECK(back.v[i] == doctest::Approx(f.v[i]).epsilon(1e-10));

  Density11 bad(g, 1.0); // mean Im(tau), far above the gate
  CHECK_THROWS_AS(eng.poisson_solve(bad), MavError);
}

TEST_CASE("shifted inverse is a true inverse of (CI - kappa)") {
  TorusGrid g = make_grid(cplx(0.0, 1.0), 32);
  SpectralEngine eng(g);
  Rng rng(3);
  std::vector<double> f(g.size());
  for (auto& x : f) x = rng.gaussian(); // nonzero mean is fine here
  std::vector<double> u = eng.shifted_inverse(f, 1.0);
  ScalarField uf(g);
  uf.v = u;
  Density11 ci = eng.curvature_increment(uf);
  for (size_t i = 0; i < f.size(); i++)
    CHECK(ci.v[i] - u[i] == doctest::Approx(f[i]).epsilon(1e-11));
}

TEST_CASE("holomorphic gradient matches hand-derived values") {
  TorusGrid g = make_grid(cplx(0.0, 1.0), 32);
  SpectralEngine eng(g);
  ScalarField c = cosine(g, 1, 0);
  std::vector<cplx> gz = eng.grad_z(c);
  for (int jb = 0; jb < g.n; jb++)
    for (int ja = 0; ja < g.n; ja++) {
      cplx want(-M_PI * std::sin(2.0 * M_PI * ja / g.n), 0.0);
      CHECK(std::abs(gz[size_t(jb) * g.n + ja] - want) < 1e-12);
    }

  TorusGrid gs = make_grid(cplx(0.5, 1.0), 32);
  SpectralEngine engs(gs);
  ScalarField cb = cosine(gs, 0, 1);
  std::vector<cplx> gzb = engs.grad_z(cb);
  for (int jb = 0; jb < gs.n; jb++)
    for (int ja = 0; ja < gs.n; ja++) {
      // with q = 1 and no a-dependence, d_z cos(2 pi b) = i pi sin(2 pi b)
      cplx want(0.0, M_PI * std::sin(2.0 * M_PI * jb / gs.n));
      CHECK(std::abs(gzb[size_t(jb) * gs.n + ja] - want) < 1e-12);
    }
}

TEST_CASE("nyquist mode: first derivative is zeroed, second is kept") {
  TorusGrid g = make_grid(cplx(0.0, 1.0), 8);
  SpectralEngine eng(g);
  ScalarField nyq = cosine(g, 4, 0); // (-1)^ja
  std::vector<cplx> gz = eng.grad_z(nyq);
  for (const auto& v : gz) CHECK(std::abs(v) < 1e-14);
  Density11 ci = eng.curvature_increment(nyq);
  for (size_t i = 0; i < ci.v.size(); i++)
    CHECK(ci.v[i] == doctest::Approx(-16.0 * M_PI * nyq.v[i]).epsilon(1e-12));
}

TEST_CASE("serial and parallel kernels agree bit for bit") {
  const size_t n = 1 << 12;
  Rng rng(99);
  std::vector<double> a(n), b(n), c(n), o1(n), o2(n);
  std::vector<cplx> wz(n), coeff(n), th(n);
  for (size_t i = 0; i < n; i++) {
    a[i] = 0.2 + rng.uniform();
    b[i] = rng.gaussian();
    c[i] = 0.05 + 0.9 * rng.uniform();
    wz[i] = cplx(rng.gaussian(), rng.gaussian());
    coeff[i] = cplx(rng.gaussian(), rng.gaussian());
    th[i] = cplx(rng.gaussian(), rng.gaussian());
  }
  auto same = [&](const std::vector<double>& x, const std::vector<double>& y) {
    for (size_t i = 0; i < x.size(); i++)
      if (x[i] != y[i]) return false;
    return true;
  };

  kernels::scale_exp_serial(a.data(), b.data(), o1.data(), n);
  kernels::scale_exp_omp(a.data(), b.data(), o2.data(), n);
  CHECK(same(o1, o2));

  kernels::axpby_serial(1.7, a.data(), -2.3, b.data(), o1.data(), n);
  kernels::axpby_omp(1.7, a.data(), -2.3, b.data(), o2.data(), n);
  CHECK(same(o1, o2));

  kernels::multiply_serial(a.data(), b.data(), o1.data(), n);
  kernels::multiply_omp(a.data(), b.data(), o2.data(), n);
  CHECK(same(o1, o2));

  kernels::pow_field_serial(a.data(), 0.63, o1.data(), n);
  kernels::pow_field_omp(a.data(), 0.63, o2.data(), n);
  CHECK(same(o1, o2));

  kernels::grad_density_serial(wz.data(), a.data(), o1.data(), n);
  kernels::grad_density_omp(wz.data(), a.data(), o2.data(), n);
  CHECK(same(o1, o2));

  kernels::vortex_rhs_serial(c.data(), a.data(), b.data(), 1.0, 26.0, 0.7, 2, o1.data(), n);
  kernels::vortex_rhs_omp(c.data(), a.data(), b.data(), 1.0, 26.0, 0.7, 2, o2.data(), n);
  CHECK(same(o1, o2));

  std::vector<double> numer(n), rhs(n), I(n), II(n);
  for (size_t i = 0; i < n; i++) {
    numer[i] = 26.0 + b[i];
    rhs[i] = 0.9 * a[i];
    I[i] = 4.0 + 0.5 * c[i];
    II[i] = 6.0 - 0.5 * c[i];
  }
  kernels::linearize_pointwise_serial(a.data(), b.data(), wz.data(), coeff.data(), th.data(),
                                      a.data(), b.data(), c.data(), numer.data(), rhs.data(),
                                      I.data(), II.data(), 0.7, o1.data(), n);
  kernels::linearize_pointwise_omp(a.data(), b.data(), wz.data(), coeff.data(), th.data(),
                                   a.data(), b.data(), c.data(), numer.data(), rhs.data(),
                                   I.data(), II.data(), 0.7, o2.data(), n);
  CHECK(same(o1, o2));

  CHECK(kernels::sup_abs_serial(b.data(), n) == kernels::sup_abs_omp(b.data(), n));

  // the dispatcher honors the executor switch
  kernels::Exec saved = kernels::get_exec();
  kernels::set_exec(kernels::Exec::serial);
  kernels::multiply(a.data(), b.data(), o1.data(), n);
  kernels::set_exec(kernels::Exec::omp);
  kernels::multiply(a.data(), b.data(), o2.data(), n);
  kernels::set_exec(saved);
  CHECK(same(o1, o2));
}
