#pragma once
#include <complex>
#include <vector>

#include "mav/error.h"

namespace mav {

using cplx = std::complex<double>;

// Flat torus C/(Z + tau Z), sampled on an n x n lattice in the (a,b)
// coordinates z = a + tau*b, a,b in [0,1). Real coordinates are x = a + Re(tau) b,
// y = Im(tau) b, so the area form dx dy has total mass Im(tau).
struct TorusGrid {
  cplx tau;
  int n = 0;

  double p() const { return tau.real(); }
  double q() const { return tau.imag(); }
  double area() const { return tau.imag(); }
  double cell_area() const { return tau.imag() / (double(n) * double(n)); }
  size_t size() const { return size_t(n) * size_t(n); }

  // site (ja, jb) -> complex point a + tau b
  cplx point(int ja, int jb) const {
    double a = double(ja) / n, b = double(jb) / n;
    return cplx(a, 0.0) + tau * b;
  }

  bool operator==(const TorusGrid& o) const { return tau == o.tau && n == o.n; }
};

TorusGrid make_grid(cplx tau, int n);

// Real scalar on the grid, row-major with the a index fastest: v[jb*n + ja].
struct ScalarField {
  TorusGrid grid;
  std::vector<double> v;

  ScalarField() = default;
  explicit ScalarField(const TorusGrid& g, double fill = 0.0) : grid(g), v(g.size(), fill) {}
  double& at(int ja, int jb) { return v[size_t(jb) * grid.n + ja]; }
  double at(int ja, int jb) const { return v[size_t(jb) * grid.n + ja]; }
};

// Density of a real (1,1)-form against dx dy (same storage as ScalarField,
// separate type so curvatures and potentials do not mix silently).
struct Density11 {
  TorusGrid grid;
  std::vector<double> v;

  Density11() = default;
  explicit Density11(const TorusGrid& g, double fill = 0.0) : grid(g), v(g.size(), fill) {}
};

void require_same_grid(const TorusGrid& a, const TorusGrid& b, const char* where);

// integral over the torus of a density (cell quadrature, compensated sum)
double integrate(const Density11& f);
double integrate(const ScalarField& f);

double field_min(const std::vector<double>& v);
double field_max(const std::vector<double>& v);
double sup_abs(const std::vector<double>& v);

} // namespace mav
