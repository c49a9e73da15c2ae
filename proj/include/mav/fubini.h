#pragma once
#include <Eigen/Dense>

#include "mav/exterior.h"
#include "mav/positivity.h"

namespace mav {

// Point of CP^n in an affine chart, 1 <= n <= 4.
struct FSPoint {
  int n = 0;
  Eigen::VectorXcd z;
};

void validate_fs_point(const FSPoint& pt);

// Curvature of the Fubini-Study metric on T^{1,0}CP^n at pt, returned with
// both the bundle frame made unitary and the base coframe made orthonormal,
// so downstream positivity checks read it directly. In that frame the Kahler
// form is sum_a i f^a ^ f~^a and at z = 0 the blocks are
// M[k][l]_{ab} = delta_kl delta_ab + delta_ka delta_lb.
EndoForm11n fs_curvature(const FSPoint& pt);

struct FsPowerReport {
  int n = 0;
  double lambda = 0.0;               // F^n = lambda * (omega^n / n!) * n! ... tr-fitted scalar
  double off_identity_residual = 0.0; // max off-identity entry relative to omega^n coefficient
  double lambda_ratio = 0.0;          // (n+1)/n, the value the wedge recursion forces
  bool matches_claimed_two = false;   // |lambda - 2| < 1e-8
  bool matches_ratio = false;         // |lambda - (n+1)/n| < 1e-8
};

// Measures the proportionality F^n = lambda * omega^n * Id at pt. lambda is
// fitted from the trace; the report flags which closed-form value it matches
// instead of assuming either.
FsPowerReport fs_power_check(const FSPoint& pt);

struct FsPositivityReport {
  PositivityVerdict ma;
  PositivityVerdict nakano;
};

// n = 2 only: package the curvature into an EndoForm11 and run both checks.
FsPositivityReport fs_ma_nakano_check(const FSPoint& pt);

// n = 2 only: the curvature as an EndoForm11 (A, B, C blocks).
EndoForm11 fs_endo_form(const FSPoint& pt);

} // namespace mav
