#pragma once
#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "mav/grid.h"

namespace mav {

// End(E)-valued (1,1)-form at a point of a complex surface, in a unitary
// frame: F = A i dz1 dz~1 + B i dz1 dz~2 + B^dag i dz2 dz~1 + C i dz2 dz~2.
// A and C are Hermitian (reality of iF), B is arbitrary.
struct EndoForm11 {
  int r = 0;
  Eigen::MatrixXcd A, B, C;
};

// End(E)-valued (2,2)-form: M times vol, vol = (i dz1 dz~1) ^ (i dz2 dz~2).
struct TopFormEndo {
  int r = 0;
  Eigen::MatrixXcd M;
};

struct PositivityVerdict {
  bool positive = false;
  double margin = 0.0;
  std::vector<cplx> witness; // attains (or nearly attains) the margin
  bool inconclusive = false; // sampling could not separate margin from zero
};

void validate_endo_form(const EndoForm11& F);

// F ^ F = (AC + CA - B B^dag - B^dag B) vol
TopFormEndo wedge_square(const EndoForm11& F);

// Smallest eigenvalue of the 2r x 2r block matrix [[A, B^dag], [B, C]];
// witness is the minimizing vector (v1, v2) in C^r x C^r.
PositivityVerdict nakano_check(const EndoForm11& F);

// Monge-Ampere positivity of F ^ F in the sense of the quadratic form
//   Q(a) = i tr(a^dag F a) + i tr(a F a^dag)-type pairing over
// End-valued (0,1)-forms a = alpha^dag dz~1 + beta^dag dz~2. Q is assembled
// as a real symmetric matrix over the 4 r^2 real coordinates of (alpha, beta)
// and the margin is its smallest eigenvalue. Witness is (alpha, beta)
// flattened row-major, alpha first.
PositivityVerdict ma_check(const EndoForm11& F);

// Griffiths positivity by sampling directions v in CP^{r-1}: margin is the
// sampled minimum of min{ v*Av, v*Cv, (v*Av)(v*Cv) - |v*Bv|^2 } after local
// refinement. samples >= 64. A margin within 1e-8 of zero is flagged
// inconclusive.
PositivityVerdict griffiths_check(const EndoForm11& F, int samples = 256, uint64_t seed = 1234);

// 2 tr(F^F) - tr(F)^tr(F) in vol units, rank 2 only (RankNotTwo otherwise).
double chern_gap(const EndoForm11& F);

// sup-norm of F^F - eta Id vol over matrix entries, eta > 0
double vbma_residual(const EndoForm11& F, double eta);

// W * integral of H (F - eta) over the torus: the abelian rank-one moment map
// pairing against a Hamiltonian field H. W is a positive integer weight.
double moment_map_value(const ScalarField& H, const Density11& F, const Density11& eta, int W);

} // namespace mav
