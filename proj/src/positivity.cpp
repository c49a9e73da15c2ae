#include "mav/positivity.h"

#include <cmath>

#include "mav/rng.h"

namespace mav {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

void validate_endo_form(const EndoForm11& F) {
  if (F.r < 1) throw std::invalid_argument("EndoForm11: rank must be >= 1");
  auto sq = [&](const MatrixXcd& M) { return M.rows() == F.r && M.cols() == F.r; };
  if (!sq(F.A) || !sq(F.B) || !sq(F.C))
    throw std::invalid_argument("EndoForm11: blocks must be r x r");
  double herm = (F.A - F.A.adjoint()).cwiseAbs().maxCoeff() +
                (F.C - F.C.adjoint()).cwiseAbs().maxCoeff();
  if (herm > 1e-10) throw std::invalid_argument("EndoForm11: A and C must be Hermitian");
}

TopFormEndo wedge_square(const EndoForm11& F) {
  validate_endo_form(F);
  TopFormEndo out;
  out.r = F.r;
  out.M = F.A * F.C + F.C * F.A - F.B * F.B.adjoint() - F.B.adjoint() * F.B;
  return out;
}

PositivityVerdict nakano_check(const EndoForm11& F) {
  validate_endo_form(F);
  int r = F.r;
  MatrixXcd T(2 * r, 2 * r);
  T.topLeftCorner(r, r) = F.A;
  T.topRightCorner(r, r) = F.B.adjoint();
  T.bottomLeftCorner(r, r) = F.B;
  T.bottomRightCorner(r, r) = F.C;
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(T);
  PositivityVerdict v;
  v.margin = es.eigenvalues()(0);
  v.positive = v.margin > 0.0;
  VectorXcd w = es.eigenvectors().col(0);
  v.witness.assign(w.data(), w.data() + w.size());
  return v;
}

// The Monge-Ampere quadratic form on a = alpha^dag dz~1 + beta^dag dz~2
// (alpha, beta r x r): each alpha-slot pairs with the complementary curvature
// block, giving the trace expression below. Real-valued by Hermiticity of A, C.
static double q_form(const EndoForm11& F, const MatrixXcd& al, const MatrixXcd& be) {
  cplx s = (al * F.C * al.adjoint()).trace() + (al * al.adjoint() * F.C).trace() +
           (be * F.A * be.adjoint()).trace() + (be * be.adjoint() * F.A).trace() -
           (al * F.B.adjoint() * be.adjoint()).trace() - (al * be.adjoint() * F.B.adjoint()).trace() -
           (be * F.B * al.adjoint()).trace() - (be * al.adjoint() * F.B).trace();
  return s.real();
}

static void unit_ab(int r, int p, MatrixXcd& al, MatrixXcd& be) {
  al.setZero(r, r);
  be.setZero(r, r);
  int which = p / (2 * r * r);
  int rem = p % (2 * r * r);
  int ij = rem / 2;
  cplx val = (rem % 2 == 0) ? cplx(1, 0) : cplx(0, 1);
  (which == 0 ? al : be)(ij / r, ij % r) = val;
}

PositivityVerdict ma_check(const EndoForm11& F) {
  validate_endo_form(F);
  int r = F.r;
  int dim = 4 * r * r;
  std::vector<MatrixXcd> als(dim), bes(dim);
  std::vector<double> diag(dim);
  for (int p = 0; p < dim; p++) {
    unit_ab(r, p, als[p], bes[p]);
    diag[p] = q_form(F, als[p], bes[p]);
  }
  MatrixXd M(dim, dim);
  for (int p = 0; p < dim; p++) {
    M(p, p) = diag[p];
    for (int q = p + 1; q < dim; q++) {
      double qpq = q_form(F, als[p] + als[q], bes[p] + bes[q]);
      M(p, q) = M(q, p) = 0.5 * (qpq - diag[p] - diag[q]);
    }
  }
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(M);
  PositivityVerdict v;
  v.margin = es.eigenvalues()(0);
  v.positive = v.margin > 0.0;
  VectorXd w = es.eigenvectors().col(0);
  v.witness.resize(2 * r * r);
  for (int m = 0; m < 2 * r * r; m++) v.witness[m] = cplx(w(2 * m), w(2 * m + 1));
  return v;
}

static double griffiths_score(const EndoForm11& F, const VectorXcd& v) {
  double a = (v.adjoint() * F.A * v)(0).real();
  double c = (v.adjoint() * F.C * v)(0).real();
  cplx b = (v.adjoint() * F.B * v)(0);
  return std::min({a, c, a * c - std::norm(b)});
}

PositivityVerdict griffiths_check(const EndoForm11& F, int samples, uint64_t seed) {
  validate_endo_form(F);
  if (samples < 64) throw std::invalid_argument("griffiths_check: samples must be >= 64");
  int r = F.r;
  Rng rng(seed);
  auto draw = [&](VectorXcd& v) {
    v.resize(r);
    for (int i = 0; i < r; i++) v(i) = cplx(rng.gaussian(), rng.gaussian());
    v.normalize();
  };
  VectorXcd best, v;
  double m = 1e300;
  for (int s = 0; s < samples; s++) {
    draw(v);
    double sc = griffiths_score(F, v);
    if (sc < m) { m = sc; best = v; }
  }
  // local refinement around the worst direction
  double sigma = 0.1;
  for (int it = 0; it < 400; it++) {
    VectorXcd cand = best;
    for (int i = 0; i < r; i++) cand(i) += sigma * cplx(rng.gaussian(), rng.gaussian());
    cand.normalize();
    double sc = griffiths_score(F, cand);
    if (sc < m) { m = sc; best = cand; }
    sigma *= 0.99;
  }
  PositivityVerdict out;
  out.margin = m;
  out.positive = m > 0.0;
  out.inconclusive = std::fabs(m) < 1e-8;
  out.witness.assign(best.data(), best.data() + best.size());
  return out;
}

double chern_gap(const EndoForm11& F) {
  validate_endo_form(F);
  if (F.r != 2)
    throw MavError(ErrorCode::RankNotTwo,
                   "chern_gap is defined for rank 2, got r = " + std::to_string(F.r));
  TopFormEndo w = wedge_square(F);
  cplx trA = F.A.trace(), trB = F.B.trace(), trC = F.C.trace();
  // tr(F)^tr(F) in vol units: 2 trA trC - 2 |trB|^2
  double tsq = 2.0 * (trA * trC).real() - 2.0 * std::norm(trB);
  return 2.0 * w.M.trace().real() - tsq;
}

double vbma_residual(const EndoForm11& F, double eta) {
  if (!(eta > 0.0)) throw std::invalid_argument("vbma_residual: eta must be > 0");
  TopFormEndo w = wedge_square(F);
  MatrixXcd D = w.M - eta * MatrixXcd::Identity(F.r, F.r);
  return D.cwiseAbs().maxCoeff();
}

double moment_map_value(const ScalarField& H, const Density11& F, const Density11& eta, int W) {
  require_same_grid(H.grid, F.grid, "moment_map_value");
  require_same_grid(H.grid, eta.grid, "moment_map_value");
  if (W < 1) throw std::invalid_argument("moment_map_value: weight must be a positive integer");
  Density11 prod(H.grid);
  for (size_t i = 0; i < prod.v.size(); i++) prod.v[i] = H.v[i] * (F.v[i] - eta.v[i]);
  return double(W) * integrate(prod);
}

} // namespace mav
