#include "mav/fubini.h"

#include <cmath>

#include "mav/error.h"

namespace mav {

using Eigen::MatrixXcd;
using Eigen::VectorXcd;

void validate_fs_point(const FSPoint& pt) {
  if (pt.n < 1 || pt.n > 4)
    throw MavError(ErrorCode::DimensionOutOfRange,
                   "CP^n dimension must be 1..4, got " + std::to_string(pt.n));
  if (pt.z.size() != pt.n)
    throw MavError(ErrorCode::DimensionOutOfRange, "point has wrong number of coordinates");
}

// W_kl = delta_kl / w - conj(z^k) z^l / w^2, w = 1 + |z|^2: the coefficient
// matrix of the Kahler form, also the metric on T^{1,0} in the chart frame.
static MatrixXcd fs_w(const FSPoint& pt) {
  double w = 1.0 + pt.z.squaredNorm();
  MatrixXcd W = MatrixXcd::Identity(pt.n, pt.n) / w;
  W -= pt.z.conjugate() * pt.z.transpose() / (w * w);
  return W;
}

EndoForm11n fs_curvature(const FSPoint& pt) {
  validate_fs_point(pt);
  int n = pt.n;
  MatrixXcd W = fs_w(pt);

  // chart-frame blocks: M[k][l]_{ab} = W_kl delta_ab + delta_ka W_bl
  EndoForm11n F;
  F.n = n;
  F.r = n;
  F.M.assign(size_t(n) * n, MatrixXcd::Zero(n, n));
  for (int k = 0; k < n; k++)
    for (int l = 0; l < n; l++) {
      MatrixXcd blk = W(k, l) * MatrixXcd::Identity(n, n);
      for (int b = 0; b < n; b++) blk(k, b) += W(b, l);
      F.block(k, l) = blk;
    }

  // orthonormalize with the frame e~_a = sum_k S_{ka} e_k, S = (W^T)^{-1/2}:
  // the coframe picks up R^{-1} = W^{-1/2} on both form indices while the
  // endomorphism conjugates by S^{-1} . S = conj(R) . conj(R^{-1}). The
  // conjugates matter: at points where W is genuinely complex, using R itself
  // breaks the Hermiticity of the resulting blocks.
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(W);
  MatrixXcd R = es.operatorSqrt();
  MatrixXcd Ri = es.operatorInverseSqrt();
  MatrixXcd Rc = R.conjugate();
  MatrixXcd Ric = Ri.conjugate();

  EndoForm11n out;
  out.n = n;
  out.r = n;
  out.M.assign(size_t(n) * n, MatrixXcd::Zero(n, n));
  for (int a = 0; a < n; a++)
    for (int b = 0; b < n; b++) {
      MatrixXcd blk = MatrixXcd::Zero(n, n);
      for (int k = 0; k < n; k++)
        for (int l = 0; l < n; l++)
          blk += Ri(a, k) * Ri(l, b) * F.block(k, l);
      out.block(a, b) = Rc * blk * Ric;
    }
  return out;
}

FsPowerReport fs_power_check(const FSPoint& pt) {
  EndoForm11n F = fs_curvature(pt);
  int n = pt.n;
  MatrixXcd P = wedge_power_full(F);
  double cn = 1.0;
  for (int i = 2; i <= n; i++) cn *= i; // omega^n = n! vol in the orthonormal frame
  FsPowerReport rep;
  rep.n = n;
  rep.lambda = P.trace().real() / (double(n) * cn);
  rep.off_identity_residual =
      (P - rep.lambda * cn * MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff() / cn;
  rep.lambda_ratio = double(n + 1) / double(n);
  rep.matches_claimed_two = std::fabs(rep.lambda - 2.0) < 1e-8;
  rep.matches_ratio = std::fabs(rep.lambda - rep.lambda_ratio) < 1e-8;
  return rep;
}

EndoForm11 fs_endo_form(const FSPoint& pt) {
  validate_fs_point(pt);
  if (pt.n != 2)
    throw MavError(ErrorCode::DimensionOutOfRange,
                   "EndoForm11 packaging needs n = 2, got " + std::to_string(pt.n));
  EndoForm11n F = fs_curvature(pt);
  EndoForm11 out;
  out.r = 2;
  out.A = F.block(0, 0);
  out.B = F.block(0, 1);
  out.C = F.block(1, 1);
  // clean rounding-level Hermiticity drift so validate_endo_form is exact
  out.A = 0.5 * (out.A + out.A.adjoint()).eval();
  out.C = 0.5 * (out.C + out.C.adjoint()).eval();
  return out;
}

FsPositivityReport fs_ma_nakano_check(const FSPoint& pt) {
  EndoForm11 F = fs_endo_form(pt);
  FsPositivityReport rep;
  rep.ma = ma_check(F);
  rep.nakano = nakano_check(F);
  return rep;
}

} // namespace mav
