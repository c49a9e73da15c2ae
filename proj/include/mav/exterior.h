#pragma once
#include <Eigen/Dense>
#include <vector>

namespace mav {

// End(E)-valued (1,1)-form on an n-dimensional complex base:
// F = sum_{k,l} M[k*n+l] (i dz^{k+1} ^ dz~^{l+1}), each block r x r.
// No reality assumption on the blocks.
struct EndoForm11n {
  int n = 0; // base dimension
  int r = 0; // endomorphism rank
  std::vector<Eigen::MatrixXcd> M;

  const Eigen::MatrixXcd& block(int k, int l) const { return M[size_t(k) * n + l]; }
  Eigen::MatrixXcd& block(int k, int l) { return M[size_t(k) * n + l]; }
};

// Coefficient P of the top power: F^n = P * vol, vol = prod_l (i dz^l ^ dz~^l).
// Walks the 2n anticommuting generators with a bitmask table; the matrix
// factors multiply in wedge order.
Eigen::MatrixXcd wedge_power_full(const EndoForm11n& F);

} // namespace mav
