#include "mav/exterior.h"

#include <bit>
#include <stdexcept>

namespace mav {

using Eigen::MatrixXcd;

// parity of appending generator g to an ordered product with generator set mask:
// one transposition per present generator above g
static int append_sign(unsigned mask, int g) {
  unsigned higher = mask >> (g + 1);
  return (std::popcount(higher) & 1) ? -1 : 1;
}

MatrixXcd wedge_power_full(const EndoForm11n& F) {
  if (F.n < 1 || F.n > 8) throw std::invalid_argument("wedge_power_full: base dimension 1..8");
  int n = F.n, r = F.r;
  unsigned full = (1u << (2 * n)) - 1u;
  // coefficient of the canonically ordered generator product for each mask;
  // generators ordered dz^1 < dz~^1 < dz^2 < dz~^2 < ...
  std::vector<MatrixXcd> coeff(full + 1);
  std::vector<char> live(full + 1, 0);
  coeff[0] = MatrixXcd::Identity(r, r);
  live[0] = 1;

  for (int copy = 0; copy < n; copy++) {
    std::vector<MatrixXcd> next(full + 1);
    std::vector<char> nlive(full + 1, 0);
    for (unsigned m = 0; m <= full; m++) {
      if (!live[m]) continue;
      for (int k = 0; k < n; k++) {
        for (int l = 0; l < n; l++) {
          int gz = 2 * k, gzb = 2 * l + 1;
          if (m & (1u << gz) || m & (1u << gzb)) continue;
          int s = append_sign(m, gz);
          unsigned m1 = m | (1u << gz);
          s *= append_sign(m1, gzb);
          unsigned m2 = m1 | (1u << gzb);
          MatrixXcd term = coeff[m] * F.block(k, l) * (std::complex<double>(0.0, double(s)));
          if (nlive[m2]) next[m2] += term;
          else { next[m2] = term; nlive[m2] = 1; }
        }
      }
    }
    coeff.swap(next);
    live.swap(nlive);
  }
  if (!live[full]) return MatrixXcd::Zero(r, r);
  // vol = i^n * (ordered product), and each copy carried one factor of i
  std::complex<double> in = 1.0;
  for (int i = 0; i < n; i++) in *= std::complex<double>(0.0, 1.0);
  return coeff[full] / in;
}

} // namespace mav
