#include "mav/vortex.h"

#include <cmath>

namespace mav {

SlopeRecord ma_slopes(int r1, int r2) {
  if (r1 < 1 || r2 < 1) throw std::invalid_argument("ma_slopes: ranks must be >= 1");
  SlopeRecord rec;
  rec.ch2_sub = (long long)(r1 + 1) * r2;
  rec.ch2_total = (long long)(r1 + 1) * r2 + (long long)r1 * (r2 + 1);
  rec.mu_ma_sub = Rational(rec.ch2_sub, 1);
  rec.mu_ma_total = Rational(rec.ch2_total, 2);
  rec.ma_stable = rec.mu_ma_sub < rec.mu_ma_total;
  // product polarization degrees: c1(S) = (r1+1, 2 r2), c1(Q) = (r1, 2 r2 + 2),
  // c1(V) = (2 r1 + 1, 4 r2 + 2), intersection (a,b).(c,d) = a d + b c
  rec.deg_sub = (long long)(r1 + 1) * (4 * r2 + 2) + (long long)(2 * r2) * (2 * r1 + 1);
  rec.deg_total = (long long)(2 * r1 + 1) * (4 * r2 + 2) + (long long)(4 * r2 + 2) * (2 * r1 + 1);
  rec.mumford_gap = rec.deg_sub - rec.deg_total / 2;
  return rec;
}

long long mumford_gap(int r1, int r2) { return ma_slopes(r1, r2).mumford_gap; }

ReducedResiduals reduced_system_residuals(VortexProblem& prob, const ScalarField& psi,
                                          const ScalarField& v) {
  MetricState st = prob.make_state(psi, 1.0);
  Density11 fh = prob.engine().curvature_increment(psi);
  Density11 ff2 = prob.engine().curvature_increment(v);
  double om = prob.omega();
  double mu = prob.cfg().mu();
  double r1 = prob.cfg().r1;
  double r2 = prob.cfg().r2;
  ReducedResiduals out{Density11(prob.grid()), Density11(prob.grid()), 0.0, 0.0};
  for (size_t i = 0; i < out.R1.v.size(); i++) {
    double Fh = om + fh.v[i]; // curvature of h = h0 e^{-psi}
    double P2 = ff2.v[i] + r1 * om;
    double p2 = st.phi2.v[i];
    out.R1.v[i] = 2.0 * (Fh + P2) * (2.0 * r2 + p2) - st.G.v[i] - mu * om;
    out.R2.v[i] = 2.0 * P2 * (2.0 + 2.0 * r2 - p2) - st.G.v[i] - mu * om;
    out.sup1 = std::max(out.sup1, std::fabs(out.R1.v[i]));
    out.sup2 = std::max(out.sup2, std::fabs(out.R2.v[i]));
  }
  return out;
}

GriffithsMargins griffiths_margins(VortexProblem& prob, const ScalarField& psi,
                                   const ScalarField& v) {
  MetricState st = prob.make_state(psi, 1.0);
  Density11 fh = prob.engine().curvature_increment(psi);
  Density11 ff2 = prob.engine().curvature_increment(v);
  double om = prob.omega();
  double r1 = prob.cfg().r1;
  double r2 = prob.cfg().r2;
  GriffithsMargins m;
  m.m1 = m.m2 = m.m3 = m.m4 = 1e300;
  for (size_t i = 0; i < st.phi2.v.size(); i++) {
    double Fh = om + fh.v[i];
    double P2 = ff2.v[i] + r1 * om;
    double p2 = st.phi2.v[i];
    m.m1 = std::min(m.m1, Fh + P2);
    m.m2 = std::min(m.m2, P2);
    m.m3 = std::min(m.m3, 2.0 * r2 + 2.0 - p2);
    m.m4 = std::min(m.m4, Fh * (2.0 * r2 + 2.0 - p2) + (4.0 * r2 + 2.0) * P2 - st.G.v[i]);
  }
  m.min_margin = std::min({m.m1, m.m2, m.m3, m.m4});
  return m;
}

Density11 vortex_chern_gap(VortexProblem& prob, const ScalarField& psi, const ScalarField& v) {
  MetricState st = prob.make_state(psi, 1.0);
  Density11 fh = prob.engine().curvature_increment(psi);
  Density11 ff2 = prob.engine().curvature_increment(v);
  double om = prob.omega();
  double r1 = prob.cfg().r1;
  double r2 = prob.cfg().r2;
  Density11 gap(prob.grid());
  for (size_t i = 0; i < gap.v.size(); i++) {
    double Fh = om + fh.v[i];
    double P1 = Fh + ff2.v[i] + r1 * om;
    double P2 = ff2.v[i] + r1 * om;
    double q1 = 2.0 * r2 + st.phi2.v[i];
    double q2 = 2.0 * r2 + 2.0 - st.phi2.v[i];
    gap.v[i] = 2.0 * (P1 - P2) * (q1 - q2) - 4.0 * st.G.v[i];
  }
  return gap;
}

} // namespace mav
