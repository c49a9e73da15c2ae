#include <doctest.h>

#include <Eigen/Dense>

#include "mav/exterior.h"
#include "mav/positivity.h"
#include "mav/rng.h"
#include "oracles.h"

using namespace mav;

namespace {

Eigen::MatrixXcd random_matrix(Rng& rng, int r) {
  Eigen::MatrixXcd m(r, r);
  for (int i = 0; i < r; i++)
    for (int j = 0; j < r; j++) m(i, j) = cplx(rng.gaussian(), rng.gaussian());
  return m;
}

EndoForm11 random_form(Rng& rng, int r, double shift = 0.0) {
  EndoForm11 F;
  F.r = r;
  Eigen::MatrixXcd a = random_matrix(rng, r), c = random_matrix(rng, r);
  F.A = 0.5 * (a + a.adjoint()) + shift * Eigen::MatrixXcd::Identity(r, r);
  F.C = 0.5 * (c + c.adjoint()) + shift * Eigen::MatrixXcd::Identity(r, r);
  F.B = random_matrix(rng, r);
  return F;
}

// Nakano-positive by construction: blocks of a positive definite 2r x 2r matrix
EndoForm11 nakano_positive_form(Rng& rng, int r) {
  Eigen::MatrixXcd g = random_matrix(rng, 2 * r);
  Eigen::MatrixXcd T = g * g.adjoint() + 0.1 * Eigen::MatrixXcd::Identity(2 * r, 2 * r);
  EndoForm11 F;
  F.r = r;
  F.A = T.topLeftCorner(r, r);
  F.B = T.bottomLeftCorner(r, r);
  F.C = T.bottomRightCorner(r, r);
  return F;
}

// Positive on both metric pairings: A, C >= I and ||B|| <= 0.8 force
// lambda_min >= 0.2 for the Nakano matrix [[A,B+],[B,C]] and its partial
// transpose [[A,B],[B+,C]] alike.
EndoForm11 jointly_positive_form(Rng& rng, int r) {
  EndoForm11 F;
  F.r = r;
  Eigen::MatrixXcd a = random_matrix(rng, r), c = random_matrix(rng, r);
  F.A = a * a.adjoint() / double(r) + Eigen::MatrixXcd::Identity(r, r);
  F.C = c * c.adjoint() / double(r) + Eigen::MatrixXcd::Identity(r, r);
  Eigen::MatrixXcd b = random_matrix(rng, r);
  F.B = 0.8 * b / b.operatorNorm();
  return F;
}

// Nakano margin of the partial transpose, i.e. of [[A,B],[B+,C]]. Swapping
// B for B+ in the form feeds exactly that matrix through nakano_check.
PositivityVerdict dual_nakano_check(const EndoForm11& F) {
  EndoForm11 G = F;
  G.B = F.B.adjoint();
  return nakano_check(G);
}

EndoForm11 fs_reference_form() {
  EndoForm11 F;
  F.r = 2;
  F.A = Eigen::Vector2cd(2, 1).asDiagonal();
  F.C = Eigen::Vector2cd(1, 2).asDiagonal();
  F.B = Eigen::MatrixXcd::Zero(2, 2);
  F.B(0, 1) = 1.0;
  return F;
}

EndoForm11n embed(const EndoForm11& F) {
  EndoForm11n G;
  G.n = 2;
  G.r = F.r;
  G.M = {F.A, F.B.adjoint(), F.B, F.C};
  return G;
}

} // namespace

TEST_CASE("endo form validation") {
  EndoForm11 F;
  F.r = 2;
  F.A = Eigen::MatrixXcd::Identity(2, 2);
  F.C = Eigen::MatrixXcd::Identity(2, 2);
  F.B = Eigen::MatrixXcd::Zero(2, 2);
  CHECK_NOTHROW(validate_endo_form(F));
  F.A(0, 1) = cplx(0.0, 1.0); // breaks Hermiticity
  CHECK_THROWS_AS(validate_endo_form(F), std::invalid_argument);
  F.A(0, 1) = 0.0;
  F.B.resize(3, 3);
  CHECK_THROWS_AS(validate_endo_form(F), std::invalid_argument);
}

TEST_CASE("wedge square equals the permutation-sum oracle") {
  Rng rng(2024);
  for (int trial = 0; trial < 100; trial++) {
    int r = 1 + trial % 3;
    EndoForm11 F = random_form(rng, r);
    TopFormEndo S = wedge_square(F);
    Eigen::MatrixXcd P = oracles::perm_wedge_power(embed(F));
    double scale = 1.0 + P.cwiseAbs().maxCoeff();
    CHECK((S.M - P).cwiseAbs().maxCoeff() < 1e-12 * scale);
  }
}

TEST_CASE("full wedge power is unitarily equivariant") {
  Rng rng(31);
  for (int n : {2, 3}) {
    EndoForm11n F;
    F.n = n;
    F.r = 2;
    F.M.resize(size_t(n) * n);
    for (auto& blk : F.M) blk = random_matrix(rng, 2);
    // a random unitary from the QR of a Gaussian matrix
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(random_matrix(rng, 2));
    Eigen::MatrixXcd U = qr.householderQ();
    EndoForm11n Fc = F;
    for (auto& blk : Fc.M) blk = U * blk * U.adjoint();
    Eigen::MatrixXcd lhs = wedge_power_full(Fc);
    Eigen::MatrixXcd rhs = U * wedge_power_full(F) * U.adjoint();
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12 * (1.0 + rhs.cwiseAbs().maxCoeff()));
    // and against the permutation oracle while we have the data
    Eigen::MatrixXcd P = oracles::perm_wedge_power(F);
    CHECK((wedge_power_full(F) - P).cwiseAbs().maxCoeff() <
          1e-12 * (1.0 + P.cwiseAbs().maxCoeff()));
  }
}

TEST_CASE("quadratic-form margin matches the stacked-trace oracle") {
  Rng rng(17);
  for (int trial = 0; trial < 40; trial++) {
    int r = 1 + trial % 3;
    EndoForm11 F = random_form(rng, r);
    Eigen::MatrixXd M = oracles::ma_form_matrix(F);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M);
    PositivityVerdict v = ma_check(F);
    CHECK(v.margin == doctest::Approx(es.eigenvalues()(0)).epsilon(1e-9));

    // the witness is unit length and attains the margin in the oracle form
    double norm2 = 0.0;
    for (const auto& w : v.witness) norm2 += std::norm(w);
    CHECK(norm2 == doctest::Approx(1.0).epsilon(1e-10));
    Eigen::MatrixXcd alpha(r, r), beta(r, r);
    for (int i = 0; i < r; i++)
      for (int j = 0; j < r; j++) {
        alpha(i, j) = v.witness[size_t(i) * r + j];
        beta(i, j) = v.witness[size_t(r) * r + i * r + j];
      }
    CHECK(oracles::ma_quadratic_form(F, alpha, beta) == doctest::Approx(v.margin).epsilon(1e-8));
  }
}

TEST_CASE("positivity chain: joint metric positivity implies quadratic implies directional") {
  // The quadratic form splits as Q = sum_l u_l' T u_l + sum_l v_l' T' v_l
  // over column and row stacks of (alpha, beta), so positivity of BOTH the
  // Nakano matrix T and its partial transpose T' (dual-Nakano positivity)
  // forces Q >= (lambda_min(T) + lambda_min(T')) |a|^2. Nakano positivity
  // alone does not suffice for r >= 2; see the counterexample test below.
  Rng rng(404);
  int ma_positive_seen = 0;
  for (int trial = 0; trial < 200; trial++) {
    int r = 1 + trial % 3;
    EndoForm11 F = jointly_positive_form(rng, r);
    PositivityVerdict nk = nakano_check(F);
    PositivityVerdict dn = dual_nakano_check(F);
    REQUIRE(nk.margin > 0.1);
    REQUIRE(dn.margin > 0.1);
    PositivityVerdict ma = ma_check(F);
    CHECK(ma.positive);
    // the split makes the sum of the two metric margins a valid lower bound
    CHECK(ma.margin >= nk.margin + dn.margin - 1e-9);
    PositivityVerdict gr = griffiths_check(F, 128, 1 + trial);
    CHECK((gr.positive || gr.inconclusive));
    if (ma.positive) ma_positive_seen++;
  }
  CHECK(ma_positive_seen == 200);

  // For r = 1 the partial transpose is the transpose, so Nakano positivity
  // alone does imply quadratic positivity, with margin at least twice the
  // metric margin.
  for (int trial = 0; trial < 50; trial++) {
    EndoForm11 F = nakano_positive_form(rng, 1);
    PositivityVerdict nk = nakano_check(F);
    REQUIRE(nk.positive);
    PositivityVerdict ma = ma_check(F);
    CHECK(ma.positive);
    CHECK(ma.margin >= 2.0 * nk.margin - 1e-9);
  }

  // quadratic positivity without metric positivity: the curvature of the
  // projective tangent sheaf at the origin has a null metric direction
  EndoForm11 fs = fs_reference_form();
  PositivityVerdict nk = nakano_check(fs);
  // the metric margin sits exactly on the boundary; only its size is
  // meaningful, the strict flag is rounding noise there
  CHECK(std::fabs(nk.margin) < 1e-12);
  PositivityVerdict ma = ma_check(fs);
  CHECK(ma.positive);
  CHECK(ma.margin == doctest::Approx(3.0 - std::sqrt(3.0)).epsilon(1e-10));
  PositivityVerdict gr = griffiths_check(fs, 512, 9);
  CHECK(gr.positive);
}

TEST_CASE("metric positivity alone does not control the quadratic form") {
  // Pinned counterexample at r = 2. The Nakano matrix here is the rank-one
  // projector onto the maximally entangled vector plus 0.1 I, so its
  // partial transpose picks up the eigenvalue 0.1 - 1/2 < 0, and the
  // direction alpha = [[1,0],[1,0]], beta = [[0,1],[0,1]] drives the
  // quadratic form to -1 + 8 * 0.1 = -0.2. Any "fix" that makes the
  // quadratic check follow from the metric check alone is wrong; this test
  // keeps that door shut.
  EndoForm11 F;
  F.r = 2;
  F.A = Eigen::Vector2cd(0.6, 0.1).asDiagonal();
  F.C = Eigen::Vector2cd(0.1, 0.6).asDiagonal();
  F.B = Eigen::MatrixXcd::Zero(2, 2);
  F.B(1, 0) = 0.5;

  PositivityVerdict nk = nakano_check(F);
  CHECK(nk.positive);
  CHECK(nk.margin == doctest::Approx(0.1).epsilon(1e-12));
  PositivityVerdict dn = dual_nakano_check(F);
  CHECK(!dn.positive);
  CHECK(dn.margin == doctest::Approx(-0.4).epsilon(1e-12));

  PositivityVerdict ma = ma_check(F);
  CHECK(!ma.positive);
  CHECK(ma.margin < -0.05);

  Eigen::MatrixXcd alpha(2, 2), beta(2, 2);
  alpha << 1, 0, 1, 0;
  beta << 0, 1, 0, 1;
  CHECK(oracles::ma_quadratic_form(F, alpha, beta) == doctest::Approx(-0.2).epsilon(1e-12));
}

TEST_CASE("directional positivity does not imply quadratic positivity") {
  // Recorded as a numerical observation: the separation is real already at
  // the pointwise linear-algebra level. No fixed count is asserted, only the
  // one-way implication and the internal consistency of any separating
  // instance found.
  Rng rng(777);
  int separations = 0;
  for (int trial = 0; trial < 2000; trial++) {
    EndoForm11 F = random_form(rng, 2, 1.5);
    PositivityVerdict gr = griffiths_check(F, 256, 100 + trial);
    PositivityVerdict ma = ma_check(F);
    if (ma.positive && ma.margin > 1e-6) {
      // the forward implication must hold: sampled margin overestimates the
      // true minimum, so it cannot come out decisively negative
      CHECK(gr.margin > -1e-9);
    }
    if (gr.positive && !gr.inconclusive && gr.margin > 1e-6 && ma.margin < -1e-6) {
      separations++;
      // confirm with the oracle quadratic form at the library's witness
      Eigen::MatrixXcd alpha(2, 2), beta(2, 2);
      for (int i = 0; i < 2; i++)
        for (int j = 0; j < 2; j++) {
          alpha(i, j) = ma.witness[size_t(i) * 2 + j];
          beta(i, j) = ma.witness[4 + size_t(i) * 2 + j];
        }
      CHECK(oracles::ma_quadratic_form(F, alpha, beta) < 0.0);
    }
  }
  MESSAGE("directional-but-not-quadratic instances found: ", separations, " of 2000");
  CHECK(separations > 0);
}

TEST_CASE("chern gap: frozen values and the split family") {
  EndoForm11 fs = fs_reference_form();
  CHECK(chern_gap(fs) == doctest::Approx(-6.0).epsilon(1e-13));

  // split rank-two family with equal densities a and b in both directions:
  // the gap is 2 (a - b)^2
  for (double a : {1.0, 2.0, 3.5})
    for (double b : {0.5, 1.0, -1.0}) {
      EndoForm11 F;
      F.r = 2;
      F.A = Eigen::Vector2cd(a, b).asDiagonal();
      F.C = Eigen::Vector2cd(a, b).asDiagonal();
      F.B = Eigen::MatrixXcd::Zero(2, 2);
      CHECK(chern_gap(F) == doctest::Approx(2.0 * (a - b) * (a - b)).epsilon(1e-13));
    }

  EndoForm11 r3;
  r3.r = 3;
  r3.A = Eigen::MatrixXcd::Identity(3, 3);
  r3.B = Eigen::MatrixXcd::Zero(3, 3);
  r3.C = Eigen::MatrixXcd::Identity(3, 3);
  CHECK_THROWS_AS(chern_gap(r3), MavError);
}

TEST_CASE("equation residual at an exact solution") {
  EndoForm11 fs = fs_reference_form();
  CHECK(vbma_residual(fs, 3.0) < 1e-14); // F^F = 3 Id vol exactly
  CHECK(vbma_residual(fs, 2.0) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK_THROWS_AS(vbma_residual(fs, -1.0), std::invalid_argument);
}

TEST_CASE("abelian moment map vanishes exactly at solutions and pairs linearly") {
  TorusGrid g = make_grid(cplx(0.0, 1.0), 32);
  Rng rng(12);
  Density11 F(g), eta(g);
  ScalarField H(g);
  for (size_t i = 0; i < F.v.size(); i++) {
    F.v[i] = 1.0 + 0.3 * rng.gaussian();
    H.v[i] = rng.gaussian();
  }
  eta.v = F.v; // exact solution: F = eta pointwise
  CHECK(moment_map_value(H, F, eta, 3) == 0.0);

  // linear pairing against the deviation, scaled by the weight
  Density11 eta2(g);
  for (size_t i = 0; i < eta2.v.size(); i++) eta2.v[i] = F.v[i] - 0.25;
  double m1 = moment_map_value(H, F, eta2, 1);
  double m3 = moment_map_value(H, F, eta2, 3);
  CHECK(m3 == doctest::Approx(3.0 * m1).epsilon(1e-13));
  ScalarField one(g, 1.0);
  CHECK(moment_map_value(one, F, eta2, 1) == doctest::Approx(0.25 * g.area()).epsilon(1e-12));

  TorusGrid g2 = make_grid(cplx(0.0, 1.0), 16);
  Density11 wrong(g2);
  CHECK_THROWS_AS(moment_map_value(H, wrong, eta, 1), MavError);
  CHECK_THROWS_AS(moment_map_value(H, F, eta, 0), std::invalid_argument);
}
