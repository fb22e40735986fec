#include <doctest.h>

#include "ifipm/instances.hpp"
#include "ifipm/newton.hpp"
#include "ifipm/solvers.hpp"
#include "oracles.hpp"

using namespace ifipm;

TEST_CASE("nullspace basis of an axis constraint") {
  Matrix a_s(1, 3);
  a_s << 1, 0, 0;
  NullspaceBasis nb = nullspace_basis(a_s);
  REQUIRE(nb.Q2.cols() == 2);
  CHECK((a_s * nb.Q2).norm() <= 1e-14);
  CHECK((nb.Q2.transpose() * nb.Q2 - Matrix::Identity(2, 2)).norm() <= 1e-14);
  // spans {e2, e3}: first coordinate of every basis vector is zero
  CHECK(nb.Q2.row(0).norm() <= 1e-14);
}

TEST_CASE("nullspace basis properties on a seeded system") {
  auto [p, start] = gen_random_feasible(3, 3, 17);
  (void)start;
  NullspaceBasis nb = nullspace_basis(p.a_s());
  REQUIRE(nb.Q2.rows() == 6);
  REQUIRE(nb.Q2.cols() == 3);
  CHECK((p.a_s() * nb.Q2).norm() <= 1e-10 * p.a_s().norm());
  CHECK((nb.Q2.transpose() * nb.Q2 - Matrix::Identity(3, 3)).norm() <= 1e-12);
  CHECK((nb.Q1.transpose() * nb.Q2).norm() <= 1e-12);
}

TEST_CASE("degenerate width: m equals the packed dimension") {
  auto [p, start] = gen_random_feasible(2, 3, 23);
  (void)start;
  NullspaceBasis nb = nullspace_basis(p.a_s());
  CHECK(nb.Q2.cols() == 0);
  // the reduced system is square in dy alone
  ScalingData sd = build_scaling(ScalingChoice::kNt, SymMatrix::identity(2),
                                 SymMatrix::identity(2), 0.9, 1.0);
  IfNewtonSystem sys = assemble_if(sd, nb, p.a_s());
  CHECK(sys.split == 0);
  CHECK(sys.M.rows() == 3);
  CHECK(sys.M.cols() == 3);
}

TEST_CASE("rank-deficient constraints name an offender") {
  Matrix a_s(2, 3);
  a_s << 1, 2, 0, 2, 4, 0;
  CHECK_THROWS_AS(nullspace_basis(a_s), RankError);
}

TEST_CASE("centered point solves to zero directions") {
  auto [p, start] = gen_random_feasible(3, 2, 29);
  (void)start;
  NullspaceBasis nb = nullspace_basis(p.a_s());
  SymMatrix eye = SymMatrix::identity(3);
  ScalingData sd = build_scaling(ScalingChoice::kNt, eye, eye, 1.0, 1.0);
  IfNewtonSystem sys = assemble_if(sd, nb, p.a_s());
  CHECK(sys.rhs.norm() <= 1e-13);
  SolveReport rep = solve_exact(sys.M, sys.rhs);
  CHECK(rep.solution.norm() <= 1e-12);
}

TEST_CASE("reduced system agrees with the dense three-block oracle") {
  Rng rng(211);
  for (ScalingChoice c :
       {ScalingChoice::kAho, ScalingChoice::kHkm, ScalingChoice::kNt}) {
    auto [p, start] = gen_random_feasible(3, 2, 31);
    (void)start;
    NullspaceBasis nb = nullspace_basis(p.a_s());
    SymMatrix x = oracles::random_spd(rng, 3);
    SymMatrix s = oracles::random_spd(rng, 3);
    double nu = trace_inner(x, s) / 3;
    ScalingData sd = build_scaling(c, x, s, 0.9, nu);

    IfNewtonSystem sys = assemble_if(sd, nb, p.a_s());
    SolveReport rep = solve_exact(sys.M, sys.rhs);
    Directions dirs = reconstruct_directions(
        nb, p.a_s(), rep.solution.head(sys.split), rep.solution.tail(p.m()));

    oracles::FullSystemSolution full = oracles::solve_full_newton(sd, p.a_s());
    CHECK((svec(dirs.dX) - full.dx).norm() <= 1e-8 * (1.0 + full.dx.norm()));
    CHECK((dirs.dy - full.dy).norm() <= 1e-8 * (1.0 + full.dy.norm()));
    CHECK((svec(dirs.dS) - full.ds).norm() <= 1e-8 * (1.0 + full.ds.norm()));

    // the mapped-back reduced coordinates match Q2^T svec(dX)
    CHECK((nb.Q2.transpose() * full.dx - rep.solution.head(sys.split)).norm() <=
          1e-8 * (1.0 + full.dx.norm()));

    // rows one and two of the full system hold exactly for the
    // reconstruction; row three up to the solver residual
    CHECK((p.a_s() * svec(dirs.dX)).norm() <= 1e-10);
    Vector dual_row = p.a_s().transpose() * dirs.dy + svec(dirs.dS);
    CHECK(dual_row.norm() <= 1e-10);
    Vector third = sd.Es * svec(dirs.dX) + sd.Fs * svec(dirs.dS) - sd.Rcs;
    CHECK(third.norm() <= 1e-8 * (1.0 + sd.Rcs.norm()));
  }
}

TEST_CASE("uniqueness: two independent solvers agree") {
  Rng rng(223);
  auto [p, start] = gen_random_feasible(4, 5, 37);
  (void)start;
  NullspaceBasis nb = nullspace_basis(p.a_s());
  SymMatrix x = oracles::random_spd(rng, 4);
  SymMatrix s = oracles::random_spd(rng, 4);
  ScalingData sd =
      build_scaling(ScalingChoice::kHkm, x, s, 0.9, trace_inner(x, s) / 4);
  IfNewtonSystem sys = assemble_if(sd, nb, p.a_s());
  Vector via_lu = sys.M.partialPivLu().solve(sys.rhs);
  Vector via_qr = sys.M.colPivHouseholderQr().solve(sys.rhs);
  CHECK((via_lu - via_qr).norm() <= 1e-8 * (1.0 + via_lu.norm()));
}

TEST_CASE("directions from any coefficients stay orthogonal and feasible") {
  Rng rng(227);
  auto [p, start] = gen_random_feasible(4, 5, 41);
  NullspaceBasis nb = nullspace_basis(p.a_s());
  for (int rep = 0; rep < 25; ++rep) {
    // arbitrary (noise-corrupted) coefficients, not a Newton solution
    Vector dz = rng.normal_vector(static_cast<int>(nb.Q2.cols()));
    Vector dy = rng.normal_vector(p.m());
    Directions d = reconstruct_directions(nb, p.a_s(), dz, dy);

    CHECK((p.a_s() * svec(d.dX)).norm() <= 1e-10 * (1.0 + p.a_s().norm()));
    double ip = trace_inner(d.dX, d.dS);
    CHECK(std::abs(ip) <=
          1e-10 * (1.0 + d.dX.mat().norm() * d.dS.mat().norm()));

    // feasibility is preserved for every step length
    for (double alpha : {0.1, 1.0, 7.5}) {
      Vector rp = p.a_s() * (svec(start.X) + alpha * svec(d.dX)) - p.b();
      CHECK(rp.norm() <= 1e-10 * (1.0 + p.b().norm()));
      Vector y_a = start.y + alpha * d.dy;
      Vector rd = p.a_s().transpose() * y_a + svec(start.S) +
                  alpha * svec(d.dS) - svec(p.c());
      CHECK(rd.norm() <= 1e-9 * (1.0 + p.c().mat().norm()));
    }
  }

  SUBCASE("zero coefficients give zero directions") {
    Directions d = reconstruct_directions(
        nb, p.a_s(), Vector::Zero(nb.Q2.cols()), Vector::Zero(p.m()));
    CHECK(d.dX.mat().norm() == 0.0);
    CHECK(d.dS.mat().norm() == 0.0);
  }
}

TEST_CASE("gap update law under an inexact step") {
  // nu(alpha) = (1 - alpha + sigma alpha) nu + alpha tr(Rr)/n with Rr the
  // third-row residual of the reduced solve.
  Rng rng(229);
  auto [p, start] = gen_random_feasible(3, 4, 47);
  NullspaceBasis nb = nullspace_basis(p.a_s());
  SymMatrix x = start.X, s = start.S;
  double nu = start.nu;
  double sigma = 0.9;
  ScalingData sd = build_scaling(ScalingChoice::kNt, x, s, sigma, nu);
  IfNewtonSystem sys = assemble_if(sd, nb, p.a_s());
  // corrupt the exact solution to force a visible residual
  Vector sol = sys.M.partialPivLu().solve(sys.rhs);
  sol += 0.01 * rng.normal_vector(static_cast<int>(sol.size()));
  Directions d = reconstruct_directions(nb, p.a_s(), sol.head(sys.split),
                                        sol.tail(p.m()));
  SymMatrix rr = smat(Vector(sys.M * sol - sys.rhs));
  double alpha = 1.0;
  Iterate next(sym_part(x.mat() + alpha * d.dX.mat()), start.y + alpha * d.dy,
               sym_part(s.mat() + alpha * d.dS.mat()));
  double predicted = (1.0 - alpha + sigma * alpha) * nu +
                     alpha * rr.mat().trace() / p.n();
  CHECK(next.nu == doctest::Approx(predicted).epsilon(1e-9));
}

TEST_CASE("infeasible system assembly") {
  auto [p, start] = gen_random_feasible(3, 4, 53);
  (void)start;
  const int n = 3, w = svec_dim(n);
  double rho = 2.0, mu0 = rho * rho;
  Matrix x0m = rho * Matrix::Identity(n, n);
  Iterate it(SymMatrix::from_symmetric_unchecked(x0m), Vector::Zero(p.m()),
             SymMatrix::from_symmetric_unchecked(x0m));
  ScalingData sd = build_scaling(ScalingChoice::kHkm, it.X, it.S, 0.5, mu0);
  double eta1 = 0.9, eta2 = 0.5, tau = 1.0, theta = 1.0;

  ResidualInjection inj = ResidualInjection::zero(n, p.m());
  IiNewtonSystem sys =
      assemble_ii(sd, p, it, eta1, eta2, tau, theta, mu0, inj);

  SUBCASE("zero blocks and block pattern") {
    CHECK(sys.M.block(0, 0, w, w).norm() == 0.0);
    CHECK(sys.M.block(w, w, p.m(), p.m() + w).norm() == 0.0);
    CHECK(sys.M.block(w + p.m(), w, w, p.m()).norm() == 0.0);
    CHECK((sys.M.block(0, w, w, p.m()) - p.a_s().transpose()).norm() == 0.0);
    CHECK((sys.M.block(0, w + p.m(), w, w) - Matrix::Identity(w, w)).norm() ==
          0.0);
    CHECK((sys.M.block(w, 0, p.m(), w) - p.a_s()).norm() == 0.0);
    CHECK((sys.M.block(w + p.m(), 0, w, w) - sd.Es).norm() == 0.0);
    CHECK((sys.M.block(w + p.m(), w + p.m(), w, w) - sd.Fs).norm() == 0.0);
  }

  SUBCASE("right-hand side blocks at zero injection") {
    ResidualReport res = residuals(p, it, false);
    CHECK((sys.rhs.head(w) + eta1 * res.rd).norm() <= 1e-13);
    CHECK((sys.rhs.segment(w, p.m()) + eta1 * res.rp).norm() <= 1e-13);
    // complementarity row targets (1-eta2) theta mu0 I from rho^2 I
    Vector expect = svec(SymMatrix::from_symmetric_unchecked(Matrix(
        ((1.0 - eta2) * theta * mu0 - mu0) * Matrix::Identity(n, n))));
    CHECK((sys.rhs.tail(w) - expect).norm() <= 1e-12 * (1.0 + expect.norm()));
  }

  SUBCASE("dense solve leaves a tiny relative residual") {
    SolveReport rep = solve_exact(sys.M, sys.rhs);
    CHECK(rep.residual_norm <= 1e-10 * (1.0 + sys.rhs.norm()));
  }
}
