#pragma once

#include <cstdint>

#include "ifipm/linalg.hpp"
#include "ifipm/rng.hpp"

namespace ifipm {

enum class SolverKind { kExact, kCgNormal, kChebyshev, kSimTomography };

const char* to_string(SolverKind k);

// Simulated tomography wraps a non-tomography inner solver.
struct SolverChoice {
  SolverKind kind = SolverKind::kExact;
  SolverKind inner = SolverKind::kExact;
  std::uint64_t seed = 0;
  // Places the full noise mass at radius xi instead of a uniform radius.
  bool worst_case_noise = false;
};

struct SolveReport {
  Vector solution;
  double residual_norm = 0.0;  // ||M u - rhs||_2, recomputed
  int iterations = 0;          // inner iterations or polynomial degree
  double kappa_used = 1.0;
  bool accepted = false;
  int doublings = 0;
};

// Dense LU with partial pivoting; the oracle the inexact paths are checked
// against.
SolveReport solve_exact(const Matrix& m, const Vector& rhs);

// CGLS on the normal equations M^T M u = M^T rhs, using only products with
// M and M^T. Stops once ||M u - rhs||_2 <= xi (absolute).
SolveReport solve_cg_normal(const Matrix& m, const Vector& rhs, double xi,
                            int max_iter);

struct ChebyshevOptions {
  double c_deg = 1.0;    // degree = ceil(c_deg * kappa * ln(1/xi))
  int max_degree = 200000;
  bool retry_double_degree = true;
};

// Polynomial solver: q approximates 1/u on [b/kappa_bound^2, b] and the
// candidate solution is q(M^T M) M^T rhs, evaluated with matrix-vector
// products only (for symmetric M this is the q(M^2) M rhs construction).
// xi is relative: accepted means ||M u - rhs|| <= xi ||rhs||. The matrix is
// rescaled by 1/||M||_F internally and the solution rescaled back.
SolveReport solve_chebyshev(const Matrix& m, const Vector& rhs, double xi,
                            double kappa_bound,
                            const ChebyshevOptions& opts = {});

// Returns u + eta where eta has a uniform direction and radius drawn
// uniformly from [0, xi] (worst_case: radius exactly xi). Deterministic
// given the rng state.
Vector simulate_tomography(const Vector& u, double xi, Rng& rng,
                           bool worst_case = false);

struct AdaptiveOptions {
  int max_doublings = 60;
  // Tag mixed into the tomography stream so distinct solves draw distinct
  // noise under one solver seed.
  std::uint64_t stream_tag = 0;
};

// Condition-number doubling loop: starting from kappa = 1, run the chosen
// solver and accept once the recomputed residual satisfies
// ||M u - rhs||_2 <= varrho * xi_k, doubling kappa otherwise.
SolveReport adaptive_kappa_solve(const Matrix& m, const Vector& rhs,
                                 double varrho, double xi_k,
                                 const SolverChoice& choice,
                                 const AdaptiveOptions& opts = {});

}  // namespace ifipm
