#pragma once

#include <cstdint>

#include "ifipm/ipm.hpp"
#include "ifipm/model.hpp"

namespace ifipm {

struct GeneratedInstance {
  SdoProblem problem;
  Iterate start;  // strictly feasible, centered where the generator can
};

// Builds the problem around a chosen interior point: m independent random
// symmetric constraint matrices, X0 = S0 = I, b_i = A^(i) . I and
// C = sum y0_i A^(i) + I. The start has nu = 1 and centrality 0.
GeneratedInstance gen_random_feasible(int n, int m, std::uint64_t seed,
                                      int max_redraws = 10);

// Relaxation of max x^T C x over {-1,1}^n:
//   max C . X  s.t.  diag(X) = e, X >= 0,
// negated internally to the min convention. The start is X0 = I with the
// dual shift chosen large enough to sit inside the narrow neighborhood of
// opening gamma.
GeneratedInstance gen_qubo_sdo(const SymMatrix& c, double gamma = 0.05);

// Diagonal embedding of the LP  min c^T x, A x = b, x >= 0.
SdoProblem gen_lo_as_sdo(const Matrix& a, const Vector& b, const Vector& c);

struct LoInstance {
  Matrix a;
  Vector b;
  Vector c;
  SdoProblem problem;
  Iterate start;
};

// Random LP with the all-ones vector strictly feasible and a strictly
// feasible dual slack of all ones, embedded as a diagonal SDO with a
// centered start (nu = 1).
LoInstance gen_random_lo(int n, int m, std::uint64_t seed,
                         int max_redraws = 10);

// Initial-point scale for the infeasible method: an exact feasible
// pre-solve estimates an optimal pair, and rho is sized so that
// (1 - gamma1) rho I dominates both X* and S* and rho covers
// (tr X* + tr S*)/n, with a 1.1 margin.
double rho_for_ii(const SdoProblem& p, const Iterate& feasible_start,
                  double gamma1, double presolve_epsilon = 1e-8);

}  // namespace ifipm
