#pragma once

#include <memory>
#include <vector>

#include "ifipm/linalg.hpp"

namespace ifipm {

// Primal-dual semidefinite program
//   min C . X   s.t.  A^(i) . X = b_i,  X >= 0
//   max b^T y   s.t.  sum_i y_i A^(i) + S = C,  S >= 0
// with linearly independent constraint matrices.
class SdoProblem {
 public:
  SdoProblem(std::vector<SymMatrix> a, Vector b, SymMatrix c);

  int n() const { return n_; }
  int m() const { return m_; }
  const std::vector<SymMatrix>& a() const { return a_; }
  const Vector& b() const { return b_; }
  const SymMatrix& c() const { return c_; }
  // m x n(n+1)/2 matrix whose rows are svec(A^(i)).
  const Matrix& a_s() const { return a_s_; }

  // Least-norm preimage A_s^T (A_s A_s^T)^-1 z, cached factorization.
  Vector apply_pseudoinverse(const Vector& z) const;

 private:
  int n_ = 0, m_ = 0;
  std::vector<SymMatrix> a_;
  Vector b_;
  SymMatrix c_;
  Matrix a_s_;
  std::shared_ptr<Eigen::LLT<Matrix>> gram_llt_;  // of A_s A_s^T
};

// Primal-dual point with the normalized gap cached on construction.
struct Iterate {
  SymMatrix X;
  Vector y;
  SymMatrix S;
  double nu = 0.0;

  Iterate() = default;
  Iterate(SymMatrix x, Vector y_, SymMatrix s);
};

inline double duality_gap_normalized(const Iterate& it) { return it.nu; }

struct ResidualReport {
  Vector rp;          // A_s svec(X) - b
  Vector rd;          // svec(sum y_i A^(i) + S - C)
  double gap = 0.0;   // X . S
  double centrality = 0.0;  // || X^1/2 S X^1/2 - nu I ||_F, if requested
};

// Centrality may only be requested for positive definite X.
ResidualReport residuals(const SdoProblem& p, const Iterate& it,
                         bool with_centrality = true);

// d(X, S) = || X^1/2 S X^1/2 - nu I ||_F with nu = X.S/n.
double centrality_measure(const SymMatrix& x, const SymMatrix& s);

enum class NeighborhoodReason {
  kInside,
  kPrimalResidual,
  kDualResidual,
  kXNotPd,
  kSNotPd,
  kCentrality,
  kTauThetaOrder,
};

struct NeighborhoodCheck {
  bool ok = false;
  NeighborhoodReason reason = NeighborhoodReason::kInside;
  double nu = 0.0;
  double centrality = 0.0;

  explicit operator bool() const { return ok; }
};

// Narrow neighborhood: feasible to feas_tol, X,S > 0, d(X,S) <= gamma nu.
NeighborhoodCheck in_frobenius_neighborhood(const SdoProblem& p,
                                            const Iterate& it, double gamma,
                                            double feas_tol = 1e-9);

// Large neighborhood: feasible, X,S > 0, lambda_min(XS) >= gamma nu.
NeighborhoodCheck in_minus_infinity_neighborhood(const SdoProblem& p,
                                                 const Iterate& it,
                                                 double gamma,
                                                 double feas_tol = 1e-9);

// State of the infeasible path-following method.
struct InfeasibleState {
  double tau = 1.0;
  double theta = 1.0;
  Iterate iterate;
  Vector R0p;  // initial primal residual A_s svec(X0) - b
  Vector R0d;  // initial dual residual svec(S0 - C) + A_s^T y0
  double rho = 1.0;
  double mu0 = 1.0;  // rho^2
};

struct InfeasibleNeighborhoodOptions {
  // Default is the operator norm on H_P(XS) - theta mu0 I; set to use
  // Frobenius instead.
  bool frobenius_centrality = false;
};

// Membership in the neighborhood of the infeasible central path:
//   tau <= theta,
//   dual residual  = tau (R0d + zeta_d),  ||zeta_d||        <= gamma1 rho,
//   primal residual = tau (R0p + zeta_p), ||A_s^+ zeta_p||  <= gamma1 rho,
//   || H_P(XS) - theta mu0 I || <= gamma2 theta mu0,
// with P defaulting to S^1/2 of the tested point when no P is supplied.
NeighborhoodCheck in_infeasible_neighborhood(
    const InfeasibleState& st, const SdoProblem& p, double gamma1,
    double gamma2, double mu0, const Matrix* scaling_p = nullptr,
    const InfeasibleNeighborhoodOptions& opts = {});

}  // namespace ifipm
