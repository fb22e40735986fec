#pragma once

#include "ifipm/model.hpp"
#include "ifipm/scaling.hpp"

namespace ifipm {

// Orthonormal basis of the nullspace of A_s from a Householder QR of A_s^T
// with column pivoting; computed once per problem and reused.
struct NullspaceBasis {
  Matrix Q2;  // n(n+1)/2 x (n(n+1)/2 - m), A_s Q2 = 0, Q2^T Q2 = I
  Matrix Q1;  // n(n+1)/2 x m, range of A_s^T
  Matrix R;   // m x m upper-triangular factor (pivoted)
  Eigen::VectorXi perm;  // column permutation applied to A_s^T
};

NullspaceBasis nullspace_basis(const Matrix& a_s, double rank_tol = 1e-10);

// Reduced feasible Newton system [ Es Q2 | -Fs A_s^T ] (dz, dy) = Rcs.
struct IfNewtonSystem {
  Matrix M;
  Vector rhs;
  int split = 0;  // dz block width
};

IfNewtonSystem assemble_if(const ScalingData& sd, const NullspaceBasis& nb,
                           const Matrix& a_s);

struct Directions {
  SymMatrix dX;
  Vector dy;
  SymMatrix dS;
};

// svec(dX) = Q2 dz and svec(dS) = -A_s^T dy; for any (dz, dy), exact or
// not, dX stays in the nullspace and dS in the rowspace, so steps of any
// length preserve primal and dual feasibility and dX . dS = 0.
Directions reconstruct_directions(const NullspaceBasis& nb, const Matrix& a_s,
                                  const Vector& dz, const Vector& dy);

// Residual injections for the infeasible method.
struct ResidualInjection {
  Vector rp;  // length m
  Vector rd;  // packed, length n(n+1)/2
  Vector rc;  // packed symmetric, length n(n+1)/2

  static ResidualInjection zero(int n, int m);
};

// Full 3x3 block system of the infeasible method,
//   [ 0    A_s^T  I  ] [svec(dX)]   [ -eta1 (Rd + rd) ]
//   [ A_s  0      0  ] [  dy    ] = [ -eta1 (Rp + rp) ]
//   [ Es   0      Fs ] [svec(dS)]   [ Rc_s + svec(rc) ]
// where Rc_s targets (1 - eta2) theta mu0 I on the complementarity row.
struct IiNewtonSystem {
  Matrix M;
  Vector rhs;
  int w = 0;  // packed width n(n+1)/2
  int m = 0;
};

IiNewtonSystem assemble_ii(const ScalingData& sd, const SdoProblem& p,
                           const Iterate& it, double eta1, double eta2,
                           double tau, double theta, double mu0,
                           const ResidualInjection& inj);

}  // namespace ifipm
