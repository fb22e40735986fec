#pragma once

#include "ifipm/linalg.hpp"
#include "ifipm/model.hpp"

namespace ifipm {

enum class ScalingChoice { kAho, kHkm, kNt };

const char* to_string(ScalingChoice c);

// Symmetrization map H_P(M) = 1/2 (P M P^-1 + P^-T M^T P^T).
SymMatrix h_p(const Matrix& m, const Matrix& p);

// Nesterov-Todd scaling point W = S^-1/2 (S^1/2 X S^1/2)^1/2 S^-1/2,
// the unique symmetric positive definite solution of W S W = X.
SymMatrix nt_scaling(const SymMatrix& x, const SymMatrix& s);

// Equivalent form X^1/2 (X^1/2 S X^1/2)^-1/2 X^1/2, kept as a cross-check.
SymMatrix nt_scaling_alt(const SymMatrix& x, const SymMatrix& s);

// Scaling operators for one interior point iteration:
//   Es  = P (x)_s P^-T S
//   Fs  = P X (x)_s P^-T
//   Rcs = svec(sigma nu I - H_P(XS))
// with P = I (AHO), S^1/2 (HKM) or W^-1/2 (NT). Specialized forms of the
// right-hand side carrying a leading factor 2 describe the same linear
// system with the whole row doubled; the canonical form above is used for
// all three choices so the computed directions coincide.
struct ScalingData {
  ScalingChoice choice = ScalingChoice::kNt;
  Matrix P;
  Matrix P_invT;
  Matrix PX;
  Matrix PinvT_S;
  bool has_w = false;
  SymMatrix W;
  Matrix Es;
  Matrix Fs;
  Vector Rcs;
};

ScalingData build_scaling(ScalingChoice choice, const SymMatrix& x,
                          const SymMatrix& s, double sigma, double nu);

}  // namespace ifipm
