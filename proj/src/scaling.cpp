#include "ifipm/scaling.hpp"

namespace ifipm {

const char* to_string(ScalingChoice c) {
  switch (c) {
    case ScalingChoice::kAho: return "aho";
    case ScalingChoice::kHkm: return "hkm";
    case ScalingChoice::kNt: return "nt";
  }
  return "?";
}

SymMatrix h_p(const Matrix& m, const Matrix& p) {
  if (m.rows() != m.cols() || p.rows() != p.cols() || m.rows() != p.rows())
    throw DimensionError("h_p requires square matrices of equal order");
  Eigen::PartialPivLU<Matrix> lu(p);
  Matrix pinv = lu.solve(Matrix::Identity(p.rows(), p.cols()));
  double recond = p.norm() * pinv.norm();
  if (!pinv.allFinite() || recond > 1e15)
    throw SingularMatrixError("scaling matrix is singular to working precision");
  Matrix t = p * m * pinv;
  return sym_part(t);
}

SymMatrix nt_scaling(const SymMatrix& x, const SymMatrix& s) {
  SymMatrix sh = mat_sqrt(s);
  SymMatrix shinv = mat_inv_sqrt(s);
  SymMatrix mid = mat_sqrt(sym_part(sh.mat() * x.mat() * sh.mat()));
  return sym_part(shinv.mat() * mid.mat() * shinv.mat());
}

SymMatrix nt_scaling_alt(const SymMatrix& x, const SymMatrix& s) {
  SymMatrix xh = mat_sqrt(x);
  SymMatrix mid = mat_inv_sqrt(sym_part(xh.mat() * s.mat() * xh.mat()));
  return sym_part(xh.mat() * mid.mat() * xh.mat());
}

ScalingData build_scaling(ScalingChoice choice, const SymMatrix& x,
                          const SymMatrix& s, double sigma, double nu) {
  const int n = x.n();
  ScalingData sd;
  sd.choice = choice;
  switch (choice) {
    case ScalingChoice::kAho:
      sd.P = Matrix::Identity(n, n);
      sd.P_invT = sd.P;
      break;
    case ScalingChoice::kHkm:
      sd.P = mat_sqrt(s).mat();
      sd.P_invT = mat_inv_sqrt(s).mat();
      break;
    case ScalingChoice::kNt:
      sd.W = nt_scaling(x, s);
      sd.has_w = true;
      sd.P = mat_inv_sqrt(sd.W).mat();
      sd.P_invT = mat_sqrt(sd.W).mat();
      break;
  }
  sd.PX = sd.P * x.mat();
  sd.PinvT_S = sd.P_invT * s.mat();
  sd.Es = sym_kron(sd.P, sd.PinvT_S);
  sd.Fs = sym_kron(sd.PX, sd.P_invT);
  // H_P(XS) = 1/2 (P XS P^-1 + P^-T SX P^T); P is symmetric for all three
  // choices, so P^-1 = P_invT.
  Matrix hp = sd.P * x.mat() * (s.mat() * sd.P_invT);
  sd.Rcs = svec(sym_part(sigma * nu * Matrix::Identity(n, n) - sym_part(hp).mat()));
  return sd;
}

}  // namespace ifipm
