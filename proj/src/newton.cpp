#include "ifipm/newton.hpp"

#include <cmath>

namespace ifipm {

NullspaceBasis nullspace_basis(const Matrix& a_s, double rank_tol) {
  const int m = static_cast<int>(a_s.rows());
  const int w = static_cast<int>(a_s.cols());
  if (m > w) throw DimensionError("A_s has more rows than columns");
  Eigen::ColPivHouseholderQR<Matrix> qr(a_s.transpose());
  double pivot0 = std::abs(qr.matrixR()(0, 0));
  for (int r = 0; r < m; ++r)
    if (std::abs(qr.matrixR()(r, r)) <= rank_tol * pivot0)
      throw RankError(static_cast<int>(qr.colsPermutation().indices()(r)));
  Matrix q = qr.householderQ() * Matrix::Identity(w, w);
  NullspaceBasis nb;
  nb.Q1 = q.leftCols(m);
  nb.Q2 = q.rightCols(w - m);
  nb.R = qr.matrixR().topRows(m).template triangularView<Eigen::Upper>();
  nb.perm = qr.colsPermutation().indices();
  return nb;
}

IfNewtonSystem assemble_if(const ScalingData& sd, const NullspaceBasis& nb,
                           const Matrix& a_s) {
  const int w = static_cast<int>(a_s.cols());
  const int m = static_cast<int>(a_s.rows());
  if (nb.Q2.rows() != w || sd.Es.rows() != w)
    throw DimensionError("assemble_if dimension mismatch");
  IfNewtonSystem sys;
  sys.split = w - m;
  sys.M.resize(w, w);
  sys.M.leftCols(sys.split).noalias() = sd.Es * nb.Q2;
  sys.M.rightCols(m).noalias() = -(sd.Fs * a_s.transpose());
  sys.rhs = sd.Rcs;
  return sys;
}

Directions reconstruct_directions(const NullspaceBasis& nb, const Matrix& a_s,
                                  const Vector& dz, const Vector& dy) {
  if (dz.size() != nb.Q2.cols() || dy.size() != a_s.rows())
    throw DimensionError("direction component lengths do not match split");
  Directions d;
  d.dX = smat(nb.Q2 * dz);
  d.dS = smat(Vector(-(a_s.transpose() * dy)));
  d.dy = dy;
  return d;
}

ResidualInjection ResidualInjection::zero(int n, int m) {
  ResidualInjection r;
  r.rp = Vector::Zero(m);
  r.rd = Vector::Zero(svec_dim(n));
  r.rc = Vector::Zero(svec_dim(n));
  return r;
}

IiNewtonSystem assemble_ii(const ScalingData& sd, const SdoProblem& p,
                           const Iterate& it, double eta1, double eta2,
                           double tau, double theta, double mu0,
                           const ResidualInjection& inj) {
  (void)tau;
  const int n = p.n();
  const int w = svec_dim(n);
  const int m = p.m();
  if (inj.rp.size() != m || inj.rd.size() != w || inj.rc.size() != w)
    throw DimensionError("residual injection lengths");
  ResidualReport res = residuals(p, it, /*with_centrality=*/false);

  IiNewtonSystem sys;
  sys.w = w;
  sys.m = m;
  const int dim = 2 * w + m;
  sys.M = Matrix::Zero(dim, dim);
  sys.M.block(0, w, w, m) = p.a_s().transpose();
  sys.M.block(0, w + m, w, w) = Matrix::Identity(w, w);
  sys.M.block(w, 0, m, w) = p.a_s();
  sys.M.block(w + m, 0, w, w) = sd.Es;
  sys.M.block(w + m, w + m, w, w) = sd.Fs;

  // Complementarity row targets (1 - eta2) theta mu0 I.
  Matrix hp = sd.P * it.X.mat() * (it.S.mat() * sd.P_invT);
  Vector rcs = svec(sym_part((1.0 - eta2) * theta * mu0 *
                                 Matrix::Identity(n, n) -
                             sym_part(hp).mat()));

  sys.rhs.resize(dim);
  sys.rhs.head(w) = -eta1 * (res.rd + inj.rd);
  sys.rhs.segment(w, m) = -eta1 * (res.rp + inj.rp);
  sys.rhs.tail(w) = rcs + inj.rc;
  return sys;
}

}  // namespace ifipm
