#include "ifipm/model.hpp"

#include <cmath>

namespace ifipm {

SdoProblem::SdoProblem(std::vector<SymMatrix> a, Vector b, SymMatrix c)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)) {
  if (a_.empty()) throw DimensionError("constraint list is empty");
  n_ = a_[0].n();
  m_ = static_cast<int>(a_.size());
  if (c_.n() != n_) throw DimensionError("C has wrong order");
  if (b_.size() != m_) throw DimensionError("b has wrong length");
  if (m_ > svec_dim(n_))
    throw DimensionError("more constraints than svec dimension");
  a_s_.resize(m_, svec_dim(n_));
  for (int i = 0; i < m_; ++i) {
    if (a_[i].n() != n_) throw DimensionError("constraint matrix order mismatch");
    a_s_.row(i) = svec(a_[i]).transpose();
  }
  // Linear independence gate; the offender is the constraint column pivoted
  // into the first rank-deficient position.
  Eigen::ColPivHouseholderQR<Matrix> qr(a_s_.transpose());
  double pivot0 = std::abs(qr.matrixR()(0, 0));
  for (int r = 0; r < m_; ++r)
    if (std::abs(qr.matrixR()(r, r)) <= 1e-10 * pivot0)
      throw RankError(static_cast<int>(qr.colsPermutation().indices()(r)));
  Matrix gram = a_s_ * a_s_.transpose();
  gram_llt_ = std::make_shared<Eigen::LLT<Matrix>>(gram);
  if (gram_llt_->info() != Eigen::Success) throw RankError(m_ - 1);
}

Vector SdoProblem::apply_pseudoinverse(const Vector& z) const {
  if (z.size() != m_) throw DimensionError("pseudoinverse input length");
  return a_s_.transpose() * gram_llt_->solve(z);
}

Iterate::Iterate(SymMatrix x, Vector y_, SymMatrix s)
    : X(std::move(x)), y(std::move(y_)), S(std::move(s)) {
  if (X.n() != S.n()) throw DimensionError("X and S order mismatch");
  nu = trace_inner(X, S) / X.n();
}

double centrality_measure(const SymMatrix& x, const SymMatrix& s) {
  double nu = trace_inner(x, s) / x.n();
  SymMatrix xh = mat_sqrt(x);
  SymMatrix w = sym_part(xh.mat() * s.mat() * xh.mat());
  return (w.mat() - nu * Matrix::Identity(x.n(), x.n())).norm();
}

ResidualReport residuals(const SdoProblem& p, const Iterate& it,
                         bool with_centrality) {
  ResidualReport r;
  r.rp = p.a_s() * svec(it.X) - p.b();
  Matrix dual = it.S.mat() - p.c().mat();
  for (int i = 0; i < p.m(); ++i) dual += it.y(i) * p.a()[i].mat();
  r.rd = svec(sym_part(dual));
  r.gap = trace_inner(it.X, it.S);
  if (with_centrality) r.centrality = centrality_measure(it.X, it.S);
  return r;
}

namespace {

// Smallest eigenvalue, or -inf if the eigensolver fails.
double lambda_min(const SymMatrix& g) {
  return eig_sym(g).values.minCoeff();
}

NeighborhoodCheck feasibility_gate(const SdoProblem& p, const Iterate& it,
                                   double feas_tol, ResidualReport* out) {
  NeighborhoodCheck c;
  ResidualReport r = residuals(p, it, /*with_centrality=*/false);
  c.nu = r.gap / p.n();
  if (r.rp.norm() > feas_tol * (1.0 + p.b().norm())) {
    c.reason = NeighborhoodReason::kPrimalResidual;
    return c;
  }
  if (r.rd.norm() > feas_tol * (1.0 + p.c().mat().norm())) {
    c.reason = NeighborhoodReason::kDualResidual;
    return c;
  }
  if (lambda_min(it.X) <= 0.0) {
    c.reason = NeighborhoodReason::kXNotPd;
    return c;
  }
  if (lambda_min(it.S) <= 0.0) {
    c.reason = NeighborhoodReason::kSNotPd;
    return c;
  }
  c.ok = true;
  if (out) *out = r;
  return c;
}

}  // namespace

NeighborhoodCheck in_frobenius_neighborhood(const SdoProblem& p,
                                            const Iterate& it, double gamma,
                                            double feas_tol) {
  NeighborhoodCheck c = feasibility_gate(p, it, feas_tol, nullptr);
  if (!c.ok) return c;
  c.centrality = centrality_measure(it.X, it.S);
  if (c.centrality > gamma * c.nu) {
    c.ok = false;
    c.reason = NeighborhoodReason::kCentrality;
  }
  return c;
}

NeighborhoodCheck in_minus_infinity_neighborhood(const SdoProblem& p,
                                                 const Iterate& it,
                                                 double gamma,
                                                 double feas_tol) {
  NeighborhoodCheck c = feasibility_gate(p, it, feas_tol, nullptr);
  if (!c.ok) return c;
  SymMatrix xh = mat_sqrt(it.X);
  SymMatrix w = sym_part(xh.mat() * it.S.mat() * xh.mat());
  double lmin = lambda_min(w);  // spectrum of XS
  if (lmin < gamma * c.nu) {
    c.ok = false;
    c.reason = NeighborhoodReason::kCentrality;
  }
  return c;
}

NeighborhoodCheck in_infeasible_neighborhood(
    const InfeasibleState& st, const SdoProblem& p, double gamma1,
    double gamma2, double mu0, const Matrix* scaling_p,
    const InfeasibleNeighborhoodOptions& opts) {
  NeighborhoodCheck c;
  const Iterate& it = st.iterate;
  c.nu = it.nu;
  if (st.tau <= 0.0 || st.theta <= 0.0 || st.tau > st.theta * (1.0 + 1e-14)) {
    c.reason = NeighborhoodReason::kTauThetaOrder;
    return c;
  }
  if (lambda_min(it.X) <= 0.0) {
    c.reason = NeighborhoodReason::kXNotPd;
    return c;
  }
  if (lambda_min(it.S) <= 0.0) {
    c.reason = NeighborhoodReason::kSNotPd;
    return c;
  }
  ResidualReport r = residuals(p, it, /*with_centrality=*/false);

  // The membership conditions quantify over the existence of zeta with the
  // residual equal to tau (R0 + zeta); recover zeta and bound its norm.
  Vector zeta_d = r.rd / st.tau - st.R0d;
  if (zeta_d.norm() > gamma1 * st.rho * (1.0 + 1e-12)) {
    c.reason = NeighborhoodReason::kDualResidual;
    return c;
  }
  Vector zeta_p = r.rp / st.tau - st.R0p;
  if (p.apply_pseudoinverse(zeta_p).norm() > gamma1 * st.rho * (1.0 + 1e-12)) {
    c.reason = NeighborhoodReason::kPrimalResidual;
    return c;
  }

  SymMatrix hp = [&] {
    if (scaling_p == nullptr) {
      // HKM default P = S^1/2; then H_P(XS) = S^1/2 X S^1/2.
      SymMatrix sh = mat_sqrt(it.S);
      return sym_part(sh.mat() * it.X.mat() * sh.mat());
    }
    Matrix pinv = scaling_p->partialPivLu().solve(
        Matrix::Identity(p.n(), p.n()));
    Matrix m = (*scaling_p) * it.X.mat() * it.S.mat() * pinv;
    return sym_part(m);
  }();
  Matrix dev = hp.mat() - st.theta * mu0 * Matrix::Identity(p.n(), p.n());
  double dist = opts.frobenius_centrality
                    ? dev.norm()
                    : eig_sym(sym_part(dev)).values.cwiseAbs().maxCoeff();
  c.centrality = dist;
  if (dist > gamma2 * st.theta * mu0 * (1.0 + 1e-12)) {
    c.reason = NeighborhoodReason::kCentrality;
    return c;
  }
  c.ok = true;
  return c;
}

}  // namespace ifipm
