#include "ifipm/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>
#include <limits>

namespace ifipm {

namespace {
constexpr double kSqrt2 = 1.4142135623730950488;
constexpr double kInvSqrt2 = 0.70710678118654752440;
}  // namespace

int svec_order(Eigen::Index packed_len) {
  double nd = (std::sqrt(8.0 * static_cast<double>(packed_len) + 1.0) - 1.0) / 2.0;
  int n = static_cast<int>(std::lround(nd));
  if (n < 1 || svec_dim(n) != packed_len)
    throw DimensionError("packed length " + std::to_string(packed_len) +
                         " is not a triangular number");
  return n;
}

SymMatrix::SymMatrix(const Matrix& g, double tol_rel) {
  if (g.rows() != g.cols())
    throw DimensionError("symmetric matrix must be square");
  if (!g.allFinite()) throw SymmetryError("non-finite entries");
  double asym = (g - g.transpose()).norm();
  if (asym > tol_rel * std::max(1e-300, g.norm()))
    throw SymmetryError("asymmetry " + std::to_string(asym) +
                        " exceeds tolerance");
  m_ = 0.5 * (g + g.transpose());
}

SymMatrix SymMatrix::from_symmetric_unchecked(Matrix m) {
  SymMatrix s;
  s.m_ = std::move(m);
  return s;
}

Vector svec(const SymMatrix& g) {
  const Matrix& m = g.mat();
  int n = g.n();
  Vector v(svec_dim(n));
  int p = 0;
  for (int j = 0; j < n; ++j) {
    v(p++) = m(j, j);
    for (int i = j + 1; i < n; ++i) v(p++) = kSqrt2 * m(i, j);
  }
  return v;
}

Vector svec_checked(const Matrix& g, double tol_rel) {
  return svec(SymMatrix(g, tol_rel));
}

SymMatrix smat(const Vector& v) {
  int n = svec_order(v.size());
  Matrix m(n, n);
  int p = 0;
  for (int j = 0; j < n; ++j) {
    m(j, j) = v(p++);
    for (int i = j + 1; i < n; ++i) {
      double x = kInvSqrt2 * v(p++);
      m(i, j) = x;
      m(j, i) = x;
    }
  }
  return SymMatrix::from_symmetric_unchecked(std::move(m));
}

Matrix build_v(int n) {
  Matrix v = Matrix::Zero(svec_dim(n), n * n);
  for (int j = 0; j < n; ++j) {
    v(svec_index(n, j, j), j * n + j) = 1.0;
    for (int i = j + 1; i < n; ++i) {
      int r = svec_index(n, i, j);
      v(r, j * n + i) = kInvSqrt2;  // vec position (i, j)
      v(r, i * n + j) = kInvSqrt2;  // vec position (j, i)
    }
  }
  return v;
}

Matrix sym_kron(const Matrix& g, const Matrix& k) {
  if (g.rows() != g.cols() || k.rows() != k.cols() || g.rows() != k.rows())
    throw DimensionError("sym_kron requires square matrices of equal order");
  const int n = static_cast<int>(g.rows());
  const int w = svec_dim(n);
  Matrix out(w, w);
  // Column for the packed basis element H = e_i e_j^T + e_j e_i^T (scaled)
  // is svec(1/2 (G H K^T + K H G^T)); with rank-two H this collapses to
  // outer products of columns of G and K.
  Matrix t(n, n);
  for (int j = 0; j < n; ++j) {
    for (int i = j; i < n; ++i) {
      const auto gi = g.col(i), gj = g.col(j), ki = k.col(i), kj = k.col(j);
      if (i == j) {
        t.noalias() = 0.5 * (gi * ki.transpose() + ki * gi.transpose());
      } else {
        t.noalias() = gi * kj.transpose() + gj * ki.transpose();
        t += t.transpose().eval();
        t *= 0.5 * kInvSqrt2;
      }
      int c = svec_index(n, i, j);
      int p = 0;
      for (int jj = 0; jj < n; ++jj) {
        out(p++, c) = t(jj, jj);
        for (int ii = jj + 1; ii < n; ++ii)
          out(p++, c) = kSqrt2 * 0.5 * (t(ii, jj) + t(jj, ii));
      }
    }
  }
  return out;
}

Vector sym_kron_apply(const Matrix& g, const Matrix& k, const Vector& h) {
  SymMatrix hm = smat(h);
  Matrix t = g * hm.mat() * k.transpose() + k * hm.mat() * g.transpose();
  return svec(sym_part(0.5 * t));
}

SymEig eig_sym(const SymMatrix& g) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(g.mat());
  if (es.info() != Eigen::Success)
    throw SingularMatrixError("symmetric eigendecomposition failed");
  // Eigen returns ascending order; flip to descending.
  int n = g.n();
  SymEig r;
  r.values = es.eigenvalues().reverse();
  r.vectors = es.eigenvectors().rowwise().reverse();
  (void)n;
  return r;
}

namespace {
SymMatrix power_from_eig(const SymEig& e, double expo, double pd_tol_rel) {
  double lmax = e.values.cwiseAbs().maxCoeff();
  double lmin = e.values.minCoeff();
  if (lmin <= pd_tol_rel * std::max(lmax, 1e-300))
    throw NotPositiveDefiniteError(lmin);
  Vector d = e.values.array().pow(expo);
  Matrix m = e.vectors * d.asDiagonal() * e.vectors.transpose();
  return sym_part(m);
}
}  // namespace

SymMatrix mat_sqrt(const SymMatrix& g, double pd_tol_rel) {
  return power_from_eig(eig_sym(g), 0.5, pd_tol_rel);
}

SymMatrix mat_inv_sqrt(const SymMatrix& g, double pd_tol_rel) {
  return power_from_eig(eig_sym(g), -0.5, pd_tol_rel);
}

double cond_2(const Matrix& m, bool* singular) {
  if (m.size() == 0) throw DimensionError("cond_2 of empty matrix");
  Eigen::JacobiSVD<Matrix> svd(m);
  double smax = svd.singularValues()(0);
  double smin = svd.singularValues()(svd.singularValues().size() - 1);
  bool sing = smin <= 0.0 || smin < smax * 1e-300;
  if (singular) *singular = sing;
  if (sing) return std::numeric_limits<double>::infinity();
  return smax / smin;
}

double dot_compensated(Eigen::Ref<const Vector> a, Eigen::Ref<const Vector> b) {
  // Dot2: FMA splits each product into value + exact error, and Neumaier
  // summation carries both, so the result is accurate to a few ulps of the
  // true value even under heavy cancellation.
  double sum = 0.0, comp = 0.0;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    double term = a(i) * b(i);
    comp += std::fma(a(i), b(i), -term);
    double t = sum + term;
    if (std::abs(sum) >= std::abs(term))
      comp += (sum - t) + term;
    else
      comp += (term - t) + sum;
    sum = t;
  }
  return sum + comp;
}

double trace_inner(const SymMatrix& x, const SymMatrix& s) {
  Eigen::Map<const Vector> xv(x.mat().data(), x.mat().size());
  Eigen::Map<const Vector> sv(s.mat().data(), s.mat().size());
  return dot_compensated(xv, sv);
}

}  // namespace ifipm
