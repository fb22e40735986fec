#pragma once

#include <Eigen/Dense>
#include <utility>

#include "ifipm/errors.hpp"

namespace ifipm {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Length of the packed symmetric vector for an n x n matrix.
inline int svec_dim(int n) { return n * (n + 1) / 2; }

// Position of entry (i, j), i >= j (0-based), in the packed ordering:
// column by column, diagonal first within each column.
inline int svec_index(int n, int i, int j) {
  return j * n - j * (j - 1) / 2 + (i - j);
}

// Recovers n from a packed length; throws DimensionError if the length is
// not a triangular number.
int svec_order(Eigen::Index packed_len);

// Dense symmetric matrix. Construction symmetrizes exactly and rejects
// inputs whose asymmetry exceeds tol_rel * ||G||_F or that contain
// non-finite entries.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(const Matrix& g, double tol_rel = 1e-12);

  // Skips the symmetry check; caller guarantees m == m^T up to rounding.
  static SymMatrix from_symmetric_unchecked(Matrix m);

  int n() const { return static_cast<int>(m_.rows()); }
  const Matrix& mat() const { return m_; }
  double operator()(int i, int j) const { return m_(i, j); }

  static SymMatrix identity(int n) {
    return from_symmetric_unchecked(Matrix::Identity(n, n));
  }
  static SymMatrix zero(int n) {
    return from_symmetric_unchecked(Matrix::Zero(n, n));
  }

 private:
  Matrix m_;
};

// Packed vectorization with sqrt(2)-scaled off-diagonals; an isometry for
// the Frobenius/Euclidean norms.
Vector svec(const SymMatrix& g);

// svec of a general square matrix; throws SymmetryError when the asymmetry
// exceeds tol_rel * ||G||_F.
Vector svec_checked(const Matrix& g, double tol_rel = 1e-12);

// Inverse of svec.
SymMatrix smat(const Vector& v);

// The n(n+1)/2 x n^2 matrix V with V vec(G) = svec(sym(G)) and V V^T = I.
Matrix build_v(int n);

// Symmetric Kronecker product as an operator on packed vectors,
//   (G (x)_s K) svec(H) = 1/2 svec(G H K^T + K H G^T).
// Accepts general square G, K of equal order. Columns are assembled from
// rank-two actions on the packed basis, never materializing G (x) K.
Matrix sym_kron(const Matrix& g, const Matrix& k);

// Applies G (x)_s K to one packed vector without forming the operator.
Vector sym_kron_apply(const Matrix& g, const Matrix& k, const Vector& h);

// Eigendecomposition of a symmetric matrix, eigenvalues descending.
struct SymEig {
  Vector values;   // descending
  Matrix vectors;  // columns match values
};
SymEig eig_sym(const SymMatrix& g);

// Principal square root / inverse square root via symmetric
// eigendecomposition. pd_tol_rel scales the positive-definiteness test:
// lambda_min must exceed pd_tol_rel * max(|lambda|).
SymMatrix mat_sqrt(const SymMatrix& g, double pd_tol_rel = 1e-12);
SymMatrix mat_inv_sqrt(const SymMatrix& g, double pd_tol_rel = 1e-12);

// sigma_max / sigma_min. Returns +inf and sets *singular when sigma_min
// vanishes to working precision.
double cond_2(const Matrix& m, bool* singular = nullptr);

// Inner products with Neumaier compensation; the IPM drives X .dot. S to
// epsilon while individual products stay O(1), so the plain sum loses
// digits exactly where the termination test needs them.
double dot_compensated(Eigen::Ref<const Vector> a, Eigen::Ref<const Vector> b);
double trace_inner(const SymMatrix& x, const SymMatrix& s);
double mat_inner(const Matrix& a, const Matrix& b);

// Entrywise TwoSum: returns fl(a + b) in *sum and the exact per-entry
// rounding error in *err, so a running iterate can be kept to double-double
// accuracy across many small updates.
void two_sum(const Matrix& a, const Matrix& b, Matrix* sum, Matrix* err);

// 1/2 (M + M^T).
inline SymMatrix sym_part(const Matrix& m) {
  return SymMatrix::from_symmetric_unchecked(0.5 * (m + m.transpose()));
}

}  // namespace ifipm
