#pragma once

// Test-only reference implementations, kept independent of the library
// paths they check.

#include <algorithm>
#include <limits>
#include <vector>

#include "ifipm/linalg.hpp"
#include "ifipm/model.hpp"
#include "ifipm/rng.hpp"
#include "ifipm/scaling.hpp"

namespace oracles {

using ifipm::Matrix;
using ifipm::Vector;

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// Brute-force symmetric Kronecker product straight from the definition,
// 1/2 V (G (x) K + K (x) G) V^T.
inline Matrix sym_kron_via_v(const Matrix& g, const Matrix& k) {
  Matrix v = ifipm::build_v(static_cast<int>(g.rows()));
  return 0.5 * v * (kron(g, k) + kron(k, g)) * v.transpose();
}

// Random symmetric positive definite matrix with eigenvalues in
// [lo, lo + spread].
inline ifipm::SymMatrix random_spd(ifipm::Rng& rng, int n, double lo = 0.5,
                                   double spread = 2.0) {
  Matrix g = rng.normal_matrix(n, n);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  Vector d(n);
  for (int i = 0; i < n; ++i) d(i) = lo + spread * rng.uniform();
  return ifipm::sym_part(q * d.asDiagonal() * q.transpose());
}

// Dense solve of the full three-block symmetrized Newton system
//   [ 0    A_s^T  I  ] [svec(dX)]   [ 0   ]
//   [ A_s  0      0  ] [  dy    ] = [ 0   ]
//   [ Es   0      Fs ] [svec(dS)]   [ Rcs ]
// used to cross-check the reduced nullspace form.
struct FullSystemSolution {
  Vector dx;  // packed
  Vector dy;
  Vector ds;  // packed
};

inline FullSystemSolution solve_full_newton(const ifipm::ScalingData& sd,
                                            const Matrix& a_s) {
  const int w = static_cast<int>(a_s.cols());
  const int m = static_cast<int>(a_s.rows());
  const int dim = 2 * w + m;
  Matrix big = Matrix::Zero(dim, dim);
  big.block(0, w, w, m) = a_s.transpose();
  big.block(0, w + m, w, w) = Matrix::Identity(w, w);
  big.block(w, 0, m, w) = a_s;
  big.block(w + m, 0, w, w) = sd.Es;
  big.block(w + m, w + m, w, w) = sd.Fs;
  Vector rhs = Vector::Zero(dim);
  rhs.tail(w) = sd.Rcs;
  Vector sol = big.partialPivLu().solve(rhs);
  return {sol.head(w), sol.segment(w, m), sol.tail(w)};
}

// Exhaustive vertex enumeration for min c^T x, A x = b, x >= 0.
// Returns +inf when no feasible basic solution exists.
inline double lp_vertex_optimum(const Matrix& a, const Vector& b,
                                const Vector& c) {
  const int m = static_cast<int>(a.rows());
  const int n = static_cast<int>(a.cols());
  double best = std::numeric_limits<double>::infinity();
  std::vector<int> idx(m);
  // iterate over all m-subsets of [n]
  std::vector<int> comb(m);
  for (int i = 0; i < m; ++i) comb[i] = i;
  auto advance = [&]() {
    int i = m - 1;
    while (i >= 0 && comb[i] == n - m + i) --i;
    if (i < 0) return false;
    ++comb[i];
    for (int j = i + 1; j < m; ++j) comb[j] = comb[j - 1] + 1;
    return true;
  };
  do {
    Matrix ab(m, m);
    for (int j = 0; j < m; ++j) ab.col(j) = a.col(comb[j]);
    Eigen::FullPivLU<Matrix> lu(ab);
    if (!lu.isInvertible()) continue;
    Vector xb = lu.solve(b);
    if ((xb.array() < -1e-9).any()) continue;
    double val = 0.0;
    for (int j = 0; j < m; ++j) val += c(comb[j]) * xb(j);
    best = std::min(best, val);
  } while (advance());
  return best;
}

// Max of C . X over X = [[1,t],[t,1]], t in [-1,1]: the n = 2 diagonal-
// constrained relaxation by direct search.
inline double qubo2_relaxation_max(const Matrix& c) {
  double best = -std::numeric_limits<double>::infinity();
  for (int i = 0; i <= 200000; ++i) {
    double t = -1.0 + 2.0 * i / 200000.0;
    Matrix x(2, 2);
    x << 1.0, t, t, 1.0;
    best = std::max(best, (c.array() * x.array()).sum());
  }
  return best;
}

}  // namespace oracles
