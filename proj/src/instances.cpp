#include "ifipm/instances.hpp"

#include <cmath>

#include "ifipm/rng.hpp"

namespace ifipm {

GeneratedInstance gen_random_feasible(int n, int m, std::uint64_t seed,
                                      int max_redraws) {
  if (m < 1 || m > svec_dim(n))
    throw DimensionError("m must lie in [1, n(n+1)/2]");
  Rng rng(seed);
  for (int attempt = 0; attempt <= max_redraws; ++attempt) {
    std::vector<SymMatrix> a;
    a.reserve(m);
    for (int i = 0; i < m; ++i)
      a.push_back(SymMatrix::from_symmetric_unchecked(rng.normal_symmetric(n)));
    Vector y0 = 0.1 * rng.normal_vector(m);
    Vector b(m);
    for (int i = 0; i < m; ++i) b(i) = a[i].mat().trace();  // A^(i) . I
    Matrix c = Matrix::Identity(n, n);
    for (int i = 0; i < m; ++i) c += y0(i) * a[i].mat();
    try {
      SdoProblem prob(std::move(a), std::move(b), sym_part(c));
      Iterate start(SymMatrix::identity(n), std::move(y0),
                    SymMatrix::identity(n));
      return GeneratedInstance{std::move(prob), std::move(start)};
    } catch (const RankError&) {
      // dependent draw; retry with fresh matrices
    }
  }
  throw RankError(m - 1);
}

GeneratedInstance gen_qubo_sdo(const SymMatrix& c, double gamma) {
  const int n = c.n();
  // Minimize -C . X subject to diag(X) = e.
  Matrix c_min = -c.mat();
  std::vector<SymMatrix> a;
  a.reserve(n);
  for (int i = 0; i < n; ++i) {
    Matrix e = Matrix::Zero(n, n);
    e(i, i) = 1.0;
    a.push_back(SymMatrix::from_symmetric_unchecked(e));
  }
  SdoProblem prob(std::move(a), Vector::Ones(n), sym_part(c_min));

  // X0 = I, y0 = -lambda e gives S0 = C_min + lambda I and a centrality
  // d = ||C_min - (tr C_min / n) I||_F independent of lambda; pick lambda
  // so d <= gamma nu0 and S0 is safely positive definite.
  double tr_avg = c_min.trace() / n;
  double d = (c_min - tr_avg * Matrix::Identity(n, n)).norm();
  double lmin = eig_sym(sym_part(c_min)).values.minCoeff();
  double lambda = std::max({1.05 * d / gamma - tr_avg, 1.0 - lmin, 1.0});
  Vector y0 = Vector::Constant(n, -lambda);
  SymMatrix s0 = sym_part(c_min + lambda * Matrix::Identity(n, n));
  Iterate start(SymMatrix::identity(n), std::move(y0), std::move(s0));
  return GeneratedInstance{std::move(prob), std::move(start)};
}

SdoProblem gen_lo_as_sdo(const Matrix& a, const Vector& b, const Vector& c) {
  const int m = static_cast<int>(a.rows());
  const int n = static_cast<int>(a.cols());
  if (b.size() != m || c.size() != n)
    throw DimensionError("LP data dimensions do not match");
  std::vector<SymMatrix> as;
  as.reserve(m);
  for (int i = 0; i < m; ++i)
    as.push_back(SymMatrix::from_symmetric_unchecked(
        Matrix(a.row(i).asDiagonal())));
  return SdoProblem(std::move(as), b,
                    SymMatrix::from_symmetric_unchecked(Matrix(c.asDiagonal())));
}

LoInstance gen_random_lo(int n, int m, std::uint64_t seed, int max_redraws) {
  if (m < 1 || m > n) throw DimensionError("LP needs 1 <= m <= n");
  Rng rng(seed);
  for (int attempt = 0; attempt <= max_redraws; ++attempt) {
    Matrix a = rng.normal_matrix(m, n);
    Vector y0 = 0.1 * rng.normal_vector(m);
    Vector b = a * Vector::Ones(n);
    Vector c = a.transpose() * y0 + Vector::Ones(n);
    try {
      LoInstance inst{a, b, c, gen_lo_as_sdo(a, b, c), Iterate()};
      inst.start = Iterate(SymMatrix::identity(n), y0, SymMatrix::identity(n));
      return inst;
    } catch (const RankError&) {
    }
  }
  throw RankError(m - 1);
}

double rho_for_ii(const SdoProblem& p, const Iterate& feasible_start,
                  double gamma1, double presolve_epsilon) {
  IfConfig cfg;
  cfg.epsilon = presolve_epsilon;
  cfg.solver.kind = SolverKind::kExact;
  auto [opt, trace] = run_if(p, feasible_start, cfg);
  double lx = eig_sym(opt.X).values.maxCoeff();
  double ls = eig_sym(opt.S).values.maxCoeff();
  double tr = (opt.X.mat().trace() + opt.S.mat().trace()) / p.n();
  return 1.1 * std::max({lx / (1.0 - gamma1), ls / (1.0 - gamma1), tr});
}

}  // namespace ifipm
