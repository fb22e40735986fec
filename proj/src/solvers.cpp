#include "ifipm/solvers.hpp"

#include <cmath>
#include <vector>

namespace ifipm {

const char* to_string(SolverKind k) {
  switch (k) {
    case SolverKind::kExact: return "exact";
    case SolverKind::kCgNormal: return "cg";
    case SolverKind::kChebyshev: return "chebyshev";
    case SolverKind::kSimTomography: return "sim-tomography";
  }
  return "?";
}

SolveReport solve_exact(const Matrix& m, const Vector& rhs) {
  if (m.rows() != m.cols() || m.rows() != rhs.size())
    throw DimensionError("solve_exact requires a square system");
  Eigen::PartialPivLU<Matrix> lu(m);
  double umax = lu.matrixLU().diagonal().cwiseAbs().maxCoeff();
  double umin = lu.matrixLU().diagonal().cwiseAbs().minCoeff();
  if (umin <= umax * 1e-300)
    throw SingularMatrixError("matrix singular to working precision");
  SolveReport rep;
  rep.solution = lu.solve(rhs);
  // Two refinement sweeps with compensated residuals knock the backward
  // error well below plain LU; the feasible driver leans on this when it
  // checks the exact geometric gap decay.
  for (int sweep = 0; sweep < 2; ++sweep) {
    Vector r(rhs.size());
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      r(i) = rhs(i) - dot_compensated(m.row(i).transpose(), rep.solution);
    rep.solution += lu.solve(r);
  }
  rep.residual_norm = (m * rep.solution - rhs).norm();
  rep.iterations = 1;
  rep.accepted = true;
  return rep;
}

SolveReport solve_cg_normal(const Matrix& m, const Vector& rhs, double xi,
                            int max_iter) {
  SolveReport rep;
  Vector x = Vector::Zero(m.cols());
  Vector r = rhs;
  Vector s = m.transpose() * r;
  Vector p = s;
  double gamma = s.squaredNorm();
  int it = 0;
  double rnorm = r.norm();
  while (rnorm > xi && it < max_iter && gamma > 0.0) {
    Vector q = m * p;
    double qn = q.squaredNorm();
    if (qn <= 0.0) break;
    double alpha = gamma / qn;
    x += alpha * p;
    r -= alpha * q;
    rnorm = r.norm();
    ++it;
    s.noalias() = m.transpose() * r;
    double gamma_new = s.squaredNorm();
    p = s + (gamma_new / gamma) * p;
    gamma = gamma_new;
  }
  rep.solution = std::move(x);
  rep.residual_norm = (m * rep.solution - rhs).norm();
  rep.iterations = it;
  rep.accepted = rep.residual_norm <= xi;
  return rep;
}

namespace {

// Chebyshev coefficients of u -> 1/u on [a, b] in closed form: with
// t = (2u - (b+a))/(b-a), delta = (b+a)/(b-a) and
// rho = delta - sqrt(delta^2-1),
//   1/u = 2/(b-a) * 2/sqrt(delta^2-1) * [1/2 + sum_j (-rho)^j T_j(t)],
// so the series decays geometrically and truncation at degree d leaves an
// error of order rho^(d+1).
std::vector<double> inverse_coeffs(double a, double b, int degree) {
  double delta = (b + a) / (b - a);
  double root = std::sqrt(delta * delta - 1.0);
  double rho = delta - root;
  double scale = (2.0 / (b - a)) * (2.0 / root);
  std::vector<double> c(degree + 1);
  double pw = 1.0;
  for (int j = 0; j <= degree; ++j) {
    c[j] = scale * pw;
    pw *= -rho;
  }
  return c;
}

// Largest singular value of mh from plain power iteration on mh^T mh.
double sigma_max_estimate(const Matrix& mh) {
  Vector v = Vector::Ones(mh.cols());
  v.normalize();
  double est = 0.0;
  for (int i = 0; i < 30; ++i) {
    Vector w = mh.transpose() * (mh * v);
    double n = w.norm();
    if (n <= 0.0) return 0.0;
    est = std::sqrt(n);
    v = w / n;
  }
  return est;
}

}  // namespace

SolveReport solve_chebyshev(const Matrix& m, const Vector& rhs, double xi,
                            double kappa_bound, const ChebyshevOptions& opts) {
  SolveReport rep;
  double s = m.norm();  // Frobenius; guarantees the scaled spectrum is in [-1,1]
  if (s <= 0.0) throw SingularMatrixError("zero matrix");
  Matrix mh = m / s;
  double xr = std::min(std::max(xi, 1e-300), 0.5);
  double kb = std::max(kappa_bound, 1.0);

  // Underestimating the top of the spectrum is fatal for the polynomial,
  // overestimating only wastes degree; inflate and clamp at the Frobenius
  // bound 1.
  double smax = sigma_max_estimate(mh);
  double b = std::min(1.0, 1.44 * smax * smax);
  if (b <= 0.0) b = 1.0;
  // keep the interval nondegenerate for perfectly conditioned inputs
  double a = b / std::max(kb * kb, 1.5);

  int degree = static_cast<int>(
      std::ceil(opts.c_deg * kb * std::log(1.0 / xr)));
  degree = std::max(degree, 1);

  Vector v = mh.transpose() * rhs;
  auto run = [&](int d) {
    std::vector<double> c = inverse_coeffs(a, b, d);
    // Clenshaw with the operator t(N) = (2 N - (b+a) I)/(b-a), N = mh^T mh.
    double alpha = 2.0 / (b - a), beta = (b + a) / (b - a);
    auto t_apply = [&](const Vector& x) {
      return Vector(alpha * (mh.transpose() * (mh * x)) - beta * x);
    };
    Vector bk1 = Vector::Zero(v.size());
    Vector bk2 = Vector::Zero(v.size());
    for (int j = d; j >= 1; --j) {
      Vector bk = 2.0 * t_apply(bk1) - bk2 + c[j] * v;
      bk2 = std::move(bk1);
      bk1 = std::move(bk);
    }
    return Vector(t_apply(bk1) - bk2 + 0.5 * c[0] * v);
  };

  int used = std::min(degree, opts.max_degree);
  Vector w = run(used);
  rep.solution = w / s;
  rep.residual_norm = (m * rep.solution - rhs).norm();
  rep.iterations = used;
  double target = xi * rhs.norm();
  if (rep.residual_norm > target && opts.retry_double_degree &&
      2 * used <= opts.max_degree) {
    used *= 2;
    w = run(used);
    Vector cand = w / s;
    double rn = (m * cand - rhs).norm();
    if (rn < rep.residual_norm) {
      rep.solution = std::move(cand);
      rep.residual_norm = rn;
      rep.iterations = used;
    }
  }
  rep.kappa_used = kb;
  rep.accepted = rep.residual_norm <= target;
  return rep;
}

Vector simulate_tomography(const Vector& u, double xi, Rng& rng,
                           bool worst_case) {
  if (xi < 0.0) throw DimensionError("tomography error bound must be >= 0");
  if (xi == 0.0) return u;
  Vector dir = rng.sphere_direction(static_cast<int>(u.size()));
  double radius = worst_case ? xi : xi * rng.uniform();
  return u + radius * dir;
}

SolveReport adaptive_kappa_solve(const Matrix& m, const Vector& rhs,
                                 double varrho, double xi_k,
                                 const SolverChoice& choice,
                                 const AdaptiveOptions& opts) {
  double thresh = varrho * xi_k;
  if (xi_k <= 0.0) thresh = 1e-12 * std::max(1.0, rhs.norm());
  double rel = thresh / std::max(rhs.norm(), 1e-300);

  double kappa_t = 1.0;
  int doublings = 0;
  while (true) {
    SolveReport rep;
    switch (choice.kind) {
      case SolverKind::kExact:
        rep = solve_exact(m, rhs);
        break;
      case SolverKind::kCgNormal: {
        double lg = std::log(2.0 + 1.0 / std::max(rel, 1e-300));
        int max_iter = 20 + static_cast<int>(std::ceil(2.0 * kappa_t * lg));
        rep = solve_cg_normal(m, rhs, thresh, std::min(max_iter, 500000));
        break;
      }
      case SolverKind::kChebyshev:
        rep = solve_chebyshev(m, rhs, rel, kappa_t);
        break;
      case SolverKind::kSimTomography: {
        switch (choice.inner) {
          case SolverKind::kCgNormal:
            rep = solve_cg_normal(m, rhs, 0.1 * thresh,
                                  20 + static_cast<int>(std::ceil(
                                           4.0 * kappa_t *
                                           std::log(2.0 + 1.0 / std::max(rel, 1e-300)))));
            break;
          case SolverKind::kChebyshev:
            rep = solve_chebyshev(m, rhs, 0.1 * rel, kappa_t);
            break;
          default:
            rep = solve_exact(m, rhs);
        }
        // Retries rerun the readout at a tighter precision; the stream tag
        // keeps draws independent across solves and attempts.
        Rng rng(choice.seed ^ (opts.stream_tag * 0x9e3779b97f4a7c15ULL) ^
                static_cast<std::uint64_t>(doublings) * 0xda942042e4dd58b5ULL);
        rep.solution = simulate_tomography(rep.solution, xi_k / kappa_t, rng,
                                           choice.worst_case_noise);
        break;
      }
    }
    rep.residual_norm = (m * rep.solution - rhs).norm();
    rep.kappa_used = kappa_t;
    rep.doublings = doublings;
    if (rep.residual_norm <= thresh) {
      rep.accepted = true;
      return rep;
    }
    if (++doublings > opts.max_doublings)
      throw ConvergenceError("adaptive condition-number loop exceeded " +
                             std::to_string(opts.max_doublings) +
                             " doublings (residual " +
                             std::to_string(rep.residual_norm) + ", threshold " +
                             std::to_string(thresh) + ")");
    kappa_t *= 2.0;
  }
}

}  // namespace ifipm
