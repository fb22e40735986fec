#include "ifipm/ipm.hpp"

#include <Eigen/SVD>
#include <chrono>
#include <cmath>
#include <sstream>

namespace ifipm {

namespace {

double now_ms() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double, std::milli>(
             clock::now().time_since_epoch())
      .count();
}

}  // namespace

double sigma_min(const Matrix& m) {
  Eigen::BDCSVD<Matrix> svd(m);
  return svd.singularValues()(svd.singularValues().size() - 1);
}

void validate_if_config(const IfConfig& cfg, int n) {
  if (cfg.epsilon <= 0.0) throw ConfigError("epsilon must be > 0");
  if (!(cfg.gamma > 0.0 && cfg.gamma < 1.0))
    throw ConfigError("gamma must lie in (0,1)");
  if (!(cfg.delta >= 0.0 && cfg.delta < std::sqrt(static_cast<double>(n))))
    throw ConfigError("delta must lie in [0, sqrt(n))");
  double lhs = 2.0 * std::sqrt(2.0) * cfg.gamma / (1.0 - cfg.gamma);
  if (lhs > 1.0 + 1e-15) {
    std::ostringstream os;
    os << "neighborhood condition violated: 2*sqrt(2)*gamma/(1-gamma) = "
       << lhs << " > 1";
    throw ConfigError(os.str());
  }
  bool inexact = cfg.solver.kind != SolverKind::kExact;
  if (inexact) {
    if (!(cfg.beta > 0.0 && cfg.beta < 1.0))
      throw ConfigError("beta must lie in (0,1)");
    double rn = std::sqrt(static_cast<double>(n));
    double sigma = 1.0 - cfg.delta / rn;
    double bound = 1.0 - cfg.gamma / rn -
                   21.7 * (cfg.gamma * cfg.gamma + cfg.delta * cfg.delta) /
                       ((2.0 + std::sqrt(2.0)) * sigma * cfg.gamma *
                        (1.0 - cfg.gamma));
    if (cfg.beta > bound) {
      std::ostringstream os;
      os << "inexactness budget too large for n = " << n << ": beta = "
         << cfg.beta << " > 1 - gamma/sqrt(n) - 21.7(gamma^2+delta^2)/"
         << "((2+sqrt(2))(1-delta/sqrt(n))gamma(1-gamma)) = " << bound;
      throw ConfigError(os.str());
    }
  }
}

double xi_schedule_if(double beta, double varrho, double rc_norm,
                      double epsilon) {
  if (varrho <= 0.0) throw ConfigError("varrho must be > 0");
  return (beta / varrho) * std::max(rc_norm, epsilon / 25.0);
}

double xi_schedule_ii(double epsilon, double varrho, int n) {
  if (varrho <= 0.0) throw ConfigError("varrho must be > 0");
  double ln = std::max(std::log2(static_cast<double>(n)), 1.0);
  double le = std::max(std::log2(1.0 / epsilon), 1.0);
  return epsilon / (varrho * ln * le);
}

double vartheta(int k, int n, double epsilon) {
  double log_n = std::log2(static_cast<double>(n));
  double log_e = std::log2(1.0 / epsilon);
  double big_n = log_n * static_cast<double>(n) * n * std::floor(log_e);
  if (static_cast<double>(k) < big_n) {
    double denom = log_n * log_e;
    return denom > 0.0 ? std::min(1.0, 1.0 / denom) : 1.0;
  }
  return std::min(1.0, 1.0 / std::pow(k + 1.0 - big_n, 1.1));
}

double vartheta_bar(int n, double epsilon) {
  double log_n = std::log2(static_cast<double>(n));
  double log_e = std::log2(1.0 / epsilon);
  double big_n = log_n * static_cast<double>(n) * n * std::floor(log_e);
  long head_terms = static_cast<long>(std::ceil(big_n));
  double denom = log_n * log_e;
  double head = denom > 0.0 ? head_terms * std::min(1.0, 1.0 / denom)
                            : static_cast<double>(head_terms);
  // Tail sum_{j>=1} min(1, j0_shift...) handled as sum of 1/j^1.1 from the
  // first tail index; Euler-Maclaurin remainder beyond 10^4 terms.
  const long J = 10000;
  double tail = 0.0;
  for (long i = 0; i < J; ++i) {
    long k = head_terms + i;
    double j = k + 1.0 - big_n;
    tail += std::min(1.0, 1.0 / std::pow(j, 1.1));
  }
  double j_last = head_terms + J - big_n;  // last summed index
  tail += std::pow(j_last, -0.1) / 0.1 - 0.5 * std::pow(j_last, -1.1);
  return head + tail;
}

IfStepResult if_step(const SdoProblem& p, const Iterate& it,
                     const IfConfig& cfg, const NullspaceBasis& nb,
                     int step_index) {
  const int n = p.n();
  double t0 = now_ms();
  double nu = it.nu;
  double sigma = 1.0 - cfg.delta / std::sqrt(static_cast<double>(n));

  ScalingData sd = build_scaling(cfg.scaling, it.X, it.S, sigma, nu);
  IfNewtonSystem sys = assemble_if(sd, nb, p.a_s());
  double rc_norm = sys.rhs.norm();

  bool need_inv_norm =
      cfg.solver.kind != SolverKind::kExact || cfg.record_kappa;
  double varrho = 1.0;
  double kappa_m = 0.0;
  if (need_inv_norm) {
    Eigen::BDCSVD<Matrix> svd(sys.M);
    const auto& sv = svd.singularValues();
    double smin = sv(sv.size() - 1);
    if (smin <= 0.0)
      throw SingularMatrixError("feasible Newton matrix is singular");
    varrho = cfg.c_varrho / smin;
    kappa_m = sv(0) / smin;
  }
  double xi_k = xi_schedule_if(cfg.beta, varrho, rc_norm, cfg.epsilon);

  AdaptiveOptions aopts;
  aopts.stream_tag = static_cast<std::uint64_t>(step_index) + 1;
  SolverChoice solver = cfg.solver;
  solver.seed ^= cfg.seed;
  SolveReport rep = adaptive_kappa_solve(sys.M, sys.rhs, varrho, xi_k, solver,
                                         aopts);

  Directions dirs = reconstruct_directions(
      nb, p.a_s(), rep.solution.head(sys.split),
      rep.solution.tail(p.m()));

  Iterate next(SymMatrix::from_symmetric_unchecked(it.X.mat() + dirs.dX.mat()),
               it.y + dirs.dy,
               SymMatrix::from_symmetric_unchecked(it.S.mat() + dirs.dS.mat()));
  // The gap of the unit step expands as
  //   X.S + (X.dS + dX.S) + dX.dS,
  // all four terms on stored values; carrying nu through this identity keeps
  // the trace of the mathematical iterate instead of picking up the entry
  // rounding of X + dX, which at gap levels near epsilon dominates a
  // recomputed trace.
  {
    double cross = trace_inner(it.X, dirs.dS) + trace_inner(dirs.dX, it.S) +
                   trace_inner(dirs.dX, dirs.dS);
    next.nu = it.nu + cross / n;
  }

  IterationRecord rec;
  rec.k = step_index;
  rec.nu = next.nu;
  rec.step_alpha = 1.0;
  rec.solver_residual = rep.residual_norm;
  rec.xi_k = xi_k;
  rec.rc_norm = rc_norm;
  rec.rr_norm = rep.residual_norm;  // third-row residual: rows 1-2 hold by construction
  rec.kappa_newton = cfg.record_kappa ? kappa_m : rep.kappa_used;
  double dn = dirs.dX.mat().norm() * dirs.dS.mat().norm();
  rec.dxds_ratio =
      dn > 0.0 ? std::abs(trace_inner(dirs.dX, dirs.dS)) / dn : 0.0;

  ResidualReport res = residuals(p, next, /*with_centrality=*/false);
  rec.rp_norm = res.rp.norm();
  rec.rd_norm = res.rd.norm();

  NeighborhoodCheck inside =
      in_frobenius_neighborhood(p, next, cfg.gamma, cfg.feas_tol);
  rec.centrality = inside.centrality;
  if (cfg.check_neighborhood && !inside.ok) {
    std::ostringstream os;
    os << "iterate left the narrow neighborhood at step " << step_index
       << " (reason " << static_cast<int>(inside.reason) << ", nu = "
       << next.nu << ", d = " << inside.centrality
       << "); check beta/gamma/delta against the solver error level";
    throw ConvergenceError(os.str());
  }

  if (cfg.record_diagnostics) {
    // Scaled-residual ratio: the analysis assumes the scaled solve residual
    // keeps the same relative size as the complementarity target after the
    // similarity; measured, not enforced. The scaled residual transforms as
    // P^-T R^r P^-1 while the complementarity target is invariant.
    SymMatrix rr = smat(Vector(sys.M * rep.solution - sys.rhs));
    SymMatrix rc = smat(sys.rhs);
    SymMatrix x_t = sym_part(sd.P * it.X.mat() * sd.P.transpose());
    SymMatrix xt_h = mat_sqrt(x_t);
    SymMatrix xt_hi = mat_inv_sqrt(x_t);
    Matrix rr_t = sd.P_invT * rr.mat() * sd.P_invT.transpose();
    double num = (xt_hi.mat() * rr_t * xt_h.mat()).norm();
    double den = (xt_hi.mat() * rc.mat() * xt_h.mat()).norm();
    rec.ar3_ratio = den > 0.0 ? num / den : 0.0;
  }

  rec.wall_ms = now_ms() - t0;
  return IfStepResult{std::move(next), std::move(rec), std::move(dirs)};
}

std::pair<Iterate, RunTrace> run_if(const SdoProblem& p, const Iterate& start,
                                    const IfConfig& cfg,
                                    const StepObserver& observer) {
  validate_if_config(cfg, p.n());
  NeighborhoodCheck at_start =
      in_frobenius_neighborhood(p, start, cfg.gamma, cfg.feas_tol);
  if (!at_start.ok)
    throw ConvergenceError("start iterate is not in the narrow neighborhood");

  NullspaceBasis nb = nullspace_basis(p.a_s());
  Iterate it = start;
  RunTrace trace;
  for (int k = 0; k < cfg.max_iter; ++k) {
    if (it.nu <= cfg.epsilon) {
      trace.converged = true;
      trace.stop_reason = "nu <= epsilon";
      return {it, trace};
    }
    IfStepResult step = if_step(p, it, cfg, nb, k);
    it = std::move(step.next);
    if (observer) observer(it, step.rec);
    trace.rows.push_back(std::move(step.rec));
  }
  if (it.nu <= cfg.epsilon) {
    trace.converged = true;
    trace.stop_reason = "nu <= epsilon";
  } else {
    trace.stop_reason = "max_iter exceeded";
  }
  return {it, trace};
}

void validate_ii_config(const IiConfig& cfg) {
  if (cfg.epsilon <= 0.0) throw ConfigError("epsilon must be > 0");
  if (!(cfg.eta1 > 0.0 && cfg.eta1 <= 1.0))
    throw ConfigError("eta1 must lie in (0,1]");
  if (!(cfg.eta2 > 0.0 && cfg.eta2 < 1.0))
    throw ConfigError("eta2 must lie in (0,1)");
  if (cfg.eta1 < cfg.eta2)
    throw ConfigError("eta1 >= eta2 required (infeasibility cannot decay "
                      "slower than complementarity)");
  if (!(cfg.gamma1 > 0.0 && cfg.gamma1 < 1.0))
    throw ConfigError("gamma1 must lie in (0,1)");
  if (!(cfg.gamma2 > 0.0 && cfg.gamma2 < 1.0))
    throw ConfigError("gamma2 must lie in (0,1)");
  if (cfg.rho <= 0.0) throw ConfigError("rho must be > 0");
  if (cfg.linesearch_grid < 1) throw ConfigError("line-search grid too small");
  if (!(cfg.inject_fraction >= 0.0 && cfg.inject_fraction <= 1.0))
    throw ConfigError("inject_fraction must lie in [0,1]");
}

IiContext ii_context(const SdoProblem& p, const IiConfig& cfg) {
  IiContext ctx;
  ctx.mu0 = cfg.rho * cfg.rho;
  ctx.sigma_min_a = sigma_min(p.a_s());
  ctx.vartheta_hat = cfg.vartheta_hat > 0.0
                         ? std::min(cfg.vartheta_hat, ctx.sigma_min_a)
                         : ctx.sigma_min_a;
  ctx.vartheta_bar = vartheta_bar(p.n(), cfg.epsilon);
  ctx.alpha_max =
      std::min(1.0, 1.0 / (cfg.eta1 * (1.0 + ctx.vartheta_bar)));
  Matrix x0 = cfg.rho * Matrix::Identity(p.n(), p.n());
  Iterate it0(SymMatrix::from_symmetric_unchecked(x0), Vector::Zero(p.m()),
              SymMatrix::from_symmetric_unchecked(x0));
  ResidualReport r0 = residuals(p, it0, /*with_centrality=*/false);
  ctx.R0p = r0.rp;
  ctx.R0d = r0.rd;
  return ctx;
}

double ii_linesearch(const SdoProblem& p, const InfeasibleState& st,
                     const Directions& dirs, const IiConfig& cfg,
                     const IiContext& ctx) {
  InfeasibleNeighborhoodOptions nopts;
  nopts.frobenius_centrality = cfg.frobenius_centrality;
  double alpha = ctx.alpha_max;
  for (int j = 0; j < cfg.linesearch_grid; ++j, alpha *= 0.9) {
    InfeasibleState cand;
    cand.tau = (1.0 - alpha * cfg.eta1) * st.tau;
    cand.theta = (1.0 - alpha * cfg.eta2) * st.theta;
    cand.rho = st.rho;
    cand.mu0 = st.mu0;
    cand.R0p = st.R0p;
    cand.R0d = st.R0d;
    Matrix x_a = st.iterate.X.mat() + alpha * dirs.dX.mat();
    Matrix s_a = st.iterate.S.mat() + alpha * dirs.dS.mat();
    cand.iterate = Iterate(SymMatrix::from_symmetric_unchecked(x_a),
                           st.iterate.y + alpha * dirs.dy,
                           SymMatrix::from_symmetric_unchecked(s_a));
    if (in_infeasible_neighborhood(cand, p, cfg.gamma1, cfg.gamma2, ctx.mu0,
                                   nullptr, nopts))
      return alpha;
  }
  return 0.0;
}

std::pair<Iterate, RunTrace> run_ii(const SdoProblem& p, const IiConfig& cfg,
                                    const StepObserver& observer) {
  validate_ii_config(cfg);
  const int n = p.n();
  const int w = svec_dim(n);
  IiContext ctx = ii_context(p, cfg);

  InfeasibleState st;
  st.tau = 1.0;
  st.theta = 1.0;
  st.rho = cfg.rho;
  st.mu0 = ctx.mu0;
  st.R0p = ctx.R0p;
  st.R0d = ctx.R0d;
  Matrix x0 = cfg.rho * Matrix::Identity(n, n);
  st.iterate = Iterate(SymMatrix::from_symmetric_unchecked(x0),
                       Vector::Zero(p.m()),
                       SymMatrix::from_symmetric_unchecked(x0));

  InfeasibleNeighborhoodOptions nopts;
  nopts.frobenius_centrality = cfg.frobenius_centrality;
  if (!in_infeasible_neighborhood(st, p, cfg.gamma1, cfg.gamma2, ctx.mu0,
                                  nullptr, nopts))
    throw ConvergenceError("initial infeasible state is outside the "
                           "neighborhood; rho too small");

  Rng rng(cfg.seed ^ 0x11F1B0D5EEDULL);
  RunTrace trace;
  auto done = [&] {
    return (cfg.stop_on_theta ? st.theta : st.tau) <= cfg.epsilon;
  };
  const char* done_reason =
      cfg.stop_on_theta ? "theta <= epsilon" : "tau <= epsilon";
  for (int k = 0; k < cfg.max_iter; ++k) {
    if (done()) {
      trace.converged = true;
      trace.stop_reason = done_reason;
      return {st.iterate, trace};
    }
    double t0 = now_ms();
    double vt = vartheta(k, n, cfg.epsilon);

    ScalingData sd =
        build_scaling(ScalingChoice::kHkm, st.iterate.X, st.iterate.S,
                      1.0 - cfg.eta2, st.theta * ctx.mu0);

    // Deterministic residual injections at a fraction of their caps.
    ResidualInjection inj = ResidualInjection::zero(n, p.m());
    double frac = cfg.inject_fraction;
    if (frac > 0.0) {
      inj.rp = (frac * ctx.vartheta_hat * cfg.gamma1 * cfg.rho * st.tau * vt) *
               rng.sphere_direction(p.m());
      inj.rd = (frac * cfg.gamma1 * cfg.rho * st.tau * vt) *
               rng.sphere_direction(w);
      inj.rc = (frac * 0.5 * (1.0 - cfg.eta2) * cfg.gamma2 * st.theta *
                ctx.mu0) *
               rng.sphere_direction(w);
    }
    IiNewtonSystem sys = assemble_ii(sd, p, st.iterate, cfg.eta1, cfg.eta2,
                                     st.tau, st.theta, ctx.mu0, inj);

    SolveReport rep;
    double xi_k = 0.0;
    if (cfg.solver.kind == SolverKind::kExact) {
      rep = solve_exact(sys.M, sys.rhs);
    } else {
      double varrho = cfg.rho / std::max(sigma_min(sys.M), 1e-300);
      xi_k = xi_schedule_ii(cfg.epsilon, varrho, n);
      AdaptiveOptions aopts;
      aopts.stream_tag = static_cast<std::uint64_t>(k) + 0x5151ULL;
      SolverChoice solver = cfg.solver;
      solver.seed ^= cfg.seed;
      rep = adaptive_kappa_solve(sys.M, sys.rhs, varrho, xi_k, solver, aopts);
    }

    Directions dirs;
    dirs.dX = smat(rep.solution.head(w));
    dirs.dy = rep.solution.segment(w, p.m());
    dirs.dS = smat(rep.solution.tail(w));

    double alpha = ii_linesearch(p, st, dirs, cfg, ctx);
    if (alpha <= 0.0) {
      std::ostringstream os;
      os << "line search stalled at iteration " << k << " (tau = " << st.tau
         << ", theta = " << st.theta << ", nu = " << st.iterate.nu << ")";
      throw ConvergenceError(os.str());
    }

    IterationRecord rec;
    rec.k = k;
    rec.step_alpha = alpha;
    rec.xi_k = xi_k;
    rec.solver_residual = rep.residual_norm;
    rec.kappa_newton = rep.kappa_used;
    rec.rc_norm = sys.rhs.tail(w).norm();

    // Monitored growth ratios.
    {
      SymMatrix sh = mat_sqrt(st.iterate.S);
      Matrix shinv = mat_inv_sqrt(st.iterate.S).mat();
      Matrix prod = dirs.dX.mat() * dirs.dS.mat();
      Matrix hp = 0.5 * (sh.mat() * prod * shinv +
                         shinv * prod.transpose() * sh.mat());
      double hp_norm =
          eig_sym(sym_part(hp)).values.cwiseAbs().maxCoeff();
      rec.hp_dxds_ratio =
          hp_norm / (static_cast<double>(n) * n * st.theta * ctx.mu0);
      rec.tau_trx_ratio = st.tau * st.iterate.X.mat().trace() /
                          (st.theta * cfg.rho * n);
    }

    st.tau *= (1.0 - alpha * cfg.eta1);
    st.theta *= (1.0 - alpha * cfg.eta2);
    Matrix x_n = st.iterate.X.mat() + alpha * dirs.dX.mat();
    Matrix s_n = st.iterate.S.mat() + alpha * dirs.dS.mat();
    st.iterate = Iterate(SymMatrix::from_symmetric_unchecked(x_n),
                         st.iterate.y + alpha * dirs.dy,
                         SymMatrix::from_symmetric_unchecked(s_n));

    ResidualReport res = residuals(p, st.iterate, /*with_centrality=*/false);
    rec.nu = st.iterate.nu;
    rec.theta = st.theta;
    rec.tau = st.tau;
    rec.rp_norm = res.rp.norm();
    rec.rd_norm = res.rd.norm();
    {
      SymMatrix sh = mat_sqrt(st.iterate.S);
      SymMatrix hp = sym_part(sh.mat() * st.iterate.X.mat() * sh.mat());
      Matrix dev =
          hp.mat() - st.theta * ctx.mu0 * Matrix::Identity(n, n);
      rec.centrality = eig_sym(sym_part(dev)).values.cwiseAbs().maxCoeff();
    }
    rec.wall_ms = now_ms() - t0;
    if (observer) observer(st.iterate, rec);
    trace.rows.push_back(std::move(rec));
  }
  if (done()) {
    trace.converged = true;
    trace.stop_reason = done_reason;
  } else {
    trace.stop_reason = "max_iter exceeded";
  }
  return {st.iterate, trace};
}

}  // namespace ifipm
