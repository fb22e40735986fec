#pragma once

#include <functional>
#include <string>
#include <vector>

#include "ifipm/model.hpp"
#include "ifipm/newton.hpp"
#include "ifipm/solvers.hpp"

namespace ifipm {

// Feasible short-step method: full Newton steps inside the narrow
// neighborhood, with the per-iteration solve allowed a residual budget of
// beta times the complementarity right-hand side.
struct IfConfig {
  double epsilon = 1e-6;
  double gamma = 0.05;
  double delta = 0.05;
  double beta = 0.25;
  ScalingChoice scaling = ScalingChoice::kNt;
  SolverChoice solver;
  int max_iter = 200000;
  double feas_tol = 1e-9;
  double c_varrho = 1.0;
  bool record_kappa = false;    // store cond_2 of the Newton matrix per iteration
  bool record_diagnostics = false;  // scaled-residual ratio per iteration
  bool check_neighborhood = true;
  std::uint64_t seed = 0;
};

// Throws ConfigError naming the violated inequality. The beta bound depends
// on the instance order n and only binds when the solver injects error.
void validate_if_config(const IfConfig& cfg, int n);

struct IterationRecord {
  int k = 0;
  double nu = 0.0;
  double theta = 0.0;  // infeasible method only
  double tau = 0.0;    // infeasible method only
  double centrality = 0.0;
  double rp_norm = 0.0;
  double rd_norm = 0.0;
  double kappa_newton = 0.0;
  double step_alpha = 0.0;
  double solver_residual = 0.0;
  double xi_k = 0.0;
  double wall_ms = 0.0;
  // diagnostics
  double rc_norm = 0.0;
  double rr_norm = 0.0;
  double dxds_ratio = 0.0;      // |dX . dS| / (||dX||_F ||dS||_F)
  double ar3_ratio = 0.0;       // feasible method, when recorded
  double hp_dxds_ratio = 0.0;   // ||H_P(dX dS)|| / (n^2 theta mu0)
  double tau_trx_ratio = 0.0;   // tau tr(X) / (theta rho n)
  double kappa_compact = 0.0;   // diagonal compact-system condition number
};

struct RunTrace {
  std::vector<IterationRecord> rows;
  bool converged = false;
  std::string stop_reason;
  int iterations() const { return static_cast<int>(rows.size()); }
};

// xi_k = (beta / varrho) * max(||Rc||_F, epsilon / 25).
double xi_schedule_if(double beta, double varrho, double rc_norm,
                      double epsilon);

// xi_k = epsilon / (varrho log2(n) log2(1/epsilon)).
double xi_schedule_ii(double epsilon, double varrho, int n);

// Admissible residual-decay sequence: constant 1/(log2 n log2(1/eps)) for
// k < N = log2(n) n^2 floor(log2(1/eps)), then 1/(k+1-N)^1.1, capped at 1.
double vartheta(int k, int n, double epsilon);

// Numerical sum of the sequence (Euler-Maclaurin tail).
double vartheta_bar(int n, double epsilon);

struct IfStepResult {
  Iterate next;
  IterationRecord rec;
  Directions dirs;
};

// One full Newton step: build the scaling, assemble the reduced system,
// solve through the adaptive condition-number loop, reconstruct directions
// and take the unit step. Throws ConvergenceError if the new iterate leaves
// the neighborhood.
IfStepResult if_step(const SdoProblem& p, const Iterate& it,
                     const IfConfig& cfg, const NullspaceBasis& nb,
                     int step_index);

using StepObserver = std::function<void(const Iterate&, IterationRecord&)>;

std::pair<Iterate, RunTrace> run_if(const SdoProblem& p, const Iterate& start,
                                    const IfConfig& cfg,
                                    const StepObserver& observer = nullptr);

// Infeasible method configuration. eta1 drives the infeasibility decay,
// eta2 the complementarity decay; eta1 >= eta2 keeps tau <= theta.
struct IiConfig {
  double epsilon = 1e-4;
  double eta1 = 0.9;
  double eta2 = 0.5;
  double gamma1 = 0.3;
  double gamma2 = 0.3;
  double rho = 0.0;          // initial point scale, must be set > 0
  double vartheta_hat = 0.0;  // 0: use sigma_min(A_s)
  SolverChoice solver;
  int max_iter = 20000;
  int linesearch_grid = 64;
  double inject_fraction = 0.5;  // fraction of the residual caps to inject
  bool frobenius_centrality = false;
  // Stop on tau <= epsilon (the loop guard); theta <= epsilon also implies
  // tau <= epsilon and is what the iteration bound is stated for.
  bool stop_on_theta = false;
  std::uint64_t seed = 0;
};

void validate_ii_config(const IiConfig& cfg);

// Run context fixed at start.
struct IiContext {
  double mu0 = 1.0;
  double sigma_min_a = 1.0;
  double vartheta_hat = 1.0;
  double vartheta_bar = 0.0;
  double alpha_max = 1.0;
  Vector R0p, R0d;
};

IiContext ii_context(const SdoProblem& p, const IiConfig& cfg);

// Largest step on the backtracking grid alpha_max * 0.9^j that keeps the
// stepped state (with tau (1 - alpha eta1) and theta (1 - alpha eta2))
// inside the infeasible neighborhood; 0 when every probe fails.
double ii_linesearch(const SdoProblem& p, const InfeasibleState& st,
                     const Directions& dirs, const IiConfig& cfg,
                     const IiContext& ctx);

std::pair<Iterate, RunTrace> run_ii(const SdoProblem& p, const IiConfig& cfg,
                                    const StepObserver& observer = nullptr);

// Smallest singular value (dense SVD).
double sigma_min(const Matrix& m);

}  // namespace ifipm
