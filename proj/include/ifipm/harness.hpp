#pragma once

#include <optional>
#include <string>

#include "ifipm/instances.hpp"
#include "ifipm/ipm.hpp"

namespace ifipm {

// Trace CSV; theta and tau columns are emitted for the infeasible method
// only. Deterministic given the rows, except for the wall_ms column.
std::string trace_csv_string(const RunTrace& trace, bool ii_mode);
void write_trace_csv(const std::string& path, const RunTrace& trace,
                     bool ii_mode);

struct RunSummary {
  double final_nu = 0.0;
  double final_gap = 0.0;
  double rp_norm = 0.0;
  double rd_norm = 0.0;
  int iterations = 0;
  bool converged = false;
  std::string stop_reason;
  double objective = 0.0;  // C . X at the final iterate
};

RunSummary summarize(const SdoProblem& p, const Iterate& final_it,
                     const RunTrace& trace);

// Summary JSON: final gap and residuals, iteration count, the config echo
// and the seed, mirroring the run-spec field names in lower_snake_case.
std::string summary_json_string(const RunSummary& s, const std::string& algorithm,
                                const std::string& config_echo_json);
void write_summary_json(const std::string& path, const RunSummary& s,
                        const std::string& algorithm,
                        const std::string& config_echo_json);

struct KappaStudyPoint {
  int k = 0;
  double nu = 0.0;
  double kappa_newton = 0.0;   // reduced Newton matrix, SVD oracle
  double kappa_compact = 0.0;  // A diag(x/s) A^T for diagonal instances
};

struct KappaStudyReport {
  std::vector<KappaStudyPoint> points;
  // Least-squares slopes of log kappa against log nu over the tail half.
  double slope_newton = 0.0;
  double r2_newton = 0.0;
  double slope_compact = 0.0;
  double r2_compact = 0.0;
  // Inversions of monotone growth over the final 10 iterations.
  int newton_inversions_last10 = 0;
};

// Runs the feasible method on an LP embedding, recording the exact
// condition number of the reduced Newton matrix each iteration next to the
// compact diagonal-system condition number the asymptotic slope statement
// is about. Throws ConvergenceError when fewer than 6 tail points exist.
KappaStudyReport kappa_study(const LoInstance& inst, const IfConfig& cfg);

// Least-squares fit y = a + b x; returns (b, r^2).
std::pair<double, double> loglog_slope(const std::vector<double>& x,
                                       const std::vector<double>& y);

}  // namespace ifipm
