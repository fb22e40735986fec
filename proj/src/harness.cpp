#include "ifipm/harness.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace ifipm {

namespace {
std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}
}  // namespace

std::string trace_csv_string(const RunTrace& trace, bool ii_mode) {
  std::ostringstream os;
  os << "k,nu,";
  if (ii_mode) os << "theta,tau,";
  os << "centrality,rp_norm,rd_norm,kappa_newton,alpha,solver_residual,xi_k,"
        "wall_ms\n";
  for (const auto& r : trace.rows) {
    os << r.k << ',' << fmt17(r.nu) << ',';
    if (ii_mode) os << fmt17(r.theta) << ',' << fmt17(r.tau) << ',';
    os << fmt17(r.centrality) << ',' << fmt17(r.rp_norm) << ','
       << fmt17(r.rd_norm) << ',' << fmt17(r.kappa_newton) << ','
       << fmt17(r.step_alpha) << ',' << fmt17(r.solver_residual) << ','
       << fmt17(r.xi_k) << ',' << fmt17(r.wall_ms) << '\n';
  }
  return os.str();
}

void write_trace_csv(const std::string& path, const RunTrace& trace,
                     bool ii_mode) {
  std::ofstream out(path);
  if (!out) throw ParseError(0, "cannot open '" + path + "' for writing");
  out << trace_csv_string(trace, ii_mode);
}

RunSummary summarize(const SdoProblem& p, const Iterate& final_it,
                     const RunTrace& trace) {
  RunSummary s;
  ResidualReport res = residuals(p, final_it, /*with_centrality=*/false);
  s.final_nu = final_it.nu;
  s.final_gap = res.gap;
  s.rp_norm = res.rp.norm();
  s.rd_norm = res.rd.norm();
  s.iterations = trace.iterations();
  s.converged = trace.converged;
  s.stop_reason = trace.stop_reason;
  s.objective = trace_inner(p.c(), final_it.X);
  return s;
}

std::string summary_json_string(const RunSummary& s,
                                const std::string& algorithm,
                                const std::string& config_echo_json) {
  nlohmann::json j;
  j["algorithm"] = algorithm;
  j["final_nu"] = s.final_nu;
  j["final_gap"] = s.final_gap;
  j["rp_norm"] = s.rp_norm;
  j["rd_norm"] = s.rd_norm;
  j["iterations"] = s.iterations;
  j["converged"] = s.converged;
  j["stop_reason"] = s.stop_reason;
  j["objective"] = s.objective;
  j["config"] = nlohmann::json::parse(config_echo_json);
  return j.dump(2);
}

void write_summary_json(const std::string& path, const RunSummary& s,
                        const std::string& algorithm,
                        const std::string& config_echo_json) {
  std::ofstream out(path);
  if (!out) throw ParseError(0, "cannot open '" + path + "' for writing");
  out << summary_json_string(s, algorithm, config_echo_json) << "\n";
}

std::pair<double, double> loglog_slope(const std::vector<double>& x,
                                       const std::vector<double>& y) {
  const int n = static_cast<int>(x.size());
  if (n < 2) throw DimensionError("need at least two points to fit");
  double mx = 0, my = 0;
  for (int i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0, syy = 0;
  for (int i = 0; i < n; ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  double slope = sxy / sxx;
  double r2 = (syy > 0) ? (sxy * sxy) / (sxx * syy) : 1.0;
  return {slope, r2};
}

KappaStudyReport kappa_study(const LoInstance& inst, const IfConfig& cfg_in) {
  IfConfig cfg = cfg_in;
  cfg.record_kappa = true;

  KappaStudyReport rep;
  const Matrix& a = inst.a;
  StepObserver observer = [&](const Iterate& it, IterationRecord& rec) {
    KappaStudyPoint pt;
    pt.k = rec.k;
    pt.nu = rec.nu;
    pt.kappa_newton = rec.kappa_newton;
    // Compact diagonal normal matrix A diag(x/s) A^T.
    Vector ratio = it.X.mat().diagonal().cwiseQuotient(it.S.mat().diagonal());
    Matrix compact = a * ratio.asDiagonal() * a.transpose();
    pt.kappa_compact = cond_2(compact);
    rec.kappa_compact = pt.kappa_compact;
    rep.points.push_back(pt);
  };
  run_if(inst.problem, inst.start, cfg, observer);

  const int total = static_cast<int>(rep.points.size());
  const int tail_start = total / 2;
  const int tail = total - tail_start;
  if (tail < 6)
    throw ConvergenceError("kappa study needs at least 6 tail points, got " +
                           std::to_string(tail));
  std::vector<double> lx, ln_newton, ln_compact;
  for (int i = tail_start; i < total; ++i) {
    lx.push_back(std::log(rep.points[i].nu));
    ln_newton.push_back(std::log(rep.points[i].kappa_newton));
    ln_compact.push_back(std::log(rep.points[i].kappa_compact));
  }
  std::tie(rep.slope_newton, rep.r2_newton) = loglog_slope(lx, ln_newton);
  std::tie(rep.slope_compact, rep.r2_compact) = loglog_slope(lx, ln_compact);

  int inv = 0;
  int from = std::max(0, total - 10);
  for (int i = from + 1; i < total; ++i)
    if (rep.points[i].kappa_newton < rep.points[i - 1].kappa_newton) ++inv;
  rep.newton_inversions_last10 = inv;
  return rep;
}

}  // namespace ifipm
