#include <CLI11.hpp>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <optional>
#include <thread>

#include "ifipm/harness.hpp"
#include "ifipm/qcost.hpp"
#include "ifipm/sdpa_io.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

int log_level() {
  const char* v = std::getenv("IFIPM_LOG");
  return v ? std::atoi(v) : 0;
}

struct InstanceOpts {
  std::string kind = "random";
  int n = 10;
  int m = 20;
  std::uint64_t seed = 1;
  std::string file;  // sdpa input
};

struct RunOpts {
  InstanceOpts instance;
  std::string algorithm = "if";
  std::string scaling = "nt";
  std::string solver = "exact";
  double beta = 0.25;
  double gamma = 0.05;
  double delta = 0.05;
  double eps = 1e-6;
  double rho = 0.0;
  double eta1 = 0.9;
  double eta2 = 0.5;
  double gamma1 = 0.3;
  double gamma2 = 0.3;
  int max_iter = 200000;
  std::string out_dir;
  std::string trace_csv;
  std::string summary_json;
};

ifipm::ScalingChoice parse_scaling(const std::string& s) {
  if (s == "aho") return ifipm::ScalingChoice::kAho;
  if (s == "hkm") return ifipm::ScalingChoice::kHkm;
  if (s == "nt") return ifipm::ScalingChoice::kNt;
  throw ifipm::ConfigError("unknown scaling '" + s + "'");
}

ifipm::SolverChoice parse_solver(const std::string& s, std::uint64_t seed) {
  ifipm::SolverChoice c;
  c.seed = seed;
  if (s == "exact") c.kind = ifipm::SolverKind::kExact;
  else if (s == "cg") c.kind = ifipm::SolverKind::kCgNormal;
  else if (s == "chebyshev") c.kind = ifipm::SolverKind::kChebyshev;
  else if (s == "sim-tomography") {
    c.kind = ifipm::SolverKind::kSimTomography;
    c.inner = ifipm::SolverKind::kExact;
  } else throw ifipm::ConfigError("unknown solver '" + s + "'");
  return c;
}

struct LoadedInstance {
  ifipm::SdoProblem problem;
  ifipm::Iterate start;
  bool has_start = false;
  std::optional<ifipm::LoInstance> lo;
};

LoadedInstance load_instance(const InstanceOpts& io, double gamma) {
  if (io.kind == "random") {
    auto g = ifipm::gen_random_feasible(io.n, io.m, io.seed);
    return {std::move(g.problem), std::move(g.start), true, std::nullopt};
  }
  if (io.kind == "qubo") {
    ifipm::Rng rng(io.seed);
    auto c = ifipm::sym_part(rng.normal_symmetric(io.n));
    auto g = ifipm::gen_qubo_sdo(c, gamma);
    return {std::move(g.problem), std::move(g.start), true, std::nullopt};
  }
  if (io.kind == "lo") {
    auto lo = ifipm::gen_random_lo(io.n, std::min(io.m, io.n), io.seed);
    return {lo.problem, lo.start, true, lo};
  }
  if (io.kind == "sdpa") {
    if (io.file.empty()) throw ifipm::ConfigError("--file required for sdpa");
    auto p = ifipm::read_sdpa(io.file);
    return {std::move(p), ifipm::Iterate(), false, std::nullopt};
  }
  throw ifipm::ConfigError("unknown instance kind '" + io.kind + "'");
}

json config_echo(const RunOpts& o) {
  json j;
  j["instance"] = {{"kind", o.instance.kind}, {"n", o.instance.n},
                   {"m", o.instance.m}, {"seed", o.instance.seed}};
  if (!o.instance.file.empty()) j["instance"]["file"] = o.instance.file;
  j["algorithm"] = o.algorithm;
  j["scaling"] = o.scaling;
  j["solver"] = o.solver;
  j["beta"] = o.beta;
  j["gamma"] = o.gamma;
  j["delta"] = o.delta;
  j["eps"] = o.eps;
  j["rho"] = o.rho;
  j["eta1"] = o.eta1;
  j["eta2"] = o.eta2;
  j["gamma1"] = o.gamma1;
  j["gamma2"] = o.gamma2;
  j["max_iter"] = o.max_iter;
  return j;
}

int do_run(const RunOpts& o) {
  LoadedInstance inst = load_instance(o.instance, o.gamma);
  bool ii = o.algorithm == "ii";
  ifipm::RunTrace trace;
  ifipm::Iterate final_it;

  if (!ii) {
    if (!inst.has_start)
      throw ifipm::ConfigError(
          "feasible algorithm needs a generated instance with a centered "
          "start; use --algorithm ii for file instances");
    ifipm::IfConfig cfg;
    cfg.epsilon = o.eps;
    cfg.gamma = o.gamma;
    cfg.delta = o.delta;
    cfg.beta = o.beta;
    cfg.scaling = parse_scaling(o.scaling);
    cfg.solver = parse_solver(o.solver, o.instance.seed);
    cfg.max_iter = o.max_iter;
    cfg.seed = o.instance.seed;
    auto [it, tr] = ifipm::run_if(inst.problem, inst.start, cfg);
    final_it = std::move(it);
    trace = std::move(tr);
  } else {
    ifipm::IiConfig cfg;
    cfg.epsilon = o.eps;
    cfg.eta1 = o.eta1;
    cfg.eta2 = o.eta2;
    cfg.gamma1 = o.gamma1;
    cfg.gamma2 = o.gamma2;
    cfg.solver = parse_solver(o.solver, o.instance.seed);
    cfg.max_iter = o.max_iter;
    cfg.seed = o.instance.seed;
    cfg.rho = o.rho;
    if (cfg.rho <= 0.0) {
      if (!inst.has_start)
        throw ifipm::ConfigError("--rho required for file instances");
      cfg.rho = ifipm::rho_for_ii(inst.problem, inst.start, cfg.gamma1);
      if (log_level() > 0)
        std::cerr << "[ifipm] generator rho = " << cfg.rho << "\n";
    }
    auto [it, tr] = ifipm::run_ii(inst.problem, cfg);
    final_it = std::move(it);
    trace = std::move(tr);
  }

  ifipm::RunSummary s = ifipm::summarize(inst.problem, final_it, trace);
  std::string trace_path = o.trace_csv;
  std::string summary_path = o.summary_json;
  if (!o.out_dir.empty()) {
    fs::create_directories(o.out_dir);
    if (trace_path.empty()) trace_path = (fs::path(o.out_dir) / "trace.csv").string();
    if (summary_path.empty())
      summary_path = (fs::path(o.out_dir) / "summary.json").string();
  }
  if (!trace_path.empty()) ifipm::write_trace_csv(trace_path, trace, ii);
  if (!summary_path.empty())
    ifipm::write_summary_json(summary_path, s, o.algorithm,
                              config_echo(o).dump());
  json out;
  out["final_nu"] = s.final_nu;
  out["iterations"] = s.iterations;
  out["converged"] = s.converged;
  out["stop_reason"] = s.stop_reason;
  out["objective"] = s.objective;
  std::cout << out.dump(2) << "\n";
  return s.converged ? 0 : 1;
}

void add_instance_flags(CLI::App* cmd, RunOpts& o) {
  cmd->add_option("--instance", o.instance.kind,
                  "instance kind: random|qubo|lo|sdpa");
  cmd->add_option("--n", o.instance.n, "matrix order");
  cmd->add_option("--m", o.instance.m, "constraint count");
  cmd->add_option("--seed", o.instance.seed, "instance seed");
  cmd->add_option("--file", o.instance.file, "sdpa input file (.dat-s)");
}

void add_run_flags(CLI::App* cmd, RunOpts& o) {
  add_instance_flags(cmd, o);
  cmd->add_option("--algorithm", o.algorithm, "if|ii");
  cmd->add_option("--scaling", o.scaling, "aho|hkm|nt");
  cmd->add_option("--solver", o.solver, "exact|cg|chebyshev|sim-tomography");
  cmd->add_option("--beta", o.beta, "inexactness budget");
  cmd->add_option("--gamma", o.gamma, "neighborhood opening");
  cmd->add_option("--delta", o.delta, "centering decrement");
  cmd->add_option("--eps", o.eps, "target normalized gap");
  cmd->add_option("--rho", o.rho, "infeasible start scale (0 = generator)");
  cmd->add_option("--eta1", o.eta1, "infeasibility decay rate");
  cmd->add_option("--eta2", o.eta2, "complementarity decay rate");
  cmd->add_option("--gamma1", o.gamma1, "residual neighborhood opening");
  cmd->add_option("--gamma2", o.gamma2, "centrality neighborhood opening");
  cmd->add_option("--max-iter", o.max_iter, "iteration cap");
  cmd->add_option("--out-dir", o.out_dir, "output directory");
  cmd->add_option("--trace-csv", o.trace_csv, "trace csv path");
  cmd->add_option("--summary-json", o.summary_json, "summary json path");
}

int do_generate(const RunOpts& o, const std::string& out) {
  LoadedInstance inst = load_instance(o.instance, o.gamma);
  ifipm::write_sdpa(inst.problem, out);
  if (log_level() > 0)
    std::cerr << "[ifipm] wrote " << out << " (n=" << inst.problem.n()
              << ", m=" << inst.problem.m() << ")\n";
  return 0;
}

int do_kappa_study(const RunOpts& o, std::vector<double> eps_list,
                   const std::string& out) {
  if (eps_list.empty()) eps_list.push_back(o.eps);
  auto lo = ifipm::gen_random_lo(o.instance.n, std::min(o.instance.m, o.instance.n),
                                 o.instance.seed);
  json rows = json::array();
  for (double eps : eps_list) {
    ifipm::IfConfig cfg;
    cfg.epsilon = eps;
    cfg.solver = parse_solver(o.solver, o.instance.seed);
    cfg.scaling = parse_scaling(o.scaling);
    auto rep = ifipm::kappa_study(lo, cfg);
    json r;
    r["eps"] = eps;
    r["points"] = rep.points.size();
    r["slope_newton"] = rep.slope_newton;
    r["r2_newton"] = rep.r2_newton;
    r["slope_compact"] = rep.slope_compact;
    r["r2_compact"] = rep.r2_compact;
    r["newton_inversions_last10"] = rep.newton_inversions_last10;
    rows.push_back(r);
    if (!out.empty()) {
      std::ofstream f(out + (eps_list.size() > 1 ? "." + std::to_string(eps) : "") +
                      ".csv");
      f << "k,nu,kappa_newton,kappa_compact\n";
      for (const auto& pt : rep.points)
        f << pt.k << ',' << pt.nu << ',' << pt.kappa_newton << ','
          << pt.kappa_compact << '\n';
    }
  }
  std::cout << rows.dump(2) << "\n";
  return 0;
}

int do_qcost(double n, double m, double kappa, double eps,
             const ifipm::CostModelParams& prm) {
  ifipm::CostReport r = ifipm::predict_if_totals(n, m, kappa, eps, prm);
  json j;
  j["model"] = "unit-constant";  // every suppressed constant set to one
  j["qram_accesses"] = r.qram_accesses;
  j["classical_ops"] = r.classical_ops;
  json terms = json::array();
  for (const auto& [label, value] : r.breakdown)
    terms.push_back({{"term", label}, {"value", value}});
  j["breakdown"] = terms;
  std::cout << j.dump(2) << "\n";
  return 0;
}

int do_batch(const std::string& spec_path, int threads) {
  std::ifstream in(spec_path);
  if (!in) throw ifipm::ConfigError("cannot open batch spec " + spec_path);
  json spec = json::parse(in);
  std::vector<RunOpts> runs;
  for (const auto& jr : spec.at("runs")) {
    RunOpts o;
    const auto& ji = jr.at("instance");
    o.instance.kind = ji.value("kind", "random");
    o.instance.n = ji.value("n", 10);
    o.instance.m = ji.value("m", 20);
    o.instance.seed = ji.value("seed", 1);
    o.instance.file = ji.value("file", "");
    o.algorithm = jr.value("algorithm", "if");
    const auto jc = jr.value("config", json::object());
    o.scaling = jc.value("scaling", "nt");
    o.solver = jc.value("solver", "exact");
    o.beta = jc.value("beta", 0.25);
    o.gamma = jc.value("gamma", 0.05);
    o.delta = jc.value("delta", 0.05);
    o.eps = jc.value("eps", 1e-6);
    o.rho = jc.value("rho", 0.0);
    o.eta1 = jc.value("eta1", 0.9);
    o.eta2 = jc.value("eta2", 0.5);
    o.gamma1 = jc.value("gamma1", 0.3);
    o.gamma2 = jc.value("gamma2", 0.3);
    o.max_iter = jc.value("max_iter", 200000);
    const auto jo = jr.value("outputs", json::object());
    o.out_dir = jo.value("out_dir", "");
    o.trace_csv = jo.value("trace_csv", "");
    o.summary_json = jo.value("summary_json", "");
    runs.push_back(std::move(o));
  }
  std::atomic<size_t> next{0};
  std::atomic<int> failures{0};
  auto worker = [&] {
    for (;;) {
      size_t i = next.fetch_add(1);
      if (i >= runs.size()) return;
      try {
        if (do_run(runs[i]) != 0) failures.fetch_add(1);
      } catch (const std::exception& e) {
        std::cerr << "[ifipm] run " << i << " failed: " << e.what() << "\n";
        failures.fetch_add(1);
      }
    }
  };
  int nt = std::max(1, threads);
  std::vector<std::thread> pool;
  for (int t = 0; t < nt; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  return failures.load() == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Inexact-feasible and inexact-infeasible interior point "
               "methods for semidefinite optimization"};
  app.require_subcommand(1);

  RunOpts run_opts;
  CLI::App* run = app.add_subcommand("run", "solve one instance");
  add_run_flags(run, run_opts);

  RunOpts gen_opts;
  std::string gen_out = "instance.dat-s";
  CLI::App* gen = app.add_subcommand("generate", "generate an instance file");
  add_instance_flags(gen, gen_opts);
  gen->add_option("--out", gen_out, "output path (.dat-s)");

  RunOpts ks_opts;
  std::vector<double> ks_eps;
  std::string ks_out;
  CLI::App* ks = app.add_subcommand(
      "kappa-study", "condition number growth along the central path");
  add_run_flags(ks, ks_opts);
  ks->add_option("--eps-list", ks_eps, "target gaps to study");
  ks->add_option("--points-csv", ks_out, "per-iteration csv prefix");

  double qc_n = 100, qc_m = 10000, qc_kappa = 100, qc_eps = 1e-4;
  ifipm::CostModelParams qc_prm;
  CLI::App* qc = app.add_subcommand("qcost", "resource model predictions");
  qc->add_option("--n", qc_n, "matrix order");
  qc->add_option("--m", qc_m, "constraint count");
  qc->add_option("--kappa", qc_kappa, "condition number bound");
  qc->add_option("--eps", qc_eps, "target gap");
  qc->add_option("--kappa-a", qc_prm.kappa_a, "constraint matrix condition");
  qc->add_option("--rho", qc_prm.rho, "infeasible start scale");
  qc->add_option("--a-frob", qc_prm.a_frob, "constraint Frobenius norm");

  std::string batch_spec;
  int batch_threads = static_cast<int>(std::thread::hardware_concurrency());
  CLI::App* batch = app.add_subcommand("batch", "fan out independent runs");
  batch->add_option("--spec", batch_spec, "batch json spec")->required();
  batch->add_option("--threads", batch_threads, "worker threads");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return do_run(run_opts);
    if (gen->parsed()) return do_generate(gen_opts, gen_out);
    if (ks->parsed()) return do_kappa_study(ks_opts, ks_eps, ks_out);
    if (qc->parsed()) return do_qcost(qc_n, qc_m, qc_kappa, qc_eps, qc_prm);
    if (batch->parsed()) return do_batch(batch_spec, batch_threads);
  } catch (const ifipm::ConfigError& e) {
    std::cerr << "{\"error\":\"config\",\"what\":\"" << e.what() << "\"}\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "{\"error\":\"runtime\",\"what\":\"" << e.what() << "\"}\n";
    return 1;
  }
  return 0;
}
