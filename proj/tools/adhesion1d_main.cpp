#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "adhesion1d/bench.hpp"
#include "adhesion1d/gradflow.hpp"
#include "adhesion1d/io.hpp"
#include "adhesion1d/suites.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace adhesion1d;

namespace {

fs::path default_out_dir(const std::string& flag_value) {
  if (!flag_value.empty()) return flag_value;
  if (const char* env = std::getenv("ADHESION1D_OUT")) return env;
  return "out";
}

std::vector<Scenario> resolve_scenarios(const std::vector<std::string>& paths) {
  if (paths.empty()) return bundled_scenarios();
  std::vector<Scenario> out;
  for (const auto& p : paths) {
    auto batch = load_scenarios(p);
    out.insert(out.end(), batch.begin(), batch.end());
  }
  return out;
}

std::string scenario_canonical_text(const Scenario& sc) {
  json j;
  j["id"] = sc.id;
  j["seed"] = sc.seed;
  j["times"] = sc.times;
  j["suites"] = sc.suites;
  j["tolerances"] = sc.tolerances;
  if (!sc.inline_atoms.empty()) {
    json atoms = json::array();
    for (const auto& a : sc.inline_atoms) atoms.push_back({a.mass, a.position, a.velocity});
    j["atoms"] = atoms;
  }
  if (!sc.csv_path.empty()) j["csv"] = sc.csv_path;
  if (!sc.family_json.empty()) j["family"] = json::parse(sc.family_json);
  return j.dump();
}

std::ofstream open_artifact(const fs::path& dir, const std::string& name,
                            std::vector<std::string>& artifacts) {
  fs::create_directories(dir);
  artifacts.push_back(name);
  std::ofstream out(dir / name, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + (dir / name).string());
  return out;
}

void write_manifest(const fs::path& dir, const Scenario& sc,
                    const std::vector<std::string>& artifacts) {
  json j;
  j["id"] = sc.id;
  char hex[32];
  std::snprintf(hex, sizeof(hex), "%016llx",
                static_cast<unsigned long long>(config_hash(scenario_canonical_text(sc))));
  j["config_hash"] = hex;
  j["artifacts"] = artifacts;
  std::ofstream out(dir / "manifest.json", std::ios::binary);
  out << j.dump(2) << '\n';
}

int cmd_run(const std::vector<Scenario>& scenarios, const fs::path& out_dir, bool renormalize) {
  for (Scenario sc : scenarios) {
    sc.renormalize = sc.renormalize || renormalize;
    const fs::path dir = out_dir / sc.id;
    std::vector<std::string> artifacts;

    const MassVelocityState mu = sc.initial();

    {
      auto os = open_artifact(dir, "trajectory.csv", artifacts);
      write_trajectory(os, trajectory(ParticleSystem(mu), sc.times));
    }
    {
      ParticleSystem sys(mu);
      if (!sc.times.empty()) sys.evolve(sc.times.back());
      auto os = open_artifact(dir, "events.csv", artifacts);
      write_event_log(os, sys.event_log());
    }
    {
      const LagrangianState s0 = LagrangianState::initial(mu);
      std::vector<LagrangianState> states;
      states.reserve(sc.times.size());
      for (double t : sc.times) states.push_back(step(s0, t));
      auto os = open_artifact(dir, "snapshots.csv", artifacts);
      write_snapshots(os, sc.id, states);
    }
    write_manifest(dir, sc, artifacts);
    std::cout << "ran scenario " << sc.id << " -> " << dir.string() << "\n";
  }
  return 0;
}

void print_report(const std::vector<ReportRecord>& records) {
  std::printf("%-18s %-40s %-6s %13s %13s %9s\n", "scenario", "check", "status", "measured",
              "threshold", "runtime");
  for (const auto& r : records)
    std::printf("%-18s %-40s %-6s %13.3e %13.3e %8.3fs\n", r.scenario_id.c_str(),
                r.check.c_str(), r.pass ? "pass" : "FAIL", r.measured, r.threshold, r.runtime_s);
}

void write_report(const fs::path& dir, const std::vector<ReportRecord>& records,
                  const std::string& format) {
  fs::create_directories(dir);
  if (format == "json") {
    json arr = json::array();
    for (const auto& r : records)
      arr.push_back({{"scenario", r.scenario_id},
                     {"check", r.check},
                     {"status", r.pass ? "pass" : "fail"},
                     {"measured", r.measured},
                     {"threshold", r.threshold},
                     {"runtime_s", r.runtime_s}});
    std::ofstream out(dir / "report.json", std::ios::binary);
    out << arr.dump(2) << '\n';
  } else {
    std::ofstream out(dir / "report.csv", std::ios::binary);
    out << "scenario,check,status,measured,threshold,runtime_s\n";
    for (const auto& r : records)
      out << r.scenario_id << ',' << r.check << ',' << (r.pass ? "pass" : "fail") << ','
          << fmt_double(r.measured) << ',' << fmt_double(r.threshold) << ','
          << fmt_double(r.runtime_s) << '\n';
  }
}

int cmd_verify(const std::vector<Scenario>& scenarios, const std::vector<std::string>& suites,
               const SuiteOptions& base_options, const fs::path& out_dir,
               const std::string& format, unsigned jobs) {
  struct Task {
    const Scenario* scenario;
    std::string suite;
  };
  std::vector<Task> tasks;
  for (const auto& sc : scenarios) {
    std::vector<std::string> wanted = suites;
    if (wanted.empty()) wanted = sc.suites;
    if (wanted.empty()) wanted = suite_names();
    for (const auto& s : wanted) tasks.push_back({&sc, s});
  }

  std::vector<std::vector<ReportRecord>> results(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= tasks.size()) return;
      results[i] = run_suite(tasks[i].suite, *tasks[i].scenario, base_options);
    }
  };
  const unsigned n_threads = std::max(1u, std::min<unsigned>(jobs, tasks.size()));
  std::vector<std::thread> pool;
  for (unsigned i = 0; i + 1 < n_threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  std::vector<ReportRecord> records;
  for (const auto& batch : results) records.insert(records.end(), batch.begin(), batch.end());

  print_report(records);
  write_report(out_dir, records, format);
  const bool ok = std::all_of(records.begin(), records.end(),
                              [](const ReportRecord& r) { return r.pass; });
  return ok ? 0 : 1;
}

int cmd_entropy(const std::vector<Scenario>& scenarios, const fs::path& out_dir, double tol) {
  bool ok = true;
  for (const auto& sc : scenarios) {
    const fs::path dir = out_dir / sc.id;
    std::vector<std::string> artifacts;
    const MassVelocityState mu = sc.initial();
    const LagrangianState s0 = LagrangianState::initial(mu);

    double worst = 0.0;
    int index = 0;
    for (double t : sc.times) {
      const CdfSolution hopf = hopf_solution(mu, t);
      auto os = open_artifact(dir, "cdf_" + std::to_string(index++) + ".csv", artifacts);
      os << "# t = " << fmt_double(t) << '\n';
      write_cdf(os, hopf);
      worst = std::max(worst, cdf_discrepancy(hopf, cdf_of(measure_of(step(s0, t).x()), t)));
    }

    const double t_ref = sc.times.empty() ? 0.5 : std::max(0.5, 0.5 * sc.times.back());
    const CdfSolution exact = hopf_solution(mu, t_ref);
    std::vector<std::pair<double, double>> refinement;
    for (double dx : {1.0 / 100, 1.0 / 200, 1.0 / 400})
      refinement.emplace_back(dx, l1_distance(godunov_oracle(mu, t_ref, dx, 0.45), exact));
    {
      auto os = open_artifact(dir, "godunov.csv", artifacts);
      write_table(os, "dx", refinement);
    }
    write_manifest(dir, sc, artifacts);

    const bool hopf_ok = worst <= tol;
    const bool godunov_ok = refinement.size() < 2 ||
                            (refinement[1].second <= refinement[0].second &&
                             refinement[2].second <= refinement[1].second);
    std::printf("%-18s hopf_discrepancy=%.3e (%s)  godunov_refinement %s\n", sc.id.c_str(),
                worst, hopf_ok ? "pass" : "FAIL", godunov_ok ? "pass" : "FAIL");
    ok = ok && hopf_ok && godunov_ok;
  }
  return ok ? 0 : 1;
}

int cmd_gradflow(const std::vector<Scenario>& scenarios, const fs::path& out_dir, double tol) {
  bool ok = true;
  for (const auto& sc : scenarios) {
    const fs::path dir = out_dir / sc.id;
    std::vector<std::string> artifacts;
    const MassVelocityState mu = sc.initial();
    const LagrangianState s0 = LagrangianState::initial(mu);
    SplitMix64 rng(sc.seed + 17);

    const auto events = collision_times(mu, 4.0);
    std::vector<std::pair<double, double>> evi_rows;
    double worst_evi = 0.0;
    for (double t : {0.3, 1.0, 3.0}) {
      double tt = t;
      for (double e : events)
        while (std::abs(tt - e) <= 1e-3) tt += 2.5e-3;
      double worst_here = 0.0;
      for (int k = 0; k < 10; ++k) {
        const DiscreteMeasure eta = random_state(rng, 2 + rng.below(10)).measure();
        const double w2 = lp_distance(step(s0, tt).x(), quantile(eta), 2.0);
        worst_here = std::max(worst_here, evi_residual(s0, tt, eta) / (1.0 + w2 * w2));
      }
      evi_rows.emplace_back(tt, worst_here);
      worst_evi = std::max(worst_evi, worst_here);
    }
    {
      auto os = open_artifact(dir, "evi.csv", artifacts);
      write_table(os, "t", evi_rows);
    }

    const double t = 1.0;
    const auto limit = limit_construction(mu, t, default_eps_sequence(t), 1e-3);
    {
      auto os = open_artifact(dir, "limit.csv", artifacts);
      os << "eps,w2_error,m_eps_bound\n";
      for (const auto& row : limit)
        os << fmt_double(row.eps) << ',' << fmt_double(row.w2_error) << ','
           << fmt_double(row.m_eps_bound) << '\n';
    }

    std::vector<std::pair<double, double>> order_rows;
    const double eps = 0.5, t_ord = 2.0;
    const DiscreteMeasure rho_eps = measure_of(step(s0, eps).x());
    const StepFn x_ref = step(s0, t_ord).x();
    for (double h : {0.04, 0.02, 0.01}) {
      const auto path = gradient_flow_run(rho_eps, mu.measure(), std::log(t_ord / eps), h);
      order_rows.emplace_back(h, lp_distance(path.back().second, x_ref, 2.0));
    }
    {
      auto os = open_artifact(dir, "order.csv", artifacts);
      write_table(os, "h", order_rows);
    }
    write_manifest(dir, sc, artifacts);

    double min_order = kInfinity;
    for (std::size_t k = 0; k + 1 < order_rows.size(); ++k) {
      if (order_rows[k + 1].second < 1e-13) continue;
      min_order = std::min(min_order, std::log2(order_rows[k].second / order_rows[k + 1].second));
    }
    const bool evi_ok = worst_evi <= std::max(tol, 1e-6);
    const bool order_ok = min_order == kInfinity || min_order >= 0.9;
    std::printf("%-18s evi=%.3e (%s)  euler_order=%.2f (%s)\n", sc.id.c_str(), worst_evi,
                evi_ok ? "pass" : "FAIL", min_order == kInfinity ? 1.0 : min_order,
                order_ok ? "pass" : "FAIL");
    ok = ok && evi_ok && order_ok;
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sticky particle dynamics for the 1D pressureless Euler system"};
  app.require_subcommand(1);

  std::vector<std::string> scenario_paths;
  std::string out_flag;
  std::string format = "csv";
  std::vector<std::string> suites;
  double tol = 1e-9;
  unsigned jobs = 1;
  std::uint64_t seed = 0;
  bool renormalize = false;
  bool corrupt_velocity = false;
  std::size_t bench_n = 1000;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--scenario", scenario_paths, "scenario JSON file (repeatable)");
    cmd->add_option("--out", out_flag, "output directory (default $ADHESION1D_OUT or ./out)");
    cmd->add_option("--tol", tol, "agreement tolerance for dual-route checks");
    cmd->add_option("--seed", seed, "seed mixed into the corpus generators");
    cmd->add_flag("--renormalize", renormalize, "rescale input masses to sum to 1");
  };

  CLI::App* run = app.add_subcommand("run", "simulate scenarios, emit trajectories and snapshots");
  add_common(run);

  CLI::App* verify = app.add_subcommand("verify", "run property suites, emit a report");
  add_common(verify);
  verify->add_option("--suite", suites, "suite name (repeatable): cone, equivalence, stability, entropy, gradflow");
  verify->add_option("--jobs", jobs, "worker threads across scenario/suite tasks");
  verify->add_option("--format", format, "report format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  verify->add_flag("--corrupt-velocity", corrupt_velocity,
                   "negative control: perturb the particle route so equivalence must fail");

  CLI::App* entropy = app.add_subcommand("entropy", "Hopf-formula and Godunov cross checks");
  add_common(entropy);

  CLI::App* gradflow = app.add_subcommand("gradflow", "gradient-flow, EVI and limit tables");
  add_common(gradflow);

  CLI::App* bench = app.add_subcommand("bench", "time proj_k and a full event-driven merge");
  add_common(bench);
  bench->add_option("--n", bench_n, "problem size");

  CLI11_PARSE(app, argc, argv);

  try {
    const fs::path out_dir = default_out_dir(out_flag);
    if (app.got_subcommand(run)) {
      auto scenarios = resolve_scenarios(scenario_paths);
      if (renormalize)
        for (auto& sc : scenarios) sc.renormalize = true;
      return cmd_run(scenarios, out_dir, renormalize);
    }
    if (app.got_subcommand(verify)) {
      SuiteOptions opt;
      opt.seed = seed;
      opt.tol = tol;
      opt.corrupt_velocity = corrupt_velocity;
      return cmd_verify(resolve_scenarios(scenario_paths), suites, opt, out_dir, format, jobs);
    }
    if (app.got_subcommand(entropy))
      return cmd_entropy(resolve_scenarios(scenario_paths), out_dir, tol);
    if (app.got_subcommand(gradflow))
      return cmd_gradflow(resolve_scenarios(scenario_paths), out_dir, tol);
    if (app.got_subcommand(bench)) {
      const auto rows = run_bench(bench_n, seed);
      std::filesystem::create_directories(out_dir);
      std::ofstream os(out_dir / "bench.csv", std::ios::binary);
      write_bench(os, rows);
      write_bench(std::cout, rows);
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
