#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pbitsat/bench.hpp"
#include "pbitsat/dimacs.hpp"
#include "pbitsat/formula.hpp"
#include "pbitsat/gate.hpp"
#include "pbitsat/hybrid.hpp"
#include "pbitsat/ising.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace pbitsat;

namespace {

struct HybridFlags {
  std::uint64_t seed = 1;
  int replicas = 30;
  int sweeps = 700;
  double beta_hot = 0.1;
  double beta_cold = 5.0;
  int top_k = 5;
  int max_assumptions = 12;
  std::uint64_t budget1 = 1500;
  std::uint64_t budget2 = 1000;
  bool fresh_rescue = false;
  int threads = 1;
};

void add_hybrid_flags(CLI::App* cmd, HybridFlags& f) {
  cmd->add_option("--seed", f.seed, "sampler master seed");
  cmd->add_option("--replicas", f.replicas, "p-bit replicas R");
  cmd->add_option("--sweeps", f.sweeps, "annealing sweeps S");
  cmd->add_option("--beta-hot", f.beta_hot, "initial inverse temperature");
  cmd->add_option("--beta-cold", f.beta_cold, "final inverse temperature");
  cmd->add_option("--top-k", f.top_k, "agreement pool size");
  cmd->add_option("--max-assumptions", f.max_assumptions, "assumption cap H");
  cmd->add_option("--budget1", f.budget1, "guided conflict budget");
  cmd->add_option("--budget2", f.budget2, "retry conflict budget");
  cmd->add_flag("--fresh-rescue", f.fresh_rescue,
                "rescue on a fresh solver (drop learned clauses)");
  cmd->add_option("--sampler-threads", f.threads, "threads for replica sampling");
}

HybridConfig to_config(const HybridFlags& f) {
  HybridConfig cfg;
  cfg.sampler.replicas = f.replicas;
  cfg.sampler.schedule.sweeps = f.sweeps;
  cfg.sampler.schedule.beta_hot = f.beta_hot;
  cfg.sampler.schedule.beta_cold = f.beta_cold;
  cfg.sampler.threads = f.threads;
  cfg.consensus.top_k = f.top_k;
  cfg.consensus.max_assumptions = f.max_assumptions;
  cfg.budget1 = f.budget1;
  cfg.budget2 = f.budget2;
  cfg.master_seed = f.seed;
  cfg.fresh_rescue = f.fresh_rescue;
  return cfg;
}

std::string family_of(const std::string& path) {
  fs::path p(path);
  auto parent = p.parent_path().filename().string();
  return parent.empty() ? std::string("root") : parent;
}

int cmd_solve(const std::string& path, const std::string& mode,
              const HybridFlags& flags) {
  CnfFormula f = CnfFormula::from_dimacs(parse_dimacs_file(path));
  HybridReport rep =
      mode == "pure" ? solve_pure(f) : solve_hybrid(f, to_config(flags));

  json out;
  out["answer"] = rep.answer == SolveStatus::Sat ? "SAT" : "UNSAT";
  out["rng"] = "splitmix64";
  out["seed"] = flags.seed;
  out["mode"] = to_string(rep.mode);
  out["rescue_flag"] = rep.rescue_flag;
  out["conflicts"] = rep.total_conflicts;
  out["propagations"] = rep.total_propagations;
  out["subcube_exponent"] = rep.subcube_exponent;
  if (rep.answer == SolveStatus::Sat) {
    std::vector<int> lits;
    for (std::size_t i = 0; i < rep.model.size(); ++i)
      lits.push_back(rep.model[i] ? static_cast<int>(i) + 1
                                  : -(static_cast<int>(i) + 1));
    out["model"] = lits;
  }
  std::cout << out.dump() << '\n';
  return 0;
}

int cmd_gen(int n, int m, int count, std::uint64_t seed, const std::string& out_dir) {
  fs::create_directories(out_dir);
  for (int i = 0; i < count; ++i) {
    std::uint64_t inst_seed = seed + static_cast<std::uint64_t>(i);
    CnfFormula f = gen_planted_3sat(n, m, inst_seed);
    DimacsDocument doc = f.to_dimacs();
    doc.comments.push_back("c planted 3-sat n=" + std::to_string(n) +
                           " m=" + std::to_string(m) +
                           " seed=" + std::to_string(inst_seed));
    char name[128];
    std::snprintf(name, sizeof name, "planted_n%d_m%d_s%llu_%03d.cnf", n, m,
                  static_cast<unsigned long long>(inst_seed), i);
    write_dimacs_file(doc, (fs::path(out_dir) / name).string());
  }
  std::cout << "wrote " << count << " instances to " << out_dir << '\n';
  return 0;
}

bool parse_gen_spec(const std::string& spec, int& n, int& m, int& count,
                    std::uint64_t& seed) {
  n = m = count = -1;
  seed = 1;
  std::istringstream ss(spec);
  std::string kv;
  while (std::getline(ss, kv, ',')) {
    auto eq = kv.find('=');
    if (eq == std::string::npos) return false;
    std::string key = kv.substr(0, eq);
    long long val = std::stoll(kv.substr(eq + 1));
    if (key == "n") n = static_cast<int>(val);
    else if (key == "m") m = static_cast<int>(val);
    else if (key == "count") count = static_cast<int>(val);
    else if (key == "seed") seed = static_cast<std::uint64_t>(val);
    else return false;
  }
  return n > 0 && m > 0 && count > 0;
}

int cmd_bench(const std::string& dir, const std::string& gen_spec, int seeds,
              int jobs, const std::string& out_path, const HybridFlags& flags) {
  ExperimentPlan plan;
  plan.jobs = jobs;
  plan.hybrid = to_config(flags);
  plan.seeds.clear();
  for (int s = 1; s <= seeds; ++s) plan.seeds.push_back(static_cast<std::uint64_t>(s));

  if (!dir.empty()) {
    for (const auto& path : find_dimacs_files(dir)) {
      PlannedInstance inst;
      inst.path = path;
      inst.family = family_of(path);
      inst.formula = CnfFormula::from_dimacs(parse_dimacs_file(path));
      plan.instances.push_back(std::move(inst));
    }
    if (plan.instances.empty())
      std::cerr << "warning: no DIMACS files under " << dir << '\n';
  } else {
    int n, m, count;
    std::uint64_t gseed;
    if (!parse_gen_spec(gen_spec, n, m, count, gseed)) {
      std::cerr << "bad --gen-spec, expected n=..,m=..,count=..[,seed=..]\n";
      return 2;
    }
    for (int i = 0; i < count; ++i) {
      std::uint64_t inst_seed = gseed + static_cast<std::uint64_t>(i);
      PlannedInstance inst;
      char name[128];
      std::snprintf(name, sizeof name, "planted/planted_n%d_m%d_s%llu_%03d.cnf", n,
                    m, static_cast<unsigned long long>(inst_seed), i);
      inst.path = name;
      inst.family = "planted";
      inst.formula = gen_planted_3sat(n, m, inst_seed);
      plan.instances.push_back(std::move(inst));
    }
  }

  auto results = run_experiment(plan);
  std::ofstream out(out_path);
  if (!out) {
    std::cerr << "cannot write " << out_path << '\n';
    return 2;
  }
  std::ostringstream note;
  note << "rng=splitmix64 replicas=" << flags.replicas << " sweeps=" << flags.sweeps
       << " beta_hot=" << flags.beta_hot << " beta_cold=" << flags.beta_cold
       << " top_k=" << flags.top_k << " max_assumptions=" << flags.max_assumptions
       << " budget1=" << flags.budget1 << " budget2=" << flags.budget2
       << " seeds=1.." << seeds << " source="
       << (dir.empty() ? "planted 3-sat generator (satisfiable by construction)" : dir)
       << "; rescue_rate = mean rescue_flag over seeds, median over instances";
  write_results_csv(results, out, note.str());
  std::cout << "ran " << results.size() << " instances x (1 pure + " << seeds
            << " hybrid); results in " << out_path << '\n';
  print_group_table(group_summary(results), std::cout);
  return 0;
}

int cmd_summarize(const std::string& in_path) {
  std::ifstream in(in_path);
  if (!in) {
    std::cerr << "cannot read " << in_path << '\n';
    return 2;
  }
  auto results = read_results_csv(in);
  std::cout << "per-configuration medians (" << results.size() << " instances)\n";
  print_group_table(group_summary(results), std::cout);
  std::cout << "\nfamily summary (rescue rate: per-instance mean over seeds, "
               "median over instances)\n";
  print_family_table(family_summary(results), std::cout);
  return 0;
}

int cmd_gate_features(const std::vector<std::string>& paths, const std::string& dir,
                      std::uint64_t probe_seed) {
  std::vector<std::string> all(paths);
  if (!dir.empty()) {
    auto found = find_dimacs_files(dir);
    all.insert(all.end(), found.begin(), found.end());
  }
  std::cout << gate_features_csv_header() << '\n';
  for (const auto& path : all) {
    CnfFormula f = CnfFormula::from_dimacs(parse_dimacs_file(path));
    std::cout << gate_features_csv_row(path, extract_features(f, probe_seed)) << '\n';
  }
  return 0;
}

int cmd_gate_eval(const std::string& in_path) {
  std::ifstream in(in_path);
  if (!in) {
    std::cerr << "cannot read " << in_path << '\n';
    return 2;
  }
  // columns: decision,label,pure_conflicts,pure_props,hyb_conf_med,hyb_prop_med
  std::string line;
  std::getline(in, line); // header
  std::vector<bool> decisions;
  std::vector<LabeledCounters> rows;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    LabeledCounters row;
    int decision = 0;
    if (std::sscanf(line.c_str(), "%d,%d,%llu,%llu,%llu,%llu", &decision, &row.y,
                    reinterpret_cast<unsigned long long*>(&row.pure_conflicts),
                    reinterpret_cast<unsigned long long*>(&row.pure_propagations),
                    reinterpret_cast<unsigned long long*>(&row.hybrid_conflicts),
                    reinterpret_cast<unsigned long long*>(&row.hybrid_propagations)) != 6) {
      std::cerr << "bad row: " << line << '\n';
      return 2;
    }
    decisions.push_back(decision != 0);
    rows.push_back(row);
  }
  PolicyMetrics m = gate_evaluate(decisions, rows);
  std::printf("apply %.1f%%  keep %.1f%%  avoid %.1f%%  conf-saving %.1f%%  "
              "prop-saving %.1f%%\n",
              m.apply_rate, m.keep_rate, m.avoid_rate, m.conflict_saving,
              m.propagation_saving);
  return 0;
}

int cmd_encode(const std::string& path) {
  CnfFormula f = CnfFormula::from_dimacs(parse_dimacs_file(path));
  std::cout << encode_cnf(f).debug_dump();
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"p-bit guided SAT solving toolkit"};
  app.require_subcommand(1);

  // solve
  std::string solve_path, solve_mode = "hybrid";
  HybridFlags solve_flags;
  auto* solve_cmd = app.add_subcommand("solve", "solve one DIMACS file");
  solve_cmd->add_option("path", solve_path, "DIMACS CNF file")->required();
  solve_cmd->add_option("--mode", solve_mode, "pure|hybrid")
      ->check(CLI::IsMember({"pure", "hybrid"}));
  add_hybrid_flags(solve_cmd, solve_flags);

  // gen
  int gen_n = 100, gen_m = 429, gen_count = 10;
  std::uint64_t gen_seed = 1;
  std::string gen_out;
  auto* gen_cmd = app.add_subcommand("gen", "generate planted 3-SAT instances");
  gen_cmd->add_option("--n", gen_n, "variables");
  gen_cmd->add_option("--m", gen_m, "clauses");
  gen_cmd->add_option("--count", gen_count, "instances");
  gen_cmd->add_option("--seed", gen_seed, "base seed");
  gen_cmd->add_option("--out-dir", gen_out, "output directory")->required();

  // bench
  std::string bench_dir, bench_gen_spec, bench_out = "results.csv";
  int bench_seeds = 5, bench_jobs = 1;
  HybridFlags bench_flags;
  auto* bench_cmd =
      app.add_subcommand("bench", "pure-vs-hybrid benchmark over seeds");
  auto* dir_opt = bench_cmd->add_option("--dir", bench_dir, "DIMACS directory");
  bench_cmd->add_option("--gen-spec", bench_gen_spec,
                        "generator spec n=..,m=..,count=..[,seed=..]")
      ->excludes(dir_opt);
  bench_cmd->add_option("--seeds", bench_seeds, "hybrid seeds (1..N)");
  bench_cmd->add_option("--jobs", bench_jobs, "parallel instances");
  bench_cmd->add_option("--out", bench_out, "results CSV path");
  add_hybrid_flags(bench_cmd, bench_flags);

  // summarize
  std::string summarize_in;
  auto* sum_cmd = app.add_subcommand("summarize", "aggregate a results CSV");
  sum_cmd->add_option("--in", summarize_in, "results CSV")->required();

  // gate
  auto* gate_cmd = app.add_subcommand("gate", "suitability-gate utilities");
  gate_cmd->require_subcommand(1);
  std::vector<std::string> gate_paths;
  std::string gate_dir;
  std::uint64_t gate_probe_seed = 1;
  auto* gate_feat = gate_cmd->add_subcommand("features", "emit feature CSV rows");
  gate_feat->add_option("paths", gate_paths, "DIMACS files");
  gate_feat->add_option("--dir", gate_dir, "scan a directory");
  gate_feat->add_option("--probe-seed", gate_probe_seed, "probe sampler seed");
  std::string gate_eval_in;
  auto* gate_ev = gate_cmd->add_subcommand("eval", "score a decisions+labels CSV");
  gate_ev->add_option("--in", gate_eval_in, "CSV input")->required();

  // encode
  std::string encode_path;
  auto* enc_cmd = app.add_subcommand("encode", "dump the Ising encoding");
  enc_cmd->add_option("path", encode_path, "DIMACS CNF file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve_cmd->parsed()) return cmd_solve(solve_path, solve_mode, solve_flags);
    if (gen_cmd->parsed())
      return cmd_gen(gen_n, gen_m, gen_count, gen_seed, gen_out);
    if (bench_cmd->parsed())
      return cmd_bench(bench_dir, bench_gen_spec, bench_seeds, bench_jobs,
                       bench_out, bench_flags);
    if (sum_cmd->parsed()) return cmd_summarize(summarize_in);
    if (gate_cmd->parsed()) {
      if (gate_feat->parsed())
        return cmd_gate_features(gate_paths, gate_dir, gate_probe_seed);
      return cmd_gate_eval(gate_eval_in);
    }
    if (enc_cmd->parsed()) return cmd_encode(encode_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
