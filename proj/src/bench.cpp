#include "pbitsat/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <istream>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "pbitsat/gate.hpp"
#include "pbitsat/rng.hpp"
#include "pbitsat/stats.hpp"

namespace pbitsat {

CnfFormula gen_planted_3sat(int n, int m, std::uint64_t seed,
                            BoolAssignment* planted_out) {
  if (n < 3) throw std::invalid_argument("need at least 3 variables");
  if (m < 1) throw std::invalid_argument("need at least one clause");
  SplitMix64 rng(seed);
  BoolAssignment planted(static_cast<std::size_t>(n));
  for (auto& x : planted) x = rng.next_bool() ? 1 : 0;

  std::vector<std::vector<int>> clauses;
  clauses.reserve(static_cast<std::size_t>(m));
  while (static_cast<int>(clauses.size()) < m) {
    int v[3];
    v[0] = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n)));
    do {
      v[1] = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n)));
    } while (v[1] == v[0]);
    do {
      v[2] = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n)));
    } while (v[2] == v[0] || v[2] == v[1]);

    std::vector<int> clause(3);
    bool satisfied = false;
    for (int k = 0; k < 3; ++k) {
      bool positive = rng.next_bool();
      clause[static_cast<std::size_t>(k)] = positive ? v[k] + 1 : -(v[k] + 1);
      bool lit_true = positive == (planted[static_cast<std::size_t>(v[k])] != 0);
      satisfied = satisfied || lit_true;
    }
    if (!satisfied) continue; // would falsify the planted assignment
    clauses.push_back(std::move(clause));
  }
  if (planted_out) *planted_out = planted;
  return CnfFormula(n, std::move(clauses));
}

namespace {

int mode_slot(HybridMode mode) {
  switch (mode) {
    case HybridMode::Guided: return 0;
    case HybridMode::Retry: return 1;
    case HybridMode::Rescue: return 2;
    case HybridMode::PureSkip: return 3;
  }
  return 3;
}

InstanceResult run_instance(const PlannedInstance& inst,
                            const std::vector<std::uint64_t>& seeds,
                            const HybridConfig& base_cfg) {
  InstanceResult res;
  res.path = inst.path;
  res.family = inst.family;
  res.num_vars = inst.formula.num_vars();
  res.num_clauses = static_cast<int>(inst.formula.num_clauses());

  HybridReport pure = solve_pure(inst.formula);
  res.answer = pure.answer == SolveStatus::Sat ? "SAT" : "UNSAT";
  res.pure_conflicts = pure.total_conflicts;
  res.pure_propagations = pure.total_propagations;

  std::vector<std::uint64_t> confs, props;
  std::vector<double> rescue;
  for (std::uint64_t seed : seeds) {
    HybridConfig cfg = base_cfg;
    cfg.master_seed = seed;
    HybridReport rep = solve_hybrid(inst.formula, cfg);
    if (rep.answer != pure.answer)
      throw BenchError(BenchError::Kind::AnswerDisagreement,
                       "hybrid answer differs from pure on " + inst.path +
                           " (seed " + std::to_string(seed) + ")");
    HybridRunStats run;
    run.conflicts = rep.total_conflicts;
    run.propagations = rep.total_propagations;
    run.rescue_flag = rep.rescue_flag;
    run.mode = rep.mode;
    res.runs.push_back(run);
    ++res.mode_counts[mode_slot(rep.mode)];
    confs.push_back(run.conflicts);
    props.push_back(run.propagations);
    rescue.push_back(static_cast<double>(run.rescue_flag));
  }

  res.hybrid_conflicts_median = median_lower(confs);
  res.hybrid_propagations_median = median_lower(props);
  res.rescue_rate = mean(rescue);

  std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs;
  for (std::size_t i = 0; i < confs.size(); ++i)
    pairs.emplace_back(res.runs[i].conflicts, res.runs[i].propagations);
  GateLabel label = compute_label(res.pure_conflicts, res.pure_propagations, pairs);
  res.label = label.y;
  res.conflict_reduction = label.conflict_reduction;
  res.propagation_reduction = label.propagation_reduction;
  return res;
}

} // namespace

std::vector<InstanceResult> run_experiment(const ExperimentPlan& plan) {
  std::vector<InstanceResult> results(plan.instances.size());
  if (plan.instances.empty()) return results;
  if (plan.seeds.empty()) throw std::invalid_argument("no seeds");

  int jobs = std::clamp(plan.jobs, 1, static_cast<int>(plan.instances.size()));
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr first_error;

  auto worker = [&]() {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= plan.instances.size()) return;
      try {
        results[i] = run_instance(plan.instances[i], plan.seeds, plan.hybrid);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };

  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (first_error) std::rethrow_exception(first_error);
  return results;
}

double improvement_pct(double pure_median, double hybrid_median) {
  if (pure_median <= 0)
    throw BenchError(BenchError::Kind::ZeroBaseline,
                     "improvement undefined for zero baseline");
  return 100.0 * (1.0 - hybrid_median / pure_median);
}

std::vector<FamilySummary> family_summary(const std::vector<InstanceResult>& results) {
  std::vector<std::string> order;
  std::map<std::string, std::vector<const InstanceResult*>> groups;
  for (const auto& r : results) {
    if (!groups.count(r.family)) order.push_back(r.family);
    groups[r.family].push_back(&r);
  }
  std::vector<FamilySummary> out;
  for (const auto& fam : order) {
    const auto& rows = groups[fam];
    FamilySummary s;
    s.family = fam;
    s.instances = static_cast<int>(rows.size());
    std::vector<double> confr, propr, resc;
    int good = 0;
    for (const auto* r : rows) {
      good += r->label;
      confr.push_back(r->conflict_reduction);
      propr.push_back(r->propagation_reduction);
      resc.push_back(r->rescue_rate);
    }
    s.good_rate = 100.0 * good / static_cast<double>(rows.size());
    s.median_conflict_reduction = 100.0 * median_lower(confr);
    s.median_propagation_reduction = 100.0 * median_lower(propr);
    s.median_rescue_rate = 100.0 * median_lower(resc);
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<GroupSummary> group_summary(const std::vector<InstanceResult>& results) {
  using Key = std::tuple<std::string, int, int>;
  std::vector<Key> order;
  std::map<Key, std::vector<const InstanceResult*>> groups;
  for (const auto& r : results) {
    Key key{r.family, r.num_vars, r.num_clauses};
    if (!groups.count(key)) order.push_back(key);
    groups[key].push_back(&r);
  }
  std::sort(order.begin(), order.end());
  std::vector<GroupSummary> out;
  for (const auto& key : order) {
    const auto& rows = groups[key];
    GroupSummary s;
    s.family = std::get<0>(key);
    s.num_vars = std::get<1>(key);
    s.num_clauses = std::get<2>(key);
    s.ratio = s.num_vars > 0 ? static_cast<double>(s.num_clauses) / s.num_vars : 0.0;
    s.instances = static_cast<int>(rows.size());
    std::vector<std::uint64_t> pc, hc, pp, hp;
    for (const auto* r : rows) {
      pc.push_back(r->pure_conflicts);
      hc.push_back(r->hybrid_conflicts_median);
      pp.push_back(r->pure_propagations);
      hp.push_back(r->hybrid_propagations_median);
    }
    s.pure_conflicts_median = median_lower(pc);
    s.hybrid_conflicts_median = median_lower(hc);
    s.pure_propagations_median = median_lower(pp);
    s.hybrid_propagations_median = median_lower(hp);
    s.conflict_improvement =
        s.pure_conflicts_median > 0
            ? improvement_pct(static_cast<double>(s.pure_conflicts_median),
                              static_cast<double>(s.hybrid_conflicts_median))
            : 0.0;
    s.propagation_improvement =
        s.pure_propagations_median > 0
            ? improvement_pct(static_cast<double>(s.pure_propagations_median),
                              static_cast<double>(s.hybrid_propagations_median))
            : 0.0;
    out.push_back(std::move(s));
  }
  return out;
}

void write_results_csv(const std::vector<InstanceResult>& results, std::ostream& out,
                       const std::string& config_note) {
  out << kResultsCsvVersion << '\n';
  if (!config_note.empty()) out << "# " << config_note << '\n';
  out << "family,path,n,m,ratio,pure_conflicts,pure_props,hyb_conf_med,"
         "hyb_prop_med,conf_reduction,prop_reduction,rescue_rate,label,"
         "mode_counts\n";
  char buf[256];
  for (const auto& r : results) {
    double ratio = r.num_vars > 0 ? static_cast<double>(r.num_clauses) / r.num_vars : 0.0;
    std::snprintf(buf, sizeof buf, "%.17g", ratio);
    out << r.family << ',' << r.path << ',' << r.num_vars << ',' << r.num_clauses
        << ',' << buf << ',' << r.pure_conflicts << ',' << r.pure_propagations
        << ',' << r.hybrid_conflicts_median << ',' << r.hybrid_propagations_median;
    std::snprintf(buf, sizeof buf, ",%.17g,%.17g,%.17g,", r.conflict_reduction,
                  r.propagation_reduction, r.rescue_rate);
    out << buf << r.label << ',' << "guided:" << r.mode_counts[0]
        << ";retry:" << r.mode_counts[1] << ";rescue:" << r.mode_counts[2]
        << ";pureskip:" << r.mode_counts[3] << '\n';
  }
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

} // namespace

std::vector<InstanceResult> read_results_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind(kResultsCsvVersion, 0) != 0)
    throw BenchError(BenchError::Kind::BadCsv, "missing results version header");
  do {
    if (!std::getline(in, line))
      throw BenchError(BenchError::Kind::BadCsv, "missing column header");
  } while (!line.empty() && line[0] == '#');

  std::vector<InstanceResult> out;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    auto f = split_csv_line(line);
    if (f.size() != 14)
      throw BenchError(BenchError::Kind::BadCsv, "bad row: " + line);
    InstanceResult r;
    r.family = f[0];
    r.path = f[1];
    r.num_vars = std::stoi(f[2]);
    r.num_clauses = std::stoi(f[3]);
    r.pure_conflicts = std::stoull(f[5]);
    r.pure_propagations = std::stoull(f[6]);
    r.hybrid_conflicts_median = std::stoull(f[7]);
    r.hybrid_propagations_median = std::stoull(f[8]);
    r.conflict_reduction = std::stod(f[9]);
    r.propagation_reduction = std::stod(f[10]);
    r.rescue_rate = std::stod(f[11]);
    r.label = std::stoi(f[12]);
    std::sscanf(f[13].c_str(), "guided:%d;retry:%d;rescue:%d;pureskip:%d",
                &r.mode_counts[0], &r.mode_counts[1], &r.mode_counts[2],
                &r.mode_counts[3]);
    out.push_back(std::move(r));
  }
  return out;
}

void print_group_table(const std::vector<GroupSummary>& rows, std::ostream& out) {
  char buf[256];
  out << "family        n      m  ratio   #   conf-pure  conf-hyb  improve   "
         "prop-pure  prop-hyb  improve\n";
  for (const auto& s : rows) {
    std::snprintf(buf, sizeof buf,
                  "%-12s %4d %6d  %5.2f %3d  %10llu %9llu  %6.1f%%  %10llu "
                  "%9llu  %6.1f%%\n",
                  s.family.c_str(), s.num_vars, s.num_clauses, s.ratio,
                  s.instances,
                  static_cast<unsigned long long>(s.pure_conflicts_median),
                  static_cast<unsigned long long>(s.hybrid_conflicts_median),
                  s.conflict_improvement,
                  static_cast<unsigned long long>(s.pure_propagations_median),
                  static_cast<unsigned long long>(s.hybrid_propagations_median),
                  s.propagation_improvement);
    out << buf;
  }
}

void print_family_table(const std::vector<FamilySummary>& rows, std::ostream& out) {
  char buf[256];
  out << "family          #   good   conf-red  prop-red  rescue\n";
  for (const auto& s : rows) {
    std::snprintf(buf, sizeof buf, "%-12s %4d  %5.1f%%  %7.1f%%  %7.1f%%  %5.1f%%\n",
                  s.family.c_str(), s.instances, s.good_rate,
                  s.median_conflict_reduction, s.median_propagation_reduction,
                  s.median_rescue_rate);
    out << buf;
  }
}

std::vector<std::string> find_dimacs_files(const std::string& dir) {
  namespace fs = std::filesystem;
  std::vector<std::string> out;
  for (const auto& entry : fs::recursive_directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    auto ext = entry.path().extension().string();
    if (ext == ".cnf" || ext == ".dimacs") out.push_back(entry.path().string());
  }
  std::sort(out.begin(), out.end());
  return out;
}

} // namespace pbitsat
