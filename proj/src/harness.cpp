#include "stab/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <future>
#include <iomanip>
#include <sstream>

namespace stab {

DpConfig dp_config(const Instance& inst, const SolverOptions& opts) {
  DpConfig cfg;
  cfg.eps = opts.eps.value_or(inst.epsilon);
  cfg.memo_capacity = opts.memo_capacity;
  cfg.offset_policy.enumerate_all = opts.enumerate_offsets;
  cfg.offset_policy.fixed_a = opts.fixed_offset;
  return cfg;
}

std::pair<Solution, RunRow> run_solver(const std::string& solver,
                                       const Instance& inst,
                                       const SolverOptions& opts) {
  RunRow row;
  row.solver = solver;
  auto t0 = std::chrono::steady_clock::now();

  Solution sol;
  DpConfig cfg = dp_config(inst, opts);
  if (solver == "exact") {
    sol = exact_oracle(inst, canonical_candidates(inst), opts.budget);
  } else if (solver == "greedy") {
    sol = greedy_cover(inst, canonical_candidates(inst));
  } else if (solver == "dp") {
    if (opts.raw_dp) {
      auto [s, st] = solve_hv_tall(inst, cfg);
      sol = std::move(s);
      row.stats = st;
    } else {
      auto [s, st] = solve_tall_pipeline(inst, cfg);
      sol = std::move(s);
      row.stats = st;
    }
  } else if (solver == "dp2eps") {
    sol = solve_hv_2eps(inst, cfg);
  } else if (solver == "stabbing") {
    sol = solve_stabbing(inst, cfg);
  } else if (solver == "delta") {
    DeltaConfig dcfg;
    dcfg.delta = opts.delta;
    dcfg.eps = cfg.eps;
    dcfg.guess_size_cap = opts.guess_size_cap;
    dcfg.dp = cfg;
    sol = solve_delta_large(inst, dcfg);
  } else {
    fail(Errc::unknown_solver, solver);
  }

  auto t1 = std::chrono::steady_clock::now();
  row.wall_ms =
      std::chrono::duration_cast<std::chrono::microseconds>(t1 - t0).count() /
      1000.0;
  row.cost = sol.cost;
  row.feasible = verify(inst, sol).feasible;
  return {std::move(sol), std::move(row)};
}

std::vector<RunRow> run_matrix(const std::vector<NamedInstance>& instances,
                               const std::vector<std::string>& solvers,
                               const SolverOptions& opts, int threads,
                               bool with_timings) {
  struct Job {
    std::size_t inst_idx;
    std::string solver;
  };
  std::vector<Job> jobs;
  for (std::size_t i = 0; i < instances.size(); ++i)
    for (const auto& s : solvers) jobs.push_back({i, s});

  std::vector<RunRow> rows(jobs.size());
  auto work = [&](std::size_t j) {
    const auto& inst = instances[jobs[j].inst_idx];
    RunRow row;
    try {
      row = run_solver(jobs[j].solver, inst.inst, opts).second;
    } catch (const Error& e) {
      row.solver = jobs[j].solver;
      row.cost = -1;
      row.feasible = false;
      row.ratio_vs_exact = std::string("error:") + errc_name(e.code());
    }
    row.instance = inst.name;
    row.solver = jobs[j].solver;
    rows[j] = std::move(row);
  };

  if (threads <= 1) {
    for (std::size_t j = 0; j < jobs.size(); ++j) work(j);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::future<void>> pool;
    for (int t = 0; t < threads; ++t)
      pool.push_back(std::async(std::launch::async, [&]() {
        for (std::size_t j = next.fetch_add(1); j < jobs.size();
             j = next.fetch_add(1))
          work(j);
      }));
    for (auto& f : pool) f.get();
  }

  // attach exact ratios where an exact row exists for the same instance
  for (auto& r : rows) {
    if (r.solver == "exact" && r.cost >= 0) r.ratio_vs_exact = "1";
  }
  for (auto& r : rows) {
    if (r.solver == "exact" || r.cost < 0 || !r.ratio_vs_exact.empty())
      continue;
    for (const auto& e : rows)
      if (e.instance == r.instance && e.solver == "exact" && e.cost > 0) {
        r.ratio_vs_exact = Rat(r.cost, e.cost).str();
        break;
      }
  }
  if (!with_timings)
    for (auto& r : rows) r.wall_ms = 0;
  std::sort(rows.begin(), rows.end(), [](const RunRow& a, const RunRow& b) {
    return a.instance != b.instance ? a.instance < b.instance
                                    : a.solver < b.solver;
  });
  return rows;
}

std::string rows_to_csv(const std::vector<RunRow>& rows) {
  std::ostringstream out;
  out << "instance,solver,cost,feasible,ratio_vs_exact,wall_ms\n";
  for (const auto& r : rows) {
    out << r.instance << "," << r.solver << "," << r.cost << ","
        << (r.feasible ? "yes" : "no") << "," << r.ratio_vs_exact << ","
        << std::fixed << std::setprecision(3) << r.wall_ms << "\n";
  }
  return out.str();
}

std::string rows_to_table(const std::vector<RunRow>& rows) {
  std::ostringstream out;
  out << std::left << std::setw(28) << "instance" << std::setw(10) << "solver"
      << std::right << std::setw(10) << "cost" << std::setw(10) << "feasible"
      << std::setw(14) << "ratio" << std::setw(12) << "wall_ms" << "\n";
  for (const auto& r : rows) {
    out << std::left << std::setw(28) << r.instance << std::setw(10)
        << r.solver << std::right << std::setw(10) << r.cost << std::setw(10)
        << (r.feasible ? "yes" : "no") << std::setw(14) << r.ratio_vs_exact
        << std::setw(12) << std::fixed << std::setprecision(3) << r.wall_ms
        << "\n";
  }
  return out.str();
}

}  // namespace stab
