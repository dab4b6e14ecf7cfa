#pragma once

#include <optional>
#include <string>
#include <vector>

#include "stab/delta.hpp"
#include "stab/dp.hpp"
#include "stab/io.hpp"

namespace stab {

struct SolverOptions {
  std::optional<Rat> eps;    // overrides the instance epsilon
  Rat delta{1, 2};
  bool enumerate_offsets = true;
  std::int64_t fixed_offset = 0;
  std::size_t memo_capacity = std::size_t(1) << 22;
  OracleBudget budget;
  bool raw_dp = false;  // run the dp directly, skipping normalization
  int guess_size_cap = 4;
};

struct RunRow {
  std::string instance;
  std::string solver;
  std::int64_t cost = 0;
  bool feasible = false;
  double wall_ms = 0;
  std::string ratio_vs_exact;  // exact rational "p/q", empty when unknown
  DpStats stats;
};

// Runs one solver on one instance and re-verifies the output. The verdict
// in the row comes from the verifier, never from the solver.
std::pair<Solution, RunRow> run_solver(const std::string& solver,
                                       const Instance& inst,
                                       const SolverOptions& opts);

DpConfig dp_config(const Instance& inst, const SolverOptions& opts);

struct NamedInstance {
  std::string name;
  Instance inst;
};

// Runs solvers x instances, optionally in parallel; rows come back sorted
// by (instance, solver). with_timings keeps measured wall clock in the
// output; otherwise the column is zero so outputs are byte-reproducible.
std::vector<RunRow> run_matrix(const std::vector<NamedInstance>& instances,
                               const std::vector<std::string>& solvers,
                               const SolverOptions& opts, int threads,
                               bool with_timings);

std::string rows_to_csv(const std::vector<RunRow>& rows);
std::string rows_to_table(const std::vector<RunRow>& rows);

}  // namespace stab
