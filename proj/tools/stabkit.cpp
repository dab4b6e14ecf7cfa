// stabkit: generate, solve, verify, compare, render and benchmark
// rectangle stabbing instances.

#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>

#include "stab/generate.hpp"
#include "stab/harness.hpp"
#include "stab/render.hpp"

namespace {

using namespace stab;

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case Errc::parse_error:
    case Errc::bad_params:
    case Errc::unknown_solver:
    case Errc::epsilon_invalid:
    case Errc::orientation_violation:
    case Errc::side_too_long:
    case Errc::budget_exceeded:
      return 2;
    default:
      return 1;
  }
}

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty() || out_path == "-")
    std::cout << text;
  else
    write_file(out_path, text);
}

SolverOptions make_options(const std::string& eps, const std::string& delta,
                           const std::string& offset, bool raw,
                           int guess_cap) {
  SolverOptions o;
  if (!eps.empty()) o.eps = Rat::parse(eps);
  if (!delta.empty()) o.delta = Rat::parse(delta);
  if (!offset.empty() && offset != "all") {
    o.enumerate_offsets = false;
    o.fixed_offset = Rat::parse(offset).num();
  }
  o.raw_dp = raw;
  o.guess_size_cap = guess_cap;
  if (const char* cap = std::getenv("STABKIT_MEMO_CAP"))
    o.memo_capacity = std::strtoull(cap, nullptr, 10);
  return o;
}

std::vector<NamedInstance> load_named(const std::vector<std::string>& paths) {
  std::vector<NamedInstance> out;
  for (const auto& p : paths) out.push_back({p, load_instance(p).inst});
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rectangle stabbing toolkit"};
  app.require_subcommand(1);

  // gen
  auto* gen_cmd = app.add_subcommand("gen", "generate an instance file");
  std::string g_family = "uniform", g_out, g_eps = "1/4", g_delta = "1/2";
  int g_n = 8;
  std::uint64_t g_seed = 1;
  std::int64_t g_grid = 32;
  bool g_align = false;
  gen_cmd->add_option("--family", g_family,
                      "uniform|squares|tall|wide|laminar|delta_large");
  gen_cmd->add_option("--n", g_n, "rect count");
  gen_cmd->add_option("--seed", g_seed, "prng seed");
  gen_cmd->add_option("--grid", g_grid, "coordinate scale");
  gen_cmd->add_option("--eps", g_eps, "epsilon p/q");
  gen_cmd->add_option("--delta", g_delta, "delta p/q (delta_large family)");
  gen_cmd->add_flag("--align", g_align, "pin the widest rect to the grid");
  gen_cmd->add_option("--out", g_out, "output path (default stdout)");

  // solve
  auto* solve_cmd = app.add_subcommand("solve", "run one solver, re-verify");
  std::string s_instance, s_solver = "greedy", s_eps, s_delta = "1/2",
              s_offset = "all", s_out, s_solution_out;
  bool s_raw = false, s_timings = false;
  int s_guess_cap = 4;
  solve_cmd->add_option("--instance", s_instance, "instance file")->required();
  solve_cmd->add_option("--solver", s_solver,
                        "exact|greedy|dp|dp2eps|stabbing|delta");
  solve_cmd->add_option("--eps", s_eps, "epsilon p/q override");
  solve_cmd->add_option("--delta", s_delta, "delta p/q");
  solve_cmd->add_option("--offset", s_offset, "all or a fixed offset");
  solve_cmd->add_flag("--raw", s_raw, "dp without normalization");
  solve_cmd->add_flag("--timings", s_timings, "include wall clock in report");
  solve_cmd->add_option("--guess-cap", s_guess_cap, "delta guess size cap");
  solve_cmd->add_option("--out", s_out, "report path (default stdout)");
  solve_cmd->add_option("--solution-out", s_solution_out, "solution file path");

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "check a solution file");
  std::string v_instance, v_solution;
  verify_cmd->add_option("--instance", v_instance)->required();
  verify_cmd->add_option("--solution", v_solution)->required();

  // compare / bench
  auto* compare_cmd = app.add_subcommand("compare", "solver table on a corpus");
  auto* bench_cmd = app.add_subcommand("bench", "csv benchmark on a corpus");
  std::vector<std::string> c_instances, c_solvers{"greedy"};
  std::string c_eps, c_delta = "1/2", c_offset = "all", c_out;
  int c_threads = 1, c_guess_cap = 4;
  bool c_timings = false;
  for (auto* cmd : {compare_cmd, bench_cmd}) {
    cmd->add_option("--instance", c_instances, "instance file (repeatable)")
        ->required();
    cmd->add_option("--solvers", c_solvers, "solver list")->delimiter(',');
    cmd->add_option("--eps", c_eps, "epsilon p/q override");
    cmd->add_option("--delta", c_delta, "delta p/q");
    cmd->add_option("--offset", c_offset, "all or a fixed offset");
    cmd->add_option("--threads", c_threads, "parallel instance runs");
    cmd->add_option("--guess-cap", c_guess_cap, "delta guess size cap");
    cmd->add_flag("--timings", c_timings, "include wall clock");
    cmd->add_option("--out", c_out, "output path (default stdout)");
  }

  // render
  auto* render_cmd = app.add_subcommand("render", "svg scene");
  std::string r_instance, r_solution, r_out;
  render_cmd->add_option("--instance", r_instance)->required();
  render_cmd->add_option("--solution", r_solution, "optional solution file");
  render_cmd->add_option("--out", r_out, "output path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen_cmd) {
      GenParams p;
      p.grid = g_grid;
      p.eps = Rat::parse(g_eps);
      p.delta = Rat::parse(g_delta);
      p.align_max_width = g_align;
      Generated g = generate(parse_family(g_family), g_n, g_seed, p);
      emit(g_out, emit_instance(g.inst, g.meta));
      return 0;
    }
    if (*solve_cmd) {
      auto doc = load_instance(s_instance);
      auto opts = make_options(s_eps, s_delta, s_offset, s_raw, s_guess_cap);
      auto [sol, row] = run_solver(s_solver, doc.inst, opts);
      row.instance = s_instance;
      if (!s_timings) row.wall_ms = 0;
      emit(s_out, rows_to_table({row}));
      if (s_timings && s_solver == "dp")
        std::cout << "stats: cells=" << row.stats.cells_expanded
                  << " hits=" << row.stats.memo_hits
                  << " trivial=" << row.stats.ops_trivial
                  << " add=" << row.stats.ops_add
                  << " line=" << row.stats.ops_line
                  << " greedy=" << row.stats.ops_greedy
                  << " best_offset=" << row.stats.best_offset << "\n";
      if (!s_solution_out.empty())
        write_file(s_solution_out, emit_solution(sol, doc.inst.grid_unit));
      return row.feasible ? 0 : 1;
    }
    if (*verify_cmd) {
      auto doc = load_instance(v_instance);
      Rat unit = doc.inst.grid_unit;
      Solution sol = load_solution(v_solution, &unit);
      if (unit != doc.inst.grid_unit)
        fail(Errc::parse_error, "solution grid unit differs from instance");
      auto rep = verify(doc.inst, sol);
      std::cout << (rep.feasible ? "feasible" : "infeasible")
                << " cost=" << rep.recomputed_cost;
      if (!rep.feasible) {
        std::cout << " unstabbed=";
        for (std::size_t i = 0; i < rep.unstabbed.size(); ++i)
          std::cout << (i ? "," : "") << rep.unstabbed[i];
      }
      std::cout << "\n";
      return rep.feasible ? 0 : 1;
    }
    if (*compare_cmd || *bench_cmd) {
      auto named = load_named(c_instances);
      auto opts = make_options(c_eps, c_delta, c_offset, false, c_guess_cap);
      auto rows = run_matrix(named, c_solvers, opts, c_threads, c_timings);
      bool ok = true;
      for (const auto& r : rows) ok = ok && r.feasible;
      emit(c_out, *bench_cmd ? rows_to_csv(rows) : rows_to_table(rows));
      return ok ? 0 : 1;
    }
    if (*render_cmd) {
      auto doc = load_instance(r_instance);
      Solution sol;
      bool have = !r_solution.empty();
      if (have) sol = load_solution(r_solution, nullptr);
      emit(r_out, render_svg(doc.inst, have ? &sol : nullptr));
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
