#pragma once

#include "stab/dp.hpp"

namespace stab {

// Configuration for the delta-large pipeline. Every input rect must have
// both sides at most 1 and at least one side at least delta.
struct DeltaConfig {
  Rat delta{1, 2};
  Rat eps{1, 4};
  int guess_size_cap = 4;
  Rat cost_cap{0};  // 0 selects the default (1/eps)^3
  std::size_t guess_node_budget = 200000;
  DpConfig dp;  // inner solver; its offset is fixed per cell
};

Rat effective_cost_cap(const DeltaConfig& cfg);

// Disjoint rectangular cells plus the segments stabbing everything the cell
// boundaries cross. Every input rect is either inside exactly one cell or
// stabbed by boundary_segments.
struct CellDecomposition {
  std::vector<Rect> cells;
  Solution boundary_segments;
  std::vector<std::int64_t> per_cell_baseline_cost;
  std::vector<char> cell_closed_by_cost;
};

// Removes the rects crossed by vertical lines at x = offset_a + t/eps^2
// (stabbing them along each line) and groups the rest into strips.
CellDecomposition strip_partition(const Instance& inst, const DeltaConfig& cfg,
                                  std::int64_t offset_a);

// Sweeps one strip bottom-up, closing a cell whenever the greedy baseline
// cost of the rects wholly below the sweep line exceeds the cost cap. Each
// cut is a horizontal segment across the strip that stabs what it crosses.
CellDecomposition sweep_cells(const Instance& strip, const DeltaConfig& cfg);

// All subsets of the long candidates (length >= delta) up to the configured
// size, ascending by (size, cost, order). Throws Errc::guess_space_exceeded
// when the enumeration would exceed guess_node_budget.
std::vector<std::vector<Segment>> guess_long_segments(
    const Instance& cell_inst, const DeltaConfig& cfg,
    const CandidateSet& cands);

// Per-cell report in normalized-instance rect ids.
struct DeltaCellInfo {
  Rect box;
  std::vector<int> rect_ids;
  std::vector<int> remaining_after_guess;  // after the winning guess
  std::int64_t best_cost = 0;
  std::int64_t guesses_tried = 0;
  bool greedy_fallback = false;
};

struct DeltaRunInfo {
  std::int64_t offset = 0;
  CellDecomposition decomposition;  // in normalized coordinates
  std::vector<DeltaCellInfo> cells;
  std::vector<int> rect_count_per_cell;
};

// Full pipeline: normalize_general, strip partition at the best offset,
// cost-bounded sweep, per-cell long-segment guessing with an orientation
// split for the short remainder, then recombination and denormalization.
Solution solve_delta_large(const Instance& inst, const DeltaConfig& cfg);
Solution solve_delta_large_detailed(const Instance& inst,
                                    const DeltaConfig& cfg,
                                    DeltaRunInfo* info);

}  // namespace stab
