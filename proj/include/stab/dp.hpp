#pragma once

#include <cstddef>

#include "stab/baseline.hpp"
#include "stab/candidates.hpp"
#include "stab/preprocess.hpp"

namespace stab {

// DP subproblem identity: a region plus the canonically ordered set of
// carried segments clipped to it. Two cells with equal geometry compare and
// hash equal.
struct CellKey {
  Rect region;
  std::vector<Segment> carried;

  friend bool operator==(const CellKey& a, const CellKey& b) {
    return a.region == b.region && a.carried == b.carried;
  }
};

struct CellKeyHash {
  std::size_t operator()(const CellKey& k) const;
};

enum class LineSource : std::uint8_t { grid, rect_edges, both };

struct OffsetPolicy {
  bool enumerate_all = true;
  std::int64_t fixed_a = 0;
};

struct DpConfig {
  Rat eps{1, 4};
  int add_arity_cap = 2;
  LineSource line_source = LineSource::both;
  std::size_t memo_capacity = std::size_t(1) << 22;
  OffsetPolicy offset_policy;
};

struct DpStats {
  std::int64_t cells_expanded = 0;
  std::int64_t memo_hits = 0;
  std::int64_t ops_trivial = 0;
  std::int64_t ops_add = 0;
  std::int64_t ops_line = 0;
  std::int64_t ops_leaf = 0;
  std::int64_t ops_greedy = 0;
  std::int64_t cap_prunes = 0;
  std::int64_t best_offset = 0;
};

// Memoized recursion over cells: a mandatory split along a carried segment
// when one crosses the region, else the cheapest of adding candidate
// segments, cutting along a full line (paying a greedy stab of the crossed
// rects), or finishing the cell greedily. With enumerate_all the recursion
// runs once per grid offset in {0..(1/eps)^2 - 1} and keeps the cheapest.
// Expects a normalized instance with h_i >= w_i.
std::pair<Solution, DpStats> solve_hv_tall(const Instance& inst,
                                           const DpConfig& cfg);

// normalize_tall + solve_hv_tall + denormalize, never worse than plain
// greedy on the input instance.
std::pair<Solution, DpStats> solve_tall_pipeline(const Instance& inst,
                                                 const DpConfig& cfg);

// Horizontal-only stabbing: stretches the instance vertically until any
// vertical stab is costlier than an all-horizontal solution, solves, and
// maps anchors back. The result never contains vertical segments.
Solution solve_stabbing(const Instance& inst, const DpConfig& cfg);

// General rectangles: splits into the h >= w part and the transposed
// remainder, solves each with the tall pipeline, and returns the union.
Solution solve_hv_2eps(const Instance& inst, const DpConfig& cfg);

Instance transpose(const Instance& inst);
Solution transpose(const Solution& sol);

}  // namespace stab
