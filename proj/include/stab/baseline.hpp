#pragma once

#include <cstdint>

#include "stab/candidates.hpp"
#include "stab/geometry.hpp"

namespace stab {

// Weighted set cover view of a stabbing instance: rectangles are elements,
// candidate segments are sets weighted by their length.
struct CoverSystem {
  using Mask = std::uint64_t;

  struct Entry {
    Segment seg;
    Mask covered = 0;
    std::int64_t weight = 0;
  };

  Mask universe = 0;
  std::vector<Entry> sets;
};

// Bit i of a mask corresponds to rects[i] (position, not rect id).
CoverSystem build_cover_system(const std::vector<Rect>& rects,
                               const std::vector<Segment>& cands);

struct OracleBudget {
  int max_n = 10;
  int max_cands = 64;  // applies after dominance reduction
};

// Minimum-cost sub-collection of cands stabbing every rect, by branch and
// bound. Ties broken by (cost, fewer segments, lexicographic order).
Solution exact_oracle(const Instance& inst, const CandidateSet& cands,
                      const OracleBudget& budget = {});
Solution exact_oracle_over(const Instance& inst,
                           const std::vector<Segment>& cands,
                           const OracleBudget& budget = {});

// Classic ratio greedy: repeatedly picks the segment minimizing
// weight / newly-covered. Deterministic tie-break (smaller weight, then
// lexicographic segment order).
Solution greedy_cover(const Instance& inst, const CandidateSet& cands);
Solution greedy_cover_over(const Instance& inst,
                           const std::vector<Segment>& cands);

// Stabs the rectangles inside `region` crossed by the full line at
// line_coord, via greedy cover over their own canonical candidates.
Solution stab_line_rects(const Instance& inst, Orientation line_orientation,
                         Coord line_coord, const Rect& region);

}  // namespace stab
