#pragma once

#include <utility>
#include <vector>

#include "stab/geometry.hpp"

namespace stab {

// One compressed stretch of empty space. The interval
// [norm_pos, norm_pos + norm_len] in normalized grid units replaces an
// interval of orig_len units of the pre-compression (discretized) space.
struct GapEntry {
  Coord norm_pos = 0;
  Coord norm_len = 0;
  Coord orig_len = 0;
};

// A rectangle removed as too thin, with the segment that stabs it.
// Geometry in original instance units.
struct ThinStab {
  Rect rect;
  Segment seg;
};

// Everything needed to map a solution of the normalized instance back to a
// feasible solution of the original one: scale factor, shifts, the gap
// compressions per axis (each an exact piecewise-affine bijection), the
// greedily stabbed thin rectangles, and both rect lists for the anchor
// repair step.
struct NormalizationRecord {
  bool identity = true;
  Rat scale_x{1}, scale_y{1};
  Rat x_shift{0}, y_shift{0};  // subtracted in scaled coordinates
  std::vector<GapEntry> x_gap_compressions, y_gap_compressions;
  std::vector<ThinStab> dropped_thin_rects;
  std::int64_t greedy_thin_cost = 0;
  Rat norm_unit{1};
  Instance original;
  Rect normalized_bounds;
  std::vector<Rect> normalized_rects;
  std::vector<int> norm_to_orig;
};

// Normalization for instances with h_i >= w_i. The result has widths in
// [eps/n, 1], x-coordinates on the eps/n grid within [0, n] and
// y-coordinates within [0, 4n^2] (normalized units). Rectangles thinner
// than eps/n are stabbed greedily and recorded. Empty stretches of the
// x-axis are compressed to one grid unit; y-gaps above 2n compress to the
// largest grid multiple below 2n.
std::pair<Instance, NormalizationRecord> normalize_tall(const Instance& inst,
                                                        const Rat& eps);

// Normalization for instances with all sides at most 1 (delta-large
// setting): outward discretization onto the eps/n grid in both axes and
// empty-gap compression; coordinates end up within [0, n] plus the
// discretization slack.
std::pair<Instance, NormalizationRecord> normalize_general(
    const Instance& inst, const Rat& eps);

// Splits segments longer than 1/eps into pieces of length 1/eps - 2
// (normalized units, scaled by max_rect_extent), each extended one
// max_rect_extent outward per side and clamped to the parent segment. Any
// rectangle of extent <= max_rect_extent stabbed by the input is stabbed by
// some piece; total cost grows by at most a factor 1 + 4*eps.
Solution split_long_segments(const Solution& sol, const Rat& eps,
                             Coord max_rect_extent);

// Maps a solution of the normalized instance back to the original one:
// re-expands compressed gaps, undoes shift and scale, snaps spans outward
// onto the original grid and re-anchors segments inside the original
// rectangles, then re-adds the thin-rect stabs.
Solution denormalize(const Solution& sol, const NormalizationRecord& rec);

}  // namespace stab
