#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "stab/geometry.hpp"

namespace stab {

// Hierarchical shifted grid of vertical lines. Level-j lines sit at
// x = offset_a + k * eps^(j-2) in normalized coordinates; every level-j line
// is also a level-(j+1) line. offset_a is an integer shift in normalized
// units, enumerated by the solvers modulo eps^-2.
struct GridSpec {
  Rat eps{1, 4};
  std::int64_t offset_a = 0;
  int max_level = 0;
  Rat grid_unit{1};  // instance grid unit; lattice positions in grid units

  // Lattice spacing of level j, in grid units (rational).
  Rat spacing(int level) const {
    return Rat::pow(eps, level - 2) / grid_unit;
  }
};

// Deepest level whose spacing is still >= one grid unit.
GridSpec make_grid(const Instance& inst, std::int64_t offset_a);

// Segment with exact rational endpoints in normalized coordinates. Used by
// the alignment operations, whose snap targets are generally finer than the
// instance grid.
struct RatSegment {
  Orientation orientation = Orientation::horizontal;
  Rat anchor, lo, hi;

  Rat length() const { return hi - lo; }
};

RatSegment to_normalized(const Segment& s, const Rat& grid_unit);

// Level of a segment of the given normalized length: the unique j >= 0 with
// length in (eps^j, eps^(j-1)]. Lengths above 1/eps are level 0.
int segment_level(const Rat& length, const Rat& eps);
int segment_level(const Segment& s, const Rat& eps, const Rat& grid_unit);

// Extends a level-j segment outward onto the level-(j+3) lattice: horizontal
// endpoints snap to offset_a + k*eps^(j+1), vertical endpoints to integral
// multiples of eps^(j+1). Grows the segment by less than eps^(j+1) per side,
// so |out| <= |in| * (1 + 2*eps).
RatSegment well_align(const RatSegment& seg, const Rat& eps,
                      const GridSpec& grid);

// x-coordinates (grid units) of level-`level` vertical grid lines strictly
// inside region, ascending. Only lines that land on integer grid coordinates
// are reported.
std::vector<Coord> grid_lines_in(const Rect& region, int level,
                                 const GridSpec& grid);

// The integer-coordinate lines of a level form the lattice
// {base + t*step}; absent when the offset misses the instance grid.
std::optional<std::pair<Coord, Coord>> integer_lattice(const GridSpec& grid,
                                                       int level);

enum class Provenance : std::uint8_t { rect_edge, grid_aligned, union_span };

struct Candidate {
  Segment seg;
  Provenance prov = Provenance::rect_edge;
};

struct CandidateSet {
  std::vector<Candidate> horizontal;
  std::vector<Candidate> vertical;

  std::vector<Segment> all() const;
  std::size_t size() const { return horizontal.size() + vertical.size(); }
};

// The finite segment universe the solvers search over. Anchors are drawn
// from rectangle edge coordinates; spans are unions of extents of the
// rectangles a segment would stab (minimal spans, one per stabbed set).
CandidateSet canonical_candidates(const Instance& inst);

}  // namespace stab
