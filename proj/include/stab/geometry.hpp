#pragma once

#include <cstdint>
#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "stab/rational.hpp"

namespace stab {

// All geometry lives on an integer grid. A coordinate value v represents the
// point v * grid_unit of the instance it belongs to.
using Coord = std::int64_t;

enum class Orientation : std::uint8_t { horizontal, vertical };

inline Orientation transpose(Orientation o) {
  return o == Orientation::horizontal ? Orientation::vertical
                                      : Orientation::horizontal;
}

// Axis-aligned rectangle, bottom-left (x1,y1), top-right (x2,y2).
// Positive width and height; ids are dense 0..n-1 within an instance.
struct Rect {
  Coord x1 = 0, y1 = 0, x2 = 0, y2 = 0;
  int id = -1;

  Coord width() const { return x2 - x1; }
  Coord height() const { return y2 - y1; }

  bool contains(const Rect& r) const {
    return x1 <= r.x1 && r.x2 <= x2 && y1 <= r.y1 && r.y2 <= y2;
  }
  bool valid() const { return x1 < x2 && y1 < y2; }

  friend bool operator==(const Rect& a, const Rect& b) {
    return a.x1 == b.x1 && a.y1 == b.y1 && a.x2 == b.x2 && a.y2 == b.y2;
  }
};

// Axis-parallel stabber. For horizontal segments the anchor is the
// y-coordinate and [lo,hi] spans x; for vertical segments the converse.
// Zero length (lo == hi) is allowed only as an intermediate value.
struct Segment {
  Orientation orientation = Orientation::horizontal;
  Coord anchor = 0;
  Coord lo = 0, hi = 0;

  Coord length() const { return hi - lo; }

  friend bool operator==(const Segment&, const Segment&) = default;
  friend std::strong_ordering operator<=>(const Segment& a, const Segment& b) {
    if (a.orientation != b.orientation)
      return a.orientation == Orientation::horizontal
                 ? std::strong_ordering::less
                 : std::strong_ordering::greater;
    if (auto c = a.anchor <=> b.anchor; c != 0) return c;
    if (auto c = a.lo <=> b.lo; c != 0) return c;
    return a.hi <=> b.hi;
  }
};

inline Segment transpose(const Segment& s) {
  return {transpose(s.orientation), s.anchor, s.lo, s.hi};
}
inline Rect transpose(const Rect& r) { return {r.y1, r.x1, r.y2, r.x2, r.id}; }

// A problem instance. Coordinates are integer multiples of grid_unit;
// epsilon always satisfies 1/epsilon integral.
struct Instance {
  std::vector<Rect> rects;
  Rat grid_unit{1};
  Rat epsilon{1, 4};
  Rect bounds;

  std::size_t size() const { return rects.size(); }
};

struct Solution {
  std::vector<Segment> segments;
  std::int64_t cost = 0;
  std::string solver_tag;
};

struct VerifyReport {
  bool feasible = false;
  std::vector<int> unstabbed;
  std::int64_t recomputed_cost = 0;
};

// A segment stabs a rectangle when it crosses it fully in one dimension.
// Closed semantics: boundary contact counts.
bool stabs(const Segment& seg, const Rect& r);

// seg intersected with region, absent when empty. The result may have zero
// length (single-point overlap).
std::optional<Segment> clip_segment(const Segment& seg, const Rect& region);

// Checks every rectangle of inst against sol and recomputes the cost.
// Throws Errc::segment_out_of_bounds when a segment leaves inst.bounds.
VerifyReport verify(const Instance& inst, const Solution& sol);

std::int64_t total_length(const std::vector<Segment>& segs);

// Sorts canonically and removes exact duplicates, then recomputes cost.
Solution finalize_solution(std::vector<Segment> segs, std::string tag);

// Bounding box of a rect set; rects must be nonempty.
Rect bounding_box(const std::vector<Rect>& rects);

// Validates rect shapes, assigns dense ids, computes bounds when unset.
void seal_instance(Instance& inst);

}  // namespace stab
