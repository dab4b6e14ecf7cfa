#include "stab/candidates.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace stab {

GridSpec make_grid(const Instance& inst, std::int64_t offset_a) {
  GridSpec g;
  g.eps = inst.epsilon;
  g.offset_a = offset_a;
  g.grid_unit = inst.grid_unit;
  int j = 0;
  while (j < 62 && g.spacing(j + 1) >= Rat(1)) ++j;
  g.max_level = j;
  return g;
}

RatSegment to_normalized(const Segment& s, const Rat& grid_unit) {
  return {s.orientation, Rat(s.anchor) * grid_unit, Rat(s.lo) * grid_unit,
          Rat(s.hi) * grid_unit};
}

int segment_level(const Rat& length, const Rat& eps) {
  if (!length.positive()) fail(Errc::zero_length, "segment has zero length");
  // Lengths in (1, infinity) land in level 0 alongside (eps^0, eps^-1].
  if (length > Rat(1)) return 0;
  int j = 1;
  Rat p = eps;  // eps^j
  while (length <= p) {
    ++j;
    p *= eps;
    if (j > 200) fail(Errc::bad_params, "segment level out of range");
  }
  return j;
}

int segment_level(const Segment& s, const Rat& eps, const Rat& grid_unit) {
  return segment_level(Rat(s.length()) * grid_unit, eps);
}

RatSegment well_align(const RatSegment& seg, const Rat& eps,
                      const GridSpec& grid) {
  int j = segment_level(seg.length(), eps);
  Rat step = Rat::pow(eps, j + 1);
  Rat base = seg.orientation == Orientation::horizontal ? Rat(grid.offset_a)
                                                        : Rat(0);
  RatSegment out = seg;
  out.lo = base + step * Rat(floor_steps(seg.lo, base, step));
  out.hi = base + step * Rat(ceil_steps(seg.hi, base, step));
  return out;
}

std::optional<std::pair<Coord, Coord>> integer_lattice(const GridSpec& grid,
                                                       int level) {
  Rat spacing = grid.spacing(level);
  if (!spacing.positive()) return std::nullopt;
  // Integer lattice positions are offset + t * num(spacing) in grid units,
  // valid when the offset itself lands on an integer coordinate.
  Rat base = Rat(grid.offset_a) / grid.grid_unit;
  if (!base.is_integer()) return std::nullopt;
  return std::make_pair(base.num(), spacing.num());
}

std::vector<Coord> grid_lines_in(const Rect& region, int level,
                                 const GridSpec& grid) {
  std::vector<Coord> out;
  auto lat = integer_lattice(grid, level);
  if (!lat) return out;
  auto [b, step] = *lat;
  // First multiple of step strictly above region.x1 - b.
  auto div_floor = [](Coord a, Coord d) {
    Coord q = a / d;
    if (a % d != 0 && ((a < 0) != (d < 0))) --q;
    return q;
  };
  Coord t = div_floor(region.x1 - b, step) + 1;
  for (Coord x = b + t * step; x < region.x2; x += step)
    if (x > region.x1) out.push_back(x);
  return out;
}

std::vector<Segment> CandidateSet::all() const {
  std::vector<Segment> v;
  v.reserve(size());
  for (const auto& c : horizontal) v.push_back(c.seg);
  for (const auto& c : vertical) v.push_back(c.seg);
  return v;
}

namespace {

// Generates candidates of one orientation. "anchor axis" is y for horizontal
// segments; extents run along x. Works on (extent_lo, extent_hi, range_lo,
// range_hi) tuples so the vertical case is the same code transposed.
struct Extent {
  Coord lo, hi;       // extent along the segment direction
  Coord rlo, rhi;     // anchor range perpendicular to it
};

void emit_for_orientation(const std::vector<Extent>& rects,
                          Orientation orientation,
                          std::vector<Candidate>& out) {
  std::set<Coord> anchors;
  for (const auto& e : rects) {
    anchors.insert(e.rlo);
    anchors.insert(e.rhi);
  }
  for (Coord a : anchors) {
    std::vector<Extent> hit;
    for (const auto& e : rects)
      if (e.rlo <= a && a <= e.rhi) hit.push_back(e);
    if (hit.empty()) continue;
    std::sort(hit.begin(), hit.end(), [](const Extent& x, const Extent& y) {
      return x.lo != y.lo ? x.lo < y.lo : x.hi < y.hi;
    });
    std::set<Coord> lefts, rights;
    for (const auto& e : hit) {
      lefts.insert(e.lo);
      rights.insert(e.hi);
    }
    std::set<std::pair<Coord, Coord>> spans;
    for (Coord l : lefts)
      for (Coord r : rights) {
        if (l >= r) continue;
        // Shrink [l,r] to the union of extents it contains, then keep the
        // maximal contiguous runs: those are the minimal spans.
        Coord runLo = 0, runHi = 0;
        bool open = false;
        for (const auto& e : hit) {
          if (e.lo < l || e.hi > r) continue;
          if (!open) {
            runLo = e.lo;
            runHi = e.hi;
            open = true;
          } else if (e.lo <= runHi) {
            runHi = std::max(runHi, e.hi);
          } else {
            spans.emplace(runLo, runHi);
            runLo = e.lo;
            runHi = e.hi;
          }
        }
        if (open) spans.emplace(runLo, runHi);
      }
    for (const auto& [l, r] : spans) {
      int covered = 0;
      for (const auto& e : hit)
        if (l <= e.lo && e.hi <= r) ++covered;
      if (covered == 0) continue;
      out.push_back({Segment{orientation, a, l, r},
                     covered > 1 ? Provenance::union_span
                                 : Provenance::rect_edge});
    }
  }
  std::sort(out.begin(), out.end(),
            [](const Candidate& a, const Candidate& b) { return a.seg < b.seg; });
  out.erase(std::unique(out.begin(), out.end(),
                        [](const Candidate& a, const Candidate& b) {
                          return a.seg == b.seg;
                        }),
            out.end());
}

}  // namespace

CandidateSet canonical_candidates(const Instance& inst) {
  CandidateSet cs;
  if (inst.rects.empty()) return cs;
  std::vector<Extent> hor, ver;
  hor.reserve(inst.rects.size());
  ver.reserve(inst.rects.size());
  for (const auto& r : inst.rects) {
    hor.push_back({r.x1, r.x2, r.y1, r.y2});
    ver.push_back({r.y1, r.y2, r.x1, r.x2});
  }
  emit_for_orientation(hor, Orientation::horizontal, cs.horizontal);
  emit_for_orientation(ver, Orientation::vertical, cs.vertical);
  return cs;
}

}  // namespace stab
