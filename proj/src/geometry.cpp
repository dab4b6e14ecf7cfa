#include "stab/geometry.hpp"

#include <algorithm>

namespace stab {

bool stabs(const Segment& seg, const Rect& r) {
  if (seg.orientation == Orientation::horizontal)
    return r.y1 <= seg.anchor && seg.anchor <= r.y2 && seg.lo <= r.x1 &&
           seg.hi >= r.x2;
  return r.x1 <= seg.anchor && seg.anchor <= r.x2 && seg.lo <= r.y1 &&
         seg.hi >= r.y2;
}

std::optional<Segment> clip_segment(const Segment& seg, const Rect& region) {
  Coord plo, phi, slo, shi;
  if (seg.orientation == Orientation::horizontal) {
    plo = region.y1;
    phi = region.y2;
    slo = region.x1;
    shi = region.x2;
  } else {
    plo = region.x1;
    phi = region.x2;
    slo = region.y1;
    shi = region.y2;
  }
  if (seg.anchor < plo || seg.anchor > phi) return std::nullopt;
  Coord lo = std::max(seg.lo, slo);
  Coord hi = std::min(seg.hi, shi);
  if (lo > hi) return std::nullopt;
  return Segment{seg.orientation, seg.anchor, lo, hi};
}

std::int64_t total_length(const std::vector<Segment>& segs) {
  std::int64_t sum = 0;
  for (const auto& s : segs) sum += s.length();
  return sum;
}

VerifyReport verify(const Instance& inst, const Solution& sol) {
  for (const auto& s : sol.segments) {
    bool inside;
    if (s.orientation == Orientation::horizontal)
      inside = inst.bounds.y1 <= s.anchor && s.anchor <= inst.bounds.y2 &&
               inst.bounds.x1 <= s.lo && s.hi <= inst.bounds.x2;
    else
      inside = inst.bounds.x1 <= s.anchor && s.anchor <= inst.bounds.x2 &&
               inst.bounds.y1 <= s.lo && s.hi <= inst.bounds.y2;
    if (!inside)
      fail(Errc::segment_out_of_bounds,
           "segment exits instance bounds (anchor " + std::to_string(s.anchor) +
               ")");
  }
  VerifyReport rep;
  rep.recomputed_cost = total_length(sol.segments);
  for (const auto& r : inst.rects) {
    bool hit = false;
    for (const auto& s : sol.segments)
      if (stabs(s, r)) {
        hit = true;
        break;
      }
    if (!hit) rep.unstabbed.push_back(r.id);
  }
  rep.feasible = rep.unstabbed.empty();
  return rep;
}

Solution finalize_solution(std::vector<Segment> segs, std::string tag) {
  std::sort(segs.begin(), segs.end());
  segs.erase(std::unique(segs.begin(), segs.end()), segs.end());
  std::erase_if(segs, [](const Segment& s) { return s.length() <= 0; });
  Solution sol;
  sol.cost = total_length(segs);
  sol.segments = std::move(segs);
  sol.solver_tag = std::move(tag);
  return sol;
}

Rect bounding_box(const std::vector<Rect>& rects) {
  Rect b = rects.front();
  for (const auto& r : rects) {
    b.x1 = std::min(b.x1, r.x1);
    b.y1 = std::min(b.y1, r.y1);
    b.x2 = std::max(b.x2, r.x2);
    b.y2 = std::max(b.y2, r.y2);
  }
  b.id = -1;
  return b;
}

void seal_instance(Instance& inst) {
  for (std::size_t i = 0; i < inst.rects.size(); ++i) {
    auto& r = inst.rects[i];
    if (!r.valid())
      fail(Errc::bad_params,
           "rect " + std::to_string(i) + " has non-positive extent");
    r.id = static_cast<int>(i);
  }
  if (inst.epsilon <= Rat(0) || Rat(1) / inst.epsilon != Rat((Rat(1) / inst.epsilon).floor()))
    fail(Errc::epsilon_invalid, "1/epsilon must be a positive integer");
  if (!inst.rects.empty()) {
    Rect bb = bounding_box(inst.rects);
    if (inst.bounds.x1 == inst.bounds.x2 || !inst.bounds.contains(bb))
      inst.bounds = bb;
  } else if (inst.bounds.x1 >= inst.bounds.x2) {
    inst.bounds = {0, 0, 1, 1, -1};
  }
  inst.bounds.id = -1;
}

}  // namespace stab
