#pragma once

// Shared test scaffolding: instance builders and the independent reference
// oracles the solver tests compare against. The brute-force routines here
// intentionally avoid the library's search code paths.

#include <optional>
#include <vector>

#include "stab/baseline.hpp"
#include "stab/candidates.hpp"
#include "stab/generate.hpp"
#include "stab/geometry.hpp"

namespace stab::testing {

inline Instance make_instance(std::vector<Rect> rects, Rat unit = Rat(1),
                              Rat eps = Rat(1, 4)) {
  Instance inst;
  inst.rects = std::move(rects);
  inst.grid_unit = unit;
  inst.epsilon = eps;
  seal_instance(inst);
  return inst;
}

// Minimum stabbing cost over every subset of the candidate list, by
// exhaustive enumeration. Candidate count must stay below 24.
inline std::optional<std::int64_t> brute_force_cost(
    const Instance& inst, const std::vector<Segment>& cands) {
  if (cands.size() >= 24) return std::nullopt;
  std::optional<std::int64_t> best;
  for (std::uint32_t pick = 0; pick < (1u << cands.size()); ++pick) {
    std::int64_t cost = 0;
    for (std::size_t i = 0; i < cands.size(); ++i)
      if (pick >> i & 1) cost += cands[i].length();
    if (best && cost >= *best) continue;
    bool ok = true;
    for (const auto& r : inst.rects) {
      bool hit = false;
      for (std::size_t i = 0; i < cands.size() && !hit; ++i)
        if ((pick >> i & 1) && stabs(cands[i], r)) hit = true;
      if (!hit) {
        ok = false;
        break;
      }
    }
    if (ok && (!best || cost < *best)) best = cost;
  }
  return best;
}

// Every discretized segment inside the instance bounds, at grid-unit
// granularity. Only usable for tiny coordinate ranges.
inline std::vector<Segment> full_segment_universe(const Instance& inst) {
  std::vector<Segment> out;
  const Rect& b = inst.bounds;
  for (Coord y = b.y1; y <= b.y2; ++y)
    for (Coord lo = b.x1; lo < b.x2; ++lo)
      for (Coord hi = lo + 1; hi <= b.x2; ++hi)
        out.push_back({Orientation::horizontal, y, lo, hi});
  for (Coord x = b.x1; x <= b.x2; ++x)
    for (Coord lo = b.y1; lo < b.y2; ++lo)
      for (Coord hi = lo + 1; hi <= b.y2; ++hi)
        out.push_back({Orientation::vertical, x, lo, hi});
  return out;
}

inline Rat harmonic(std::size_t n) {
  Rat h(0);
  for (std::size_t i = 1; i <= n; ++i) h += Rat(1, static_cast<std::int64_t>(i));
  return h;
}

// Small random instances with arbitrary (unaligned) coordinates.
inline Instance random_tall(SplitMix64& rng, int n, Coord span = 24) {
  std::vector<Rect> rects;
  for (int i = 0; i < n; ++i) {
    Rect r;
    Coord w = rng.range(1, span / 3);
    Coord h = w + rng.below(span / 2);
    r.x1 = rng.below(span);
    r.y1 = rng.below(span);
    r.x2 = r.x1 + w;
    r.y2 = r.y1 + h;
    rects.push_back(r);
  }
  return make_instance(std::move(rects));
}

}  // namespace stab::testing
