#include "stab/generate.hpp"

#include <algorithm>

#include <nlohmann/json.hpp>

#include "stab/errors.hpp"

namespace stab {

Family parse_family(const std::string& name) {
  if (name == "uniform") return Family::uniform;
  if (name == "squares") return Family::squares;
  if (name == "tall") return Family::tall;
  if (name == "wide") return Family::wide;
  if (name == "laminar") return Family::laminar;
  if (name == "delta_large") return Family::delta_large;
  fail(Errc::bad_params, "unknown family: " + name);
}

const char* family_name(Family f) {
  switch (f) {
    case Family::uniform: return "uniform";
    case Family::squares: return "squares";
    case Family::tall: return "tall";
    case Family::wide: return "wide";
    case Family::laminar: return "laminar";
    case Family::delta_large: return "delta_large";
  }
  return "?";
}

namespace {

// delta expressed in grid cells of size 1/G
std::int64_t delta_units(const GenParams& p, std::int64_t G) {
  Rat v = p.delta * Rat(G);
  if (!v.is_integer() || v.num() < 1 || v.num() > G)
    fail(Errc::bad_params, "delta*grid must be an integer side length");
  return v.num();
}

// Largest divisor of v not exceeding cap.
std::int64_t divisor_at_most(std::int64_t v, std::int64_t cap) {
  std::int64_t best = 1;
  for (std::int64_t d = 1; d * d <= v; ++d) {
    if (v % d != 0) continue;
    if (d <= cap) best = std::max(best, d);
    if (v / d <= cap) best = std::max(best, v / d);
  }
  return best;
}

void align_widths(std::vector<Rect>& rects, const GenParams& p, bool square) {
  if (!p.align_max_width || rects.empty()) return;
  std::int64_t k = (Rat(1) / p.eps).num();
  std::int64_t n = static_cast<std::int64_t>(rects.size());
  std::int64_t target = divisor_at_most((k - 2) * n, p.grid);
  for (auto& r : rects) {
    if (r.width() > target) r.x2 = r.x1 + target;
    if (square) r.y2 = r.y1 + r.width();
  }
  rects.front().x2 = rects.front().x1 + target;
  if (square) rects.front().y2 = rects.front().y1 + target;
  for (auto& r : rects)
    if (r.height() < r.width()) r.y2 = r.y1 + r.width();
}

std::vector<Rect> gen_boxes(Family f, int n, SplitMix64& rng,
                            const GenParams& p) {
  const std::int64_t G = p.grid;
  std::vector<Rect> out;
  out.reserve(n);
  switch (f) {
    case Family::uniform:
      for (int i = 0; i < n; ++i) {
        Rect r;
        r.x1 = rng.below(2 * G);
        r.y1 = rng.below(2 * G);
        r.x2 = r.x1 + rng.range(1, G);
        r.y2 = r.y1 + rng.range(1, G);
        out.push_back(r);
      }
      break;
    case Family::squares:
      for (int i = 0; i < n; ++i) {
        Rect r;
        std::int64_t side = rng.range(1, G);
        r.x1 = rng.below(2 * G);
        r.y1 = rng.below(2 * G);
        r.x2 = r.x1 + side;
        r.y2 = r.y1 + side;
        out.push_back(r);
      }
      break;
    case Family::tall:
    case Family::wide:
      for (int i = 0; i < n; ++i) {
        Rect r;
        std::int64_t w = rng.range(1, G);
        std::int64_t h = rng.range(w, G + w);
        r.x1 = rng.below(2 * G);
        r.y1 = rng.below(2 * G);
        r.x2 = r.x1 + w;
        r.y2 = r.y1 + h;
        out.push_back(r);
      }
      break;
    case Family::laminar: {
      // dyadic x-projections: any two such intervals nest or are disjoint
      Coord span = 1;
      int max_depth = 0;
      while (span < 2 * G) {
        span *= 2;
        ++max_depth;
      }
      for (int i = 0; i < n; ++i) {
        int d = static_cast<int>(rng.below(max_depth));
        Coord len = span >> d;
        Coord p = rng.below(span / len);
        Rect r;
        r.x1 = p * len;
        r.x2 = (p + 1) * len;
        r.y1 = rng.below(2 * G);
        r.y2 = r.y1 + rng.range(1, G);
        out.push_back(r);
      }
      break;
    }
    case Family::delta_large: {
      // unit 1/G; both sides <= 1, at least one side >= delta
      std::int64_t dU = delta_units(p, G);
      for (int i = 0; i < n; ++i) {
        Rect r;
        std::int64_t big = rng.range(dU, G);
        std::int64_t small = rng.range(1, G);
        bool wide_side = rng.below(2) == 0;
        std::int64_t w = wide_side ? big : small;
        std::int64_t h = wide_side ? small : big;
        r.x1 = rng.below(4 * G);
        r.y1 = rng.below(4 * G);
        r.x2 = r.x1 + w;
        r.y2 = r.y1 + h;
        out.push_back(r);
      }
      break;
    }
  }
  return out;
}

}  // namespace

Generated generate(Family family, int n, std::uint64_t seed,
                   const GenParams& params) {
  if (n < 0) fail(Errc::bad_params, "n must be nonnegative");
  if (params.grid < 2) fail(Errc::bad_params, "grid too small");
  SplitMix64 rng(seed ^ (0xABCDEF1234567890ull + n));
  Generated g;
  auto rects = gen_boxes(family, n, rng, params);
  if (family == Family::tall || family == Family::squares ||
      family == Family::uniform)
    align_widths(rects, params, family == Family::squares);
  if (family == Family::wide)
    for (auto& r : rects) {
      std::swap(r.x1, r.y1);
      std::swap(r.x2, r.y2);
    }
  g.inst.rects = std::move(rects);
  g.inst.epsilon = params.eps;
  g.inst.grid_unit =
      family == Family::delta_large ? Rat(1, params.grid) : Rat(1);
  seal_instance(g.inst);

  nlohmann::ordered_json meta;
  meta["family"] = family_name(family);
  meta["n"] = n;
  meta["seed"] = seed;
  meta["grid"] = params.grid;
  if (family == Family::delta_large) meta["delta"] = params.delta.str();
  if (params.align_max_width) meta["align_max_width"] = true;
  g.meta = meta.dump();
  return g;
}

}  // namespace stab
