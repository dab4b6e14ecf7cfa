#include "stab/preprocess.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace stab {

namespace {

void validate_eps(const Rat& eps, bool strict_third) {
  if (!eps.positive()) fail(Errc::epsilon_invalid, "eps must be positive");
  Rat inv = Rat(1) / eps;
  if (!inv.is_integer())
    fail(Errc::epsilon_invalid, "1/eps must be an integer, got " + eps.str());
  if (strict_third && eps >= Rat(1, 3))
    fail(Errc::epsilon_invalid, "eps must be below 1/3, got " + eps.str());
}

// eps / grid_unit when it is a positive integer, else 0. This is the number
// of grid units per normalized unit times eps, i.e. the rect count the grid
// was derived from.
std::int64_t grid_basis(const Instance& inst, const Rat& eps) {
  Rat m = eps / inst.grid_unit;
  if (!m.is_integer() || m.num() <= 0) return 0;
  return m.num();
}

std::int64_t units_per_one(std::int64_t m, const Rat& eps) {
  return (Rat(m) / eps).num();  // m * (1/eps), integral by construction
}

bool gaps_at_most(const std::vector<std::pair<Coord, Coord>>& covered,
                  Coord limit) {
  for (std::size_t i = 1; i < covered.size(); ++i)
    if (covered[i].first - covered[i - 1].second > limit) return false;
  return true;
}

// Merged union of the rect intervals along one axis, sorted.
std::vector<std::pair<Coord, Coord>> covered_intervals(
    const std::vector<Rect>& rects, bool x_axis) {
  std::vector<std::pair<Coord, Coord>> iv;
  iv.reserve(rects.size());
  for (const auto& r : rects)
    iv.emplace_back(x_axis ? r.x1 : r.y1, x_axis ? r.x2 : r.y2);
  std::sort(iv.begin(), iv.end());
  std::vector<std::pair<Coord, Coord>> out;
  for (const auto& [lo, hi] : iv) {
    if (!out.empty() && lo <= out.back().second)
      out.back().second = std::max(out.back().second, hi);
    else
      out.emplace_back(lo, hi);
  }
  return out;
}

bool is_normalized_tall(const Instance& inst, const Rat& eps) {
  std::int64_t m = grid_basis(inst, eps);
  if (m <= 0 || m < static_cast<std::int64_t>(inst.rects.size())) return false;
  if (inst.epsilon != eps) return false;
  if (inst.rects.empty()) return true;
  std::int64_t u = units_per_one(m, eps);
  Coord max_w = 0;
  for (const auto& r : inst.rects) {
    if (r.height() < r.width()) return false;
    if (r.width() < 1 || r.width() > u) return false;
    if (r.x1 < 0 || r.x2 > m * u) return false;
    if (r.y1 < 0 || r.y2 > 4 * m * m * u) return false;
    max_w = std::max(max_w, r.width());
  }
  if (max_w < u - 2 * m) return false;
  // x: empty stretches already at most one unit
  if (!gaps_at_most(covered_intervals(inst.rects, true), 1)) return false;
  // y: consecutive distinct edge coordinates at most 2m apart
  std::set<Coord> ys;
  for (const auto& r : inst.rects) {
    ys.insert(r.y1);
    ys.insert(r.y2);
  }
  Coord prev = *ys.begin();
  if (*ys.begin() != 0) return false;
  for (Coord y : ys) {
    if (y - prev > 2 * m * u) return false;
    prev = y;
  }
  Coord min_x = inst.rects.front().x1;
  for (const auto& r : inst.rects) min_x = std::min(min_x, r.x1);
  return min_x == 0;
}

bool is_normalized_general(const Instance& inst, const Rat& eps) {
  std::int64_t m = grid_basis(inst, eps);
  if (m <= 0 || m < static_cast<std::int64_t>(inst.rects.size())) return false;
  if (inst.epsilon != eps) return false;
  if (inst.rects.empty()) return true;
  std::int64_t u = units_per_one(m, eps);
  Coord min_x = inst.rects.front().x1, min_y = inst.rects.front().y1;
  for (const auto& r : inst.rects) {
    if (r.width() > u + 2 || r.height() > u + 2) return false;
    if (r.x1 < 0 || r.y1 < 0) return false;
    min_x = std::min(min_x, r.x1);
    min_y = std::min(min_y, r.y1);
  }
  if (min_x != 0 || min_y != 0) return false;
  return gaps_at_most(covered_intervals(inst.rects, true), 1) &&
         gaps_at_most(covered_intervals(inst.rects, false), 1);
}

NormalizationRecord identity_record(const Instance& inst, const Rat& eps) {
  NormalizationRecord rec;
  rec.identity = true;
  rec.norm_unit = inst.grid_unit;
  rec.original = inst;
  rec.normalized_bounds = inst.bounds;
  rec.normalized_rects = inst.rects;
  rec.norm_to_orig.resize(inst.rects.size());
  for (std::size_t i = 0; i < inst.rects.size(); ++i)
    rec.norm_to_orig[i] = static_cast<int>(i);
  (void)eps;
  return rec;
}

struct RatRect {
  Rat x1, y1, x2, y2;
  int orig = -1;
};

// Compresses empty stretches along one axis of already-discretized rects.
// pick_gaps returns (start, end, new_len) triples in ascending order; edges
// are remapped in place and the record entries emitted.
using GapRule = std::vector<std::array<Coord, 3>> (*)(
    const std::vector<Rect>&, bool, Coord);

std::vector<std::array<Coord, 3>> uncovered_gap_rule(
    const std::vector<Rect>& rects, bool x_axis, Coord /*threshold*/) {
  std::vector<std::array<Coord, 3>> gaps;
  auto covered = covered_intervals(rects, x_axis);
  for (std::size_t i = 1; i < covered.size(); ++i) {
    Coord s = covered[i - 1].second, e = covered[i].first;
    if (e - s >= 2) gaps.push_back({s, e, 1});
  }
  return gaps;
}

std::vector<std::array<Coord, 3>> edge_gap_rule(const std::vector<Rect>& rects,
                                                bool x_axis, Coord threshold) {
  // Gaps between consecutive distinct edge coordinates above threshold are
  // stretched down to threshold - 1 (the largest grid multiple below it).
  std::set<Coord> cs;
  for (const auto& r : rects) {
    cs.insert(x_axis ? r.x1 : r.y1);
    cs.insert(x_axis ? r.x2 : r.y2);
  }
  std::vector<std::array<Coord, 3>> gaps;
  Coord prev = 0;
  bool first = true;
  for (Coord c : cs) {
    if (!first && c - prev > threshold)
      gaps.push_back({prev, c, threshold - 1});
    prev = c;
    first = false;
  }
  return gaps;
}

void compress_axis(std::vector<Rect>& rects, bool x_axis,
                   const std::vector<std::array<Coord, 3>>& gaps,
                   std::vector<GapEntry>& record_out) {
  if (gaps.empty()) return;
  auto remap = [&](Coord c) {
    Coord shift = 0;
    for (const auto& [s, e, nl] : gaps) {
      if (c >= e)
        shift += (e - s) - nl;
      else
        break;  // rect edges never sit strictly inside an empty gap
    }
    return c - shift;
  };
  for (auto& r : rects) {
    if (x_axis) {
      r.x1 = remap(r.x1);
      r.x2 = remap(r.x2);
    } else {
      r.y1 = remap(r.y1);
      r.y2 = remap(r.y2);
    }
  }
  for (const auto& [s, e, nl] : gaps)
    record_out.push_back({remap(s), nl, e - s});
}

std::pair<Instance, NormalizationRecord> run_normalize(const Instance& inst,
                                                       const Rat& eps,
                                                       bool tall) {
  NormalizationRecord rec;
  rec.identity = false;
  rec.original = inst;

  const std::int64_t n = static_cast<std::int64_t>(inst.rects.size());
  Instance out;
  out.epsilon = eps;
  if (n == 0) {
    out.grid_unit = eps;  // eps/1
    out.bounds = {0, 0, 1, 1, -1};
    rec.norm_unit = out.grid_unit;
    rec.normalized_bounds = out.bounds;
    return {out, rec};
  }
  const Rat g = eps / Rat(n);
  const std::int64_t u = (Rat(1) / g).num();  // grid units per normalized 1
  out.grid_unit = g;
  rec.norm_unit = g;

  // scale so the largest width becomes 1 - 2*eps (tall mode only)
  std::vector<RatRect> rr;
  rr.reserve(n);
  const Rat u0 = inst.grid_unit;
  Rat lambda{1};
  if (tall) {
    Coord max_w = 0;
    for (const auto& r : inst.rects) max_w = std::max(max_w, r.width());
    lambda = (Rat(1) - Rat(2) * eps) / (Rat(max_w) * u0);
  }
  rec.scale_x = rec.scale_y = lambda;
  for (const auto& r : inst.rects)
    rr.push_back({Rat(r.x1) * u0 * lambda, Rat(r.y1) * u0 * lambda,
                  Rat(r.x2) * u0 * lambda, Rat(r.y2) * u0 * lambda, r.id});

  // drop thin rects, stabbing each with its own minimal horizontal segment
  if (tall) {
    std::vector<RatRect> kept;
    for (const auto& r : rr) {
      if (r.x2 - r.x1 < g) {
        const Rect& orig = inst.rects[r.orig];
        rec.dropped_thin_rects.push_back(
            {orig, Segment{Orientation::horizontal, orig.y1, orig.x1,
                           orig.x2}});
        rec.greedy_thin_cost += orig.width();
      } else {
        kept.push_back(r);
      }
    }
    rr = std::move(kept);
  }

  if (rr.empty()) {
    out.bounds = {0, 0, 1, 1, -1};
    rec.normalized_bounds = out.bounds;
    return {out, rec};
  }

  // shift the lower-left corner to the origin
  Rat min_x = rr.front().x1, min_y = rr.front().y1;
  for (const auto& r : rr) {
    min_x = std::min(min_x, r.x1);
    min_y = std::min(min_y, r.y1);
  }
  rec.x_shift = min_x;
  rec.y_shift = min_y;

  // outward discretization onto the eps/n lattice
  std::vector<Rect> rects;
  rects.reserve(rr.size());
  for (const auto& r : rr) {
    Rect d;
    d.x1 = floor_steps(r.x1 - min_x, Rat(0), g);
    d.x2 = ceil_steps(r.x2 - min_x, Rat(0), g);
    d.y1 = floor_steps(r.y1 - min_y, Rat(0), g);
    d.y2 = ceil_steps(r.y2 - min_y, Rat(0), g);
    if (d.x2 == d.x1) d.x2 = d.x1 + 1;
    if (d.y2 == d.y1) d.y2 = d.y1 + 1;
    if (tall && d.height() < d.width()) d.y2 = d.y1 + d.width();
    d.id = r.orig;  // original index, remapped below
    rects.push_back(d);
  }

  // gap compression
  if (tall) {
    compress_axis(rects, true, uncovered_gap_rule(rects, true, 0),
                  rec.x_gap_compressions);
    compress_axis(rects, false, edge_gap_rule(rects, false, 2 * n * u),
                  rec.y_gap_compressions);
  } else {
    compress_axis(rects, true, uncovered_gap_rule(rects, true, 0),
                  rec.x_gap_compressions);
    compress_axis(rects, false, uncovered_gap_rule(rects, false, 0),
                  rec.y_gap_compressions);
  }

  Coord max_x = 0, max_y = 0;
  for (auto& r : rects) {
    max_x = std::max(max_x, r.x2);
    max_y = std::max(max_y, r.y2);
    rec.norm_to_orig.push_back(r.id);
    r.id = static_cast<int>(rec.norm_to_orig.size()) - 1;
  }
  out.rects = rects;
  rec.normalized_rects = rects;
  Coord bx = tall ? n * u : std::max(n * u, max_x);
  Coord by = tall ? 4 * n * n * u : std::max(n * u, max_y);
  if (max_x > bx || max_y > by)
    fail(Errc::bad_params, "normalized coordinates exceed bounds");
  out.bounds = {0, 0, bx, by, -1};
  rec.normalized_bounds = out.bounds;
  return {out, rec};
}

}  // namespace

std::pair<Instance, NormalizationRecord> normalize_tall(const Instance& inst,
                                                        const Rat& eps) {
  validate_eps(eps, true);
  for (const auto& r : inst.rects)
    if (r.height() < r.width())
      fail(Errc::orientation_violation,
           "rect " + std::to_string(r.id) + " is wider than tall");
  if (is_normalized_tall(inst, eps)) return {inst, identity_record(inst, eps)};
  return run_normalize(inst, eps, true);
}

std::pair<Instance, NormalizationRecord> normalize_general(
    const Instance& inst, const Rat& eps) {
  validate_eps(eps, true);
  for (const auto& r : inst.rects) {
    if (Rat(r.width()) * inst.grid_unit > Rat(1))
      fail(Errc::side_too_long, "rect " + std::to_string(r.id) + " wider than 1");
    if (Rat(r.height()) * inst.grid_unit > Rat(1))
      fail(Errc::side_too_long, "rect " + std::to_string(r.id) + " taller than 1");
  }
  if (is_normalized_general(inst, eps))
    return {inst, identity_record(inst, eps)};
  return run_normalize(inst, eps, false);
}

Solution split_long_segments(const Solution& sol, const Rat& eps,
                             Coord max_rect_extent) {
  validate_eps(eps, false);
  std::int64_t k = (Rat(1) / eps).num();
  if (k < 4) fail(Errc::bad_params, "split requires eps <= 1/4");
  if (max_rect_extent < 1) fail(Errc::bad_params, "extent must be positive");
  const Coord me = max_rect_extent;
  const Coord threshold = k * me;
  const Coord piece = (k - 2) * me;
  std::vector<Segment> out;
  for (const auto& s : sol.segments) {
    if (s.length() <= threshold) {
      out.push_back(s);
      continue;
    }
    for (Coord c = s.lo; c < s.hi; c += piece) {
      Segment p = s;
      p.lo = std::max(s.lo, c - me);
      p.hi = std::min(s.hi, std::min(c + piece, s.hi) + me);
      out.push_back(p);
    }
  }
  Solution r = finalize_solution(std::move(out), sol.solver_tag);
  return r;
}

namespace {

// Inverse of one axis compression: normalized coordinate -> coordinate of
// the discretized (pre-compression) space. Monotone piecewise-affine.
Rat expand_gaps(const std::vector<GapEntry>& gaps, const Rat& c) {
  Rat out = c;
  for (const auto& gap : gaps) {
    if (c >= Rat(gap.norm_pos + gap.norm_len)) {
      out += Rat(gap.orig_len - gap.norm_len);
    } else if (c > Rat(gap.norm_pos)) {
      out += (c - Rat(gap.norm_pos)) * Rat(gap.orig_len - gap.norm_len) /
             Rat(gap.norm_len);
      break;
    } else {
      break;
    }
  }
  return out;
}

struct AxisMap {
  const NormalizationRecord& rec;
  bool x_axis;

  // normalized grid units -> original instance grid units (exact rational)
  Rat operator()(Coord c) const {
    Rat v = expand_gaps(x_axis ? rec.x_gap_compressions : rec.y_gap_compressions,
                        Rat(c));
    v = v * rec.norm_unit;                         // normalized real coords
    v = v + (x_axis ? rec.x_shift : rec.y_shift);  // undo shift
    v = v / (x_axis ? rec.scale_x : rec.scale_y);  // undo scale
    return v / rec.original.grid_unit;             // original grid units
  }
};

}  // namespace

Solution denormalize(const Solution& sol, const NormalizationRecord& rec) {
  if (rec.identity) return sol;

  const Instance& orig = rec.original;
  const Rect& nb = rec.normalized_bounds;
  AxisMap map_x{rec, true}, map_y{rec, false};

  std::vector<Segment> out;
  for (const auto& s : sol.segments) {
    bool horizontal = s.orientation == Orientation::horizontal;
    Coord span_nb_lo = horizontal ? nb.x1 : nb.y1;
    Coord span_nb_hi = horizontal ? nb.x2 : nb.y2;
    Coord anch_nb_lo = horizontal ? nb.y1 : nb.x1;
    Coord anch_nb_hi = horizontal ? nb.y2 : nb.x2;
    if (s.lo < span_nb_lo || s.hi > span_nb_hi || s.anchor < anch_nb_lo ||
        s.anchor > anch_nb_hi)
      fail(Errc::record_mismatch, "segment outside normalized bounds");

    const AxisMap& span_map = horizontal ? map_x : map_y;
    const AxisMap& anch_map = horizontal ? map_y : map_x;

    // original rects this segment is responsible for (its stabbed image)
    std::vector<const Rect*> resp;
    for (std::size_t i = 0; i < rec.normalized_rects.size(); ++i)
      if (stabs(s, rec.normalized_rects[i]))
        resp.push_back(&orig.rects[rec.norm_to_orig[i]]);

    Rat an_r = anch_map(s.anchor);
    Coord lo = span_map(s.lo).floor(), hi = span_map(s.hi).ceil();
    const Rect& b = orig.bounds;
    Coord span_b_lo = horizontal ? b.x1 : b.y1;
    Coord span_b_hi = horizontal ? b.x2 : b.y2;
    lo = std::clamp(lo, span_b_lo, span_b_hi);
    hi = std::clamp(hi, span_b_lo, span_b_hi);

    auto range_of = [&](const Rect* r) {
      return horizontal ? std::pair<Coord, Coord>{r->y1, r->y2}
                        : std::pair<Coord, Coord>{r->x1, r->x2};
    };
    auto extent_of = [&](const Rect* r) {
      return horizontal ? std::pair<Coord, Coord>{r->x1, r->x2}
                        : std::pair<Coord, Coord>{r->y1, r->y2};
    };

    if (resp.empty()) {
      Coord an = std::clamp(an_r.floor(), horizontal ? b.y1 : b.x1,
                            horizontal ? b.y2 : b.x2);
      if (lo < hi) out.push_back({s.orientation, an, lo, hi});
      continue;
    }

    // Discretization extended rect ranges outward, so the mapped anchor may
    // sit outside some original range. Re-anchor inside the intersection of
    // the original ranges; when it is empty, split into pierce groups.
    std::sort(resp.begin(), resp.end(), [&](const Rect* a, const Rect* c) {
      return range_of(a).second != range_of(c).second
                 ? range_of(a).second < range_of(c).second
                 : range_of(a).first < range_of(c).first;
    });
    std::size_t i = 0;
    while (i < resp.size()) {
      Coord pierce = range_of(resp[i]).second;
      Coord glo = extent_of(resp[i]).first, ghi = extent_of(resp[i]).second;
      std::size_t j = i;
      while (j < resp.size() && range_of(resp[j]).first <= pierce) {
        glo = std::min(glo, extent_of(resp[j]).first);
        ghi = std::max(ghi, extent_of(resp[j]).second);
        ++j;
      }
      Coord an = pierce;
      if (i == 0 && j == resp.size()) {
        // single group: keep the mapped span and anchor where possible
        Coord max_lo = range_of(resp[0]).first;
        for (std::size_t t = 0; t < resp.size(); ++t)
          max_lo = std::max(max_lo, range_of(resp[t]).first);
        an = std::clamp(an_r.floor(), max_lo, pierce);
        glo = std::min(glo, lo);
        ghi = std::max(ghi, hi);
      }
      out.push_back({s.orientation, an, glo, ghi});
      i = j;
    }
  }

  for (const auto& t : rec.dropped_thin_rects) out.push_back(t.seg);
  return finalize_solution(std::move(out), sol.solver_tag);
}

}  // namespace stab
