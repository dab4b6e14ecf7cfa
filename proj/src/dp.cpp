#include "stab/dp.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <unordered_map>

namespace stab {

std::size_t CellKeyHash::operator()(const CellKey& k) const {
  auto mix = [](std::size_t h, std::uint64_t v) {
    h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    return h;
  };
  std::size_t h = 0;
  h = mix(h, k.region.x1);
  h = mix(h, k.region.y1);
  h = mix(h, k.region.x2);
  h = mix(h, k.region.y2);
  for (const auto& s : k.carried) {
    h = mix(h, static_cast<std::uint64_t>(s.orientation));
    h = mix(h, s.anchor);
    h = mix(h, s.lo);
    h = mix(h, s.hi);
  }
  return h;
}

Instance transpose(const Instance& inst) {
  Instance t;
  t.grid_unit = inst.grid_unit;
  t.epsilon = inst.epsilon;
  t.bounds = transpose(inst.bounds);
  t.rects.reserve(inst.rects.size());
  for (const auto& r : inst.rects) t.rects.push_back(transpose(r));
  return t;
}

Solution transpose(const Solution& sol) {
  Solution t;
  t.cost = sol.cost;
  t.solver_tag = sol.solver_tag;
  t.segments.reserve(sol.segments.size());
  for (const auto& s : sol.segments) t.segments.push_back(transpose(s));
  std::sort(t.segments.begin(), t.segments.end());
  return t;
}

namespace {

using Mask = std::uint64_t;

bool spans_region(const Segment& s, const Rect& box) {
  if (s.orientation == Orientation::horizontal)
    return s.lo == box.x1 && s.hi == box.x2 && box.y1 < s.anchor &&
           s.anchor < box.y2;
  return s.lo == box.y1 && s.hi == box.y2 && box.x1 < s.anchor &&
         s.anchor < box.x2;
}

std::pair<Rect, Rect> split_box(const Rect& box, Orientation o, Coord c) {
  if (o == Orientation::horizontal)
    return {Rect{box.x1, box.y1, box.x2, c, -1},
            Rect{box.x1, c, box.x2, box.y2, -1}};
  return {Rect{box.x1, box.y1, c, box.y2, -1},
          Rect{c, box.y1, box.x2, box.y2, -1}};
}

struct Choice {
  enum Kind : std::uint8_t { leaf, trivial, add, line, greedy } kind = leaf;
  Segment split;                  // trivial
  std::vector<Segment> segments;  // add: added set; line: paid stab; greedy
  Orientation line_orientation = Orientation::vertical;
  Coord line_coord = 0;
};

// Carried segment piece together with the stab set of its original
// (valid for rects contained in the current region).
struct Carried {
  Segment seg;
  Mask mask;
};

// A canonicalized cell: region shrunk to the bounding box of the active
// rects, carried pieces clipped to it. Cells with equal active sets have
// equal value, so the memo keys on the mask.
struct Cell {
  CellKey key;
  std::vector<Carried> carried;
  Mask active = 0;
};

// Shared, offset-independent pieces of a solve: candidate universe with
// precomputed stab masks and the line-stab cache.
struct SolveShared {
  const Instance& inst;
  std::vector<Segment> cands;
  std::vector<Mask> cand_mask;
  std::map<Mask, Solution> line_stabs;

  explicit SolveShared(const Instance& in) : inst(in) {
    cands = canonical_candidates(in).all();
    std::sort(cands.begin(), cands.end());
    cand_mask.reserve(cands.size());
    for (const auto& s : cands) {
      Mask m = 0;
      for (const auto& r : in.rects)
        if (stabs(s, r)) m |= Mask(1) << r.id;
      cand_mask.push_back(m);
    }
  }

  Solution stab_crossed(Mask crossed) {
    if (crossed == 0) return finalize_solution({}, "line");
    if (auto it = line_stabs.find(crossed); it != line_stabs.end())
      return it->second;
    Instance sub;
    sub.grid_unit = inst.grid_unit;
    sub.epsilon = inst.epsilon;
    for (Mask m = crossed; m;) {
      int i = std::countr_zero(m);
      m &= m - 1;
      sub.rects.push_back(inst.rects[i]);
    }
    seal_instance(sub);
    Solution s = greedy_cover(sub, canonical_candidates(sub));
    s.solver_tag = "line";
    line_stabs.emplace(crossed, s);
    return s;
  }
};

class TallSolver {
 public:
  TallSolver(SolveShared& shared, const DpConfig& cfg, std::int64_t offset,
             DpStats& stats)
      : sh_(shared), inst_(shared.inst), cfg_(cfg), stats_(stats) {
    grid_ = make_grid(inst_, offset);
    std::int64_t k = (Rat(1) / cfg.eps).num();
    carried_cap_ = 3 * k * k * k;
  }

  Solution solve() {
    if (inst_.rects.empty()) return finalize_solution({}, "dp");
    Cell root = canonicalize(inst_.bounds, {});
    expand(root);
    std::vector<Segment> segs;
    rebuild(root, segs);
    return finalize_solution(std::move(segs), "dp");
  }

 private:
  struct Piece {
    Segment seg;
    Mask covers;  // over the cell's active rects
  };
  using Entry = std::pair<std::int64_t, Choice>;

  Mask contained_mask(const Rect& region) const {
    Mask m = 0;
    for (const auto& r : inst_.rects)
      if (region.contains(r)) m |= Mask(1) << r.id;
    return m;
  }

  Cell canonicalize(const Rect& region,
                    const std::vector<Carried>& carried) const {
    std::vector<Carried> clipped;
    for (const auto& c : carried)
      if (auto p = clip_segment(c.seg, region); p && p->length() > 0)
        clipped.push_back({*p, c.mask});

    Mask contained = contained_mask(region);
    Mask stabbed = 0;
    for (const auto& c : clipped) stabbed |= c.mask & contained;
    Mask active = contained & ~stabbed;
    if (active == 0) return Cell{};  // leaf sentinel

    std::vector<Rect> rs;
    for (Mask m = active; m;) {
      int i = std::countr_zero(m);
      m &= m - 1;
      rs.push_back(inst_.rects[i]);
    }
    Rect box = bounding_box(rs);
    Mask box_contained = contained_mask(box);

    Cell cell;
    cell.active = active;
    cell.key.region = box;
    for (const auto& c : clipped) {
      auto p = clip_segment(c.seg, box);
      if (!p || p->length() <= 0) continue;
      if ((c.mask & box_contained) == 0) continue;  // stabs nothing in here
      cell.carried.push_back({*p, c.mask});
    }
    std::sort(cell.carried.begin(), cell.carried.end(),
              [](const Carried& a, const Carried& b) { return a.seg < b.seg; });
    cell.carried.erase(std::unique(cell.carried.begin(), cell.carried.end(),
                                   [](const Carried& a, const Carried& b) {
                                     return a.seg == b.seg;
                                   }),
                       cell.carried.end());
    if (static_cast<std::int64_t>(cell.carried.size()) > carried_cap_)
      fail(Errc::cap_exceeded, "carried set exceeds 3/eps^3");
    for (const auto& c : cell.carried) cell.key.carried.push_back(c.seg);
    return cell;
  }

  bool is_leaf(const Cell& c) const { return c.active == 0; }

  std::int64_t expand(const Cell& cell) {
    if (is_leaf(cell)) {
      ++stats_.ops_leaf;
      return 0;
    }
    if (auto it = memo_.find(cell.active); it != memo_.end()) {
      ++stats_.memo_hits;
      return it->second.first;
    }
    ++stats_.cells_expanded;
    if (memo_.size() >= cfg_.memo_capacity)
      fail(Errc::memo_overflow,
           "memo capacity " + std::to_string(cfg_.memo_capacity) +
               " exceeded after " + std::to_string(stats_.cells_expanded) +
               " cells");

    const Rect& box = cell.key.region;

    // mandatory split along the first carried segment crossing the region
    for (const auto& c : cell.carried) {
      if (!spans_region(c.seg, box)) continue;
      ++stats_.ops_trivial;
      auto [a, b] = split_box(box, c.seg.orientation, c.seg.anchor);
      std::int64_t v = expand(canonicalize(a, cell.carried)) +
                       expand(canonicalize(b, cell.carried));
      Choice ch;
      ch.kind = Choice::trivial;
      ch.split = c.seg;
      memo_.emplace(cell.active, std::make_pair(v, std::move(ch)));
      return v;
    }

    // Candidate pieces, one per distinct coverage: the child cell depends
    // only on the covered set, so only the cheapest piece per coverage can
    // win (ties to the canonically smallest).
    std::vector<Piece> pieces;
    for (std::size_t i = 0; i < sh_.cands.size(); ++i) {
      Mask cov = sh_.cand_mask[i] & cell.active;
      if (cov == 0) continue;
      auto p = clip_segment(sh_.cands[i], box);
      if (!p || p->length() <= 0) continue;
      pieces.push_back({*p, cov});
    }
    std::sort(pieces.begin(), pieces.end(), [](const Piece& a, const Piece& b) {
      if (a.covers != b.covers) return a.covers < b.covers;
      if (a.seg.length() != b.seg.length())
        return a.seg.length() < b.seg.length();
      return a.seg < b.seg;
    });
    pieces.erase(std::unique(pieces.begin(), pieces.end(),
                             [](const Piece& a, const Piece& b) {
                               return a.covers == b.covers;
                             }),
                 pieces.end());
    std::sort(pieces.begin(), pieces.end(),
              [](const Piece& a, const Piece& b) { return a.seg < b.seg; });

    Entry best;
    {
      ++stats_.ops_greedy;
      best.second.kind = Choice::greedy;
      best.first = greedy_pieces(pieces, cell.active, best.second.segments);
    }

    // add operations: singles ascending by cost, then crossing multi-adds
    std::vector<const Piece*> by_cost;
    for (const auto& p : pieces) by_cost.push_back(&p);
    std::sort(by_cost.begin(), by_cost.end(),
              [](const Piece* a, const Piece* b) {
                if (a->seg.length() != b->seg.length())
                  return a->seg.length() < b->seg.length();
                return a->seg < b->seg;
              });
    std::int64_t carried_n = static_cast<std::int64_t>(cell.carried.size());
    for (const Piece* p : by_cost) {
      if (p->seg.length() >= best.first) break;
      if (carried_n + 1 > carried_cap_) {
        ++stats_.cap_prunes;
        break;
      }
      try_add(cell, std::vector<const Piece*>{p}, best);
    }
    if (cfg_.add_arity_cap >= 2) {
      std::vector<const Piece*> spanning;
      for (const auto& p : pieces)
        if (spans_region(p.seg, box)) spanning.push_back(&p);
      // sets with at most one non-crossing member; others decompose into
      // sequential single adds with the same total cost
      std::vector<std::vector<const Piece*>> sets;
      std::vector<const Piece*> pick;
      auto rec = [&](auto&& self, std::size_t from, int room) -> void {
        if (pick.size() >= 2) sets.push_back(pick);
        if (!pick.empty() && room >= 1)
          for (const Piece* q : by_cost)
            if (!spans_region(q->seg, box)) {
              pick.push_back(q);
              sets.push_back(pick);
              pick.pop_back();
            }
        if (room <= 0) return;
        for (std::size_t i = from; i < spanning.size(); ++i) {
          pick.push_back(spanning[i]);
          self(self, i + 1, room - 1);
          pick.pop_back();
        }
      };
      rec(rec, 0, cfg_.add_arity_cap);
      std::stable_sort(sets.begin(), sets.end(),
                       [](const auto& a, const auto& b) {
                         std::int64_t ca = 0, cb = 0;
                         for (auto* p : a) ca += p->seg.length();
                         for (auto* p : b) cb += p->seg.length();
                         return ca < cb;
                       });
      for (const auto& s : sets) {
        std::int64_t cost = 0;
        for (auto* p : s) cost += p->seg.length();
        if (cost >= best.first) break;
        if (carried_n + static_cast<std::int64_t>(s.size()) > carried_cap_) {
          ++stats_.cap_prunes;
          continue;
        }
        try_add(cell, s, best);
      }
    }

    // line operations, vertical then horizontal, ascending coordinate
    for (Orientation o : {Orientation::vertical, Orientation::horizontal}) {
      for (Coord c : line_coords(cell, o)) {
        ++stats_.ops_line;
        Mask crossed = 0;
        for (Mask m = cell.active; m;) {
          int i = std::countr_zero(m);
          m &= m - 1;
          const Rect& r = inst_.rects[i];
          bool hit = o == Orientation::vertical ? (r.x1 <= c && c <= r.x2)
                                                : (r.y1 <= c && c <= r.y2);
          if (hit) crossed |= Mask(1) << i;
        }
        Solution stab_sol = sh_.stab_crossed(crossed);
        if (stab_sol.cost >= best.first) continue;
        auto [a, b] = split_box(box, o, c);
        std::int64_t v = stab_sol.cost + expand(canonicalize(a, cell.carried));
        if (v < best.first) v += expand(canonicalize(b, cell.carried));
        if (v < best.first) {
          best.first = v;
          best.second.kind = Choice::line;
          best.second.segments = stab_sol.segments;
          best.second.line_orientation = o;
          best.second.line_coord = c;
        }
      }
    }

    memo_.emplace(cell.active, best);
    return best.first;
  }

  void try_add(const Cell& cell, const std::vector<const Piece*>& set,
               Entry& best) {
    ++stats_.ops_add;
    std::int64_t cost = 0;
    std::vector<Carried> carried = cell.carried;
    std::vector<Segment> added;
    for (auto* p : set) {
      cost += p->seg.length();
      carried.push_back({p->seg, p->covers});
      added.push_back(p->seg);
    }
    std::int64_t v = cost + expand(canonicalize(cell.key.region, carried));
    if (v < best.first) {
      best.first = v;
      best.second.kind = Choice::add;
      best.second.segments = std::move(added);
    }
  }

  void rebuild(const Cell& cell, std::vector<Segment>& out) const {
    if (is_leaf(cell)) return;
    auto it = memo_.find(cell.active);
    if (it == memo_.end()) fail(Errc::bad_params, "memo miss during rebuild");
    const Choice& ch = it->second.second;
    switch (ch.kind) {
      case Choice::leaf:
        return;
      case Choice::trivial: {
        auto [a, b] =
            split_box(cell.key.region, ch.split.orientation, ch.split.anchor);
        rebuild(canonicalize(a, cell.carried), out);
        rebuild(canonicalize(b, cell.carried), out);
        return;
      }
      case Choice::add: {
        out.insert(out.end(), ch.segments.begin(), ch.segments.end());
        std::vector<Carried> carried = cell.carried;
        for (const auto& s : ch.segments) {
          Mask m = 0;
          for (const auto& r : inst_.rects)
            if (cell.key.region.contains(r) && stabs(s, r))
              m |= Mask(1) << r.id;
          carried.push_back({s, m});
        }
        rebuild(canonicalize(cell.key.region, carried), out);
        return;
      }
      case Choice::line: {
        out.insert(out.end(), ch.segments.begin(), ch.segments.end());
        auto [a, b] =
            split_box(cell.key.region, ch.line_orientation, ch.line_coord);
        rebuild(canonicalize(a, cell.carried), out);
        rebuild(canonicalize(b, cell.carried), out);
        return;
      }
      case Choice::greedy:
        out.insert(out.end(), ch.segments.begin(), ch.segments.end());
        return;
    }
  }

  std::vector<Coord> line_coords(const Cell& cell, Orientation o) const {
    const Rect& box = cell.key.region;
    std::vector<Coord> out;
    if (o == Orientation::vertical) {
      std::vector<Coord> events{box.x1, box.x2};
      for (Mask m = cell.active; m;) {
        int i = std::countr_zero(m);
        m &= m - 1;
        const Rect& r = inst_.rects[i];
        if (r.x1 > box.x1 && r.x1 < box.x2) events.push_back(r.x1);
        if (r.x2 > box.x1 && r.x2 < box.x2) events.push_back(r.x2);
      }
      std::sort(events.begin(), events.end());
      events.erase(std::unique(events.begin(), events.end()), events.end());
      if (cfg_.line_source != LineSource::grid)
        for (std::size_t i = 1; i + 1 < events.size(); ++i)
          out.push_back(events[i]);
      if (cfg_.line_source != LineSource::rect_edges) {
        // The crossing and side sets are constant strictly between event
        // coordinates, so one grid line per open interval carries the full
        // value of the lattice.
        auto lat = integer_lattice(grid_, grid_.max_level);
        if (lat) {
          auto [b, step] = *lat;
          auto div_floor = [](Coord a, Coord d) {
            Coord q = a / d;
            if (a % d != 0 && ((a < 0) != (d < 0))) --q;
            return q;
          };
          for (std::size_t i = 0; i + 1 < events.size(); ++i) {
            Coord x = b + step * (div_floor(events[i] - b, step) + 1);
            if (x > events[i] && x < events[i + 1]) out.push_back(x);
          }
          if (cfg_.line_source == LineSource::grid)
            for (std::size_t i = 1; i + 1 < events.size(); ++i)
              if (((events[i] - b) % step) == 0) out.push_back(events[i]);
        }
      }
    } else {
      for (Mask m = cell.active; m;) {
        int i = std::countr_zero(m);
        m &= m - 1;
        const Rect& r = inst_.rects[i];
        if (r.y1 > box.y1 && r.y1 < box.y2) out.push_back(r.y1);
        if (r.y2 > box.y1 && r.y2 < box.y2) out.push_back(r.y2);
      }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  std::int64_t greedy_pieces(const std::vector<Piece>& pieces, Mask active,
                             std::vector<Segment>& out) const {
    Mask left = active;
    std::int64_t cost = 0;
    while (left) {
      const Piece* pick = nullptr;
      int bc = 0;
      for (const auto& p : pieces) {
        int c = std::popcount(p.covers & left);
        if (c == 0) continue;
        if (!pick) {
          pick = &p;
          bc = c;
          continue;
        }
        std::int64_t w = p.seg.length(), bw = pick->seg.length();
        if (w * bc < bw * c || (w * bc == bw * c && w < bw)) {
          pick = &p;
          bc = c;
        }
      }
      if (!pick) fail(Errc::infeasible, "cell greedy found uncovered rect");
      out.push_back(pick->seg);
      cost += pick->seg.length();
      left &= ~pick->covers;
    }
    return cost;
  }

  SolveShared& sh_;
  const Instance& inst_;
  const DpConfig& cfg_;
  DpStats& stats_;
  GridSpec grid_;
  std::int64_t carried_cap_ = 0;
  std::unordered_map<Mask, Entry> memo_;
};

}  // namespace

std::pair<Solution, DpStats> solve_hv_tall(const Instance& inst,
                                           const DpConfig& cfg) {
  Rat inv = Rat(1) / cfg.eps;
  if (!cfg.eps.positive() || !inv.is_integer())
    fail(Errc::epsilon_invalid, "1/eps must be a positive integer");
  if (inst.rects.size() > 64)
    fail(Errc::budget_exceeded, "dp limited to 64 rects");
  std::int64_t k = inv.num();

  std::vector<std::int64_t> offsets;
  if (cfg.offset_policy.enumerate_all &&
      cfg.line_source != LineSource::rect_edges) {
    if (k * k > 4096)
      fail(Errc::bad_params,
           "offset enumeration too large; use a fixed offset");
    for (std::int64_t a = 0; a < k * k; ++a) offsets.push_back(a);
  } else {
    offsets.push_back(
        cfg.offset_policy.enumerate_all ? 0 : cfg.offset_policy.fixed_a);
  }

  DpStats stats;
  SolveShared shared(inst);
  Solution best;
  bool have = false;
  // Offsets whose integer lattices coincide (same step and residue) produce
  // identical runs; solve one representative per congruence class.
  std::map<std::pair<Coord, Coord>, Solution> by_lattice;
  for (std::int64_t a : offsets) {
    GridSpec g = make_grid(inst, a);
    auto lat = integer_lattice(g, g.max_level);
    std::pair<Coord, Coord> sig = {-1, -1};
    if (lat) {
      auto [b, step] = *lat;
      sig = {step, ((b % step) + step) % step};
    }
    Solution s;
    if (auto it = by_lattice.find(sig);
        it != by_lattice.end() && cfg.line_source != LineSource::rect_edges) {
      s = it->second;
    } else {
      TallSolver solver(shared, cfg, a, stats);
      s = solver.solve();
      by_lattice[sig] = s;
    }
    if (!have || s.cost < best.cost) {
      best = std::move(s);
      stats.best_offset = a;
      have = true;
    }
  }
  auto rep = verify(inst, best);
  if (!rep.feasible)
    fail(Errc::infeasible, "dp produced an infeasible solution");
  return {std::move(best), stats};
}

std::pair<Solution, DpStats> solve_tall_pipeline(const Instance& inst,
                                                 const DpConfig& cfg) {
  Solution incumbent = inst.rects.empty()
                           ? finalize_solution({}, "greedy")
                           : greedy_cover(inst, canonical_candidates(inst));
  auto [norm, rec] = normalize_tall(inst, cfg.eps);
  auto [nsol, stats] = solve_hv_tall(norm, cfg);
  Solution out = denormalize(nsol, rec);
  auto rep = verify(inst, out);
  if (!rep.feasible)
    fail(Errc::infeasible, "denormalized dp solution infeasible");
  if (incumbent.cost < out.cost) out = std::move(incumbent);
  out.solver_tag = "dp";
  return {std::move(out), stats};
}

Solution solve_stabbing(const Instance& inst, const DpConfig& cfg) {
  if (inst.rects.empty()) return finalize_solution({}, "stabbing");
  auto cands = canonical_candidates(inst);
  std::vector<Segment> hsegs;
  for (const auto& c : cands.horizontal) hsegs.push_back(c.seg);
  Solution horiz_greedy = greedy_cover_over(inst, hsegs);
  const Coord stretch = horiz_greedy.cost + 1;

  Instance stretched = inst;
  for (auto& r : stretched.rects) {
    r.y1 *= stretch;
    r.y2 *= stretch;
  }
  stretched.bounds.y1 *= stretch;
  stretched.bounds.y2 *= stretch;

  auto [ssol, stats] = solve_tall_pipeline(stretched, cfg);
  (void)stats;

  std::vector<Segment> out;
  for (const auto& s : ssol.segments) {
    if (s.orientation == Orientation::vertical)
      fail(Errc::vertical_leak,
           "vertical segment survived the stretching reduction");
    Coord max_lo = inst.bounds.y1, min_hi = inst.bounds.y2;
    for (std::size_t i = 0; i < inst.rects.size(); ++i)
      if (stabs(s, stretched.rects[i])) {
        max_lo = std::max(max_lo, inst.rects[i].y1);
        min_hi = std::min(min_hi, inst.rects[i].y2);
      }
    Segment m = s;
    m.anchor = std::clamp(Rat(s.anchor, stretch).floor(), max_lo, min_hi);
    out.push_back(m);
  }
  Solution mapped = finalize_solution(std::move(out), "stabbing");
  auto rep = verify(inst, mapped);
  if (!rep.feasible)
    fail(Errc::infeasible, "stabbing reduction produced infeasible output");
  if (horiz_greedy.cost < mapped.cost) {
    mapped = std::move(horiz_greedy);
    mapped.solver_tag = "stabbing";
  }
  return mapped;
}

Solution solve_hv_2eps(const Instance& inst, const DpConfig& cfg) {
  Instance tall, wide;
  tall.grid_unit = wide.grid_unit = inst.grid_unit;
  tall.epsilon = wide.epsilon = inst.epsilon;
  for (const auto& r : inst.rects)
    (r.height() >= r.width() ? tall : wide).rects.push_back(r);

  Solution total;
  total.solver_tag = "dp2eps";
  if (!tall.rects.empty()) {
    seal_instance(tall);
    auto [s, st] = solve_tall_pipeline(tall, cfg);
    total.segments.insert(total.segments.end(), s.segments.begin(),
                          s.segments.end());
    total.cost += s.cost;
  }
  if (!wide.rects.empty()) {
    seal_instance(wide);
    Instance t = transpose(wide);
    seal_instance(t);
    auto [s, st] = solve_tall_pipeline(t, cfg);
    Solution back = transpose(s);
    total.segments.insert(total.segments.end(), back.segments.begin(),
                          back.segments.end());
    total.cost += back.cost;
  }
  std::sort(total.segments.begin(), total.segments.end());
  auto rep = verify(inst, total);
  if (!rep.feasible)
    fail(Errc::infeasible, "orientation split produced infeasible output");
  return total;
}

}  // namespace stab
