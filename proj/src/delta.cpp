#include "stab/delta.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>

namespace stab {

Rat effective_cost_cap(const DeltaConfig& cfg) {
  if (cfg.cost_cap.positive()) return cfg.cost_cap;
  Rat inv = Rat(1) / cfg.eps;
  return inv * inv * inv;
}

namespace {

void validate_delta_inputs(const Instance& inst, const DeltaConfig& cfg) {
  if (!cfg.delta.positive() || cfg.delta > Rat(1))
    fail(Errc::bad_params, "delta must lie in (0,1]");
  for (const auto& r : inst.rects) {
    Rat w = Rat(r.width()) * inst.grid_unit;
    Rat h = Rat(r.height()) * inst.grid_unit;
    if (w < cfg.delta && h < cfg.delta)
      fail(Errc::bad_params,
           "rect " + std::to_string(r.id) + " smaller than delta in both sides");
  }
}

Instance sub_instance(const Instance& base, const std::vector<Rect>& rects,
                      const Rect& box) {
  Instance s;
  s.grid_unit = base.grid_unit;
  s.epsilon = base.epsilon;
  s.rects = rects;
  s.bounds = box;
  seal_instance(s);
  return s;
}

}  // namespace

CellDecomposition strip_partition(const Instance& inst, const DeltaConfig& cfg,
                                  std::int64_t offset_a) {
  CellDecomposition out;
  std::int64_t k = (Rat(1) / cfg.eps).num();
  Rat u_rat = Rat(1) / inst.grid_unit;
  if (!u_rat.is_integer())
    fail(Errc::bad_params, "strip partition needs a 1/m grid unit");
  Coord u = u_rat.num();
  const Coord spacing = k * k * u;
  const Rect& b = inst.bounds;

  std::vector<Coord> lines;
  for (Coord x = offset_a * u; x <= b.x2; x += spacing)
    if (x >= b.x1) lines.push_back(x);

  std::vector<Segment> boundary;
  std::vector<char> removed(inst.rects.size(), 0);
  for (Coord x : lines) {
    std::vector<Rect> crossed;
    for (const auto& r : inst.rects)
      if (!removed[r.id] && r.x1 <= x && x <= r.x2) {
        crossed.push_back(r);
        removed[r.id] = 1;
      }
    if (crossed.empty()) continue;
    Instance sub = sub_instance(inst, crossed, b);
    Solution s = stab_line_rects(sub, Orientation::vertical, x, b);
    boundary.insert(boundary.end(), s.segments.begin(), s.segments.end());
  }

  // strip boxes between consecutive lines (and the outer margins)
  std::vector<Coord> edges;
  edges.push_back(b.x1);
  for (Coord x : lines)
    if (x > b.x1 && x < b.x2) edges.push_back(x);
  edges.push_back(b.x2);
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    Rect strip{edges[i], b.y1, edges[i + 1], b.y2, -1};
    bool used = false;
    for (const auto& r : inst.rects)
      if (!removed[r.id] && strip.contains(r)) used = true;
    if (used) out.cells.push_back(strip);
  }
  out.boundary_segments = finalize_solution(std::move(boundary), "delta");
  return out;
}

CellDecomposition sweep_cells(const Instance& strip, const DeltaConfig& cfg) {
  CellDecomposition out;
  const Rect& box = strip.bounds;
  Rat cap = effective_cost_cap(cfg);

  std::vector<Rect> remaining = strip.rects;
  std::vector<Segment> cuts;
  Coord cell_start = box.y1;

  auto baseline_cost = [&](const std::vector<Rect>& rs) -> std::int64_t {
    if (rs.empty()) return 0;
    Instance sub = sub_instance(strip, rs, box);
    return greedy_cover(sub, canonical_candidates(sub)).cost;
  };

  bool progress = true;
  while (progress) {
    progress = false;
    std::set<Coord> tops;
    for (const auto& r : remaining) tops.insert(r.y2);
    for (Coord pos : tops) {
      std::vector<Rect> below;
      for (const auto& r : remaining)
        if (r.y2 <= pos) below.push_back(r);
      std::int64_t base = baseline_cost(below);
      if (Rat(base) * strip.grid_unit <= cap) continue;
      // close the cell below pos; the cut stabs everything it crosses
      bool anything_above = false;
      for (const auto& r : remaining)
        if (r.y2 > pos) anything_above = true;
      if (!anything_above) break;  // a cut above everything is pure waste
      out.cells.push_back({box.x1, cell_start, box.x2, pos, -1});
      out.per_cell_baseline_cost.push_back(base);
      out.cell_closed_by_cost.push_back(1);
      cuts.push_back({Orientation::horizontal, pos, box.x1, box.x2});
      std::vector<Rect> next;
      for (const auto& r : remaining)
        if (r.y2 > pos && !(r.y1 <= pos)) next.push_back(r);
      remaining = std::move(next);
      cell_start = pos;
      progress = true;
      break;
    }
  }
  if (!remaining.empty()) {
    out.cells.push_back({box.x1, cell_start, box.x2, box.y2, -1});
    out.per_cell_baseline_cost.push_back(baseline_cost(remaining));
    out.cell_closed_by_cost.push_back(0);
  }
  out.boundary_segments = finalize_solution(std::move(cuts), "delta");
  return out;
}

std::vector<std::vector<Segment>> guess_long_segments(
    const Instance& cell_inst, const DeltaConfig& cfg,
    const CandidateSet& cands) {
  std::vector<Segment> longs;
  for (const auto& s : cands.all())
    if (Rat(s.length()) * cell_inst.grid_unit >= cfg.delta)
      longs.push_back(s);
  std::sort(longs.begin(), longs.end());

  // size limit: the configured cap, or the cost-window bound when smaller
  std::int64_t alpha = 1 + std::bit_width(
                               std::max<std::uint64_t>(1, cell_inst.size()));
  Rat window = Rat(alpha) * effective_cost_cap(cfg) / cfg.delta;
  std::int64_t limit = std::min<std::int64_t>(cfg.guess_size_cap,
                                              window.ceil());
  limit = std::min<std::int64_t>(limit, static_cast<std::int64_t>(longs.size()));

  // enumeration cost check
  double nodes = 1;
  double binom = 1;
  for (std::int64_t s = 1; s <= limit; ++s) {
    binom = binom * double(longs.size() - s + 1) / double(s);
    nodes += binom;
    if (nodes > double(cfg.guess_node_budget))
      fail(Errc::guess_space_exceeded,
           "guess enumeration above node budget (" +
               std::to_string(cfg.guess_node_budget) + ")");
  }

  std::vector<std::vector<Segment>> out;
  out.push_back({});  // the empty guess
  std::vector<int> idx;
  std::vector<std::pair<std::int64_t, std::vector<Segment>>> level;
  for (std::int64_t s = 1; s <= limit; ++s) {
    level.clear();
    idx.assign(s, 0);
    for (int i = 0; i < s; ++i) idx[i] = i;
    while (true) {
      std::vector<Segment> pick;
      std::int64_t cost = 0;
      for (int i : idx) {
        pick.push_back(longs[i]);
        cost += longs[i].length();
      }
      level.emplace_back(cost, std::move(pick));
      int i = static_cast<int>(s) - 1;
      while (i >= 0 && idx[i] == static_cast<int>(longs.size()) - (s - i))
        --i;
      if (i < 0) break;
      ++idx[i];
      for (int j = i + 1; j < s; ++j) idx[j] = idx[j - 1] + 1;
    }
    std::sort(level.begin(), level.end());
    for (auto& [c, pick] : level) out.push_back(std::move(pick));
  }
  return out;
}

namespace {

struct CellSolve {
  Solution solution;
  std::vector<int> remaining_ids;  // local to the cell instance
  std::int64_t guesses_tried = 0;
  bool fallback = false;
};

CellSolve solve_cell(const Instance& cell_inst, const DeltaConfig& cfg) {
  CellSolve out;
  if (cell_inst.rects.empty()) {
    out.solution = finalize_solution({}, "delta");
    return out;
  }
  DpConfig inner = cfg.dp;
  inner.eps = cfg.eps;
  inner.offset_policy = {false, 0};

  auto cands = canonical_candidates(cell_inst);
  std::vector<std::vector<Segment>> guesses;
  try {
    guesses = guess_long_segments(cell_inst, cfg, cands);
  } catch (const Error& e) {
    if (e.code() != Errc::guess_space_exceeded) throw;
    out.fallback = true;
    out.solution = greedy_cover(cell_inst, cands);
    out.solution.solver_tag = "delta";
    for (const auto& r : cell_inst.rects) out.remaining_ids.push_back(r.id);
    return out;
  }

  // rects needing a long stab no matter what
  std::vector<int> both_big;
  for (const auto& r : cell_inst.rects) {
    Rat w = Rat(r.width()) * cell_inst.grid_unit;
    Rat h = Rat(r.height()) * cell_inst.grid_unit;
    if (w >= cfg.delta && h >= cfg.delta) both_big.push_back(r.id);
  }

  std::int64_t best = -1;
  Solution best_sol;
  std::vector<int> best_remaining;
  std::map<std::vector<char>, std::int64_t> seen;  // stab set -> cheapest guess

  for (const auto& guess : guesses) {
    ++out.guesses_tried;
    std::int64_t gcost = total_length(guess);
    if (best >= 0 && gcost >= best) continue;

    std::vector<char> stabbed(cell_inst.rects.size(), 0);
    for (const auto& r : cell_inst.rects)
      for (const auto& s : guess)
        if (stabs(s, r)) {
          stabbed[r.id] = 1;
          break;
        }
    bool covers_big = true;
    for (int id : both_big)
      if (!stabbed[id]) covers_big = false;
    if (!covers_big) continue;

    if (auto it = seen.find(stabbed); it != seen.end() && it->second <= gcost)
      continue;
    seen[stabbed] = gcost;

    Instance tall, wide;
    tall.grid_unit = wide.grid_unit = cell_inst.grid_unit;
    tall.epsilon = wide.epsilon = cell_inst.epsilon;
    std::vector<int> rem;
    for (const auto& r : cell_inst.rects) {
      if (stabbed[r.id]) continue;
      rem.push_back(r.id);
      (r.height() >= r.width() ? tall : wide).rects.push_back(r);
    }
    // The cell is already discretized by the up-front normalization, so the
    // parts go straight into the recursion; no second rescale.
    std::int64_t total = gcost;
    std::vector<Segment> segs(guess.begin(), guess.end());
    if (!tall.rects.empty()) {
      seal_instance(tall);
      auto [s, st] = solve_hv_tall(tall, inner);
      total += s.cost;
      segs.insert(segs.end(), s.segments.begin(), s.segments.end());
    }
    if (best >= 0 && total >= best) continue;
    if (!wide.rects.empty()) {
      seal_instance(wide);
      Instance t = transpose(wide);
      seal_instance(t);
      auto [s, st] = solve_hv_tall(t, inner);
      Solution back = transpose(s);
      total += back.cost;
      segs.insert(segs.end(), back.segments.begin(), back.segments.end());
    }
    if (best < 0 || total < best) {
      best = total;
      best_sol = finalize_solution(std::move(segs), "delta");
      best_remaining = rem;
    }
  }

  if (best < 0) {
    out.fallback = true;
    out.solution = greedy_cover(cell_inst, cands);
    out.solution.solver_tag = "delta";
    for (const auto& r : cell_inst.rects) out.remaining_ids.push_back(r.id);
    return out;
  }
  out.solution = std::move(best_sol);
  out.remaining_ids = std::move(best_remaining);
  return out;
}

}  // namespace

Solution solve_delta_large_detailed(const Instance& inst,
                                    const DeltaConfig& cfg,
                                    DeltaRunInfo* info) {
  validate_delta_inputs(inst, cfg);
  auto [norm, rec] = normalize_general(inst, cfg.eps);

  if (norm.rects.empty()) {
    Solution empty = finalize_solution({}, "delta");
    return denormalize(empty, rec);
  }

  std::int64_t k = (Rat(1) / cfg.eps).num();
  std::int64_t best_cost = -1;
  Solution best_sol;
  DeltaRunInfo best_info;
  std::map<std::vector<Coord>, std::pair<Solution, DeltaRunInfo>> by_lines;

  for (std::int64_t a = 0; a < k * k; ++a) {
    // offsets whose strip lines coincide give identical decompositions
    std::vector<Coord> key;
    {
      Coord u = (Rat(1) / norm.grid_unit).num();
      Coord spacing = k * k * u;
      for (Coord x = a * u; x <= norm.bounds.x2; x += spacing)
        if (x >= norm.bounds.x1) key.push_back(x);
    }
    Solution sol;
    DeltaRunInfo runinfo;
    if (auto it = by_lines.find(key); it != by_lines.end()) {
      sol = it->second.first;
      runinfo = it->second.second;
      runinfo.offset = a;
    } else {
      runinfo.offset = a;
      CellDecomposition strips = strip_partition(norm, cfg, a);
      std::vector<Segment> segs = strips.boundary_segments.segments;
      CellDecomposition full;
      full.boundary_segments = strips.boundary_segments;
      for (const auto& strip_box : strips.cells) {
        std::vector<Rect> inside;
        for (const auto& r : norm.rects)
          if (strip_box.contains(r)) {
            bool crossed_by_boundary = false;
            for (const auto& s : strips.boundary_segments.segments)
              if (stabs(s, r)) crossed_by_boundary = true;
            if (!crossed_by_boundary) inside.push_back(r);
          }
        std::vector<int> strip_to_norm;
        for (const auto& r : inside) strip_to_norm.push_back(r.id);
        Instance strip_inst = sub_instance(norm, inside, strip_box);
        CellDecomposition cells = sweep_cells(strip_inst, cfg);
        segs.insert(segs.end(), cells.boundary_segments.segments.begin(),
                    cells.boundary_segments.segments.end());
        full.boundary_segments.segments.insert(
            full.boundary_segments.segments.end(),
            cells.boundary_segments.segments.begin(),
            cells.boundary_segments.segments.end());
        for (std::size_t ci = 0; ci < cells.cells.size(); ++ci) {
          const Rect& cell_box = cells.cells[ci];
          full.cells.push_back(cell_box);
          full.per_cell_baseline_cost.push_back(
              cells.per_cell_baseline_cost[ci]);
          full.cell_closed_by_cost.push_back(cells.cell_closed_by_cost[ci]);
          std::vector<Rect> cell_rects;  // ids local to the strip instance
          for (const auto& r : strip_inst.rects) {
            bool cut = false;
            for (const auto& s : cells.boundary_segments.segments)
              if (stabs(s, r)) cut = true;
            if (!cut && cell_box.contains(r)) cell_rects.push_back(r);
          }
          std::vector<int> cell_to_norm;
          for (const auto& r : cell_rects)
            cell_to_norm.push_back(strip_to_norm[r.id]);
          Instance cell_inst = sub_instance(norm, cell_rects, cell_box);
          CellSolve cs = solve_cell(cell_inst, cfg);
          segs.insert(segs.end(), cs.solution.segments.begin(),
                      cs.solution.segments.end());
          DeltaCellInfo ci_info;
          ci_info.box = cell_box;
          ci_info.rect_ids = cell_to_norm;
          for (int local : cs.remaining_ids)
            ci_info.remaining_after_guess.push_back(cell_to_norm[local]);
          ci_info.best_cost = cs.solution.cost;
          ci_info.guesses_tried = cs.guesses_tried;
          ci_info.greedy_fallback = cs.fallback;
          runinfo.cells.push_back(std::move(ci_info));
          runinfo.rect_count_per_cell.push_back(
              static_cast<int>(cell_rects.size()));
        }
      }
      full.boundary_segments =
          finalize_solution(full.boundary_segments.segments, "delta");
      runinfo.decomposition = std::move(full);
      sol = finalize_solution(std::move(segs), "delta");
      by_lines.emplace(std::move(key), std::make_pair(sol, runinfo));
    }
    if (best_cost < 0 || sol.cost < best_cost) {
      best_cost = sol.cost;
      best_sol = sol;
      best_info = runinfo;
    }
  }

  auto rep = verify(norm, best_sol);
  if (!rep.feasible)
    fail(Errc::infeasible, "delta pipeline infeasible before denormalization");
  if (info) *info = best_info;
  Solution out = denormalize(best_sol, rec);
  out.solver_tag = "delta";
  return out;
}

Solution solve_delta_large(const Instance& inst, const DeltaConfig& cfg) {
  return solve_delta_large_detailed(inst, cfg, nullptr);
}

}  // namespace stab
