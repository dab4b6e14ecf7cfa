#include "stab/baseline.hpp"

#include <algorithm>
#include <bit>
#include <map>

namespace stab {

CoverSystem build_cover_system(const std::vector<Rect>& rects,
                               const std::vector<Segment>& cands) {
  if (rects.size() > 64)
    fail(Errc::budget_exceeded, "cover system limited to 64 rects");
  CoverSystem sys;
  for (std::size_t i = 0; i < rects.size(); ++i)
    sys.universe |= CoverSystem::Mask(1) << i;
  for (const auto& s : cands) {
    CoverSystem::Mask m = 0;
    for (std::size_t i = 0; i < rects.size(); ++i)
      if (stabs(s, rects[i])) m |= CoverSystem::Mask(1) << i;
    if (m != 0) sys.sets.push_back({s, m, s.length()});
  }
  return sys;
}

namespace {

using Mask = CoverSystem::Mask;

// Keeps, per coverage mask, only the cheapest (then lexicographically
// smallest) candidate, and drops entries dominated by a superset coverage at
// no greater weight.
std::vector<CoverSystem::Entry> dominance_reduce(
    std::vector<CoverSystem::Entry> sets) {
  std::map<Mask, CoverSystem::Entry> best;
  for (const auto& e : sets) {
    auto it = best.find(e.covered);
    if (it == best.end() || e.weight < it->second.weight ||
        (e.weight == it->second.weight && e.seg < it->second.seg))
      best[e.covered] = e;
  }
  std::vector<CoverSystem::Entry> out;
  out.reserve(best.size());
  for (auto& [m, e] : best) out.push_back(e);
  auto dominated = [&](const CoverSystem::Entry& e) {
    for (const auto& o : out)
      if (o.covered != e.covered && (o.covered & e.covered) == e.covered &&
          o.weight <= e.weight)
        return true;
    return false;
  };
  std::erase_if(out, dominated);
  std::sort(out.begin(), out.end(),
            [](const CoverSystem::Entry& a, const CoverSystem::Entry& b) {
              return a.weight != b.weight ? a.weight < b.weight
                                          : a.seg < b.seg;
            });
  return out;
}

struct BnB {
  const std::vector<CoverSystem::Entry>& sets;
  Mask universe;
  std::vector<std::vector<int>> covering;  // per element, set indices
  std::vector<std::int64_t> min_weight;    // per element, cheapest cover
  int max_multiplicity = 1;

  std::int64_t best_cost = -1;
  std::vector<int> best_pick;
  std::vector<int> pick;

  explicit BnB(const std::vector<CoverSystem::Entry>& s, Mask u)
      : sets(s), universe(u) {
    int n = std::popcount(u);
    covering.resize(n);
    min_weight.assign(n, -1);
    for (std::size_t k = 0; k < sets.size(); ++k) {
      max_multiplicity =
          std::max(max_multiplicity, std::popcount(sets[k].covered));
      for (int i = 0; i < n; ++i)
        if (sets[k].covered >> i & 1) {
          covering[i].push_back(static_cast<int>(k));
          if (min_weight[i] < 0 || sets[k].weight < min_weight[i])
            min_weight[i] = sets[k].weight;
        }
    }
  }

  // Admissible remaining-cost bound: max of the single-element bound and an
  // averaged counting bound (each picked set covers at most
  // max_multiplicity elements).
  std::int64_t lower_bound(Mask uncovered) const {
    std::int64_t lo = 0, sum = 0;
    for (Mask m = uncovered; m;) {
      int i = std::countr_zero(m);
      m &= m - 1;
      lo = std::max(lo, min_weight[i]);
      sum += min_weight[i];
    }
    std::int64_t counting = (sum + max_multiplicity - 1) / max_multiplicity;
    return std::max(lo, counting);
  }

  std::vector<Segment> sorted_segments(const std::vector<int>& p) const {
    std::vector<Segment> v;
    v.reserve(p.size());
    for (int k : p) v.push_back(sets[k].seg);
    std::sort(v.begin(), v.end());
    return v;
  }

  bool better(std::int64_t cost) const {
    if (best_cost < 0 || cost < best_cost) return true;
    if (cost > best_cost) return false;
    if (pick.size() != best_pick.size())
      return pick.size() < best_pick.size();
    return sorted_segments(pick) < sorted_segments(best_pick);
  }

  void run(Mask uncovered, std::int64_t cost) {
    if (uncovered == 0) {
      if (better(cost)) {
        best_cost = cost;
        best_pick = pick;
      }
      return;
    }
    if (best_cost >= 0 && cost + lower_bound(uncovered) > best_cost) return;
    int elem = std::countr_zero(uncovered);
    for (int k : covering[elem]) {
      pick.push_back(k);
      run(uncovered & ~sets[k].covered, cost + sets[k].weight);
      pick.pop_back();
    }
  }
};

Solution cover_to_solution(const std::vector<CoverSystem::Entry>& sets,
                           const std::vector<int>& picks, std::string tag) {
  std::vector<Segment> segs;
  segs.reserve(picks.size());
  for (int k : picks) segs.push_back(sets[k].seg);
  return finalize_solution(std::move(segs), std::move(tag));
}

}  // namespace

Solution exact_oracle_over(const Instance& inst,
                           const std::vector<Segment>& cands,
                           const OracleBudget& budget) {
  if (static_cast<int>(inst.rects.size()) > budget.max_n)
    fail(Errc::budget_exceeded,
         "oracle limited to " + std::to_string(budget.max_n) + " rects");
  if (inst.rects.empty()) return finalize_solution({}, "exact");
  CoverSystem sys = build_cover_system(inst.rects, cands);
  auto reduced = dominance_reduce(std::move(sys.sets));
  if (static_cast<int>(reduced.size()) > budget.max_cands)
    fail(Errc::budget_exceeded,
         "oracle limited to " + std::to_string(budget.max_cands) +
             " candidates after reduction");
  Mask all = 0;
  for (const auto& e : reduced) all |= e.covered;
  if (all != sys.universe)
    fail(Errc::infeasible, "candidates cannot cover every rect");
  BnB bnb(reduced, sys.universe);
  bnb.run(sys.universe, 0);
  return cover_to_solution(reduced, bnb.best_pick, "exact");
}

Solution exact_oracle(const Instance& inst, const CandidateSet& cands,
                      const OracleBudget& budget) {
  return exact_oracle_over(inst, cands.all(), budget);
}

Solution greedy_cover_over(const Instance& inst,
                           const std::vector<Segment>& cands) {
  if (inst.rects.empty()) return finalize_solution({}, "greedy");
  // Greedy scales past the 64-element cover system: plain bool vectors.
  std::size_t n = inst.rects.size();
  std::vector<char> covered(n, 0);
  std::size_t remaining = n;
  std::vector<Segment> sorted = cands;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<Segment> picked;
  while (remaining > 0) {
    int best = -1;
    std::int64_t bw = 0, bc = 0;
    for (std::size_t k = 0; k < sorted.size(); ++k) {
      std::int64_t c = 0;
      for (std::size_t i = 0; i < n; ++i)
        if (!covered[i] && stabs(sorted[k], inst.rects[i])) ++c;
      if (c == 0) continue;
      std::int64_t w = sorted[k].length();
      // w/c < bw/bc, exact; ties by smaller weight then lex (already lex
      // ordered by the scan).
      bool take = best < 0 || w * bc < bw * c ||
                  (w * bc == bw * c && w < bw);
      if (take) {
        best = static_cast<int>(k);
        bw = w;
        bc = c;
      }
    }
    if (best < 0)
      fail(Errc::infeasible, "greedy: some rect has no covering candidate");
    picked.push_back(sorted[best]);
    for (std::size_t i = 0; i < n; ++i)
      if (!covered[i] && stabs(sorted[best], inst.rects[i])) {
        covered[i] = 1;
        --remaining;
      }
  }
  return finalize_solution(std::move(picked), "greedy");
}

Solution greedy_cover(const Instance& inst, const CandidateSet& cands) {
  return greedy_cover_over(inst, cands.all());
}

Solution stab_line_rects(const Instance& inst, Orientation line_orientation,
                         Coord line_coord, const Rect& region) {
  Instance sub;
  sub.grid_unit = inst.grid_unit;
  sub.epsilon = inst.epsilon;
  for (const auto& r : inst.rects) {
    if (!region.contains(r)) continue;
    bool crossed = line_orientation == Orientation::horizontal
                       ? (r.y1 <= line_coord && line_coord <= r.y2)
                       : (r.x1 <= line_coord && line_coord <= r.x2);
    if (crossed) sub.rects.push_back(r);
  }
  if (sub.rects.empty()) return finalize_solution({}, "line");
  seal_instance(sub);
  Solution s = greedy_cover(sub, canonical_candidates(sub));
  s.solver_tag = "line";
  return s;
}

}  // namespace stab
