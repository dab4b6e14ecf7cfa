#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "stab/dp.hpp"
#include "stab/generate.hpp"
#include "support/helpers.hpp"

using namespace stab;
using namespace stab::testing;

namespace {

DpConfig cfg_enum(Rat eps = Rat(1, 4)) {
  DpConfig cfg;
  cfg.eps = eps;
  return cfg;
}

DpConfig cfg_fixed(std::int64_t a, Rat eps = Rat(1, 4)) {
  DpConfig cfg;
  cfg.eps = eps;
  cfg.offset_policy = {false, a};
  return cfg;
}

Instance aligned_tall(SplitMix64& rng, int n) {
  GenParams p;
  p.align_max_width = true;
  return generate(Family::tall, n, rng.next(), p).inst;
}

}  // namespace

TEST_CASE("solve_hv_tall basics") {
  SUBCASE("empty instance") {
    Instance inst = make_instance({});
    auto [sol, stats] = solve_hv_tall(inst, cfg_enum());
    CHECK(sol.cost == 0);
    CHECK(sol.segments.empty());
  }
  SUBCASE("single rect pays its width") {
    Instance inst = make_instance({{0, 0, 2, 4, 0}});
    auto [sol, stats] = solve_tall_pipeline(inst, cfg_enum());
    CHECK(sol.cost == 2);
    Solution e = exact_oracle(inst, canonical_candidates(inst));
    CHECK(sol.cost == e.cost);
  }
  SUBCASE("output always passes the verifier") {
    SplitMix64 rng(61);
    for (int it = 0; it < 40; ++it) {
      Instance inst = random_tall(rng, 1 + static_cast<int>(rng.below(7)));
      auto [sol, stats] = solve_tall_pipeline(inst, cfg_enum());
      CHECK(verify(inst, sol).feasible);
      CHECK(sol.cost == verify(inst, sol).recomputed_cost);
    }
  }
}

TEST_CASE("sandwich: exact <= dp <= greedy") {
  SplitMix64 rng(67);
  OracleBudget big{8, 4096};
  for (int it = 0; it < 60; ++it) {
    Instance inst = aligned_tall(rng, 2 + static_cast<int>(rng.below(5)));
    auto cands = canonical_candidates(inst);
    Solution e = exact_oracle(inst, cands, big);
    Solution g = greedy_cover(inst, cands);
    auto [d, stats] = solve_tall_pipeline(inst, cfg_enum());
    CHECK(e.cost <= d.cost);
    CHECK(d.cost <= g.cost);
  }
}

TEST_CASE("memo soundness and determinism: identical reruns") {
  SplitMix64 rng(71);
  for (int it = 0; it < 20; ++it) {
    Instance inst = random_tall(rng, 2 + static_cast<int>(rng.below(6)));
    auto [a, sa] = solve_tall_pipeline(inst, cfg_enum());
    auto [b, sb] = solve_tall_pipeline(inst, cfg_enum());
    CHECK(a.cost == b.cost);
    CHECK(a.segments == b.segments);
    CHECK(sa.best_offset == sb.best_offset);
  }
}

TEST_CASE("offset dominance: enumeration beats any fixed offset") {
  SplitMix64 rng(73);
  for (int it = 0; it < 8; ++it) {
    Instance inst = aligned_tall(rng, 2 + static_cast<int>(rng.below(4)));
    auto [norm, rec] = normalize_tall(inst, Rat(1, 4));
    auto [all, stats] = solve_hv_tall(norm, cfg_enum());
    for (std::int64_t a = 0; a < 16; a += 5) {
      auto [fixed, st2] = solve_hv_tall(norm, cfg_fixed(a));
      CHECK(all.cost <= fixed.cost);
    }
  }
}

TEST_CASE("dp stats are populated") {
  Instance inst = make_instance({{0, 0, 2, 4, 0}, {1, 2, 3, 6, 1}});
  auto [norm, rec] = normalize_tall(inst, Rat(1, 4));
  auto [sol, stats] = solve_hv_tall(norm, cfg_enum());
  CHECK(stats.cells_expanded > 0);
  CHECK(stats.ops_greedy > 0);
  CHECK(stats.best_offset >= 0);
}

TEST_CASE("memo capacity overflow aborts the solve") {
  SplitMix64 rng(79);
  Instance inst = random_tall(rng, 8);
  DpConfig cfg = cfg_fixed(0);
  cfg.memo_capacity = 2;
  auto [norm, rec] = normalize_tall(inst, Rat(1, 4));
  CHECK_THROWS_AS(solve_hv_tall(norm, cfg), Error);
}

TEST_CASE("solve_stabbing") {
  SUBCASE("single rect pays its width horizontally") {
    Instance inst = make_instance({{0, 0, 3, 1, 0}});
    Solution s = solve_stabbing(inst, cfg_enum());
    CHECK(s.cost == 3);
    REQUIRE(s.segments.size() == 1);
    CHECK(s.segments[0].orientation == Orientation::horizontal);
  }
  SUBCASE("rects sharing y-overlap and x-span share one segment") {
    Instance inst = make_instance({{0, 0, 4, 3, 0}, {0, 2, 4, 6, 1}});
    Solution s = solve_stabbing(inst, cfg_enum());
    CHECK(s.cost == 4);
    CHECK(s.segments.size() == 1);
  }
  SUBCASE("never emits vertical segments, even on wide-friendly input") {
    SplitMix64 rng(83);
    for (int it = 0; it < 40; ++it) {
      GenParams p;
      Generated g = generate(Family::uniform, 1 + rng.below(7), rng.next(), p);
      Solution s = solve_stabbing(g.inst, cfg_enum());
      CHECK(verify(g.inst, s).feasible);
      for (const auto& seg : s.segments)
        CHECK(seg.orientation == Orientation::horizontal);
    }
  }
  SUBCASE("matches the horizontal-only optimum on aligned instances") {
    SplitMix64 rng(89);
    OracleBudget big{8, 4096};
    for (int it = 0; it < 30; ++it) {
      Instance inst = aligned_tall(rng, 2 + static_cast<int>(rng.below(4)));
      std::vector<Segment> hsegs;
      for (const auto& c : canonical_candidates(inst).horizontal)
        hsegs.push_back(c.seg);
      Solution e = exact_oracle_over(inst, hsegs, big);
      Solution s = solve_stabbing(inst, cfg_enum());
      CHECK(s.cost >= e.cost);
      CHECK(Rat(s.cost) <= (Rat(1) + Rat(3, 4)) * Rat(e.cost));
    }
  }
}

TEST_CASE("solve_hv_2eps") {
  SUBCASE("all-tall input matches the tall pipeline") {
    SplitMix64 rng(97);
    Instance inst = random_tall(rng, 5);
    Solution split = solve_hv_2eps(inst, cfg_enum());
    auto [tall, stats] = solve_tall_pipeline(inst, cfg_enum());
    CHECK(split.cost == tall.cost);
  }
  SUBCASE("cost is exactly the sum of the two parts") {
    SplitMix64 rng(101);
    for (int it = 0; it < 25; ++it) {
      Generated g =
          generate(Family::uniform, 2 + rng.below(6), rng.next(), {});
      Instance tall, wide;
      tall.grid_unit = wide.grid_unit = g.inst.grid_unit;
      tall.epsilon = wide.epsilon = g.inst.epsilon;
      for (const auto& r : g.inst.rects)
        (r.height() >= r.width() ? tall : wide).rects.push_back(r);
      std::int64_t want = 0;
      if (!tall.rects.empty()) {
        seal_instance(tall);
        want += solve_tall_pipeline(tall, cfg_enum()).first.cost;
      }
      if (!wide.rects.empty()) {
        seal_instance(wide);
        Instance t = transpose(wide);
        seal_instance(t);
        want += solve_tall_pipeline(t, cfg_enum()).first.cost;
      }
      Solution split = solve_hv_2eps(g.inst, cfg_enum());
      CHECK(split.cost == want);
      CHECK(verify(g.inst, split).feasible);
    }
  }
  SUBCASE("mixed handcrafted instance stays within twice the optimum") {
    // two tall and two wide rects with clean power-of-two geometry
    Instance inst = make_instance({{0, 0, 2, 8, 0},
                                   {4, 0, 6, 8, 1},
                                   {8, 0, 16, 2, 2},
                                   {8, 4, 16, 6, 3}});
    OracleBudget big{8, 4096};
    Solution e = exact_oracle(inst, canonical_candidates(inst), big);
    Solution s = solve_hv_2eps(inst, cfg_enum());
    CHECK(verify(inst, s).feasible);
    CHECK(Rat(s.cost) <= Rat(2) * (Rat(1) + Rat(1, 4)) * Rat(e.cost));
  }
}
