#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "stab/baseline.hpp"
#include "stab/preprocess.hpp"
#include "support/helpers.hpp"

using namespace stab;
using namespace stab::testing;

namespace {

// Lemma-style conditions of the tall normalization, checked in grid units.
void check_tall_shape(const Instance& norm, const Rat& eps, std::int64_t n) {
  if (norm.rects.empty()) return;
  std::int64_t u = (Rat(n) / eps).num();
  for (const auto& r : norm.rects) {
    CHECK(r.width() >= 1);
    CHECK(r.width() <= u);
    CHECK(r.height() >= r.width());
    CHECK(r.x1 >= 0);
    CHECK(r.x2 <= n * u);
    CHECK(r.y1 >= 0);
    CHECK(r.y2 <= 4 * n * n * u);
  }
}

}  // namespace

TEST_CASE("normalize_tall argument validation") {
  Instance inst = make_instance({{0, 0, 2, 3, 0}});
  CHECK_THROWS_AS(normalize_tall(inst, Rat(1, 3)), Error);  // not below 1/3
  CHECK_THROWS_AS(normalize_tall(inst, Rat(2, 5)), Error);  // 1/eps not integral
  CHECK_THROWS_AS(normalize_tall(inst, Rat(0)), Error);
  Instance wide = make_instance({{0, 0, 3, 2, 0}});
  CHECK_THROWS_AS(normalize_tall(wide, Rat(1, 4)), Error);
}

TEST_CASE("normalize_tall scaling step") {
  // widths 2 and 4: the scale makes the largest width 1 - 2*eps = 1/2
  Instance inst = make_instance({{0, 0, 2, 4, 0}, {3, 0, 7, 8, 1}});
  auto [norm, rec] = normalize_tall(inst, Rat(1, 4));
  CHECK(rec.scale_x == Rat(1, 8));
  CHECK(rec.scale_x == rec.scale_y);
  CHECK(Rat(2) * rec.scale_x == Rat(1, 4));
  CHECK(Rat(4) * rec.scale_x == Rat(1, 2));
  check_tall_shape(norm, Rat(1, 4), 2);
  // widths land exactly on the grid: 1/4 and 1/2 of a unit (u = 8)
  CHECK(norm.rects[0].width() == 2);
  CHECK(norm.rects[1].width() == 4);
}

TEST_CASE("normalize_tall drops thin rects and records their stabs") {
  // widths 1 and 8: scaled width of the first is 1/16 < eps/n = 1/8
  Instance inst = make_instance({{0, 0, 1, 10, 0}, {2, 0, 10, 10, 1}});
  auto [norm, rec] = normalize_tall(inst, Rat(1, 4));
  CHECK(norm.rects.size() == 1);
  REQUIRE(rec.dropped_thin_rects.size() == 1);
  CHECK(rec.dropped_thin_rects[0].rect.id == 0);
  CHECK(rec.greedy_thin_cost == 1);
  CHECK(stabs(rec.dropped_thin_rects[0].seg, inst.rects[0]));
  // thin stabs come back on the way out
  Solution empty_plus = denormalize(finalize_solution({}, "t"), rec);
  CHECK(empty_plus.cost == rec.greedy_thin_cost);

  Solution inner = greedy_cover(norm, canonical_candidates(norm));
  Solution out = denormalize(inner, rec);
  CHECK(verify(inst, out).feasible);
}

TEST_CASE("normalize_tall compresses uncovered x-stretches") {
  // two clusters far apart: the empty stretch shrinks to one grid unit
  Instance inst = make_instance({{0, 0, 2, 2, 0}, {100, 0, 102, 2, 1}});
  auto [norm, rec] = normalize_tall(inst, Rat(1, 4));
  REQUIRE(rec.x_gap_compressions.size() == 1);
  CHECK(rec.x_gap_compressions[0].norm_len == 1);
  CHECK(rec.x_gap_compressions[0].orig_len > 1);
  check_tall_shape(norm, Rat(1, 4), 2);
  // the two sub-instances stay independent: no candidate reaches across
  Solution inner = greedy_cover(norm, canonical_candidates(norm));
  Solution out = denormalize(inner, rec);
  CHECK(verify(inst, out).feasible);
}

TEST_CASE("normalize_tall stretches big y-gaps down") {
  // gap between y=2 and y=100 after scaling exceeds 2n, so it compresses to
  // the largest grid multiple below 2n
  Instance inst = make_instance({{0, 0, 2, 2, 0}, {0, 100, 2, 102, 1}});
  const std::int64_t n = 2, u = 8;  // eps = 1/4
  auto [norm, rec] = normalize_tall(inst, Rat(1, 4));
  REQUIRE(rec.y_gap_compressions.size() == 1);
  CHECK(rec.y_gap_compressions[0].norm_len == 2 * n * u - 1);
  check_tall_shape(norm, Rat(1, 4), n);
  // segments above the gap map back up across the re-expanded stretch
  Solution inner = greedy_cover(norm, canonical_candidates(norm));
  Solution out = denormalize(inner, rec);
  CHECK(verify(inst, out).feasible);
  bool high_anchor = false;
  for (const auto& s : out.segments)
    if (s.orientation == Orientation::horizontal && s.anchor >= 100)
      high_anchor = true;
  CHECK(high_anchor);
}

TEST_CASE("normalize_tall is idempotent on its own output") {
  SplitMix64 rng(41);
  for (int it = 0; it < 60; ++it) {
    Instance inst = random_tall(rng, 1 + static_cast<int>(rng.below(6)));
    auto [norm, rec] = normalize_tall(inst, Rat(1, 4));
    auto [norm2, rec2] = normalize_tall(norm, Rat(1, 4));
    CHECK(rec2.identity);
    CHECK(norm2.rects.size() == norm.rects.size());
    for (std::size_t i = 0; i < norm.rects.size(); ++i)
      CHECK(norm2.rects[i] == norm.rects[i]);
    CHECK(norm2.grid_unit == norm.grid_unit);
    check_tall_shape(norm, Rat(1, 4),
                     static_cast<std::int64_t>(inst.rects.size()));
  }
}

TEST_CASE("normalize_general") {
  SUBCASE("side longer than 1 is rejected") {
    Instance inst = make_instance({{0, 0, 9, 4, 0}}, Rat(1, 8));
    CHECK_THROWS_AS(normalize_general(inst, Rat(1, 4)), Error);
  }
  SUBCASE("outward rounding onto the eps/n grid") {
    // n=4, eps=1/4: the grid unit becomes 1/16
    Instance inst = make_instance({{1, 1, 7, 5, 0},
                                   {3, 2, 9, 9, 1},
                                   {10, 3, 17, 11, 2},
                                   {5, 11, 11, 18, 3}},
                                  Rat(1, 20));
    auto [norm, rec] = normalize_general(inst, Rat(1, 4));
    CHECK(norm.grid_unit == Rat(1, 16));
    CHECK(norm.rects.size() == 4);
    for (std::size_t i = 0; i < norm.rects.size(); ++i) {
      const Rect& d = norm.rects[i];
      const Rect& o = inst.rects[i];
      // outward rounding relative to the shifted originals
      Rat sx = rec.x_shift, sy = rec.y_shift;
      CHECK(Rat(d.x1) * norm.grid_unit <= Rat(o.x1) * inst.grid_unit - sx);
      CHECK(Rat(d.x2) * norm.grid_unit >= Rat(o.x2) * inst.grid_unit - sx);
      CHECK(Rat(d.y1) * norm.grid_unit <= Rat(o.y1) * inst.grid_unit - sy);
      CHECK(Rat(d.y2) * norm.grid_unit >= Rat(o.y2) * inst.grid_unit - sy);
      CHECK(d.width() <= 16 + 2);
      CHECK(d.height() <= 16 + 2);
    }
    auto [norm2, rec2] = normalize_general(norm, Rat(1, 4));
    CHECK(rec2.identity);
  }
  SUBCASE("round trip feasibility") {
    SplitMix64 rng(43);
    for (int it = 0; it < 60; ++it) {
      GenParams p;
      p.grid = 16;
      Generated g = generate(Family::delta_large, 2 + rng.below(5),
                             rng.next(), p);
      auto [norm, rec] = normalize_general(g.inst, Rat(1, 4));
      Solution inner = greedy_cover(norm, canonical_candidates(norm));
      Solution out = denormalize(inner, rec);
      CHECK(verify(g.inst, out).feasible);
    }
  }
}

TEST_CASE("split_long_segments") {
  auto one = [](Coord lo, Coord hi) {
    return finalize_solution({Segment{Orientation::horizontal, 0, lo, hi}},
                             "t");
  };
  SUBCASE("short segments pass through unchanged") {
    Solution sol = one(3, 7);  // length 4 = 1/eps at unit extent
    Solution out = split_long_segments(sol, Rat(1, 4), 1);
    CHECK(out.segments == sol.segments);
  }
  SUBCASE("length 10 splits into overlapping pieces of length at most 4") {
    Solution out = split_long_segments(one(0, 10), Rat(1, 4), 1);
    REQUIRE(out.segments.size() == 5);
    CHECK(out.segments[0] == Segment{Orientation::horizontal, 0, 0, 3});
    CHECK(out.segments[1] == Segment{Orientation::horizontal, 0, 1, 5});
    CHECK(out.segments[2] == Segment{Orientation::horizontal, 0, 3, 7});
    CHECK(out.segments[3] == Segment{Orientation::horizontal, 0, 5, 9});
    CHECK(out.segments[4] == Segment{Orientation::horizontal, 0, 7, 10});
    CHECK(out.cost == 18);
    for (const auto& s : out.segments) CHECK(s.length() <= 4);
    CHECK(Rat(out.cost) <= (Rat(1) + Rat(4) * Rat(1, 4)) * Rat(10));
  }
  SUBCASE("worst case just over the threshold stays within 1+4eps") {
    for (Coord extra = 1; extra <= 3; ++extra) {
      Solution out = split_long_segments(one(0, 4 + extra), Rat(1, 4), 1);
      CHECK(Rat(out.cost) <= (Rat(2)) * Rat(4 + extra));
      for (const auto& s : out.segments) CHECK(s.length() <= 4);
    }
  }
  SUBCASE("every rect the input stabbed is stabbed by some piece") {
    SplitMix64 rng(47);
    for (int it = 0; it < 200; ++it) {
      Coord me = 1 + rng.below(3);
      Coord len = rng.range(1, 20 * me);
      Segment seg{it % 2 ? Orientation::horizontal : Orientation::vertical,
                  rng.below(5), 0, len};
      std::vector<Rect> rects;
      for (int i = 0; i < 6; ++i) {
        Coord a = rng.below(std::max<Coord>(1, len));
        Coord b = std::min(len, a + rng.range(1, me));
        if (a >= b) continue;
        Rect r;
        if (seg.orientation == Orientation::horizontal)
          r = {a, seg.anchor - rng.below(3), b, seg.anchor + rng.below(3), 0};
        else
          r = {seg.anchor - rng.below(3), a, seg.anchor + rng.below(3), b, 0};
        if (r.valid() && stabs(seg, r)) rects.push_back(r);
      }
      Rat eps(1, 4 + rng.below(3));
      if (!(Rat(1) / eps).is_integer()) continue;
      Solution out = split_long_segments(finalize_solution({seg}, "t"), eps,
                                         me);
      std::int64_t k = (Rat(1) / eps).num();
      for (const auto& p : out.segments) CHECK(p.length() <= k * me);
      CHECK(Rat(out.cost) <=
            (Rat(1) + Rat(4) * eps) * Rat(seg.length()));
      for (const auto& r : rects) {
        bool hit = false;
        for (const auto& p : out.segments)
          if (stabs(p, r)) hit = true;
        CHECK(hit);
      }
    }
  }
}

TEST_CASE("denormalize identity record is a no-op") {
  Instance inst = make_instance({{0, 0, 2, 3, 0}});
  NormalizationRecord rec;
  rec.identity = true;
  Solution sol = finalize_solution({{Orientation::vertical, 1, 0, 3}}, "t");
  Solution out = denormalize(sol, rec);
  CHECK(out.segments == sol.segments);
  CHECK(out.cost == sol.cost);
}

TEST_CASE("denormalize rejects coordinates outside the normalized bounds") {
  Instance inst = make_instance({{0, 0, 2, 4, 0}, {3, 0, 7, 8, 1}});
  auto [norm, rec] = normalize_tall(inst, Rat(1, 4));
  Solution bad = finalize_solution(
      {{Orientation::horizontal, -5, 0, 1}}, "t");
  CHECK_THROWS_AS(denormalize(bad, rec), Error);
}

TEST_CASE("denormalize splits a segment when no shared anchor survives") {
  // Discretization widened the rect ranges until they met; the originals
  // stay disjoint, so one normalized segment must come back as two.
  Instance orig = make_instance({{0, 0, 3, 4, 0}, {0, 5, 3, 9, 1}});
  NormalizationRecord rec;
  rec.identity = false;
  rec.norm_unit = Rat(1);
  rec.original = orig;
  rec.normalized_bounds = {0, 0, 3, 9, -1};
  rec.normalized_rects = {{0, 0, 3, 5, 0}, {0, 4, 3, 9, 1}};
  rec.norm_to_orig = {0, 1};

  Solution one =
      finalize_solution({{Orientation::horizontal, 4, 0, 3}}, "t");
  REQUIRE(stabs(one.segments[0], rec.normalized_rects[0]));
  REQUIRE(stabs(one.segments[0], rec.normalized_rects[1]));
  Solution out = denormalize(one, rec);
  CHECK(out.segments.size() == 2);
  CHECK(verify(orig, out).feasible);
}

TEST_CASE("round trip: solve normalized, map back, verify original") {
  SplitMix64 rng(53);
  for (int it = 0; it < 150; ++it) {
    Instance inst = random_tall(rng, 1 + static_cast<int>(rng.below(8)));
    auto [norm, rec] = normalize_tall(inst, Rat(1, 4));
    Solution inner = norm.rects.empty()
                         ? finalize_solution({}, "greedy")
                         : greedy_cover(norm, canonical_candidates(norm));
    Solution out = denormalize(inner, rec);
    CHECK(verify(inst, out).feasible);
    CHECK(out.cost == verify(inst, out).recomputed_cost);
  }
}
