#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "stab/geometry.hpp"
#include "stab/generate.hpp"

using namespace stab;

namespace {

Segment hseg(Coord y, Coord lo, Coord hi) {
  return {Orientation::horizontal, y, lo, hi};
}
Segment vseg(Coord x, Coord lo, Coord hi) {
  return {Orientation::vertical, x, lo, hi};
}

Instance make_inst(std::vector<Rect> rects) {
  Instance inst;
  inst.rects = std::move(rects);
  seal_instance(inst);
  return inst;
}

}  // namespace

TEST_CASE("stabs: crossing both opposite edges") {
  Rect r{1, 0, 2, 2, 0};
  CHECK(stabs(hseg(1, 0, 3), r));        // spans both vertical edges
  CHECK_FALSE(stabs(vseg(1, 0, 1), r));  // span stops below the top edge
  // boundary contact at the top edge with an exact span still stabs
  CHECK(stabs(hseg(2, 1, 2), r));
  CHECK_FALSE(stabs(hseg(3, 0, 3), r));  // anchor above the rect
  CHECK_FALSE(stabs(hseg(1, 0, 1), r));  // covers only one vertical edge
  CHECK(stabs(vseg(1, 0, 2), r));
  CHECK(stabs(vseg(2, -1, 5), r));
}

TEST_CASE("stabs monotone under segment extension") {
  SplitMix64 rng(7);
  for (int it = 0; it < 500; ++it) {
    Rect r;
    r.x1 = rng.below(20);
    r.y1 = rng.below(20);
    r.x2 = r.x1 + rng.range(1, 10);
    r.y2 = r.y1 + rng.range(1, 10);
    Segment s;
    s.orientation =
        rng.below(2) ? Orientation::horizontal : Orientation::vertical;
    s.anchor = rng.below(30);
    s.lo = rng.below(30);
    s.hi = s.lo + rng.below(10);
    Segment wider = s;
    wider.lo -= rng.below(5);
    wider.hi += rng.below(5);
    if (stabs(s, r)) CHECK(stabs(wider, r));
  }
}

TEST_CASE("verify: feasibility and exact recomputed cost") {
  SUBCASE("empty instance, empty solution") {
    Instance inst = make_inst({});
    Solution sol;
    auto rep = verify(inst, sol);
    CHECK(rep.feasible);
    CHECK(rep.recomputed_cost == 0);
  }
  SUBCASE("single rect stabbed along its bottom edge") {
    Instance inst = make_inst({{0, 0, 2, 1, 0}});
    Solution sol = finalize_solution({hseg(0, 0, 2)}, "t");
    auto rep = verify(inst, sol);
    CHECK(rep.feasible);
    CHECK(rep.recomputed_cost == 2);
    CHECK(rep.recomputed_cost == sol.cost);
  }
  SUBCASE("span covering one vertical edge is not a stab") {
    Instance inst = make_inst({{0, 0, 2, 1, 0}});
    Solution sol = finalize_solution({hseg(0, 0, 1)}, "t");
    auto rep = verify(inst, sol);
    CHECK_FALSE(rep.feasible);
    CHECK(rep.unstabbed == std::vector<int>{0});
  }
  SUBCASE("segment escaping the bounds throws") {
    Instance inst = make_inst({{0, 0, 2, 1, 0}});
    Solution sol = finalize_solution({hseg(0, -5, 2)}, "t");
    CHECK_THROWS_AS(verify(inst, sol), Error);
  }
}

TEST_CASE("clip_segment") {
  Rect region{1, 0, 3, 2, -1};
  SUBCASE("straddling segment is trimmed") {
    auto c = clip_segment(hseg(1, 0, 4), region);
    REQUIRE(c.has_value());
    CHECK(*c == hseg(1, 1, 3));
  }
  SUBCASE("anchor outside the region clips away") {
    CHECK_FALSE(clip_segment(vseg(5, 0, 2), Rect{0, 0, 3, 3, -1}).has_value());
    CHECK_FALSE(clip_segment(hseg(5, 1, 2), region).has_value());
  }
  SUBCASE("fully inside is identity") {
    auto c = clip_segment(hseg(1, 1, 2), region);
    REQUIRE(c.has_value());
    CHECK(*c == hseg(1, 1, 2));
  }
  SUBCASE("single point overlap degenerates to zero length") {
    auto c = clip_segment(hseg(1, 3, 5), region);
    REQUIRE(c.has_value());
    CHECK(c->length() == 0);
  }
  SUBCASE("clipping never grows and is idempotent") {
    SplitMix64 rng(11);
    for (int it = 0; it < 300; ++it) {
      Segment s;
      s.orientation =
          rng.below(2) ? Orientation::horizontal : Orientation::vertical;
      s.anchor = rng.below(10);
      s.lo = rng.below(10);
      s.hi = s.lo + rng.below(8);
      Rect reg;
      reg.x1 = rng.below(8);
      reg.y1 = rng.below(8);
      reg.x2 = reg.x1 + rng.range(1, 6);
      reg.y2 = reg.y1 + rng.range(1, 6);
      auto c = clip_segment(s, reg);
      if (!c) continue;
      CHECK(c->length() <= s.length());
      auto c2 = clip_segment(*c, reg);
      REQUIRE(c2.has_value());
      CHECK(*c2 == *c);
    }
  }
}

TEST_CASE("finalize_solution sorts, dedups, recomputes") {
  auto sol = finalize_solution({hseg(1, 0, 3), hseg(1, 0, 3), vseg(0, 0, 2)},
                               "t");
  CHECK(sol.segments.size() == 2);
  CHECK(sol.cost == 5);
  CHECK(sol.segments.front().orientation == Orientation::horizontal);
}

TEST_CASE("transpose involution") {
  Rect r{1, 2, 3, 5, 7};
  CHECK(transpose(transpose(r)) == r);
  Segment s = vseg(4, 1, 9);
  CHECK(transpose(transpose(s)) == s);
  CHECK(transpose(s).orientation == Orientation::horizontal);
}
