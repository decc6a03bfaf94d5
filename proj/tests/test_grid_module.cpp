#include "doctest.h"

#include "corpus.hpp"
#include "gridpm/gridpm.hpp"

using namespace gridpm;
using gridpm::testing::random_barcode;
using gridpm::testing::random_rect_barcode;

TEST_CASE("realize and extract are mutually inverse") {
  RationalField fq;
  SUBCASE("known small cases") {
    Barcode v = Barcode::of_intervals({{0, 2}, {1, 1}, {1, 1}});
    CHECK(barcode_of_1d(realize_barcode(fq, v)) == v);
    CHECK(barcode_of_1d(GridModule<RationalField>(fq, 1)) == Barcode(1));
  }
  SUBCASE("a zero connecting map splits") {
    GridModule<RationalField> m(fq, 1);
    m.set_fiber(Point{0}, 1);
    m.set_fiber(Point{1}, 1);
    m.set_arrow(Point{0}, 0, Matrix<RationalField>(fq, 1, 1));
    CHECK(barcode_of_1d(m) == Barcode::of_intervals({{0, 0}, {1, 1}}));
  }
  SUBCASE("randomized round trips") {
    SplitMix64 rng(4242);
    for (int trial = 0; trial < 60; ++trial) {
      Barcode v = random_barcode(rng, 5, 0, 12);
      CHECK(barcode_of_1d(realize_barcode(fq, v)) == v);
    }
  }
  SUBCASE("rectangle modules in two dimensions") {
    SplitMix64 rng(515);
    for (int trial = 0; trial < 20; ++trial) {
      Barcode v = random_rect_barcode(rng, 2, 3, 0, 4);
      CHECK(barcode_of_rect_module(realize_barcode(fq, v)) == v);
    }
  }
}

TEST_CASE("stack of a single-row diagram realizes the barcode on a line") {
  PrimeField f2(2);
  StackDiagram<PrimeField> s;
  s.rows = {Barcode::of_intervals({{0, 2}})};
  auto m = stack(f2, s);
  CHECK(m.dim() == 2);
  CHECK(m.support_size() == 3);
  for (long long x = 0; x <= 2; ++x) CHECK(m.fiber(Point{x, 0}) == 1);
  CHECK(m.arrow(Point{0, 0}, 0)->is_identity());
  m.validate();
}

TEST_CASE("every stacked construction passes the commutativity validator") {
  PrimeField f2(2);
  SplitMix64 rng(31337);
  for (int trial = 0; trial < 15; ++trial) {
    Barcode v = random_barcode(rng, 4, 0, 6);
    CHECK_NOTHROW(stack(f2, build_primal(f2, v)).validate());
    CHECK_NOTHROW(stack(f2, build_candy(f2, v)).validate());
  }
}

TEST_CASE("the two-point candy stacks to the expected support pattern") {
  PrimeField f2(2);
  Barcode v = Barcode::of_intervals({{-1, -1}, {1, 1}});
  auto m = stack(f2, build_candy(f2, v));
  // the input row sits at height 3 and its gap is the hole's center
  CHECK(m.fiber(Point{-1, 3}) == 1);
  CHECK(m.fiber(Point{1, 3}) == 1);
  CHECK(m.fiber(Point{0, 3}) == 0);
  m.validate();
  auto bn = betti_numbers(clique_cubical(m.support(), 2), FieldSpec::rationals());
  CHECK(bn[0] == 1);
  CHECK(bn[1] == 1);
}

TEST_CASE("unstack inverts stack on construction diagrams") {
  PrimeField f5(5);
  SplitMix64 rng(1123);
  for (int trial = 0; trial < 12; ++trial) {
    Barcode v = random_barcode(rng, 4, 0, 6);
    for (int variant = 0; variant < 2; ++variant) {
      StackDiagram<PrimeField> s =
          variant == 0 ? build_primal(f5, v) : build_candy(f5, v);
      auto m = stack(f5, s);
      auto u = unstack_raw(m, m.dim() - 1);
      REQUIRE(u.slices.size() == s.rows.size());
      auto s2 = diagram_from_slices(u);
      CHECK(s2 == s);
      // re-stacking gives back identical fibers and arrows
      auto m2 = stack(f5, s2);
      CHECK(m.fibers() == m2.fibers());
      CHECK(m.arrows() == m2.arrows());
    }
  }
}

TEST_CASE("unstacking a one-row module returns the module itself") {
  PrimeField f2(2);
  StackDiagram<PrimeField> s;
  s.rows = {Barcode::of_intervals({{0, 1}})};
  auto m = stack(f2, s);
  auto u = unstack_raw(m, 1);
  REQUIRE(u.slices.size() == 1);
  CHECK(u.slices[0].dim() == 1);
  CHECK(barcode_of_1d(u.slices[0]) == s.rows[0]);
}

TEST_CASE("translate and embed") {
  RationalField fq;
  Barcode v = Barcode::of_intervals({{0, 1}, {2, 3}});
  auto m = stack(fq, build_primal(fq, v));
  SUBCASE("translating by zero is the identity") {
    auto t = m.translated(Point{0, 0});
    CHECK(t.fibers() == m.fibers());
    CHECK(t.arrows() == m.arrows());
  }
  SUBCASE("end dimension is invariant under translation") {
    auto t = m.translated(Point{-4, 7});
    CHECK(end_dim(t) == end_dim(m));
  }
  SUBCASE("Betti numbers are invariant under embedding") {
    auto e = m.embedded_last(5);
    CHECK(e.dim() == 3);
    auto b0 = betti_numbers(clique_cubical(m.support(), 2), FieldSpec::rationals());
    auto b1 = betti_numbers(clique_cubical(e.support(), 3), FieldSpec::rationals());
    for (std::size_t k = 0; k < b0.size(); ++k) CHECK(b0[k] == b1[k]);
    CHECK(b1.back() == 0);
    CHECK(end_dim(e) == end_dim(m));
  }
}

TEST_CASE("restriction along the input row recovers the barcode") {
  PrimeField f2(2);
  SplitMix64 rng(2718);
  for (int trial = 0; trial < 15; ++trial) {
    Barcode v = random_barcode(rng, 5, 0, 8);
    auto m = stack(f2, build_primal(f2, v));
    auto r = restrict_line(m, Line::affine(Point{0, 3}, Point{1, 0}));
    CHECK(iso_barcode_eq(barcode_of_1d(r), v));
  }
}

TEST_CASE("restriction along a row outside the support is empty") {
  PrimeField f2(2);
  auto m = stack(f2, build_primal(f2, Barcode::of_intervals({{0, 1}})));
  auto r = restrict_line(m, Line::affine(Point{0, 9}, Point{1, 0}));
  CHECK(r.empty());
  CHECK(barcode_of_1d(r) == Barcode(1));
}

TEST_CASE("diagonal restriction matches the pointwise oracle") {
  PrimeField f2(2);
  auto m = stack(f2, build_candy(f2, Barcode::of_intervals({{0, 0}})));
  Line diag = Line::affine(Point{0, 0}, Point{1, 1});
  auto r = restrict_line(m, diag);
  // oracle: fibers and composites of explicit arrow products along the line
  Rectangle box = m.bounding_box();
  std::vector<std::pair<long long, int>> fibers;
  for (long long t = box.b[0]; t <= box.d[0]; ++t) {
    Point p{t, t};
    if (m.fiber(p) > 0) fibers.push_back({t, m.fiber(p)});
  }
  for (const auto& [t, d] : fibers) CHECK(r.fiber(Point{t}) == d);
  for (const auto& [t, d] : fibers) {
    Point p{t, t}, q{t + 1, t + 1};
    if (m.fiber(q) == 0) continue;
    auto expect = m.arrow_or_zero(p.shifted(0, 1), 1).mul(m.arrow_or_zero(p, 0));
    CHECK(*r.arrow(Point{t}, 0) == expect);
  }
  CHECK(barcode_of_1d(r) == barcode_of_1d(r));  // extraction is well-defined
}

TEST_CASE("restriction is path independent on constructed modules") {
  PrimeField f5(5);
  SplitMix64 rng(909);
  for (int trial = 0; trial < 10; ++trial) {
    Barcode v = random_barcode(rng, 4, 0, 5);
    auto m = stack(f5, build_candy(f5, v));
    Rectangle box = m.bounding_box();
    for (int rep = 0; rep < 20; ++rep) {
      Point p{rng.range(box.b[0], box.d[0]), rng.range(box.b[1], box.d[1])};
      Point q{rng.range(p[0], box.d[0]), rng.range(p[1], box.d[1])};
      // x-first path versus y-first path
      Matrix<PrimeField> xfirst = m.path_composite(p, q);
      Matrix<PrimeField> yfirst(f5, m.fiber(q), m.fiber(p));
      {
        Point cur = p;
        Matrix<PrimeField> acc = Matrix<PrimeField>::identity(f5, m.fiber(p));
        bool dead = m.fiber(p) == 0;
        for (int k = m.dim() - 1; k >= 0 && !dead; --k) {
          while (cur[k] < q[k]) {
            const Matrix<PrimeField>* a = m.arrow(cur, k);
            if (!a) {
              dead = true;
              break;
            }
            acc = a->mul(acc);
            cur = cur.shifted(k, 1);
          }
        }
        if (!dead && m.fiber(q) > 0) yfirst = acc;
      }
      if (m.fiber(p) == 0 || m.fiber(q) == 0) continue;
      CHECK(xfirst == yfirst);
    }
  }
}

TEST_CASE("axis slicing of stacked rectangle constructions recovers the input") {
  PrimeField f2(2);
  SplitMix64 rng(60902);
  for (int trial = 0; trial < 8; ++trial) {
    Barcode v = random_rect_barcode(rng, 2, 3, 0, 4);
    auto m = stack(f2, build_primal(f2, v));
    REQUIRE(m.dim() == 3);
    auto sl = hyperplane_restrict(m, Hyperplane::axis_embed(2, 3));
    CHECK(iso_barcode_eq(barcode_of_rect_module(sl), v));
    auto outside = hyperplane_restrict(m, Hyperplane::axis_embed(2, 17));
    CHECK(outside.empty());
  }
}

TEST_CASE("affine hyperplane slices agree with explicit path composition") {
  PrimeField f2(2);
  SplitMix64 rng(7);
  Barcode v = random_rect_barcode(rng, 2, 2, 0, 3);
  auto m = stack(f2, build_primal(f2, v));
  // the plane spanned by (1,0,0) and (0,1,0) at height 3 equals the axis slice
  auto affine = hyperplane_restrict(
      m, Hyperplane::affine_embed(Point{0, 0, 3}, {Point{1, 0, 0}, Point{0, 1, 0}}));
  auto axis = hyperplane_restrict(m, Hyperplane::axis_embed(2, 3));
  CHECK(affine.fibers() == axis.fibers());
  CHECK(affine.arrows() == axis.arrows());
}

TEST_CASE("iso_barcode_eq") {
  Barcode a = Barcode::of_intervals({{0, 1}, {0, 1}});
  Barcode b = Barcode::of_intervals({{0, 1}, {0, 1}});
  CHECK(iso_barcode_eq(a, b));
  CHECK_FALSE(iso_barcode_eq(a, Barcode::of_intervals({{0, 1}, {0, 2}})));
  CHECK_THROWS_AS(iso_barcode_eq(a, Barcode(2)), std::invalid_argument);
}

TEST_CASE("total dimension accounting") {
  RationalField fq;
  SplitMix64 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    Barcode v = random_barcode(rng, 4, 0, 9);
    auto m = realize_barcode(fq, v);
    CHECK(m.total_dimension() == v.total_dimension());
  }
}
