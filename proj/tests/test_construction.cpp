#include "doctest.h"

#include "corpus.hpp"
#include "gridpm/gridpm.hpp"

using namespace gridpm;
using gridpm::testing::random_barcode;
using gridpm::testing::random_rect_barcode;

TEST_CASE("separate_and_shift: frozen small cases") {
  RationalField fq;
  SUBCASE("duplicate pair") {
    auto out = separate_and_shift(fq, Barcode::of_intervals({{0, 1}, {0, 1}}));
    CHECK(out.separated == Barcode::of_intervals({{0, 3}, {0, 4}}));
    REQUIRE(out.plan.dpp.size() == 2);
    CHECK(out.plan.dpp[0] == Point{1});
    CHECK(out.plan.dpp[1] == Point{2});
    CHECK(out.plan.ell == Point{2});
  }
  SUBCASE("a single point bar needs nothing") {
    auto out = separate_and_shift(fq, Barcode::of_intervals({{0, 0}}));
    CHECK(out.separated == Barcode::of_intervals({{0, 0}}));
    CHECK(out.plan.ell == Point{0});
    CHECK(out.plan.dpp[0] == Point{0});
  }
  SUBCASE("empty input is rejected") {
    CHECK_THROWS_AS(separate_and_shift(fq, Barcode(1)), std::invalid_argument);
  }
}

TEST_CASE("separate_and_shift: plan invariants on random inputs") {
  PrimeField f2(2);
  SplitMix64 rng(314159);
  for (int trial = 0; trial < 120; ++trial) {
    Barcode v = random_barcode(rng, 8, -10, 10);
    auto out = separate_and_shift(f2, v);
    const auto& dp = out.plan.dp;
    REQUIRE(dp.size() == v.size());
    for (std::size_t i = 0; i < dp.size(); ++i) {
      CHECK(v.bar(i).d.leq(dp[i]));
      for (std::size_t j = 0; j < dp.size(); ++j) {
        if (i != j) CHECK_FALSE(dp[i] == dp[j]);
        for (int k = 0; k < v.dim(); ++k)
          CHECK(v.bar(j).b[k] + dp[j][k] <= 2 * dp[i][k]);
      }
    }
    // morphism is a bar-by-bar surjection pairing
    CHECK(out.onto.source().size() == v.size());
    CHECK(out.onto.target() == v);
  }
}

TEST_CASE("verticalize: frozen case and properties") {
  RationalField fq;
  SUBCASE("the separated duplicate pair") {
    auto out = verticalize(fq, Barcode::of_intervals({{0, 3}, {0, 4}}));
    CHECK(out.vertical == Barcode::of_intervals({{1, 3}, {0, 4}}));
    CHECK(is_vertical(out.vertical));
  }
  SUBCASE("vertical inputs are fixed points") {
    Barcode v = Barcode::of_intervals({{1, 3}, {0, 4}});
    auto out = verticalize(fq, v);
    CHECK(out.vertical == v);
    CHECK(out.into.scalars().is_identity());
  }
  SUBCASE("precondition violations are reported") {
    CHECK_THROWS_AS(verticalize(fq, Barcode::of_intervals({{0, 1}, {0, 1}})),
                    std::invalid_argument);  // equal death indices
    CHECK_THROWS_AS(verticalize(fq, Barcode::of_intervals({{1, 2}, {1, 1}})),
                    std::invalid_argument);  // midpoint condition fails
  }
  SUBCASE("outputs are always vertical and satisfy the wall inequalities") {
    PrimeField f2(2);
    SplitMix64 rng(21);
    for (int trial = 0; trial < 80; ++trial) {
      Barcode v = random_barcode(rng, 6, -6, 8);
      auto sep = separate_and_shift(f2, v);
      auto out = verticalize(f2, sep.separated);
      CHECK(is_vertical(out.vertical));
      // wall: b_i <= b'_i and 2 b'_i <= 2 mu <= 2 d'_j
      Point mu2 = out.vertical.bar(0).b.plus(out.vertical.bar(0).d);
      for (std::size_t i = 0; i < out.vertical.size(); ++i)
        for (int k = 0; k < v.dim(); ++k) {
          CHECK(2 * out.vertical.bar(i).b[k] <= mu2[k]);
          CHECK(mu2[k] <= 2 * out.vertical.bar(i).d[k]);
        }
    }
  }
}

TEST_CASE("cone: frozen cases") {
  RationalField fq;
  SUBCASE("two-bar vertical family") {
    auto out = cone(fq, Barcode::of_intervals({{1, 3}, {0, 4}}));
    CHECK(out.apex == Rectangle::interval(1, 4));
    CHECK(out.onto.scalars().rows() == 2);
    for (int j = 0; j < 2; ++j) CHECK(out.onto.scalars()(j, 0) == 1);
  }
  SUBCASE("singleton family cones onto itself") {
    auto out = cone(fq, Barcode::of_intervals({{2, 5}}));
    CHECK(out.apex == Rectangle::interval(2, 5));
    CHECK(out.onto.scalars().is_identity());
  }
  SUBCASE("every cone entry is a genuine morphism") {
    PrimeField f2(2);
    SplitMix64 rng(88);
    for (int trial = 0; trial < 40; ++trial) {
      Barcode v = random_barcode(rng, 6, 0, 9);
      auto vt = verticalize(f2, separate_and_shift(f2, v).separated);
      auto cn = cone(f2, vt.vertical);
      for (std::size_t j = 0; j < vt.vertical.size(); ++j)
        CHECK(hom_dim(cn.apex, vt.vertical.bar(j)) == 1);
    }
  }
}

TEST_CASE("build_primal: rows for the duplicate pair") {
  PrimeField f2(2);
  auto s = build_primal(f2, Barcode::of_intervals({{0, 1}, {0, 1}}));
  REQUIRE(s.rows.size() == 4);
  CHECK(s.rows[0] == Barcode::of_intervals({{1, 4}}));
  CHECK(s.rows[1] == Barcode::of_intervals({{1, 3}, {0, 4}}));
  CHECK(s.rows[2] == Barcode::of_intervals({{0, 3}, {0, 4}}));
  CHECK(s.rows[3] == Barcode::of_intervals({{0, 1}, {0, 1}}));
}

TEST_CASE("build_primal: single bar gives four singleton rows") {
  PrimeField f2(2);
  auto s = build_primal(f2, Barcode::of_intervals({{2, 4}}));
  for (const auto& row : s.rows) CHECK(row.size() == 1);
  CHECK(s.rows[3] == Barcode::of_intervals({{2, 4}}));
}

TEST_CASE("build_primal: stacked module is indecomposable") {
  PrimeField f2(2);
  SplitMix64 rng(161803);
  for (int trial = 0; trial < 20; ++trial) {
    Barcode v = random_barcode(rng, 6, 0, 8);
    CHECK(end_dim(stack(f2, build_primal(f2, v))) == 1);
  }
}

TEST_CASE("build_dual mirrors the primal construction") {
  PrimeField f5(5);
  SplitMix64 rng(271828);
  for (int trial = 0; trial < 25; ++trial) {
    Barcode v = random_barcode(rng, 5, -5, 5);
    auto d = build_dual(f5, v);
    REQUIRE(d.rows.size() == 4);
    CHECK(d.rows[0] == v);
    auto p = build_primal(f5, v.negated());
    for (int r = 0; r < 4; ++r) CHECK(d.rows[r] == p.rows[3 - r].negated());
    CHECK(end_dim(stack(f5, build_dual(f5, v))) == 1);
  }
  SUBCASE("single bar") {
    auto d = build_dual(f5, Barcode::of_intervals({{1, 2}}));
    for (const auto& row : d.rows) CHECK(row.size() == 1);
    CHECK(d.rows[0] == Barcode::of_intervals({{1, 2}}));
  }
}

TEST_CASE("build_candy: shape and corner properties") {
  PrimeField f2(2);
  SUBCASE("single bar gives seven singleton rows") {
    auto s = build_candy(f2, Barcode::of_intervals({{0, 1}}));
    REQUIRE(s.rows.size() == 7);
    for (const auto& row : s.rows) CHECK(row.size() == 1);
  }
  SUBCASE("candies validate as candy modules") {
    SplitMix64 rng(5);
    for (int trial = 0; trial < 10; ++trial) {
      Barcode v = random_barcode(rng, 4, -4, 6);
      auto m = stack(f2, build_candy(f2, v));
      CHECK(is_candy_module(m));
    }
  }
  SUBCASE("the two-point candy has one hole") {
    auto m = stack(f2, build_candy(f2, Barcode::of_intervals({{-1, -1}, {1, 1}})));
    auto b = betti_numbers(clique_cubical(m.support(), 2), FieldSpec::rationals());
    CHECK(b[0] == 1);
    CHECK(b[1] == 1);
    CHECK(end_dim(m) == 1);
  }
  SUBCASE("rectangle barcodes are rejected") {
    CHECK_THROWS_AS(build_candy(f2, Barcode(2, {Rectangle(Point{0, 0}, Point{1, 1})})),
                    std::invalid_argument);
  }
}

TEST_CASE("concatenate: candy algebra") {
  PrimeField f2(2);
  SplitMix64 rng(7777);
  for (int trial = 0; trial < 6; ++trial) {
    Barcode va = random_barcode(rng, 3, 0, 4);
    Barcode vb = random_barcode(rng, 3, 0, 4);
    auto a = stack(f2, build_candy(f2, va));
    auto b = stack(f2, build_candy(f2, vb));
    ConcatPlacement pl{};
    auto ab = concatenate(a, b, &pl);
    CHECK(end_dim(ab) == 1);
    CHECK(is_candy_module(ab));
    // operand supports stay disjoint inside the result
    for (const auto& [p, d] : a.fibers()) CHECK(ab.fiber(p) == d);
    for (const auto& [p, d] : b.translated(pl.translate).fibers()) CHECK(ab.fiber(p) == d);
    // restricting along the first operand's input row recovers its barcode
    auto r = restrict_line(ab, Line::affine(Point{0, 3}, Point{1, 0}));
    CHECK(iso_barcode_eq(barcode_of_1d(r), va));
    // and along the second operand's shifted input row
    auto r2 = restrict_line(
        ab, Line::affine(Point{pl.translate[0], 3 + pl.translate[1]}, Point{1, 0}));
    CHECK(iso_barcode_eq(barcode_of_1d(r2), vb.translated(Point{pl.translate[0]})));
  }
  SUBCASE("non-candy operands are rejected") {
    auto good = stack(f2, build_candy(f2, Barcode::of_intervals({{0, 0}})));
    GridModule<PrimeField> bad(f2, 2);
    bad.set_fiber(Point{0, 0}, 1);
    bad.set_fiber(Point{5, 5}, 1);
    CHECK_THROWS_AS(concatenate(good, bad), std::invalid_argument);
  }
}

TEST_CASE("enumerate_barcodes: first stages") {
  CHECK(enumerate_barcodes(1).empty());
  auto s2 = enumerate_barcodes(2);
  REQUIRE(s2.size() == 5);
  for (long long x = -2; x <= 2; ++x)
    CHECK(s2[static_cast<std::size_t>(x + 2)] == Barcode::of_intervals({{x, x}}));
  CHECK_THROWS_AS(enumerate_barcodes(0), std::invalid_argument);
}

TEST_CASE("enumerate_barcodes: stages are prefix-compatible") {
  for (int k = 1; k <= 4; ++k) {
    auto a = enumerate_barcodes(k);
    auto b = enumerate_barcodes(k + 1);
    REQUIRE(a.size() <= b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
    // every member obeys the stage bounds
    for (const auto& bc : a) {
      CHECK(bc.total_dimension() < k);
      for (const auto& bar : bc) {
        CHECK(bar.b[0] >= -k);
        CHECK(bar.d[0] <= k);
      }
    }
  }
}

TEST_CASE("universal_prefix: structure and restrictions") {
  PrimeField f2(2);
  auto up = universal_prefix(f2, 3);
  CHECK(end_dim(up.module) == 1);
  REQUIRE(up.inputs.size() == 3);
  REQUIRE(up.offsets.size() == 3);
  // the first translation class is the single point bar at the origin
  CHECK(up.inputs[0] == Barcode::of_intervals({{0, 0}}));
  // middle-row restrictions reproduce each input (in its translated frame)
  for (std::size_t i = 0; i < up.inputs.size(); ++i) {
    Line row = Line::affine(Point{up.offsets[i][0], up.offsets[i][1] + 3}, Point{1, 0});
    auto r = barcode_of_1d(restrict_line(up.module, row));
    CHECK(r == up.inputs[i].translated(Point{up.offsets[i][0]}));
  }
  // the row above the first candy is empty
  Rectangle box0 = stack(f2, build_candy(f2, up.inputs[0])).bounding_box();
  auto above = restrict_line(up.module, Line::affine(Point{0, box0.d[1] + 1}, Point{1, 0}));
  CHECK(above.empty());
  CHECK_THROWS_AS(universal_prefix(f2, 0), std::invalid_argument);
}

TEST_CASE("build_n_holes: Betti numbers and indecomposability") {
  PrimeField f2(2);
  for (int n = 0; n <= 3; ++n) {
    auto m = build_n_holes(f2, n);
    auto b = betti_numbers(clique_cubical(m.support(), 2), FieldSpec::rationals());
    CHECK(b[0] == 1);
    CHECK(b[1] == n);
    CHECK(end_dim(m) == 1);
  }
  CHECK_THROWS_AS(build_n_holes(f2, -1), std::invalid_argument);
}

TEST_CASE("minimal_hole_module: the eleven-vertex example") {
  PrimeField f2(2);
  auto m = minimal_hole_module(f2);
  CHECK(m.support_size() == 11);
  auto b = betti_numbers(clique_cubical(m.support(), 2), FieldSpec::rationals());
  CHECK(b[0] == 1);
  CHECK(b[1] == 1);
  CHECK(end_dim(m) == 1);
  auto verdict = indecomposability(m);
  CHECK(verdict.kind == VerdictKind::indecomposable);
  RationalField fq;
  CHECK(end_dim(minimal_hole_module(fq)) == 1);
}

TEST_CASE("suspension in two dimensions") {
  PrimeField f2(2);
  SUBCASE("the hollow square suspends to a two-sphere") {
    Barcode v = hypercube_boundary_barcode(2, 1);
    auto vb = betti_numbers(clique_cubical(realize_barcode(f2, v).support(), 2),
                            FieldSpec::rationals());
    CHECK(vb[0] == 1);
    CHECK(vb[1] == 1);
    auto m = stack(f2, build_suspension(f2, v));
    REQUIRE(m.dim() == 3);
    auto b = betti_numbers(clique_cubical(m.support(), 3), FieldSpec::rationals());
    CHECK(b[0] == 1);
    CHECK(b[1] == 0);
    CHECK(b[2] == 1);
    CHECK(end_dim(m) == 1);
  }
  SUBCASE("Betti shift for the hole corpora") {
    for (int l = 0; l <= 2; ++l) {
      Barcode v = hypercube_boundary_barcode(2, l);
      auto base = betti_numbers(clique_cubical(realize_barcode(f2, v).support(), 2),
                                FieldSpec::rationals());
      auto m = stack(f2, build_suspension(f2, v));
      auto b = betti_numbers(clique_cubical(m.support(), 3), FieldSpec::rationals());
      CHECK(b[0] == 1);
      CHECK(b[1] == base[0] - 1);
      CHECK(b[2] == base[1]);
      CHECK(b[3] == base[2]);
    }
  }
  SUBCASE("stacked rectangle constructions are indecomposable") {
    SplitMix64 rng(424242);
    for (int trial = 0; trial < 5; ++trial) {
      Barcode v = random_rect_barcode(rng, 2, 3, 0, 4);
      CHECK(end_dim(stack(f2, build_primal(f2, v))) == 1);
    }
  }
}

TEST_CASE("chain_across_dimensions") {
  PrimeField f2(2);
  SUBCASE("single stage equals the hole corpus") {
    auto a = chain_across_dimensions(f2, {2});
    auto b = build_n_holes(f2, 2);
    CHECK(a.fibers() == b.fibers());
    CHECK(a.arrows() == b.arrows());
  }
  SUBCASE("two stages stack Betti numbers across dimensions") {
    auto m = chain_across_dimensions(f2, {1, 1});
    REQUIRE(m.dim() == 3);
    m.validate();
    auto b = betti_numbers(clique_cubical(m.support(), 3), FieldSpec::rationals());
    CHECK(b[0] == 1);
    CHECK(b[1] == 1);
    CHECK(b[2] == 1);
    CHECK(end_dim(m) == 1);
  }
  SUBCASE("argument validation") {
    CHECK_THROWS_AS(chain_across_dimensions(f2, {}), std::invalid_argument);
    CHECK_THROWS_AS(chain_across_dimensions(f2, {1, 1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(chain_across_dimensions(f2, {-1}), std::invalid_argument);
  }
}
