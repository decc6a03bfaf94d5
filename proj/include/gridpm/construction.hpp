#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <vector>

#include "gridpm/endomorphism.hpp"
#include "gridpm/grid_module.hpp"

namespace gridpm {

// Deterministic data of one separate-and-shift run.
struct ShiftPlan {
  std::vector<std::size_t> order;  // processing order over bar indices
  std::vector<Point> dpp;          // intermediate shifted death corners
  Point ell;                       // uniform final shift
  std::vector<Point> dp;           // final death corners, pairwise distinct
};

namespace detail {

// Positions of each bar of `bc` inside the canonically sorted barcode made
// from `bars` (stable, so duplicate bars pair up by order of appearance).
inline std::vector<std::size_t> sorted_positions(const std::vector<Rectangle>& bars) {
  std::vector<std::size_t> idx(bars.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return bars[a] < bars[b]; });
  std::vector<std::size_t> pos(bars.size());
  for (std::size_t r = 0; r < idx.size(); ++r) pos[idx[r]] = r;
  return pos;
}

// Pairing morphism between two position-aligned bar families, expressed on
// the canonically sorted barcodes.
template <class F>
RectMatrix<F> pairing_morphism(F f, const std::vector<Rectangle>& src_bars,
                               const std::vector<Rectangle>& tgt_bars) {
  auto sp = sorted_positions(src_bars);
  auto tp = sorted_positions(tgt_bars);
  Barcode src(src_bars.empty() ? 1 : src_bars[0].dim(), src_bars);
  Barcode tgt(tgt_bars.empty() ? 1 : tgt_bars[0].dim(), tgt_bars);
  Matrix<F> scal(f, static_cast<int>(tgt.size()), static_cast<int>(src.size()));
  for (std::size_t i = 0; i < src_bars.size(); ++i)
    scal(static_cast<int>(tp[i]), static_cast<int>(sp[i])) = f.one();
  return RectMatrix<F>(std::move(src), std::move(tgt), std::move(scal));
}

}  // namespace detail

template <class F>
struct SeparatedShifted {
  Barcode separated;    // distinct death corners, componentwise >= the input's
  RectMatrix<F> onto;   // separated -> input, bar-by-bar surjections
  ShiftPlan plan;
};

// Moves the death corners apart (coordinate 0 carries the distinctness) and
// then shifts everything far enough that every pair satisfies
// b_j + d'_j <= 2 d'_i componentwise. The uniform shift is the smallest
// nonnegative one that makes both conditions provable, which reduces to the
// classical max(b_i + d''_i) when all intermediate death corners are
// nonnegative.
template <class F>
SeparatedShifted<F> separate_and_shift(F f, const Barcode& v) {
  if (v.empty()) throw std::invalid_argument("separate_and_shift: empty barcode");
  const int n = v.dim();
  const std::size_t m = v.size();

  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (v.bar(a).d[0] != v.bar(b).d[0]) return v.bar(a).d[0] > v.bar(b).d[0];
    if (!(v.bar(a).b == v.bar(b).b)) return v.bar(b).b < v.bar(a).b;
    return a < b;
  });

  std::vector<Point> dpp(m);
  std::set<long long> used;
  for (std::size_t idx : order) {
    long long c = v.bar(idx).d[0];
    while (used.count(c)) ++c;
    used.insert(c);
    dpp[idx] = v.bar(idx).d;
    dpp[idx].c[0] = c;
  }

  Point ell = Point::zeros(n);
  for (int k = 0; k < n; ++k) {
    long long reach = dpp[0][k] + v.bar(0).b[k];
    long long dmin = dpp[0][k];
    for (std::size_t i = 0; i < m; ++i) {
      reach = std::max(reach, v.bar(i).b[k] + dpp[i][k]);
      dmin = std::min(dmin, dpp[i][k]);
    }
    ell.c[k] = std::max({0ll, reach, reach - 2 * dmin});
  }

  std::vector<Point> dp(m);
  std::vector<Rectangle> sep_bars(m);
  for (std::size_t i = 0; i < m; ++i) {
    dp[i] = dpp[i].plus(ell);
    sep_bars[i] = Rectangle(v.bar(i).b, dp[i]);
  }
  // both conditions, doubled to stay integral
  for (std::size_t i = 0; i < m; ++i) {
    if (!v.bar(i).d.leq(dp[i])) throw std::logic_error("separate_and_shift lost d' >= d");
    for (std::size_t j = 0; j < m; ++j)
      for (int k = 0; k < n; ++k)
        if (v.bar(j).b[k] + dp[j][k] > 2 * dp[i][k])
          throw std::logic_error("separate_and_shift midpoint condition failed");
  }

  SeparatedShifted<F> out{Barcode(n, sep_bars),
                          detail::pairing_morphism<F>(f, sep_bars, v.bars()),
                          ShiftPlan{order, dpp, ell, dp}};
  return out;
}

template <class F>
struct Verticalized {
  Barcode vertical;     // common doubled midpoint, distinct pairs
  RectMatrix<F> into;   // vertical -> input, bar-by-bar inclusions
};

// Pivots every death corner around the componentwise maximal midpoint:
// b'_i = 2*mu - d_i. Requires the separate-and-shift output conditions.
template <class F>
Verticalized<F> verticalize(F f, const Barcode& vp) {
  if (vp.empty()) throw std::invalid_argument("verticalize: empty barcode");
  const int n = vp.dim();
  const std::size_t m = vp.size();
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (i != j && vp.bar(i).d == vp.bar(j).d)
        throw std::invalid_argument("verticalize: death corners not distinct");
      for (int k = 0; k < n; ++k)
        if (vp.bar(j).b[k] + vp.bar(j).d[k] > 2 * vp.bar(i).d[k])
          throw std::invalid_argument("verticalize: midpoint condition violated");
    }
  }
  Point doubled_mu = vp.bar(0).b.plus(vp.bar(0).d);
  for (const auto& bar : vp) doubled_mu = Point::cw_max(doubled_mu, bar.b.plus(bar.d));

  std::vector<Rectangle> vbars(m);
  for (std::size_t i = 0; i < m; ++i) {
    Point bp = doubled_mu.minus(vp.bar(i).d);
    // wall inequalities: b <= b' and 2 b' <= 2 mu <= 2 d'
    for (int k = 0; k < n; ++k) {
      if (vp.bar(i).b[k] > bp[k] || 2 * bp[k] > doubled_mu[k] ||
          doubled_mu[k] > 2 * vp.bar(i).d[k])
        throw std::logic_error("verticalize wall inequality failed");
    }
    vbars[i] = Rectangle(bp, vp.bar(i).d);
  }
  Verticalized<F> out{Barcode(n, vbars), detail::pairing_morphism<F>(f, vbars, vp.bars())};
  if (!is_vertical(out.vertical)) throw std::logic_error("verticalize produced a non-vertical family");
  return out;
}

template <class F>
struct Coned {
  Rectangle apex;
  RectMatrix<F> onto;  // {apex} -> input, all entries nonzero
};

// The rectangle from the maximal birth corner to the maximal death corner
// admits a nonzero morphism to every member of a vertical family.
template <class F>
Coned<F> cone(F f, const Barcode& vbar) {
  if (!is_vertical(vbar)) throw std::invalid_argument("cone: input must be vertical");
  Point bmax = vbar.bar(0).b, dmax = vbar.bar(0).d;
  for (const auto& bar : vbar) {
    bmax = Point::cw_max(bmax, bar.b);
    dmax = Point::cw_max(dmax, bar.d);
  }
  Rectangle apex(bmax, dmax);
  Matrix<F> col(f, static_cast<int>(vbar.size()), 1);
  for (std::size_t j = 0; j < vbar.size(); ++j) {
    if (hom_dim(apex, vbar.bar(j)) != 1)
      throw std::logic_error("cone: wall inequality violated");
    col(static_cast<int>(j), 0) = f.one();
  }
  return Coned<F>{apex, RectMatrix<F>(Barcode(vbar.dim(), {apex}), vbar, std::move(col))};
}

// Four-row diagram apex -> vertical -> separated -> input; stacking it gives
// an indecomposable module whose top row restricts to the input barcode.
template <class F>
StackDiagram<F> build_primal(F f, const Barcode& v) {
  if (v.empty()) throw std::invalid_argument("build_primal: empty barcode");
  auto ss = separate_and_shift(f, v);
  auto vt = verticalize(f, ss.separated);
  auto cn = cone(f, vt.vertical);
  StackDiagram<F> s;
  s.rows = {Barcode(v.dim(), {cn.apex}), vt.vertical, ss.separated, v};
  s.morphisms = {cn.onto, vt.into, ss.onto};
  s.validate();
  return s;
}

namespace detail {

// Dualization: negate all coordinates and transpose the connecting scalars.
// Negation is a contravariant equivalence fixing rectangles up to the swap
// b <-> -d, so the primal pipeline on the negated barcode yields exactly the
// mirrored shift/pivot/cone steps.
template <class F>
RectMatrix<F> dual_morphism(F /*f*/, const RectMatrix<F>& m) {
  std::vector<Rectangle> src_neg, tgt_neg;
  for (const auto& r : m.target()) src_neg.push_back(r.negated());
  for (const auto& r : m.source()) tgt_neg.push_back(r.negated());
  auto sp = sorted_positions(src_neg);  // positions of negated target bars
  auto tp = sorted_positions(tgt_neg);
  Barcode src(m.target().dim(), src_neg);
  Barcode tgt(m.source().dim(), tgt_neg);
  Matrix<F> scal(m.scalars().field(), static_cast<int>(tgt.size()), static_cast<int>(src.size()));
  for (int j = 0; j < m.scalars().rows(); ++j)
    for (int i = 0; i < m.scalars().cols(); ++i)
      scal(static_cast<int>(tp[i]), static_cast<int>(sp[j])) = m.scalars()(j, i);
  return RectMatrix<F>(std::move(src), std::move(tgt), std::move(scal));
}

}  // namespace detail

// Mirror pipeline input -> separated births -> vertical -> apex, realized by
// negating, running the primal construction, and reversing.
template <class F>
StackDiagram<F> build_dual(F f, const Barcode& v) {
  if (v.empty()) throw std::invalid_argument("build_dual: empty barcode");
  StackDiagram<F> p = build_primal(f, v.negated());
  StackDiagram<F> s;
  for (std::size_t r = p.rows.size(); r-- > 0;) s.rows.push_back(p.rows[r].negated());
  for (std::size_t k = p.morphisms.size(); k-- > 0;)
    s.morphisms.push_back(detail::dual_morphism(f, p.morphisms[k]));
  s.validate();
  if (!(s.rows[0] == v)) throw std::logic_error("build_dual: row mismatch");
  return s;
}

// Seven-row splice of the primal and dual diagrams at the shared input row.
// The stacked module is bounded by a rectangle whose lower-right and
// upper-left corners carry one-dimensional fibers.
template <class F>
StackDiagram<F> build_suspension(F f, const Barcode& v) {
  StackDiagram<F> p = build_primal(f, v);
  StackDiagram<F> d = build_dual(f, v);
  StackDiagram<F> s;
  s.rows = p.rows;
  for (std::size_t r = 1; r < d.rows.size(); ++r) s.rows.push_back(d.rows[r]);
  s.morphisms = p.morphisms;
  for (auto& m : d.morphisms) s.morphisms.push_back(m);
  s.validate();
  return s;
}

template <class F>
StackDiagram<F> build_candy(F f, const Barcode& v) {
  if (v.dim() != 1) throw std::invalid_argument("build_candy: 1D barcodes only");
  return build_suspension(f, v);
}

// ---------------------------------------------------------------------------
// Candy modules and concatenation

template <class F>
struct CandyCorners {
  Point lower_right;  // maximal first coordinates, minimal last coordinate
  Point upper_left;   // minimal first coordinates, maximal last coordinate
};

template <class F>
CandyCorners<F> candy_corners(const GridModule<F>& m) {
  Rectangle box = m.bounding_box();
  Point lr = box.d, ul = box.b;
  lr.c[m.dim() - 1] = box.b[m.dim() - 1];
  ul.c[m.dim() - 1] = box.d[m.dim() - 1];
  return CandyCorners<F>{lr, ul};
}

// End dimension one, support inside a rectangle whose two mixed-order extreme
// corners carry one-dimensional fibers.
template <class F>
bool is_candy_module(const GridModule<F>& m) {
  if (m.empty()) return false;
  auto corners = candy_corners(m);
  if (m.fiber(corners.lower_right) != 1 || m.fiber(corners.upper_left) != 1) return false;
  return end_dim(m) == 1;
}

// Where the second operand lands: `translate` is applied to it, the new
// vertex x sits one unit below the first operand's lower-right corner and one
// unit left of the second's upper-left corner.
struct ConcatPlacement {
  Point translate;
  Point anchor_x;
  Point r_a;
  Point l_b;
};

template <class F>
GridModule<F> concatenate(const GridModule<F>& a, const GridModule<F>& b,
                          ConcatPlacement* placement = nullptr) {
  if (a.dim() != 2 || b.dim() != 2)
    throw std::invalid_argument("concatenate works on 2D candy modules");
  if (!is_candy_module(a) || !is_candy_module(b))
    throw std::invalid_argument("concatenate: operand fails candy validation");
  Point r_a = candy_corners(a).lower_right;
  Point l_b0 = candy_corners(b).upper_left;
  Point target{r_a[0] + 1, r_a[1] - 1};
  Point off = target.minus(l_b0);
  GridModule<F> bt = b.translated(off);
  Point x{r_a[0], r_a[1] - 1};

  GridModule<F> out(a.field(), 2);
  for (const auto& [p, d] : a.fibers()) out.set_fiber(p, d);
  for (const auto& [p, d] : bt.fibers()) {
    if (out.fiber(p) != 0) throw std::logic_error("concatenate: supports overlap");
    out.set_fiber(p, d);
  }
  if (out.fiber(x) != 0) throw std::logic_error("concatenate: connector vertex occupied");
  out.set_fiber(x, 1);
  for (const auto& [key, mm] : a.arrows()) out.set_arrow(key.first, key.second, mm);
  for (const auto& [key, mm] : bt.arrows()) out.set_arrow(key.first, key.second, mm);
  out.set_arrow(x, 0, Matrix<F>::identity(a.field(), 1));  // x -> l_b
  out.set_arrow(x, 1, Matrix<F>::identity(a.field(), 1));  // x -> r_a
  if (placement) *placement = ConcatPlacement{off, x, r_a, target};
  return out;
}

// ---------------------------------------------------------------------------
// Enumeration of 1D barcodes and the universal prefix

namespace detail {

inline long long barcode_reach(const Barcode& bc) {
  long long r = 0;
  for (const auto& bar : bc) {
    r = std::max(r, std::abs(bar.b[0]));
    r = std::max(r, std::abs(bar.d[0]));
  }
  return r;
}

// nonempty interval multisets with total dimension < stage and support inside
// [-stage, stage], emitted in lexicographic order on the bar sequence
inline void gen_barcodes(long long stage, long long budget, std::vector<Rectangle>& acc,
                         const Rectangle* min_bar, std::vector<Barcode>& out) {
  if (!acc.empty()) out.push_back(Barcode(1, acc));
  for (long long b = min_bar ? min_bar->b[0] : -stage; b <= stage; ++b) {
    for (long long d = (min_bar && b == min_bar->b[0]) ? min_bar->d[0] : b; d <= stage; ++d) {
      long long len = d - b + 1;
      if (len > budget) continue;
      Rectangle r = Rectangle::interval(b, d);
      acc.push_back(r);
      gen_barcodes(stage, budget - len, acc, &r, out);
      acc.pop_back();
    }
  }
}

}  // namespace detail

// The finite enumeration stage: all nonzero canonical 1D barcodes with total
// dimension < stage and support inside [-stage, stage]. Each stage's listing
// extends the previous one, so results are prefix-compatible across stages.
inline std::vector<Barcode> enumerate_barcodes(int stage) {
  if (stage < 1) throw std::invalid_argument("enumerate_barcodes: stage must be >= 1");
  std::vector<Barcode> out;
  for (int k = 1; k <= stage; ++k) {
    std::vector<Barcode> all;
    std::vector<Rectangle> acc;
    detail::gen_barcodes(k, k - 1, acc, nullptr, all);
    std::sort(all.begin(), all.end());
    for (const auto& bc : all) {
      // skip members of the previous stage
      if (bc.total_dimension() < k - 1 && detail::barcode_reach(bc) <= k - 1) continue;
      out.push_back(bc);
    }
  }
  return out;
}

// Representatives up to translation: each enumerated barcode translated so
// its minimal birth index is zero, deduplicated in enumeration order.
inline std::vector<Barcode> enumerate_translation_classes(std::size_t count) {
  std::vector<Barcode> out;
  std::set<Barcode> seen;
  for (int stage = 1; out.size() < count; ++stage) {
    if (stage > 64) throw std::logic_error("translation-class enumeration runaway");
    for (const auto& bc : enumerate_barcodes(stage)) {
      if (bc.empty()) continue;
      long long minb = bc.bar(0).b[0];
      for (const auto& bar : bc) minb = std::min(minb, bar.b[0]);
      Barcode canon = bc.translated(Point{-minb});
      if (seen.insert(canon).second) {
        out.push_back(canon);
        if (out.size() == count) break;
      }
    }
    // restart scan each stage; dedupe keeps the listing stable
  }
  return out;
}

template <class F>
struct UniversalPrefix {
  GridModule<F> module;
  std::vector<Barcode> inputs;   // translation-class representatives used
  std::vector<Point> offsets;    // translation applied to each candy
};

// Concatenation of the candies of the first k translation classes; the
// middle row of candy i restricts to inputs[i] shifted by offsets[i].
template <class F>
UniversalPrefix<F> universal_prefix(F f, int k) {
  if (k < 1) throw std::invalid_argument("universal_prefix: k must be >= 1");
  UniversalPrefix<F> out{GridModule<F>(f, 2), {}, {}};
  out.inputs = enumerate_translation_classes(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) {
    GridModule<F> candy = stack(f, build_candy(f, out.inputs[i]));
    if (i == 0) {
      out.module = candy;
      out.offsets.push_back(Point{0, 0});
    } else {
      ConcatPlacement pl{};
      out.module = concatenate(out.module, candy, &pl);
      out.offsets.push_back(pl.translate);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Hole corpora and the minimal example

// Candy of n+1 spaced points; its support's clique-cubical complex has one
// component and exactly n one-dimensional holes.
template <class F>
GridModule<F> build_n_holes(F f, int n) {
  if (n < 0) throw std::invalid_argument("build_n_holes: n must be >= 0");
  std::vector<Rectangle> bars;
  for (int i = 0; i <= n; ++i) bars.push_back(Rectangle::interval(2 * i, 2 * i));
  return stack(f, build_candy(f, Barcode(1, bars)));
}

// The eleven-vertex indecomposable module whose support has a hole; fibers
// and arrows are fixed data.
template <class F>
GridModule<F> minimal_hole_module(F f) {
  GridModule<F> m(f, 2);
  auto one = Matrix<F>::identity(f, 1);
  auto zero11 = Matrix<F>(f, 1, 1);
  // top row y = 3
  m.set_fiber(Point{0, 3}, 1);
  m.set_fiber(Point{1, 3}, 1);
  m.set_fiber(Point{2, 3}, 1);
  // y = 2, hole at (1,2)
  m.set_fiber(Point{0, 2}, 1);
  m.set_fiber(Point{2, 2}, 1);
  // y = 1
  m.set_fiber(Point{0, 1}, 1);
  m.set_fiber(Point{1, 1}, 1);
  m.set_fiber(Point{2, 1}, 2);
  m.set_fiber(Point{3, 1}, 1);
  // y = 0
  m.set_fiber(Point{2, 0}, 1);
  m.set_fiber(Point{3, 0}, 1);

  m.set_arrow(Point{0, 3}, 0, one);
  m.set_arrow(Point{1, 3}, 0, one);
  m.set_arrow(Point{0, 2}, 1, zero11);  // the zero map below the top-left corner
  m.set_arrow(Point{2, 2}, 1, one);
  m.set_arrow(Point{0, 1}, 0, one);
  Matrix<F> col10(f, 2, 1);
  col10(0, 0) = f.one();
  m.set_arrow(Point{1, 1}, 0, col10);  // [1;0]
  Matrix<F> row10(f, 1, 2);
  row10(0, 0) = f.one();
  m.set_arrow(Point{2, 1}, 0, row10);  // [1 0]
  m.set_arrow(Point{0, 1}, 1, one);
  Matrix<F> row01(f, 1, 2);
  row01(0, 1) = f.one();
  m.set_arrow(Point{2, 1}, 1, row01);  // [0 1]
  m.set_arrow(Point{2, 0}, 0, one);
  Matrix<F> col11(f, 2, 1);
  col11(0, 0) = f.one();
  col11(1, 0) = f.one();
  m.set_arrow(Point{2, 0}, 1, col11);  // [1;1]
  m.set_arrow(Point{3, 0}, 1, one);
  m.validate();
  return m;
}

// ---------------------------------------------------------------------------
// Cross-dimension chaining

// Rectangle barcode drawing `count` hollow boxes in the given dimension
// (boundaries of solid boxes, translated apart along coordinate 0); for
// count zero, a single solid box with trivial topology.
inline Barcode hypercube_boundary_barcode(int dim, int count) {
  if (dim != 2) throw std::invalid_argument("hypercube_boundary_barcode: dimension 2 only");
  std::vector<Rectangle> bars;
  if (count == 0) {
    bars.push_back(Rectangle(Point{0, 0}, Point{1, 1}));
    return Barcode(2, bars);
  }
  // adjacent boxes share a wall, keeping the support connected with one
  // independent cycle per box
  for (int h = 0; h < count; ++h) {
    long long off = 3ll * h;
    bars.push_back(Rectangle(Point{off + 0, 0}, Point{off + 3, 0}));
    bars.push_back(Rectangle(Point{off + 0, 3}, Point{off + 3, 3}));
    if (h == 0) bars.push_back(Rectangle(Point{off + 0, 1}, Point{off + 0, 2}));
    bars.push_back(Rectangle(Point{off + 3, 1}, Point{off + 3, 2}));
  }
  return Barcode(2, bars);
}

// Chains hole modules across dimensions: stage i contributes betti[i-1]
// holes in homology degree i. Pieces are joined through a fresh connector
// vertex carrying identity arrows into both parts, which keeps the union a
// genuine module with disjoint, incomparable pieces.
template <class F>
GridModule<F> chain_across_dimensions(F f, const std::vector<int>& betti) {
  if (betti.empty() || betti.size() > 2)
    throw std::invalid_argument("chain_across_dimensions supports length 1 or 2 (ambient <= 3)");
  for (int b : betti)
    if (b < 0) throw std::invalid_argument("negative Betti target");

  GridModule<F> acc = build_n_holes(f, betti[0]);
  for (std::size_t i = 1; i < betti.size(); ++i) {
    GridModule<F> t = stack(f, build_suspension(f, hypercube_boundary_barcode(
                                                        static_cast<int>(i) + 1, betti[i])));
    // maximal extremal corner of the accumulated module, then embedded
    Point r_corner = candy_corners(acc).lower_right.appended(0);
    GridModule<F> acc_e = acc.embedded_last(0);
    const int nd = acc_e.dim();
    if (acc_e.fiber(r_corner) != 1)
      throw std::logic_error("chain: maximal extremal corner is not one-dimensional");
    auto tc = candy_corners(t);
    if (t.fiber(tc.upper_left) != 1)
      throw std::logic_error("chain: minimal extremal corner is not one-dimensional");
    // connector below the maximal corner; the next stage hangs to its right
    Point connector = r_corner.shifted(nd - 1, -1);
    Point l_target = connector.shifted(0, 1);
    Point off = l_target.minus(tc.upper_left);
    GridModule<F> ts = t.translated(off);

    GridModule<F> merged(f, nd);
    for (const auto& [p, d] : acc_e.fibers()) merged.set_fiber(p, d);
    for (const auto& [p, d] : ts.fibers()) {
      if (merged.fiber(p) != 0) throw std::logic_error("chain: stage supports overlap");
      merged.set_fiber(p, d);
    }
    if (merged.fiber(connector) != 0) throw std::logic_error("chain: connector occupied");
    merged.set_fiber(connector, 1);
    for (const auto& [key, mm] : acc_e.arrows()) merged.set_arrow(key.first, key.second, mm);
    for (const auto& [key, mm] : ts.arrows()) merged.set_arrow(key.first, key.second, mm);
    merged.set_arrow(connector, nd - 1, Matrix<F>::identity(f, 1));  // up to the corner
    merged.set_arrow(connector, 0, Matrix<F>::identity(f, 1));       // right into the next stage
    acc = std::move(merged);
  }
  return acc;
}

}  // namespace gridpm
