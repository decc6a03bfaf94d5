#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "gridpm/rect_matrix.hpp"

namespace gridpm {

// Explicit finite-support representation of the n-dimensional grid: fiber
// dimensions on the support and a matrix for every unit arrow whose endpoints
// both lie in the support. Arrows into or out of zero fibers are zero maps
// and are not stored.
template <class F>
class GridModule {
 public:
  GridModule(F f, int dim) : field_(f), dim_(dim) {
    if (dim < 1) throw std::invalid_argument("grid module dimension must be >= 1");
  }

  const F& field() const { return field_; }
  int dim() const { return dim_; }

  void set_fiber(const Point& p, int d) {
    if (p.dim() != dim_) throw std::invalid_argument("fiber point dimension mismatch");
    if (d < 0) throw std::invalid_argument("negative fiber dimension");
    if (d == 0) return;
    fibers_.insert_or_assign(p, d);
  }

  void set_arrow(const Point& from, int axis, Matrix<F> m) {
    Point to = from.shifted(axis, 1);
    if (m.rows() != fiber(to) || m.cols() != fiber(from))
      throw std::invalid_argument("arrow shape mismatch at " + from.str() + " axis " +
                                  std::to_string(axis));
    arrows_.insert_or_assign(std::make_pair(from, axis), std::move(m));
  }

  int fiber(const Point& p) const {
    auto it = fibers_.find(p);
    return it == fibers_.end() ? 0 : it->second;
  }

  const Matrix<F>* arrow(const Point& from, int axis) const {
    auto it = arrows_.find(std::make_pair(from, axis));
    return it == arrows_.end() ? nullptr : &it->second;
  }

  Matrix<F> arrow_or_zero(const Point& from, int axis) const {
    if (const Matrix<F>* m = arrow(from, axis)) return *m;
    return Matrix<F>(field_, fiber(from.shifted(axis, 1)), fiber(from));
  }

  const std::map<Point, int>& fibers() const { return fibers_; }
  const std::map<std::pair<Point, int>, Matrix<F>>& arrows() const { return arrows_; }

  bool empty() const { return fibers_.empty(); }
  std::size_t support_size() const { return fibers_.size(); }

  long long total_dimension() const {
    long long t = 0;
    for (const auto& [p, d] : fibers_) t += d;
    return t;
  }

  std::set<Point> support() const {
    std::set<Point> s;
    for (const auto& [p, d] : fibers_) s.insert(p);
    return s;
  }

  Rectangle bounding_box() const {
    if (fibers_.empty()) throw std::logic_error("bounding box of empty module");
    Point lo = fibers_.begin()->first, hi = lo;
    for (const auto& [p, d] : fibers_) {
      lo = Point::cw_min(lo, p);
      hi = Point::cw_max(hi, p);
    }
    return Rectangle(lo, hi);
  }

  // Checks arrow shapes, arrow endpoints, and unit-square commutativity.
  // Squares touching a zero fiber are vacuous: every composite through them
  // factors through 0.
  void validate() const {
    for (const auto& [key, m] : arrows_) {
      const auto& [from, axis] = key;
      if (axis < 0 || axis >= dim_) throw std::logic_error("arrow axis out of range");
      Point to = from.shifted(axis, 1);
      if (fiber(from) == 0 || fiber(to) == 0)
        throw std::logic_error("stored arrow touching zero fiber at " + from.str());
      if (m.rows() != fiber(to) || m.cols() != fiber(from))
        throw std::logic_error("arrow shape mismatch at " + from.str());
    }
    for (const auto& [p, d] : fibers_) {
      for (int k = 0; k < dim_; ++k) {
        if (fiber(p.shifted(k, 1)) > 0 && arrow(p, k) == nullptr)
          throw std::logic_error("missing arrow at " + p.str() + " axis " + std::to_string(k));
        for (int l = k + 1; l < dim_; ++l) {
          Point pk = p.shifted(k, 1), pl = p.shifted(l, 1), pkl = pk.shifted(l, 1);
          if (fiber(pk) == 0 || fiber(pl) == 0 || fiber(pkl) == 0) continue;
          Matrix<F> via_k = arrow_or_zero(pk, l).mul(arrow_or_zero(p, k));
          Matrix<F> via_l = arrow_or_zero(pl, k).mul(arrow_or_zero(p, l));
          if (!(via_k == via_l))
            throw std::logic_error("unit square fails to commute at " + p.str());
        }
      }
    }
  }

  GridModule translated(const Point& off) const {
    if (off.dim() != dim_) throw std::invalid_argument("translate offset dimension mismatch");
    GridModule out(field_, dim_);
    for (const auto& [p, d] : fibers_) out.fibers_.insert_or_assign(p.plus(off), d);
    for (const auto& [key, m] : arrows_)
      out.arrows_.insert_or_assign(std::make_pair(key.first.plus(off), key.second), m);
    return out;
  }

  // Raises the ambient dimension by one, fixing the new last coordinate.
  GridModule embedded_last(long long value) const {
    GridModule out(field_, dim_ + 1);
    for (const auto& [p, d] : fibers_) out.fibers_.insert_or_assign(p.appended(value), d);
    for (const auto& [key, m] : arrows_)
      out.arrows_.insert_or_assign(std::make_pair(key.first.appended(value), key.second), m);
    return out;
  }

  // Composite of unit arrows along the axis-ordered monotone path from p to q.
  // Returns the zero map whenever the path leaves the support (for genuine
  // functors every path then gives zero as well).
  Matrix<F> path_composite(const Point& p, const Point& q) const {
    if (!p.leq(q)) throw std::invalid_argument("path_composite needs p <= q");
    if (fiber(p) == 0 || fiber(q) == 0) return Matrix<F>(field_, fiber(q), fiber(p));
    Matrix<F> acc = Matrix<F>::identity(field_, fiber(p));
    Point cur = p;
    for (int k = 0; k < dim_; ++k) {
      while (cur[k] < q[k]) {
        const Matrix<F>* m = arrow(cur, k);
        if (m == nullptr) return Matrix<F>(field_, fiber(q), fiber(p));
        acc = m->mul(acc);
        cur = cur.shifted(k, 1);
      }
    }
    return acc;
  }

 private:
  F field_;
  int dim_;
  std::map<Point, int> fibers_;
  std::map<std::pair<Point, int>, Matrix<F>> arrows_;
};

// ---------------------------------------------------------------------------
// Realization of barcodes as grid modules

// The module with fiber at x spanned by the bars containing x (canonical bar
// order) and unit arrows sending a bar's basis vector to itself while the bar
// persists.
template <class F>
GridModule<F> realize_barcode(F f, const Barcode& bc) {
  GridModule<F> out(f, bc.dim());
  if (bc.empty()) return out;
  Rectangle box = bc.bounding_box();
  std::vector<long long> span;
  // iterate the bounding box
  Point p = box.b;
  auto advance = [&]() -> bool {
    for (int k = bc.dim() - 1; k >= 0; --k) {
      if (p[k] < box.d[k]) {
        ++p[k];
        for (int l = k + 1; l < bc.dim(); ++l) p[l] = box.b[l];
        return true;
      }
    }
    return false;
  };
  bool more = true;
  while (more) {
    auto bars = bc.bars_at(p);
    if (!bars.empty()) out.set_fiber(p, static_cast<int>(bars.size()));
    more = advance();
  }
  for (const auto& [x, d] : out.fibers()) {
    for (int k = 0; k < bc.dim(); ++k) {
      Point y = x.shifted(k, 1);
      if (out.fiber(y) == 0) continue;
      auto src = bc.bars_at(x), tgt = bc.bars_at(y);
      Matrix<F> m(f, static_cast<int>(tgt.size()), static_cast<int>(src.size()));
      for (std::size_t j = 0; j < tgt.size(); ++j)
        for (std::size_t i = 0; i < src.size(); ++i)
          if (tgt[j] == src[i]) m(static_cast<int>(j), static_cast<int>(i)) = f.one();
      out.set_arrow(x, k, std::move(m));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Stacking

// Assembles a diagram of barcodes into a grid module of one higher dimension.
// The stacking axis is the last coordinate; row k sits at last coordinate k,
// so index 0 is the minimal row and the connecting morphisms run upward along
// the grid arrows. For the main construction this places the cone row at the
// bottom and the input row at last coordinate 3.
template <class F>
GridModule<F> stack(F f, const StackDiagram<F>& s) {
  s.validate();
  int n = s.row_dim();
  GridModule<F> out(f, n + 1);
  std::vector<GridModule<F>> rows;
  rows.reserve(s.rows.size());
  for (const auto& bc : s.rows) rows.push_back(realize_barcode(f, bc));
  for (std::size_t k = 0; k < s.rows.size(); ++k) {
    for (const auto& [x, d] : rows[k].fibers()) out.set_fiber(x.appended(static_cast<long long>(k)), d);
  }
  for (std::size_t k = 0; k < s.rows.size(); ++k) {
    for (const auto& [key, m] : rows[k].arrows())
      out.set_arrow(key.first.appended(static_cast<long long>(k)), key.second, m);
    if (k + 1 < s.rows.size()) {
      for (const auto& [x, d] : rows[k].fibers()) {
        if (rows[k + 1].fiber(x) == 0) continue;
        Matrix<F> vm = s.morphisms[k].realize(x);
        out.set_arrow(x.appended(static_cast<long long>(k)), n, std::move(vm));
      }
    }
  }
  return out;
}

// One slice of an unstacked module plus the raw matrices connecting it to the
// next slice (keyed by the slice-local point).
template <class F>
struct UnstackedSlices {
  int axis = 0;
  std::vector<long long> values;            // consecutive axis values, ascending
  std::vector<GridModule<F>> slices;        // one per value
  std::vector<std::map<Point, Matrix<F>>> connectors;  // size = values.size() - 1
};

// Slices a module along an axis into one-lower-dimensional modules with raw
// connecting matrices; no barcode decomposition is attempted.
template <class F>
UnstackedSlices<F> unstack_raw(const GridModule<F>& m, int axis) {
  if (axis < 0 || axis >= m.dim()) throw std::invalid_argument("unstack axis out of range");
  UnstackedSlices<F> out;
  out.axis = axis;
  if (m.empty()) return out;
  if (m.dim() == 1) {
    // nothing lower-dimensional to slice into; callers treat this as the
    // module itself, one slice per support value
    Rectangle box = m.bounding_box();
    for (long long v = box.b[0]; v <= box.d[0]; ++v) out.values.push_back(v);
  } else {
    Rectangle box = m.bounding_box();
    for (long long v = box.b[axis]; v <= box.d[axis]; ++v) out.values.push_back(v);
  }
  const int out_dim = std::max(1, m.dim() - 1);
  for (std::size_t idx = 0; idx < out.values.size(); ++idx) {
    long long v = out.values[idx];
    GridModule<F> slice(m.field(), out_dim);
    for (const auto& [p, d] : m.fibers()) {
      if (p[axis] != v) continue;
      Point q = m.dim() == 1 ? Point{0} : p.dropped(axis);
      slice.set_fiber(q, d);
    }
    for (const auto& [key, mat] : m.arrows()) {
      const auto& [from, k] = key;
      if (k == axis || from[axis] != v || m.dim() == 1) continue;
      int k2 = k > axis ? k - 1 : k;
      slice.set_arrow(from.dropped(axis), k2, mat);
    }
    out.slices.push_back(std::move(slice));
  }
  for (std::size_t idx = 0; idx + 1 < out.values.size(); ++idx) {
    std::map<Point, Matrix<F>> conn;
    for (const auto& [key, mat] : m.arrows()) {
      const auto& [from, k] = key;
      if (k != axis || from[axis] != out.values[idx]) continue;
      Point q = m.dim() == 1 ? Point{0} : from.dropped(axis);
      conn.insert({q, mat});
    }
    out.connectors.push_back(std::move(conn));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Barcode extraction

// Multiplicity of I[b,d] by inclusion–exclusion over the 2^n + 2^n corner
// perturbations of the rank function r(p,q) = rank of the composite map from
// the fiber at p to the fiber at q. Exact for rectangle-decomposable modules;
// throws when the counts fail to be consistent (the module then has no
// rectangle decomposition).
template <class F>
Barcode barcode_of_rect_module(const GridModule<F>& m) {
  const int n = m.dim();
  if (m.empty()) return Barcode(n);
  Rectangle box = m.bounding_box();

  std::map<std::pair<Point, Point>, int> rank_cache;
  auto rank_of = [&](const Point& p, const Point& q) -> int {
    if (!box.contains(p) || !box.contains(q)) return 0;
    if (m.fiber(p) == 0 || m.fiber(q) == 0) return 0;
    auto it = rank_cache.find({p, q});
    if (it != rank_cache.end()) return it->second;
    int r = m.path_composite(p, q).rank();
    rank_cache.insert({{p, q}, r});
    return r;
  };

  // Fill the composite-rank table bottom-up per source point to avoid
  // recomputing long products.
  std::vector<Point> pts;
  {
    Point p = box.b;
    bool more = true;
    while (more) {
      pts.push_back(p);
      more = false;
      for (int k = n - 1; k >= 0; --k) {
        if (p[k] < box.d[k]) {
          ++p[k];
          for (int l = k + 1; l < n; ++l) p[l] = box.b[l];
          more = true;
          break;
        }
      }
    }
  }
  for (const Point& p : pts) {
    if (m.fiber(p) == 0) continue;
    std::map<Point, Matrix<F>> comp;
    comp.insert({p, Matrix<F>::identity(m.field(), m.fiber(p))});
    for (const Point& q : pts) {
      if (!p.leq(q) || q == p) continue;
      int k = -1;
      for (int a = 0; a < n; ++a)
        if (q[a] > p[a]) k = a;  // take the last increasing axis
      Point prev = q.shifted(k, -1);
      auto it = comp.find(prev);
      Matrix<F> cm(m.field(), m.fiber(q), m.fiber(p));
      if (it != comp.end() && m.fiber(q) > 0) {
        if (const Matrix<F>* a = m.arrow(prev, k)) cm = a->mul(it->second);
      }
      if (m.fiber(q) > 0 && p.leq(q)) {
        rank_cache.insert({{p, q}, cm.rank()});
        comp.insert({q, std::move(cm)});
      }
    }
  }

  std::vector<Rectangle> bars;
  long long realized_total = 0;
  for (const Point& b : pts) {
    if (m.fiber(b) == 0) continue;
    for (const Point& d : pts) {
      if (!b.leq(d) || m.fiber(d) == 0) continue;
      long long mult = 0;
      // corners: subtract/add perturbed ranks
      for (std::uint32_t eb = 0; eb < (1u << n); ++eb) {
        for (std::uint32_t ed = 0; ed < (1u << n); ++ed) {
          Point pb = b, pd = d;
          int sign = 1;
          for (int k = 0; k < n; ++k) {
            if (eb & (1u << k)) {
              pb.c[k] -= 1;
              sign = -sign;
            }
            if (ed & (1u << k)) {
              pd.c[k] += 1;
              sign = -sign;
            }
          }
          if (!pb.leq(pd)) continue;
          mult += sign * rank_of(pb, pd);
        }
      }
      if (mult < 0) throw std::domain_error("module is not rectangle-decomposable");
      for (long long t = 0; t < mult; ++t) bars.push_back(Rectangle(b, d));
      realized_total += mult * Rectangle(b, d).volume();
    }
  }
  if (realized_total != m.total_dimension())
    throw std::domain_error("module is not rectangle-decomposable");
  return Barcode(n, std::move(bars));
}

template <class F>
Barcode barcode_of_1d(const GridModule<F>& m) {
  if (m.dim() != 1) throw std::invalid_argument("barcode_of_1d needs a 1D module");
  return barcode_of_rect_module(m);
}

// Reassembles a StackDiagram from unstacked slices of a stacked module. The
// slices must be realizations of their barcodes (as produced by stack), so
// fibers are indexed by the bars through each point.
template <class F>
StackDiagram<F> diagram_from_slices(const UnstackedSlices<F>& u) {
  StackDiagram<F> s;
  const F& f = u.slices.empty() ? throw std::invalid_argument("no slices") : u.slices[0].field();
  for (const auto& sl : u.slices) s.rows.push_back(barcode_of_rect_module(sl));
  for (std::size_t k = 0; k + 1 < u.slices.size(); ++k) {
    const Barcode& src = s.rows[k];
    const Barcode& tgt = s.rows[k + 1];
    Matrix<F> scal(f, static_cast<int>(tgt.size()), static_cast<int>(src.size()));
    for (std::size_t j = 0; j < tgt.size(); ++j)
      for (std::size_t i = 0; i < src.size(); ++i) {
        if (hom_dim(src.bar(i), tgt.bar(j)) == 0) continue;
        // evaluate at the source bar's birth corner, which lies in both bars
        Point x = src.bar(i).b;
        auto it = u.connectors[k].find(x);
        if (it == u.connectors[k].end()) continue;
        auto rows_at = tgt.bars_at(x);
        auto cols_at = src.bars_at(x);
        int rj = -1, ci = -1;
        for (std::size_t t = 0; t < rows_at.size(); ++t)
          if (rows_at[t] == j) rj = static_cast<int>(t);
        for (std::size_t t = 0; t < cols_at.size(); ++t)
          if (cols_at[t] == i) ci = static_cast<int>(t);
        if (rj < 0 || ci < 0) continue;
        scal(static_cast<int>(j), static_cast<int>(i)) = it->second(rj, ci);
      }
    s.morphisms.push_back(RectMatrix<F>(src, tgt, std::move(scal)));
  }
  return s;
}

// ---------------------------------------------------------------------------
// Lines, hyperplanes, restriction

// Monotone injective reparameterization of the 1D grid inside an nD grid:
// either an affine lattice line or an explicit strictly increasing point
// list (evaluated only on its own window).
struct Line {
  enum class Kind { affine, explicit_points };
  Kind kind = Kind::affine;
  Point base, step;            // affine
  std::vector<Point> points;   // explicit

  static Line affine(Point base, Point step) {
    Line l;
    l.kind = Kind::affine;
    if (base.dim() != step.dim()) throw std::invalid_argument("line base/step dim mismatch");
    bool nonzero = false;
    for (int k = 0; k < step.dim(); ++k) {
      if (step[k] < 0) throw std::invalid_argument("line step must be componentwise >= 0");
      if (step[k] > 0) nonzero = true;
    }
    if (!nonzero) throw std::invalid_argument("line step must be nonzero");
    l.base = std::move(base);
    l.step = std::move(step);
    return l;
  }

  static Line explicit_list(std::vector<Point> pts) {
    Line l;
    l.kind = Kind::explicit_points;
    if (pts.empty()) throw std::invalid_argument("explicit line needs points");
    for (std::size_t i = 1; i < pts.size(); ++i) {
      if (!(pts[i - 1].leq(pts[i])) || pts[i - 1] == pts[i])
        throw std::invalid_argument("explicit line must be strictly increasing");
    }
    l.points = std::move(pts);
    return l;
  }
};

// Restriction of a grid module along a line; the output is indexed by the
// line's own parameter. Arrows between consecutive parameters are composites
// along a monotone lattice path (path-independent for genuine modules).
template <class F>
GridModule<F> restrict_line(const GridModule<F>& m, const Line& line) {
  GridModule<F> out(m.field(), 1);
  if (m.empty()) return out;
  Rectangle box = m.bounding_box();
  std::vector<std::pair<long long, Point>> samples;  // (parameter, grid point)
  if (line.kind == Line::Kind::explicit_points) {
    if (line.points[0].dim() != m.dim())
      throw std::invalid_argument("line dimension mismatch");
    for (std::size_t i = 0; i < line.points.size(); ++i)
      samples.push_back({static_cast<long long>(i), line.points[i]});
  } else {
    if (line.base.dim() != m.dim()) throw std::invalid_argument("line dimension mismatch");
    // intersect the parameter range with the bounding box
    long long lo = std::numeric_limits<long long>::min() / 4;
    long long hi = std::numeric_limits<long long>::max() / 4;
    for (int k = 0; k < m.dim(); ++k) {
      if (line.step[k] == 0) {
        if (line.base[k] < box.b[k] || line.base[k] > box.d[k]) return out;
        continue;
      }
      // box.b[k] <= base + t*step <= box.d[k]
      long long a = box.b[k] - line.base[k];
      long long b = box.d[k] - line.base[k];
      long long tlo = a >= 0 ? (a + line.step[k] - 1) / line.step[k]
                             : -((-a) / line.step[k]);
      long long thi = b >= 0 ? b / line.step[k] : -(((-b) + line.step[k] - 1) / line.step[k]);
      lo = std::max(lo, tlo);
      hi = std::min(hi, thi);
    }
    for (long long t = lo; t <= hi; ++t) {
      Point p = line.base;
      for (int k = 0; k < m.dim(); ++k) p.c[k] += t * line.step[k];
      samples.push_back({t, p});
    }
  }
  for (const auto& [t, p] : samples)
    if (m.fiber(p) > 0) out.set_fiber(Point{t}, m.fiber(p));
  for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
    const auto& [t0, p0] = samples[i];
    const auto& [t1, p1] = samples[i + 1];
    if (t1 != t0 + 1) continue;
    if (m.fiber(p0) == 0 || m.fiber(p1) == 0) continue;
    out.set_arrow(Point{t0}, 0, m.path_composite(p0, p1));
  }
  return out;
}

// Monotone injective embedding of the nD grid inside an (n+1)D grid.
struct Hyperplane {
  enum class Kind { axis, affine };
  Kind kind = Kind::axis;
  int missing_axis = 0;      // axis slice
  long long value = 0;
  Point base;                // affine
  std::vector<Point> generators;

  static Hyperplane axis_embed(int missing_axis, long long value) {
    Hyperplane h;
    h.kind = Kind::axis;
    h.missing_axis = missing_axis;
    h.value = value;
    return h;
  }
  static Hyperplane affine_embed(Point base, std::vector<Point> gens) {
    Hyperplane h;
    h.kind = Kind::affine;
    for (const auto& g : gens) {
      if (g.dim() != base.dim()) throw std::invalid_argument("generator dim mismatch");
      bool nz = false;
      for (int k = 0; k < g.dim(); ++k) {
        if (g[k] < 0) throw std::invalid_argument("generators must be componentwise >= 0");
        if (g[k] > 0) nz = true;
      }
      if (!nz) throw std::invalid_argument("zero generator breaks injectivity");
    }
    h.base = std::move(base);
    h.generators = std::move(gens);
    return h;
  }
};

template <class F>
GridModule<F> hyperplane_restrict(const GridModule<F>& m, const Hyperplane& h) {
  if (h.kind == Hyperplane::Kind::axis) {
    if (h.missing_axis < 0 || h.missing_axis >= m.dim())
      throw std::invalid_argument("slice axis out of range");
    if (m.dim() < 2) throw std::invalid_argument("axis slice needs dimension >= 2");
    GridModule<F> out(m.field(), m.dim() - 1);
    for (const auto& [p, d] : m.fibers())
      if (p[h.missing_axis] == h.value) out.set_fiber(p.dropped(h.missing_axis), d);
    for (const auto& [key, mat] : m.arrows()) {
      const auto& [from, k] = key;
      if (k == h.missing_axis || from[h.missing_axis] != h.value) continue;
      out.set_arrow(from.dropped(h.missing_axis), k > h.missing_axis ? k - 1 : k, mat);
    }
    return out;
  }
  const int n = static_cast<int>(h.generators.size());
  if (h.base.dim() != m.dim() || n + 1 != m.dim())
    throw std::invalid_argument("hyperplane dimension mismatch");
  GridModule<F> out(m.field(), n);
  if (m.empty()) return out;
  Rectangle box = m.bounding_box();
  long long span = 1;
  for (int k = 0; k < m.dim(); ++k) span = std::max(span, box.d[k] - box.b[k] + 1);
  long long bound = 2 * span + 2;
  auto embed = [&](const Point& x) {
    Point p = h.base;
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < m.dim(); ++k) p.c[k] += x[j] * h.generators[j][k];
    return p;
  };
  // enumerate the domain window and keep points that land in the box
  std::vector<Point> domain;
  Point x = Point(std::vector<long long>(n, -bound));
  bool more = true;
  while (more) {
    Point p = embed(x);
    if (box.contains(p)) domain.push_back(x);
    more = false;
    for (int k = n - 1; k >= 0; --k) {
      if (x[k] < bound) {
        ++x.c[k];
        for (int l = k + 1; l < n; ++l) x.c[l] = -bound;
        more = true;
        break;
      }
    }
  }
  for (const auto& xp : domain) {
    int d = m.fiber(embed(xp));
    if (d > 0) out.set_fiber(xp, d);
  }
  for (const auto& xp : domain) {
    if (out.fiber(xp) == 0) continue;
    for (int j = 0; j < n; ++j) {
      Point xq = xp.shifted(j, 1);
      if (out.fiber(xq) == 0) continue;
      out.set_arrow(xp, j, m.path_composite(embed(xp), embed(xq)));
    }
  }
  return out;
}

}  // namespace gridpm
