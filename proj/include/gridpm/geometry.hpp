#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace gridpm {

// A lattice point of the ambient grid. Comparison is lexicographic (used for
// canonical orderings); the componentwise partial order is `leq`.
struct Point {
  std::vector<long long> c;

  Point() = default;
  explicit Point(std::vector<long long> v) : c(std::move(v)) {}
  Point(std::initializer_list<long long> v) : c(v) {}

  static Point zeros(int dim) { return Point(std::vector<long long>(dim, 0)); }

  int dim() const { return static_cast<int>(c.size()); }
  long long operator[](int i) const { return c[i]; }
  long long& operator[](int i) { return c[i]; }

  auto operator<=>(const Point&) const = default;

  bool leq(const Point& o) const {
    if (dim() != o.dim()) throw std::invalid_argument("point dimension mismatch");
    for (int i = 0; i < dim(); ++i)
      if (c[i] > o.c[i]) return false;
    return true;
  }

  Point plus(const Point& o) const {
    Point r = *this;
    for (int i = 0; i < dim(); ++i) r.c[i] += o.c[i];
    return r;
  }
  Point minus(const Point& o) const {
    Point r = *this;
    for (int i = 0; i < dim(); ++i) r.c[i] -= o.c[i];
    return r;
  }
  Point negated() const {
    Point r = *this;
    for (auto& x : r.c) x = -x;
    return r;
  }
  Point shifted(int axis, long long delta) const {
    Point r = *this;
    r.c[axis] += delta;
    return r;
  }
  Point appended(long long v) const {
    Point r = *this;
    r.c.push_back(v);
    return r;
  }
  Point dropped(int axis) const {
    Point r;
    r.c.reserve(c.size() - 1);
    for (int i = 0; i < dim(); ++i)
      if (i != axis) r.c.push_back(c[i]);
    return r;
  }
  Point inserted(int axis, long long v) const {
    Point r;
    r.c.reserve(c.size() + 1);
    for (int i = 0; i <= dim(); ++i) {
      if (i == axis) r.c.push_back(v);
      if (i < dim()) r.c.push_back(c[i]);
    }
    return r;
  }

  static Point unit(int dim, int axis) {
    Point r = zeros(dim);
    r.c[axis] = 1;
    return r;
  }

  static Point cw_min(const Point& a, const Point& b) {
    Point r = a;
    for (int i = 0; i < a.dim(); ++i) r.c[i] = std::min(a.c[i], b.c[i]);
    return r;
  }
  static Point cw_max(const Point& a, const Point& b) {
    Point r = a;
    for (int i = 0; i < a.dim(); ++i) r.c[i] = std::max(a.c[i], b.c[i]);
    return r;
  }

  std::string str() const {
    std::string s = "(";
    for (int i = 0; i < dim(); ++i) {
      if (i) s += ",";
      s += std::to_string(c[i]);
    }
    return s + ")";
  }
};

// Product of integer intervals [b^k, d^k]; the n = 1 case is the interval
// module's support.
struct Rectangle {
  Point b, d;

  Rectangle() = default;
  Rectangle(Point bb, Point dd) : b(std::move(bb)), d(std::move(dd)) {
    if (b.dim() != d.dim()) throw std::invalid_argument("rectangle endpoint dimension mismatch");
    if (!b.leq(d)) throw std::invalid_argument("rectangle needs b <= d componentwise");
  }
  static Rectangle interval(long long lo, long long hi) { return Rectangle(Point{lo}, Point{hi}); }

  int dim() const { return b.dim(); }
  bool contains(const Point& p) const { return b.leq(p) && p.leq(d); }
  long long volume() const {
    long long v = 1;
    for (int i = 0; i < dim(); ++i) v *= d[i] - b[i] + 1;
    return v;
  }
  Rectangle translated(const Point& off) const { return Rectangle(b.plus(off), d.plus(off)); }
  Rectangle negated() const { return Rectangle(d.negated(), b.negated()); }

  auto operator<=>(const Rectangle&) const = default;

  std::string str() const { return "[" + b.str() + "," + d.str() + "]"; }
};

// dim Hom(I[src.b, src.d], I[tgt.b, tgt.d]) — either 0 or 1. Nonzero exactly
// when tgt.b <= src.b <= tgt.d <= src.d componentwise.
inline int hom_dim(const Rectangle& src, const Rectangle& tgt) {
  if (src.dim() != tgt.dim()) throw std::invalid_argument("hom_dim dimension mismatch");
  return (tgt.b.leq(src.b) && src.b.leq(tgt.d) && tgt.d.leq(src.d)) ? 1 : 0;
}

// Composite of the canonical morphisms src -> mid -> tgt: 1 if the composite
// is again canonical (nonzero), 0 if it falls through. Given both factors are
// nonzero, the composite is nonzero exactly when src.b <= tgt.d.
inline int canonical_compose(const Rectangle& src, const Rectangle& mid, const Rectangle& tgt) {
  if (hom_dim(src, mid) != 1 || hom_dim(mid, tgt) != 1)
    throw std::invalid_argument("canonical_compose: factor with hom_dim 0");
  return src.b.leq(tgt.d) ? 1 : 0;
}

}  // namespace gridpm
