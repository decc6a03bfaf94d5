#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "gridpm/geometry.hpp"

namespace gridpm {

// Finite multiset of same-dimension rectangles, kept in canonical order
// (lexicographic on (b, d), duplicates as repeated entries) so that equality
// is multiset equality.
class Barcode {
 public:
  explicit Barcode(int dim, std::vector<Rectangle> bars = {})
      : dim_(dim), bars_(std::move(bars)) {
    if (dim < 1) throw std::invalid_argument("barcode ambient dimension must be >= 1");
    for (const auto& r : bars_)
      if (r.dim() != dim) throw std::invalid_argument("bar dimension mismatch");
    std::sort(bars_.begin(), bars_.end());
  }

  static Barcode of_intervals(std::vector<std::pair<long long, long long>> iv) {
    std::vector<Rectangle> bars;
    bars.reserve(iv.size());
    for (auto [lo, hi] : iv) bars.push_back(Rectangle::interval(lo, hi));
    return Barcode(1, std::move(bars));
  }

  int dim() const { return dim_; }
  std::size_t size() const { return bars_.size(); }
  bool empty() const { return bars_.empty(); }
  const Rectangle& bar(std::size_t i) const { return bars_[i]; }
  const std::vector<Rectangle>& bars() const { return bars_; }
  auto begin() const { return bars_.begin(); }
  auto end() const { return bars_.end(); }

  bool operator==(const Barcode&) const = default;
  auto operator<=>(const Barcode&) const = default;

  std::vector<std::size_t> bars_at(const Point& p) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < bars_.size(); ++i)
      if (bars_[i].contains(p)) out.push_back(i);
    return out;
  }

  long long total_dimension() const {
    long long t = 0;
    for (const auto& r : bars_) t += r.volume();
    return t;
  }

  Barcode translated(const Point& off) const {
    std::vector<Rectangle> bs;
    bs.reserve(bars_.size());
    for (const auto& r : bars_) bs.push_back(r.translated(off));
    return Barcode(dim_, std::move(bs));
  }

  Barcode negated() const {
    std::vector<Rectangle> bs;
    bs.reserve(bars_.size());
    for (const auto& r : bars_) bs.push_back(r.negated());
    return Barcode(dim_, std::move(bs));
  }

  // Componentwise bounding rectangle of all bars; requires a nonempty barcode.
  Rectangle bounding_box() const {
    if (bars_.empty()) throw std::logic_error("bounding box of empty barcode");
    Point lo = bars_[0].b, hi = bars_[0].d;
    for (const auto& r : bars_) {
      lo = Point::cw_min(lo, r.b);
      hi = Point::cw_max(hi, r.d);
    }
    return Rectangle(lo, hi);
  }

 private:
  int dim_;
  std::vector<Rectangle> bars_;
};

// Multiset equality of canonical forms.
inline bool iso_barcode_eq(const Barcode& a, const Barcode& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("iso_barcode_eq dimension mismatch");
  return a == b;
}

// All pairs (b_i, d_i) distinct and b_i + d_i constant. The common doubled
// midpoint makes half-integral midpoints exact.
inline bool is_vertical(const Barcode& bc) {
  if (bc.empty()) return false;
  Point doubled = bc.bar(0).b.plus(bc.bar(0).d);
  for (std::size_t i = 0; i < bc.size(); ++i) {
    if (!(bc.bar(i).b.plus(bc.bar(i).d) == doubled)) return false;
    if (i > 0 && bc.bar(i) == bc.bar(i - 1)) return false;  // canonical order: dups adjacent
  }
  return true;
}

}  // namespace gridpm
