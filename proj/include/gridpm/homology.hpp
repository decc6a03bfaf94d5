#pragma once

#include <bit>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

#include "gridpm/field.hpp"
#include "gridpm/geometry.hpp"
#include "gridpm/matrix.hpp"

namespace gridpm {

// A k-cube of the complex: anchor vertex plus the set of spanned axes.
struct Cube {
  Point anchor;
  std::uint32_t axes = 0;

  int cdim() const { return std::popcount(axes); }
  auto operator<=>(const Cube&) const = default;
};

// The clique-cubical complex of a support: a k-cube is present exactly when
// all of its 2^k corners are support points.
class CubicalComplex {
 public:
  static CubicalComplex build(const std::set<Point>& support, int ambient_dim) {
    CubicalComplex c;
    c.ambient_ = ambient_dim;
    c.cells_.assign(ambient_dim + 1, {});
    for (const Point& p : support) {
      for (std::uint32_t axes = 0; axes < (1u << ambient_dim); ++axes) {
        bool ok = true;
        for (std::uint32_t corner = axes; ok; corner = (corner - 1) & axes) {
          Point q = p;
          for (int k = 0; k < ambient_dim; ++k)
            if (corner & (1u << k)) q.c[k] += 1;
          if (support.find(q) == support.end()) ok = false;
          if (corner == 0) break;
        }
        if (ok) c.cells_[std::popcount(axes)].push_back(Cube{p, axes});
      }
    }
    // lexicographic anchor, then axis subset
    for (auto& v : c.cells_) std::sort(v.begin(), v.end());
    return c;
  }

  int ambient_dim() const { return ambient_; }
  const std::vector<std::vector<Cube>>& cells() const { return cells_; }

  std::vector<long long> cell_counts() const {
    std::vector<long long> out;
    for (const auto& v : cells_) out.push_back(static_cast<long long>(v.size()));
    return out;
  }

  long long euler_characteristic() const {
    long long chi = 0;
    int sign = 1;
    for (const auto& v : cells_) {
      chi += sign * static_cast<long long>(v.size());
      sign = -sign;
    }
    return chi;
  }

  // Faces with orientation signs; signs follow increasing-axis order.
  static std::vector<std::pair<Cube, int>> faces(const Cube& c) {
    std::vector<std::pair<Cube, int>> out;
    int pos = 0;
    for (int k = 0; k < 32; ++k) {
      if (!(c.axes & (1u << k))) continue;
      std::uint32_t rest = c.axes & ~(1u << k);
      int sign = (pos % 2 == 0) ? 1 : -1;
      out.push_back({Cube{c.anchor.shifted(k, 1), rest}, sign});
      out.push_back({Cube{c.anchor, rest}, -sign});
      ++pos;
    }
    return out;
  }

 private:
  int ambient_ = 0;
  std::vector<std::vector<Cube>> cells_;
};

inline CubicalComplex clique_cubical(const std::set<Point>& support, int ambient_dim) {
  return CubicalComplex::build(support, ambient_dim);
}

// Integer check of boundary-of-boundary cancellation; implies the identity
// over every field.
inline bool boundary_squares_to_zero(const CubicalComplex& c) {
  for (int k = 2; k <= c.ambient_dim(); ++k) {
    for (const Cube& top : c.cells()[k]) {
      std::map<Cube, long long> acc;
      for (const auto& [f, s] : CubicalComplex::faces(top))
        for (const auto& [g, t] : CubicalComplex::faces(f)) acc[g] += static_cast<long long>(s) * t;
      for (const auto& [g, v] : acc)
        if (v != 0) return false;
    }
  }
  return true;
}

namespace detail {

// Free-face collapse: repeatedly removes a cell having exactly one coface
// together with that coface. Preserves homotopy type, so Betti numbers over
// every field are unchanged; this keeps the exact rank computations small.
struct CollapsedComplex {
  std::vector<std::vector<Cube>> cells;  // alive cells per dimension, sorted
};

inline CollapsedComplex collapse(const CubicalComplex& c) {
  std::set<Cube> alive;
  for (const auto& v : c.cells()) alive.insert(v.begin(), v.end());

  auto cofaces_of = [&](const Cube& f) {
    std::vector<Cube> out;
    for (int k = 0; k < c.ambient_dim(); ++k) {
      if (f.axes & (1u << k)) continue;
      Cube up{f.anchor, f.axes | (1u << k)};
      if (alive.count(up)) out.push_back(up);
      Cube down{f.anchor.shifted(k, -1), f.axes | (1u << k)};
      if (alive.count(down)) out.push_back(down);
    }
    return out;
  };

  std::set<Cube> work(alive.begin(), alive.end());
  while (!work.empty()) {
    Cube f = *work.begin();
    work.erase(work.begin());
    if (!alive.count(f)) continue;
    auto cof = cofaces_of(f);
    if (cof.size() != 1) continue;
    Cube t = cof[0];
    alive.erase(f);
    alive.erase(t);
    for (const auto& [g, s] : CubicalComplex::faces(t))
      if (alive.count(g)) work.insert(g);
    for (const auto& [g, s] : CubicalComplex::faces(f))
      if (alive.count(g)) work.insert(g);
  }

  CollapsedComplex out;
  out.cells.assign(c.ambient_dim() + 1, {});
  for (const Cube& q : alive) out.cells[q.cdim()].push_back(q);
  for (auto& v : out.cells) std::sort(v.begin(), v.end());
  return out;
}

template <class F>
int boundary_rank(F f, const std::vector<Cube>& lower, const std::vector<Cube>& upper) {
  if (lower.empty() || upper.empty()) return 0;
  std::map<Cube, int> index;
  for (std::size_t i = 0; i < lower.size(); ++i) index[lower[i]] = static_cast<int>(i);
  Matrix<F> m(f, static_cast<int>(lower.size()), static_cast<int>(upper.size()));
  for (std::size_t j = 0; j < upper.size(); ++j) {
    for (const auto& [g, s] : CubicalComplex::faces(upper[j])) {
      auto it = index.find(g);
      if (it == index.end()) continue;  // face was collapsed away together with this cell? cannot happen
      m(it->second, static_cast<int>(j)) =
          f.add(m(it->second, static_cast<int>(j)), f.from_int(s));
    }
  }
  return m.rank();
}

template <class F>
std::vector<int> betti_vector_impl(F f, const CubicalComplex& c) {
  auto collapsed = collapse(c);
  const int n = c.ambient_dim();
  std::vector<int> ranks(n + 2, 0);  // ranks[k] = rank of boundary from k-cells
  for (int k = 1; k <= n; ++k)
    ranks[k] = boundary_rank(f, collapsed.cells[k - 1], collapsed.cells[k]);
  std::vector<int> betti(n + 1, 0);
  for (int k = 0; k <= n; ++k)
    betti[k] = static_cast<int>(collapsed.cells[k].size()) - ranks[k] - ranks[k + 1];
  return betti;
}

}  // namespace detail

// After a collapsed face is removed together with its coface, any of its
// remaining faces keep consistent boundary data, so ranks on the collapsed
// complex compute the homology of the original one.
inline std::vector<int> betti_numbers(const CubicalComplex& c, const FieldSpec& spec) {
  if (spec.characteristic == 0) return detail::betti_vector_impl(RationalField{}, c);
  return detail::betti_vector_impl(PrimeField{spec.characteristic}, c);
}

inline int betti(const CubicalComplex& c, int k, const FieldSpec& spec) {
  if (k < 0) throw std::invalid_argument("negative homology degree");
  if (k > c.ambient_dim()) return 0;
  return betti_numbers(c, spec)[k];
}

}  // namespace gridpm
