#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "gridpm/grid_module.hpp"
#include "gridpm/rng.hpp"

namespace gridpm {

// A morphism family between two grid modules: one matrix per point carrying
// both fibers. Points outside both supports carry the zero map and are
// omitted.
template <class F>
using MorphismFamily = std::map<Point, Matrix<F>>;

template <class F>
struct HomSolution {
  int dim = 0;
  std::vector<MorphismFamily<F>> basis;  // deterministic echelon order
};

namespace detail {

// Incremental sparse row reduction over an exact field. Rows are sorted
// (variable, coefficient) lists; pivots are kept normalized with leading
// coefficient one.
template <class F>
class SparseSystem {
 public:
  using elem = typename F::elem;
  using SparseRow = std::vector<std::pair<std::size_t, elem>>;

  SparseSystem(F f, std::size_t nvars) : f_(f), nvars_(nvars) {}

  void add_row(SparseRow row) {
    normalize_sorted(row);
    while (!row.empty()) {
      auto lead = row.front().first;
      auto it = pivots_.find(lead);
      if (it == pivots_.end()) {
        elem inv = f_.inv(row.front().second);
        for (auto& [v, c] : row) c = f_.mul(c, inv);
        pivots_.emplace(lead, std::move(row));
        return;
      }
      row = axpy(row, f_.neg(row.front().second), it->second);
    }
  }

  std::size_t rank() const { return pivots_.size(); }
  std::size_t nullity() const { return nvars_ - pivots_.size(); }

  // One vector per free variable (ascending), back-substituted through the
  // echelon rows; this is the canonical reduced-form basis.
  std::vector<std::vector<elem>> nullspace_basis() const {
    std::vector<std::vector<elem>> out;
    std::vector<bool> is_pivot(nvars_, false);
    for (const auto& [v, row] : pivots_) is_pivot[v] = true;
    for (std::size_t fv = 0; fv < nvars_; ++fv) {
      if (is_pivot[fv]) continue;
      std::vector<elem> x(nvars_, f_.zero());
      x[fv] = f_.one();
      for (auto it = pivots_.rbegin(); it != pivots_.rend(); ++it) {
        const auto& row = it->second;
        elem acc = f_.zero();
        for (std::size_t i = 1; i < row.size(); ++i)
          acc = f_.add(acc, f_.mul(row[i].second, x[row[i].first]));
        x[it->first] = f_.neg(acc);
      }
      out.push_back(std::move(x));
    }
    return out;
  }

 private:
  void normalize_sorted(SparseRow& row) const {
    std::sort(row.begin(), row.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    SparseRow merged;
    for (auto& [v, c] : row) {
      if (!merged.empty() && merged.back().first == v)
        merged.back().second = f_.add(merged.back().second, c);
      else
        merged.push_back({v, c});
    }
    merged.erase(std::remove_if(merged.begin(), merged.end(),
                                [&](const auto& p) { return f_.is_zero(p.second); }),
                 merged.end());
    row = std::move(merged);
  }

  // row + c * pivot, both sorted
  SparseRow axpy(const SparseRow& row, const elem& c, const SparseRow& pivot) const {
    SparseRow out;
    std::size_t i = 0, j = 0;
    while (i < row.size() || j < pivot.size()) {
      if (j >= pivot.size() || (i < row.size() && row[i].first < pivot[j].first)) {
        out.push_back(row[i++]);
      } else if (i >= row.size() || pivot[j].first < row[i].first) {
        elem v = f_.mul(c, pivot[j].second);
        if (!f_.is_zero(v)) out.push_back({pivot[j].first, v});
        ++j;
      } else {
        elem v = f_.add(row[i].second, f_.mul(c, pivot[j].second));
        if (!f_.is_zero(v)) out.push_back({row[i].first, v});
        ++i;
        ++j;
      }
    }
    return out;
  }

  F f_;
  std::size_t nvars_;
  std::map<std::size_t, SparseRow> pivots_;
};

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) {
    for (std::size_t i = 0; i < n; ++i) parent[i] = i;
  }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void merge(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);  // keep the smaller index as representative
    parent[b] = a;
  }
};

}  // namespace detail

// Natural transformations A -> B: unknown blocks psi_x at the common support
// points, one commutation constraint block per unit arrow. Identity arrows on
// both sides only restate psi_y = psi_x, so such endpoints are merged before
// the linear solve; repeated constraints between the same merged blocks are
// deduplicated.
template <class F>
HomSolution<F> hom_space(const GridModule<F>& A, const GridModule<F>& B) {
  const F& f = A.field();
  std::vector<Point> pts;
  for (const auto& [p, d] : A.fibers())
    if (B.fiber(p) > 0) pts.push_back(p);
  std::map<Point, std::size_t> pt_index;
  for (std::size_t i = 0; i < pts.size(); ++i) pt_index[pts[i]] = i;

  detail::UnionFind uf(pts.size());
  const int n = A.dim();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (int k = 0; k < n; ++k) {
      Point y = pts[i].shifted(k, 1);
      auto it = pt_index.find(y);
      if (it == pt_index.end()) continue;
      const Matrix<F>* am = A.arrow(pts[i], k);
      const Matrix<F>* bm = B.arrow(pts[i], k);
      if (am && bm && am->is_identity() && bm->is_identity()) uf.merge(i, it->second);
    }
  }

  // variable layout per representative class
  std::map<std::size_t, std::size_t> var_base;  // class rep -> offset
  std::size_t nvars = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (uf.find(i) != i) continue;
    var_base[i] = nvars;
    nvars += static_cast<std::size_t>(B.fiber(pts[i])) * A.fiber(pts[i]);
  }
  auto var_of = [&](std::size_t cls, int r, int c, int ncols) {
    return var_base.at(cls) + static_cast<std::size_t>(r) * ncols + c;
  };

  detail::SparseSystem<F> sys(f, nvars);
  std::set<std::string> seen;
  // One constraint block per unit arrow out of supp(A) into a point where B
  // lives; the unknown on either end drops out when that end leaves the
  // common support.
  for (const auto& [x, dax] : A.fibers()) {
    for (int k = 0; k < n; ++k) {
      Point y = x.shifted(k, 1);
      if (B.fiber(y) == 0) continue;
      const Matrix<F>* am = A.arrow(x, k);  // null iff A vanishes at y
      const Matrix<F>* bm = B.arrow(x, k);  // null iff B vanishes at x
      bool term1 = A.fiber(y) > 0 && B.fiber(y) > 0 && am != nullptr;
      bool term2 = B.fiber(x) > 0 && bm != nullptr;
      if (!term1 && !term2) continue;
      long long cx = term2 ? static_cast<long long>(uf.find(pt_index.at(x))) : -1;
      long long cy = term1 ? static_cast<long long>(uf.find(pt_index.at(y))) : -1;
      if (term1 && term2 && cx == cy && am->is_identity() && bm->is_identity()) continue;
      std::string key = std::to_string(cy) + "|" + std::to_string(cx) + "|" +
                        (term1 ? am->key() : std::string("-")) + "|" +
                        (term2 ? bm->key() : std::string("-"));
      if (!seen.insert(key).second) continue;
      const int rows = B.fiber(y), cols = A.fiber(x);
      for (int a = 0; a < rows; ++a) {
        for (int b = 0; b < cols; ++b) {
          typename detail::SparseSystem<F>::SparseRow row;
          if (term1) {
            for (int t = 0; t < A.fiber(y); ++t) {
              const auto& c = (*am)(t, b);
              if (!f.is_zero(c))
                row.push_back({var_of(static_cast<std::size_t>(cy), a, t, A.fiber(y)), c});
            }
          }
          if (term2) {
            for (int t = 0; t < B.fiber(x); ++t) {
              const auto& c = (*bm)(a, t);
              if (!f.is_zero(c))
                row.push_back({var_of(static_cast<std::size_t>(cx), t, b, cols), f.neg(c)});
            }
          }
          sys.add_row(std::move(row));
        }
      }
    }
  }

  HomSolution<F> out;
  out.dim = static_cast<int>(sys.nullity());
  for (const auto& vec : sys.nullspace_basis()) {
    MorphismFamily<F> fam;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      std::size_t cls = uf.find(i);
      const int rows = B.fiber(pts[i]), cols = A.fiber(pts[i]);
      Matrix<F> m(f, rows, cols);
      for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) m(r, c) = vec[var_of(cls, r, c, cols)];
      fam.insert({pts[i], std::move(m)});
    }
    out.basis.push_back(std::move(fam));
  }
  return out;
}

template <class F>
HomSolution<F> end_space(const GridModule<F>& m) {
  return hom_space(m, m);
}

template <class F>
int end_dim(const GridModule<F>& m) {
  return end_space(m).dim;
}

// ---------------------------------------------------------------------------
// Families as algebra elements

template <class F>
bool family_satisfies(const GridModule<F>& A, const GridModule<F>& B,
                      const MorphismFamily<F>& fam) {
  const F& f = A.field();
  auto at = [&](const Point& p) -> Matrix<F> {
    auto it = fam.find(p);
    if (it != fam.end()) return it->second;
    return Matrix<F>(f, B.fiber(p), A.fiber(p));
  };
  for (const auto& [p, d] : A.fibers()) {
    for (int k = 0; k < A.dim(); ++k) {
      Point y = p.shifted(k, 1);
      if (B.fiber(y) == 0 && A.fiber(y) == 0) continue;
      Matrix<F> lhs = at(y).mul(A.arrow_or_zero(p, k));
      Matrix<F> rhs = B.arrow_or_zero(p, k).mul(at(p));
      if (!(lhs == rhs)) return false;
    }
  }
  return true;
}

template <class F>
MorphismFamily<F> family_identity(const GridModule<F>& m) {
  MorphismFamily<F> fam;
  for (const auto& [p, d] : m.fibers()) fam.insert({p, Matrix<F>::identity(m.field(), d)});
  return fam;
}

template <class F>
MorphismFamily<F> family_compose(const MorphismFamily<F>& g, const MorphismFamily<F>& h) {
  MorphismFamily<F> out;
  for (const auto& [p, m] : g) {
    auto it = h.find(p);
    if (it != h.end()) out.insert({p, m.mul(it->second)});
  }
  return out;
}

template <class F>
MorphismFamily<F> family_add(const MorphismFamily<F>& a, const MorphismFamily<F>& b) {
  MorphismFamily<F> out = a;
  for (const auto& [p, m] : b) {
    auto it = out.find(p);
    if (it == out.end())
      out.insert({p, m});
    else
      it->second = it->second.add(m);
  }
  return out;
}

template <class F>
MorphismFamily<F> family_scale(const F& f, const typename F::elem& c,
                               const MorphismFamily<F>& a) {
  MorphismFamily<F> out = a;
  for (auto& [p, m] : out) m = m.scaled(c);
  return out;
}

template <class F>
bool family_is_zero(const F& f, const MorphismFamily<F>& a) {
  for (const auto& [p, m] : a)
    if (!m.is_zero()) return false;
  return true;
}

template <class F>
bool family_equal(const MorphismFamily<F>& a, const MorphismFamily<F>& b) {
  if (a.size() != b.size()) return false;
  auto it = b.begin();
  for (const auto& [p, m] : a) {
    if (!(it->first == p) || !(it->second == m)) return false;
    ++it;
  }
  return true;
}

// True when a family lies in the span of the computed basis (used by tests
// and the sanity checks).
template <class F>
bool family_in_span(const F& f, const std::vector<MorphismFamily<F>>& basis,
                    const MorphismFamily<F>& target) {
  // flatten over the union of keys
  std::vector<Point> keys;
  for (const auto& [p, m] : target) keys.push_back(p);
  auto flatten = [&](const MorphismFamily<F>& fam) {
    std::vector<typename F::elem> v;
    for (const Point& p : keys) {
      auto it = fam.find(p);
      if (it == fam.end()) throw std::logic_error("family key mismatch");
      for (int r = 0; r < it->second.rows(); ++r)
        for (int c = 0; c < it->second.cols(); ++c) v.push_back(it->second(r, c));
    }
    return v;
  };
  std::vector<std::vector<typename F::elem>> rows;
  for (const auto& b : basis) rows.push_back(flatten(b));
  std::vector<typename F::elem> t = flatten(target);
  if (t.empty()) return true;
  Matrix<F> with(f, static_cast<int>(rows.size()) + 1, static_cast<int>(t.size()));
  Matrix<F> without(f, static_cast<int>(rows.size()), static_cast<int>(t.size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      with(static_cast<int>(i), static_cast<int>(j)) = rows[i][j];
      without(static_cast<int>(i), static_cast<int>(j)) = rows[i][j];
    }
  for (std::size_t j = 0; j < t.size(); ++j)
    with(static_cast<int>(rows.size()), static_cast<int>(j)) = t[j];
  return with.rank() == without.rank();
}

// ---------------------------------------------------------------------------
// Indecomposability certificates

enum class VerdictKind { indecomposable, decomposable, unknown };

template <class F>
struct IndecomposabilityVerdict {
  VerdictKind kind = VerdictKind::unknown;
  int endomorphism_dim = 0;
  std::optional<MorphismFamily<F>> witness;  // nontrivial idempotent when decomposable
  std::string reason;
};

namespace detail {

template <class F>
using Poly = std::vector<typename F::elem>;  // little-endian coefficients

template <class F>
void poly_trim(const F& f, Poly<F>& p) {
  while (!p.empty() && f.is_zero(p.back())) p.pop_back();
}

template <class F>
Poly<F> poly_mul(const F& f, const Poly<F>& a, const Poly<F>& b) {
  if (a.empty() || b.empty()) return {};
  Poly<F> out(a.size() + b.size() - 1, f.zero());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      out[i + j] = f.add(out[i + j], f.mul(a[i], b[j]));
  poly_trim(f, out);
  return out;
}

// division with remainder; divisor need not be monic
template <class F>
std::pair<Poly<F>, Poly<F>> poly_divmod(const F& f, Poly<F> a, const Poly<F>& b) {
  if (b.empty()) throw std::domain_error("poly division by zero");
  Poly<F> q(a.size() > b.size() - 1 ? a.size() - b.size() + 1 : 0, f.zero());
  auto lead_inv = f.inv(b.back());
  while (a.size() >= b.size()) {
    auto c = f.mul(a.back(), lead_inv);
    std::size_t shift = a.size() - b.size();
    q[shift] = f.add(q[shift], c);
    for (std::size_t i = 0; i < b.size(); ++i)
      a[shift + i] = f.sub(a[shift + i], f.mul(c, b[i]));
    poly_trim(f, a);
    if (a.empty()) break;
  }
  poly_trim(f, q);
  return {q, a};
}

template <class F>
Poly<F> poly_mod(const F& f, const Poly<F>& a, const Poly<F>& m) {
  return poly_divmod(f, a, m).second;
}

template <class F>
Poly<F> poly_monic(const F& f, Poly<F> p) {
  poly_trim(f, p);
  if (p.empty()) return p;
  auto inv = f.inv(p.back());
  for (auto& c : p) c = f.mul(c, inv);
  return p;
}

template <class F>
Poly<F> poly_gcd(const F& f, Poly<F> a, Poly<F> b) {
  poly_trim(f, a);
  poly_trim(f, b);
  while (!b.empty()) {
    auto r = poly_mod(f, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return poly_monic(f, a);
}

template <class F>
Poly<F> poly_sub(const F& f, const Poly<F>& a, const Poly<F>& b) {
  Poly<F> out = a;
  if (b.size() > out.size()) out.resize(b.size(), f.zero());
  for (std::size_t i = 0; i < b.size(); ++i) out[i] = f.sub(out[i], b[i]);
  poly_trim(f, out);
  return out;
}

// extended gcd: returns (g, u, v) with u*a + v*b = g
template <class F>
std::tuple<Poly<F>, Poly<F>, Poly<F>> poly_egcd(const F& f, Poly<F> a, Poly<F> b) {
  Poly<F> u0{f.one()}, v0{}, u1{}, v1{f.one()};
  poly_trim(f, a);
  poly_trim(f, b);
  while (!b.empty()) {
    auto [q, r] = poly_divmod(f, a, b);
    a = std::move(b);
    b = std::move(r);
    auto u2 = poly_sub(f, u0, poly_mul(f, q, u1));
    auto v2 = poly_sub(f, v0, poly_mul(f, q, v1));
    u0 = std::move(u1);
    u1 = std::move(u2);
    v0 = std::move(v1);
    v1 = std::move(v2);
  }
  if (!a.empty()) {
    auto inv = f.inv(a.back());
    for (auto& c : a) c = f.mul(c, inv);
    for (auto& c : u0) c = f.mul(c, inv);
    for (auto& c : v0) c = f.mul(c, inv);
  }
  return {a, u0, v0};
}

template <class F>
Poly<F> poly_powmod(const F& f, Poly<F> base, std::uint64_t e, const Poly<F>& m) {
  Poly<F> result{f.one()};
  base = poly_mod(f, base, m);
  while (e > 0) {
    if (e & 1) result = poly_mod(f, poly_mul(f, result, base), m);
    base = poly_mod(f, poly_mul(f, base, base), m);
    e >>= 1;
  }
  return result;
}

// minimal polynomial of a square matrix, via incremental dependency of its
// powers
template <class F>
Poly<F> matrix_minpoly(const F& f, const Matrix<F>& m) {
  const int d = m.rows();
  if (d == 0) return Poly<F>{f.one()};
  // rows: vec(m^k) augmented with the power-combination bookkeeping
  std::vector<std::vector<typename F::elem>> echelon;      // reduced vectors
  std::vector<std::vector<typename F::elem>> combos;       // coefficients per power
  Matrix<F> pw = Matrix<F>::identity(f, d);
  for (int k = 0;; ++k) {
    std::vector<typename F::elem> v;
    v.reserve(static_cast<std::size_t>(d) * d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) v.push_back(pw(i, j));
    std::vector<typename F::elem> combo(k + 1, f.zero());
    combo[k] = f.one();
    // reduce v against echelon
    for (std::size_t r = 0; r < echelon.size(); ++r) {
      // find leading index of echelon[r]
      std::size_t lead = 0;
      while (lead < echelon[r].size() && f.is_zero(echelon[r][lead])) ++lead;
      if (lead >= echelon[r].size() || f.is_zero(v[lead])) continue;
      auto c = v[lead];  // echelon row normalized with leading one
      for (std::size_t j = 0; j < v.size(); ++j)
        v[j] = f.sub(v[j], f.mul(c, echelon[r][j]));
      if (combos[r].size() > combo.size()) combo.resize(combos[r].size(), f.zero());
      for (std::size_t j = 0; j < combos[r].size(); ++j)
        combo[j] = f.sub(combo[j], f.mul(c, combos[r][j]));
    }
    bool zero = true;
    for (const auto& c : v)
      if (!f.is_zero(c)) {
        zero = false;
        break;
      }
    if (zero) {
      poly_trim(f, combo);
      return poly_monic(f, combo);
    }
    // normalize leading one and store
    std::size_t lead = 0;
    while (f.is_zero(v[lead])) ++lead;
    auto inv = f.inv(v[lead]);
    for (auto& c : v) c = f.mul(c, inv);
    for (auto& c : combo) c = f.mul(c, inv);
    echelon.push_back(std::move(v));
    combos.push_back(std::move(combo));
    pw = pw.mul(m);
    if (k > d * d + 1) throw std::logic_error("minpoly iteration runaway");
  }
}

template <class F>
Poly<F> poly_lcm(const F& f, const Poly<F>& a, const Poly<F>& b) {
  if (a.empty() || b.empty()) return {};
  auto g = poly_gcd(f, a, b);
  return poly_monic(f, poly_divmod(f, poly_mul(f, a, b), g).first);
}

template <class F>
Poly<F> family_minpoly(const F& f, const MorphismFamily<F>& fam) {
  Poly<F> m{f.one()};
  for (const auto& [p, blk] : fam) m = poly_lcm(f, m, matrix_minpoly(f, blk));
  return m;
}

// evaluate p(fam) where fam is an endomorphism family of `mod`
template <class F>
MorphismFamily<F> family_poly_eval(const GridModule<F>& mod, const Poly<F>& p,
                                   const MorphismFamily<F>& fam) {
  const F& f = mod.field();
  MorphismFamily<F> acc;
  for (const auto& [pt, d] : mod.fibers()) acc.insert({pt, Matrix<F>(f, d, d)});
  // Horner
  for (std::size_t i = p.size(); i-- > 0;) {
    acc = family_compose(acc, fam);
    for (auto& [pt, m] : acc) {
      for (int r = 0; r < m.rows(); ++r) m(r, r) = f.add(m(r, r), f.mul(p[i], f.one()));
    }
  }
  return acc;
}

// splits m into coprime factors (u, m/u) where u collects every irreducible
// factor shared with g; returns empty polys when the split is trivial
template <class F>
std::pair<Poly<F>, Poly<F>> coprime_split(const F& f, const Poly<F>& m, const Poly<F>& g) {
  Poly<F> u = poly_gcd(f, m, g);
  if (u.size() <= 1) return {{}, {}};
  while (true) {
    auto rest = poly_divmod(f, m, u).first;
    auto w = poly_gcd(f, rest, u);
    if (w.size() <= 1) break;
    u = poly_mul(f, u, w);
  }
  auto v = poly_divmod(f, m, u).first;
  if (v.size() <= 1) return {{}, {}};
  return {u, v};
}

// Tries to produce a nontrivial idempotent as a polynomial in fam. Works
// whenever the minimal polynomial has two coprime factors.
template <class F>
std::optional<MorphismFamily<F>> idempotent_from(const GridModule<F>& mod,
                                                 const MorphismFamily<F>& fam) {
  const F& f = mod.field();
  Poly<F> m = family_minpoly(f, fam);
  if (m.size() <= 1) return std::nullopt;
  std::vector<Poly<F>> candidates;
  candidates.push_back(Poly<F>{f.zero(), f.one()});               // x
  candidates.push_back(Poly<F>{f.neg(f.one()), f.one()});         // x - 1
  if (f.characteristic() != 0) {
    // x^(q^d) - x sweeps: factors of each degree d
    Poly<F> frob{f.zero(), f.one()};
    std::uint64_t q = f.characteristic();
    for (std::size_t d = 1; d < m.size() && d <= 8; ++d) {
      frob = poly_powmod(f, frob, q, m);
      candidates.push_back(poly_sub(f, frob, Poly<F>{f.zero(), f.one()}));
    }
  }
  for (const auto& g : candidates) {
    auto [u, v] = coprime_split(f, m, g);
    if (u.empty()) continue;
    // e = 1 mod u, 0 mod v:   e = b*v  with  a*u + b*v = 1
    auto [one, a, b] = poly_egcd(f, u, v);
    if (one.size() != 1) continue;  // not coprime (cannot happen)
    Poly<F> e = poly_mod(f, poly_mul(f, b, v), m);
    MorphismFamily<F> E = family_poly_eval(mod, e, fam);
    bool is_id = true;
    for (const auto& [pt, blk] : E)
      if (!blk.is_identity()) {
        is_id = false;
        break;
      }
    if (family_is_zero(f, E) || is_id) continue;
    return E;
  }
  return std::nullopt;
}

}  // namespace detail

// Certificate-producing indecomposability check. end_dim 1 certifies
// indecomposable; otherwise we search for a nontrivial idempotent, first by
// splitting minimal polynomials of basis elements (and pairwise sums), then
// exhaustively when the algebra is small enough to enumerate.
template <class F>
IndecomposabilityVerdict<F> indecomposability(const GridModule<F>& m) {
  IndecomposabilityVerdict<F> v;
  if (m.empty()) {
    v.kind = VerdictKind::unknown;
    v.reason = "zero module";
    return v;
  }
  HomSolution<F> sol = end_space(m);
  v.endomorphism_dim = sol.dim;
  if (sol.dim == 1) {
    v.kind = VerdictKind::indecomposable;
    v.reason = "endomorphism ring has dimension 1";
    return v;
  }
  const F& f = m.field();
  auto verify = [&](const MorphismFamily<F>& e) {
    return family_satisfies(m, m, e) && family_equal(family_compose(e, e), e);
  };
  for (const auto& b : sol.basis) {
    if (auto e = detail::idempotent_from(m, b); e && verify(*e)) {
      v.kind = VerdictKind::decomposable;
      v.witness = *e;
      v.reason = "nontrivial idempotent from a basis element";
      return v;
    }
  }
  for (std::size_t i = 0; i < sol.basis.size(); ++i)
    for (std::size_t j = i + 1; j < sol.basis.size(); ++j) {
      auto s = family_add(sol.basis[i], sol.basis[j]);
      if (auto e = detail::idempotent_from(m, s); e && verify(*e)) {
        v.kind = VerdictKind::decomposable;
        v.witness = *e;
        v.reason = "nontrivial idempotent from a basis pair";
        return v;
      }
    }
  // exhaustive enumeration of the finite algebra
  if (f.characteristic() != 0) {
    long double space = 1;
    for (int i = 0; i < sol.dim; ++i) space *= f.characteristic();
    if (space <= static_cast<long double>(1 << 20)) {
      std::vector<std::uint32_t> coeff(sol.dim, 0);
      auto advance = [&]() -> bool {
        for (int i = sol.dim - 1; i >= 0; --i) {
          if (++coeff[i] < f.characteristic()) return true;
          coeff[i] = 0;
        }
        return false;
      };
      while (advance()) {
        MorphismFamily<F> e;
        for (const auto& [pt, d] : m.fibers()) e.insert({pt, Matrix<F>(f, d, d)});
        for (int i = 0; i < sol.dim; ++i) {
          if (coeff[i] == 0) continue;
          e = family_add(e, family_scale(f, f.from_int(coeff[i]), sol.basis[i]));
        }
        bool is_id = true;
        for (const auto& [pt, blk] : e)
          if (!blk.is_identity()) {
            is_id = false;
            break;
          }
        if (is_id || family_is_zero(f, e)) continue;
        if (family_equal(family_compose(e, e), e)) {
          v.kind = VerdictKind::decomposable;
          v.witness = e;
          v.reason = "nontrivial idempotent by exhaustive search";
          return v;
        }
      }
      v.kind = VerdictKind::indecomposable;
      v.reason = "no nontrivial idempotent (exhaustive search)";
      return v;
    }
  }
  v.kind = VerdictKind::unknown;
  v.reason = "endomorphism algebra too large for exhaustive idempotent search";
  return v;
}

// ---------------------------------------------------------------------------
// Cross-shaped property-test modules

// Support pattern: a=(1,0), b=(0,1), e=(1,1), c=(2,1), d=(1,2). Embedding
// into the grid with zero corners forces the two composite relations
// (a -> e -> c and b -> e -> d vanish), which the generator enforces on the
// sampled matrices.
template <class F>
GridModule<F> cross_module_random(F f, std::uint64_t seed, int max_fiber_dim) {
  SplitMix64 rng(seed);
  auto rand_elem = [&]() {
    if (f.characteristic() == 0) return f.from_int(rng.range(-1, 1));
    return f.from_int(static_cast<long long>(rng.below(f.characteristic())));
  };
  auto rand_matrix = [&](int rows, int cols) {
    Matrix<F> m(f, rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) m(i, j) = rand_elem();
    return m;
  };
  int da = static_cast<int>(rng.below(max_fiber_dim + 1));
  int db = static_cast<int>(rng.below(max_fiber_dim + 1));
  int dc = static_cast<int>(rng.below(max_fiber_dim + 1));
  int dd = static_cast<int>(rng.below(max_fiber_dim + 1));
  int de = static_cast<int>(rng.below(max_fiber_dim + 1));

  Matrix<F> h = rand_matrix(dc, de);
  Matrix<F> iup = rand_matrix(dd, de);
  // f_in: A -> E with h f_in = 0, as kernel-basis times a random matrix
  auto into_kernel = [&](const Matrix<F>& k, int src_dim) {
    auto basis = k.nullspace_basis();
    Matrix<F> m(f, k.cols(), src_dim);
    if (basis.empty() || src_dim == 0) return m;
    Matrix<F> r = rand_matrix(static_cast<int>(basis.size()), src_dim);
    for (int row = 0; row < m.rows(); ++row)
      for (int col = 0; col < src_dim; ++col) {
        auto acc = f.zero();
        for (std::size_t t = 0; t < basis.size(); ++t)
          acc = f.add(acc, f.mul(basis[t][row], r(static_cast<int>(t), col)));
        m(row, col) = acc;
      }
    return m;
  };
  Matrix<F> f_in = into_kernel(h, da);
  Matrix<F> g_in = into_kernel(iup, db);

  GridModule<F> t(f, 2);
  Point pa{1, 0}, pb{0, 1}, pe{1, 1}, pc{2, 1}, pd{1, 2};
  t.set_fiber(pa, da);
  t.set_fiber(pb, db);
  t.set_fiber(pe, de);
  t.set_fiber(pc, dc);
  t.set_fiber(pd, dd);
  if (da > 0 && de > 0) t.set_arrow(pa, 1, f_in);
  if (db > 0 && de > 0) t.set_arrow(pb, 0, g_in);
  if (de > 0 && dc > 0) t.set_arrow(pe, 0, h);
  if (de > 0 && dd > 0) t.set_arrow(pe, 1, iup);
  return t;
}

// The assertable consequence of the cross analysis: a cross module whose
// bottom and right fibers are both alive cannot be indecomposable.
template <class F>
bool cross_property_check(const GridModule<F>& t) {
  Point pa{1, 0}, pc{2, 1};
  if (t.fiber(pa) == 0 || t.fiber(pc) == 0) return true;
  return indecomposability(t).kind == VerdictKind::decomposable;
}

}  // namespace gridpm
