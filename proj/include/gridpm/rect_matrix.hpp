#pragma once

#include <stdexcept>
#include <vector>

#include "gridpm/barcode.hpp"
#include "gridpm/matrix.hpp"

namespace gridpm {

// Morphism between rectangle-decomposed modules in matrix form: the scalar at
// (j, i) multiplies the canonical morphism from source bar i to target bar j.
// Entries whose Hom space vanishes must be zero.
template <class F>
class RectMatrix {
 public:
  RectMatrix(Barcode source, Barcode target, Matrix<F> scalars)
      : source_(std::move(source)), target_(std::move(target)), scalars_(std::move(scalars)) {
    if (source_.dim() != target_.dim())
      throw std::invalid_argument("RectMatrix barcode dimension mismatch");
    if (scalars_.rows() != static_cast<int>(target_.size()) ||
        scalars_.cols() != static_cast<int>(source_.size()))
      throw std::invalid_argument("RectMatrix scalar shape mismatch");
    for (int j = 0; j < scalars_.rows(); ++j)
      for (int i = 0; i < scalars_.cols(); ++i)
        if (!scalars_.field().is_zero(scalars_(j, i)) &&
            hom_dim(source_.bar(i), target_.bar(j)) == 0)
          throw std::invalid_argument("RectMatrix has a nonzero scalar on a vanishing Hom");
  }

  static RectMatrix identity(F f, const Barcode& bc) {
    return RectMatrix(bc, bc, Matrix<F>::identity(f, static_cast<int>(bc.size())));
  }

  const Barcode& source() const { return source_; }
  const Barcode& target() const { return target_; }
  const Matrix<F>& scalars() const { return scalars_; }
  const F& field() const { return scalars_.field(); }

  bool operator==(const RectMatrix& o) const {
    return source_ == o.source_ && target_ == o.target_ && scalars_ == o.scalars_;
  }

  // Explicit matrix between the fibers at a grid point, rows/cols indexed by
  // the bars containing it (in canonical bar order).
  Matrix<F> realize(const Point& at) const {
    auto rows = target_.bars_at(at);
    auto cols = source_.bars_at(at);
    Matrix<F> m(field(), static_cast<int>(rows.size()), static_cast<int>(cols.size()));
    for (std::size_t j = 0; j < rows.size(); ++j)
      for (std::size_t i = 0; i < cols.size(); ++i)
        m(static_cast<int>(j), static_cast<int>(i)) =
            scalars_(static_cast<int>(rows[j]), static_cast<int>(cols[i]));
    return m;
  }

 private:
  Barcode source_, target_;
  Matrix<F> scalars_;
};

// Composite g . f in matrix form. Scalar products are killed whenever the
// canonical composite falls through.
template <class F>
RectMatrix<F> mat_compose(const RectMatrix<F>& g, const RectMatrix<F>& f) {
  if (!(f.target() == g.source())) throw std::invalid_argument("mat_compose barcode mismatch");
  const F& fl = f.field();
  Matrix<F> out(fl, static_cast<int>(g.target().size()), static_cast<int>(f.source().size()));
  for (int k = 0; k < out.rows(); ++k)
    for (int i = 0; i < out.cols(); ++i) {
      auto acc = fl.zero();
      for (int j = 0; j < static_cast<int>(g.source().size()); ++j) {
        if (fl.is_zero(g.scalars()(k, j)) || fl.is_zero(f.scalars()(j, i))) continue;
        if (canonical_compose(f.source().bar(i), f.target().bar(j), g.target().bar(k)) == 0)
          continue;
        acc = fl.add(acc, fl.mul(g.scalars()(k, j), f.scalars()(j, i)));
      }
      out(k, i) = acc;
    }
  return RectMatrix<F>(f.source(), g.target(), std::move(out));
}

// A chain of barcodes with connecting morphisms; morphisms[k] maps rows[k]
// to rows[k+1], following the construction pipeline's left-to-right order.
template <class F>
struct StackDiagram {
  std::vector<Barcode> rows;
  std::vector<RectMatrix<F>> morphisms;

  void validate() const {
    if (rows.empty()) throw std::invalid_argument("StackDiagram needs at least one row");
    if (morphisms.size() + 1 != rows.size())
      throw std::invalid_argument("StackDiagram morphism count mismatch");
    for (std::size_t k = 0; k < morphisms.size(); ++k) {
      if (!(morphisms[k].source() == rows[k]) || !(morphisms[k].target() == rows[k + 1]))
        throw std::invalid_argument("StackDiagram morphism endpoints mismatch");
    }
    for (const auto& r : rows)
      if (r.dim() != rows[0].dim()) throw std::invalid_argument("StackDiagram row dim mismatch");
  }

  int row_dim() const { return rows.at(0).dim(); }

  bool operator==(const StackDiagram& o) const {
    return rows == o.rows && morphisms == o.morphisms;
  }
};

}  // namespace gridpm
