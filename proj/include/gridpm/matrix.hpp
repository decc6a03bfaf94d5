#pragma once

#include <cassert>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

#include "gridpm/field.hpp"

namespace gridpm {

// Dense row-major matrix over one of the exact scalar domains.
template <class F>
class Matrix {
 public:
  using elem = typename F::elem;

  Matrix(F f, int rows, int cols)
      : field_(f), rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, f.zero()) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix dimension");
  }

  static Matrix identity(F f, int n) {
    Matrix m(f, n, n);
    for (int i = 0; i < n; ++i) m(i, i) = f.one();
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const F& field() const { return field_; }

  const elem& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }
  elem& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }

  void set_int(int i, int j, long long v) { (*this)(i, j) = field_.from_int(v); }

  bool operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
  }

  bool is_zero() const {
    for (const auto& e : a_)
      if (!field_.is_zero(e)) return false;
    return true;
  }

  bool is_identity() const {
    if (rows_ != cols_) return false;
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j)
        if (!((*this)(i, j) == (i == j ? field_.one() : field_.zero()))) return false;
    return true;
  }

  Matrix mul(const Matrix& rhs) const {
    if (cols_ != rhs.rows_) throw std::invalid_argument("matmul dimension mismatch");
    Matrix out(field_, rows_, rhs.cols_);
    for (int i = 0; i < rows_; ++i)
      for (int k = 0; k < cols_; ++k) {
        const elem& aik = (*this)(i, k);
        if (field_.is_zero(aik)) continue;
        for (int j = 0; j < rhs.cols_; ++j)
          out(i, j) = field_.add(out(i, j), field_.mul(aik, rhs(k, j)));
      }
    return out;
  }

  Matrix add(const Matrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw std::invalid_argument("add mismatch");
    Matrix out(field_, rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) out.a_[i] = field_.add(a_[i], rhs.a_[i]);
    return out;
  }

  Matrix scaled(const elem& c) const {
    Matrix out(field_, rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) out.a_[i] = field_.mul(a_[i], c);
    return out;
  }

  Matrix transpose() const {
    Matrix out(field_, cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
    return out;
  }

  int rank() const {
    if constexpr (std::is_same_v<F, RationalField>) {
      return bareiss_rank();
    } else {
      Matrix w = *this;
      int rk = 0;
      for (int col = 0; col < cols_ && rk < rows_; ++col) {
        int piv = -1;
        for (int r = rk; r < rows_; ++r)
          if (!field_.is_zero(w(r, col))) {
            piv = r;
            break;
          }
        if (piv < 0) continue;
        w.swap_rows(piv, rk);
        elem inv = field_.inv(w(rk, col));
        for (int j = col; j < cols_; ++j) w(rk, j) = field_.mul(w(rk, j), inv);
        for (int r = 0; r < rows_; ++r) {
          if (r == rk || field_.is_zero(w(r, col))) continue;
          elem c = w(r, col);
          for (int j = col; j < cols_; ++j)
            w(r, j) = field_.sub(w(r, j), field_.mul(c, w(rk, j)));
        }
        ++rk;
      }
      return rk;
    }
  }

  // Basis of {v : (*this) v = 0}, one column vector per free column of the
  // reduced echelon form. Deterministic: free columns ascending, entries are
  // the unique solution with that free variable set to one.
  std::vector<std::vector<elem>> nullspace_basis() const {
    Matrix w = *this;
    std::vector<int> pivot_col;  // pivot column of echelon row k
    int rk = 0;
    for (int col = 0; col < cols_ && rk < rows_; ++col) {
      int piv = -1;
      for (int r = rk; r < rows_; ++r)
        if (!field_.is_zero(w(r, col))) {
          piv = r;
          break;
        }
      if (piv < 0) continue;
      w.swap_rows(piv, rk);
      elem inv = field_.inv(w(rk, col));
      for (int j = col; j < cols_; ++j) w(rk, j) = field_.mul(w(rk, j), inv);
      for (int r = 0; r < rows_; ++r) {
        if (r == rk || field_.is_zero(w(r, col))) continue;
        elem c = w(r, col);
        for (int j = col; j < cols_; ++j) w(r, j) = field_.sub(w(r, j), field_.mul(c, w(rk, j)));
      }
      pivot_col.push_back(col);
      ++rk;
    }
    std::vector<bool> is_pivot(cols_, false);
    for (int c : pivot_col) is_pivot[c] = true;
    std::vector<std::vector<elem>> basis;
    for (int fc = 0; fc < cols_; ++fc) {
      if (is_pivot[fc]) continue;
      std::vector<elem> v(cols_, field_.zero());
      v[fc] = field_.one();
      for (int k = 0; k < rk; ++k) v[pivot_col[k]] = field_.neg(w(k, fc));
      basis.push_back(std::move(v));
    }
    return basis;
  }

  std::vector<elem> apply(const std::vector<elem>& v) const {
    if (static_cast<int>(v.size()) != cols_) throw std::invalid_argument("apply mismatch");
    std::vector<elem> out(rows_, field_.zero());
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j)
        out[i] = field_.add(out[i], field_.mul((*this)(i, j), v[j]));
    return out;
  }

  // Stable content key, used for constraint deduplication.
  std::string key() const {
    std::string s = std::to_string(rows_) + "x" + std::to_string(cols_) + ":";
    for (const auto& e : a_) {
      s += field_.to_string(e);
      s += ',';
    }
    return s;
  }

 private:
  void swap_rows(int r, int s) {
    if (r == s) return;
    for (int j = 0; j < cols_; ++j) std::swap((*this)(r, j), (*this)(s, j));
  }

  // Fraction-free elimination on the integerized matrix; exact ranks without
  // intermediate fraction blow-up.
  int bareiss_rank() const {
    std::vector<std::vector<mpz_class>> m(rows_, std::vector<mpz_class>(cols_));
    for (int i = 0; i < rows_; ++i) {
      mpz_class den_lcm = 1;
      for (int j = 0; j < cols_; ++j) {
        const mpq_class& q = (*this)(i, j);
        mpz_class d = q.get_den();
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), den_lcm.get_mpz_t(), d.get_mpz_t());
        den_lcm = den_lcm / g * d;
      }
      for (int j = 0; j < cols_; ++j) {
        mpq_class q = (*this)(i, j) * den_lcm;
        m[i][j] = q.get_num();  // denominator is 1 now
      }
    }
    mpz_class prev = 1;
    int rk = 0;
    for (int col = 0; col < cols_ && rk < rows_; ++col) {
      int piv = -1;
      for (int r = rk; r < rows_; ++r)
        if (m[r][col] != 0) {
          piv = r;
          break;
        }
      if (piv < 0) continue;
      std::swap(m[piv], m[rk]);
      for (int r = rk + 1; r < rows_; ++r) {
        for (int j = col + 1; j < cols_; ++j) {
          mpz_class t = m[rk][col] * m[r][j] - m[r][col] * m[rk][j];
          mpz_divexact(m[r][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        }
        m[r][col] = 0;
      }
      prev = m[rk][col];
      ++rk;
    }
    return rk;
  }

  F field_;
  int rows_, cols_;
  std::vector<elem> a_;
};

}  // namespace gridpm
