#include "hecke/gfmat.hpp"

#include <algorithm>

namespace hecke {

Mat Mat::identity(const Field* f, size_t n) {
  Mat m(f, n, n);
  for (size_t i = 0; i < n; ++i) m.at(i, i) = f->one();
  return m;
}

Mat Mat::operator+(const Mat& o) const {
  Mat r(f_, rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = f_->add(a_[i], o.a_[i]);
  return r;
}

Mat Mat::operator-(const Mat& o) const {
  Mat r(f_, rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = f_->sub(a_[i], o.a_[i]);
  return r;
}

Mat Mat::operator*(const Mat& o) const {
  if (cols_ != o.rows_) throw HeckeError("mat: shape mismatch");
  Mat r(f_, rows_, o.cols_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t k = 0; k < cols_; ++k) {
      Field::Elem v = a_[i * cols_ + k];
      if (v == 0) continue;
      for (size_t j = 0; j < o.cols_; ++j) {
        Field::Elem w = o.a_[k * o.cols_ + j];
        if (w == 0) continue;
        r.a_[i * o.cols_ + j] =
            f_->add(r.a_[i * o.cols_ + j], f_->mul(v, w));
      }
    }
  return r;
}

Mat Mat::scaled(Field::Elem c) const {
  Mat r(f_, rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = f_->mul(a_[i], c);
  return r;
}

Mat Mat::transpose() const {
  Mat r(f_, cols_, rows_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
  return r;
}

bool Mat::is_zero() const {
  for (auto v : a_)
    if (v != 0) return false;
  return true;
}

bool Mat::is_identity() const {
  if (rows_ != cols_) return false;
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j)
      if (at(i, j) != (i == j ? f_->one() : f_->zero())) return false;
  return true;
}

Mat Mat::pow(uint64_t e) const {
  Mat r = identity(f_, rows_);
  Mat b = *this;
  while (e) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

size_t Mat::rref() {
  size_t row = 0;
  for (size_t col = 0; col < cols_ && row < rows_; ++col) {
    size_t sel = row;
    while (sel < rows_ && at(sel, col) == 0) ++sel;
    if (sel == rows_) continue;
    for (size_t j = 0; j < cols_; ++j) std::swap(at(sel, j), at(row, j));
    Field::Elem inv = f_->inv(at(row, col));
    for (size_t j = 0; j < cols_; ++j) at(row, j) = f_->mul(at(row, j), inv);
    for (size_t r2 = 0; r2 < rows_; ++r2) {
      if (r2 == row) continue;
      Field::Elem c = at(r2, col);
      if (c == 0) continue;
      for (size_t j = 0; j < cols_; ++j)
        at(r2, j) = f_->sub(at(r2, j), f_->mul(c, at(row, j)));
    }
    ++row;
  }
  return row;
}

size_t Mat::rank() const {
  Mat c = *this;
  return c.rref();
}

bool Mat::invertible() const { return rows_ == cols_ && rank() == rows_; }

Mat Mat::inverse() const {
  if (rows_ != cols_) throw HeckeError("mat: not square");
  Mat aug(f_, rows_, 2 * cols_);
  for (size_t i = 0; i < rows_; ++i) {
    for (size_t j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
    aug.at(i, cols_ + i) = f_->one();
  }
  size_t r = aug.rref();
  if (r != rows_) throw HeckeError("mat: singular");
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j)
      if (aug.at(i, j) != (i == j ? f_->one() : f_->zero()))
        throw HeckeError("mat: singular");
  Mat inv(f_, rows_, cols_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j) inv.at(i, j) = aug.at(i, cols_ + j);
  return inv;
}

bool Mat::solve_left(const std::vector<Field::Elem>& b,
                     std::vector<Field::Elem>& x) const {
  // x * A = b  <=>  A^T x^T = b^T
  Mat t = transpose();
  Mat aug(f_, t.rows(), t.cols() + 1);
  for (size_t i = 0; i < t.rows(); ++i) {
    for (size_t j = 0; j < t.cols(); ++j) aug.at(i, j) = t.at(i, j);
    aug.at(i, t.cols()) = b[i];
  }
  aug.rref();
  x.assign(rows_, 0);
  // back-substitute from RREF
  std::vector<int> pivot_of_col(t.cols(), -1);
  for (size_t i = 0; i < aug.rows(); ++i) {
    size_t lead = t.cols() + 1;
    for (size_t j = 0; j < t.cols(); ++j)
      if (aug.at(i, j) != 0) {
        lead = j;
        break;
      }
    if (lead == t.cols() + 1) {
      if (aug.at(i, t.cols()) != 0) return false;  // inconsistent
      continue;
    }
    pivot_of_col[lead] = (int)i;
  }
  for (size_t j = 0; j < t.cols(); ++j)
    if (pivot_of_col[j] >= 0) x[j] = aug.at((size_t)pivot_of_col[j], t.cols());
  // verify (guards against free-variable columns)
  std::vector<Field::Elem> check(cols_, 0);
  for (size_t i = 0; i < rows_; ++i) {
    if (x[i] == 0) continue;
    for (size_t j = 0; j < cols_; ++j)
      check[j] = f_->add(check[j], f_->mul(x[i], at(i, j)));
  }
  return check == b;
}

Mat Mat::left_nullspace() const {
  // v * A = 0 <=> A^T v^T = 0: compute nullspace of A^T by RREF
  Mat t = transpose();
  Mat r = t;
  r.rref();
  std::vector<int> pivot_col;
  std::vector<bool> is_pivot(t.cols(), false);
  size_t ri = 0;
  for (; ri < r.rows(); ++ri) {
    size_t lead = t.cols();
    for (size_t j = 0; j < t.cols(); ++j)
      if (r.at(ri, j) != 0) {
        lead = j;
        break;
      }
    if (lead == t.cols()) break;
    pivot_col.push_back((int)lead);
    is_pivot[lead] = true;
  }
  size_t rank = pivot_col.size();
  size_t nfree = t.cols() - rank;
  Mat basis(f_, nfree, t.cols());
  size_t bi = 0;
  for (size_t j = 0; j < t.cols(); ++j) {
    if (is_pivot[j]) continue;
    basis.at(bi, j) = f_->one();
    for (size_t i = 0; i < rank; ++i) {
      // pivot variable pivot_col[i] = -sum free colunms
      basis.at(bi, (size_t)pivot_col[i]) = f_->neg(r.at(i, j));
    }
    ++bi;
  }
  return basis;
}

Mat Mat::row_basis() const {
  Mat r = *this;
  size_t rank = r.rref();
  Mat b(f_, rank, cols_);
  for (size_t i = 0; i < rank; ++i)
    for (size_t j = 0; j < cols_; ++j) b.at(i, j) = r.at(i, j);
  return b;
}

Mat Mat::kron(const Mat& o) const {
  Mat r(f_, rows_ * o.rows_, cols_ * o.cols_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j) {
      Field::Elem v = at(i, j);
      if (v == 0) continue;
      for (size_t k = 0; k < o.rows_; ++k)
        for (size_t l = 0; l < o.cols_; ++l)
          r.at(i * o.rows_ + k, j * o.cols_ + l) = f_->mul(v, o.at(k, l));
    }
  return r;
}

size_t Mat::minpoly_degree() const {
  if (rows_ != cols_) throw HeckeError("mat: not square");
  // Degree of minimal polynomial: smallest d with I, A, ..., A^d dependent.
  std::vector<Mat> powers;
  powers.push_back(identity(f_, rows_));
  for (size_t d = 1; d <= rows_; ++d) {
    powers.push_back(powers.back() * (*this));
    Mat stack(f_, d + 1, rows_ * cols_);
    for (size_t i = 0; i <= d; ++i)
      for (size_t j = 0; j < rows_ * cols_; ++j)
        stack.at(i, j) = powers[i].data()[j];
    if (stack.rank() <= d) return d;
  }
  return rows_;
}

Mat row_span(const Field* f, const std::vector<std::vector<Field::Elem>>& rows,
             size_t ncols) {
  Mat m(f, rows.size(), ncols);
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < ncols; ++j) m.at(i, j) = rows[i][j];
  return m.row_basis();
}

Mat space_sum(const Mat& a, const Mat& b) {
  Mat m(a.field(), a.rows() + b.rows(), a.cols());
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t j = 0; j < a.cols(); ++j) m.at(i, j) = a.at(i, j);
  for (size_t i = 0; i < b.rows(); ++i)
    for (size_t j = 0; j < a.cols(); ++j) m.at(a.rows() + i, j) = b.at(i, j);
  return m.row_basis();
}

Mat space_intersect(const Mat& a, const Mat& b) {
  // Zassenhaus: rows [A | A], [B | 0] -> echelon; rows with zero left half
  // have right half spanning the intersection.
  const Field* f = a.field();
  size_t n = a.cols();
  Mat m(f, a.rows() + b.rows(), 2 * n);
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t j = 0; j < n; ++j) {
      m.at(i, j) = a.at(i, j);
      m.at(i, n + j) = a.at(i, j);
    }
  for (size_t i = 0; i < b.rows(); ++i)
    for (size_t j = 0; j < n; ++j) m.at(a.rows() + i, j) = b.at(i, j);
  m.rref();
  std::vector<std::vector<Field::Elem>> inter;
  for (size_t i = 0; i < m.rows(); ++i) {
    bool leftzero = true;
    for (size_t j = 0; j < n; ++j)
      if (m.at(i, j) != 0) {
        leftzero = false;
        break;
      }
    if (!leftzero) continue;
    std::vector<Field::Elem> row(n);
    bool nonzero = false;
    for (size_t j = 0; j < n; ++j) {
      row[j] = m.at(i, n + j);
      if (row[j] != 0) nonzero = true;
    }
    if (nonzero) inter.push_back(row);
  }
  return row_span(f, inter, n);
}

bool space_contains(const Mat& a, const Mat& b) {
  Mat s = space_sum(a, b);
  return s.rows() == a.row_basis().rows();
}

std::vector<Field::Elem> space_key(const Mat& basis) {
  Mat b = basis.row_basis();
  std::vector<Field::Elem> key;
  key.push_back((Field::Elem)b.rows());
  for (auto v : b.data()) key.push_back(v);
  return key;
}

}  // namespace hecke
