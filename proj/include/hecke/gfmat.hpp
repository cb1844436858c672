#pragma once

#include <cstdint>
#include <vector>

#include "hecke/ffield.hpp"

namespace hecke {

/// Dense matrix over a Field. Vectors are rows; a right module action is a
/// multiplicative assignment gamma -> M with v . gamma = v * M.
class Mat {
 public:
  Mat() : f_(nullptr), rows_(0), cols_(0) {}
  Mat(const Field* f, size_t rows, size_t cols)
      : f_(f), rows_(rows), cols_(cols), a_(rows * cols, 0) {}

  static Mat identity(const Field* f, size_t n);
  static Mat zero(const Field* f, size_t rows, size_t cols) {
    return Mat(f, rows, cols);
  }

  const Field* field() const { return f_; }
  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  Field::Elem& at(size_t r, size_t c) { return a_[r * cols_ + c]; }
  Field::Elem at(size_t r, size_t c) const { return a_[r * cols_ + c]; }
  const std::vector<Field::Elem>& data() const { return a_; }
  std::vector<Field::Elem>& data() { return a_; }

  bool operator==(const Mat& o) const {
    return f_ == o.f_ && rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
  }
  bool operator!=(const Mat& o) const { return !(*this == o); }

  Mat operator+(const Mat& o) const;
  Mat operator-(const Mat& o) const;
  Mat operator*(const Mat& o) const;
  Mat scaled(Field::Elem c) const;
  Mat transpose() const;
  bool is_zero() const;
  bool is_identity() const;

  Mat pow(uint64_t e) const;

  /// Row space echelon form (reduced), returns rank; *this is replaced.
  size_t rref();
  size_t rank() const;
  Mat inverse() const;  // throws if singular
  bool invertible() const;

  /// Solve x * A = b for a row vector x (A = *this). Returns true on success.
  bool solve_left(const std::vector<Field::Elem>& b,
                  std::vector<Field::Elem>& x) const;

  /// Basis of { v : v * A = 0 } as rows of a matrix (left null space).
  Mat left_nullspace() const;

  /// Rows of *this as a subspace: returns RREF basis matrix (rank rows).
  Mat row_basis() const;

  /// Kronecker product (this (x) o), compatible with row-vector convention:
  /// (v (x) w) * (A (x) B) = vA (x) wB.
  Mat kron(const Mat& o) const;

  /// Entry-wise field map (e.g. embedding or Frobenius).
  template <typename F>
  Mat map(const Field* nf, F&& fn) const {
    Mat r(nf, rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = fn(a_[i]);
    return r;
  }

  /// Minimal polynomial degree of the matrix (square only).
  size_t minpoly_degree() const;

 private:
  const Field* f_;
  size_t rows_, cols_;
  std::vector<Field::Elem> a_;
};

/// Span of given row vectors: returns RREF basis.
Mat row_span(const Field* f, const std::vector<std::vector<Field::Elem>>& rows,
             size_t ncols);

/// Sum of two row spaces (bases as rows), RREF basis.
Mat space_sum(const Mat& a, const Mat& b);

/// Intersection of two row spaces, RREF basis.
Mat space_intersect(const Mat& a, const Mat& b);

/// True iff row space of a contains row space of b.
bool space_contains(const Mat& a, const Mat& b);

/// Canonical key for a row space (its RREF entries), usable in maps.
std::vector<Field::Elem> space_key(const Mat& basis);

}  // namespace hecke
