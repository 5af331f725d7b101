#pragma once

#include <cstddef>
#include <vector>

#include "tclab/integer.hpp"

namespace tclab {

using Vec = std::vector<Integer>;

struct Triple {
  std::size_t row;
  std::size_t col;
  Integer value;
};

class DenseMatrix;

// Sparse integer matrix stored as sorted (row, col, value) triples without zeros.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}
  // Accepts triples in any order; duplicates are summed and zeros dropped.
  IntMatrix(std::size_t rows, std::size_t cols, std::vector<Triple> triples);

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_dense(const DenseMatrix& d);
  static IntMatrix from_rows(const std::vector<std::vector<long long>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const std::vector<Triple>& triples() const { return triples_; }
  std::size_t nnz() const { return triples_.size(); }
  bool is_zero() const { return triples_.empty(); }

  Integer at(std::size_t r, std::size_t c) const;
  DenseMatrix to_dense() const;
  IntMatrix transpose() const;
  Vec apply(const Vec& x) const;
  IntMatrix scaled(const Integer& s) const;
  // Reduce entries into [0, p); p = 0 leaves the matrix unchanged.
  IntMatrix reduced_mod(const Integer& p) const;

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b);

  // Kronecker product: entry ((i*b.rows + k), (j*b.cols + l)) = a(i,j) b(k,l).
  static IntMatrix kronecker(const IntMatrix& a, const IntMatrix& b);
  // [a | b] and [a ; b].
  static IntMatrix hstack(const IntMatrix& a, const IntMatrix& b);
  static IntMatrix vstack(const IntMatrix& a, const IntMatrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Triple> triples_;
};

class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static DenseMatrix identity(std::size_t n);
  static DenseMatrix from_columns(std::size_t rows, const std::vector<Vec>& cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Vec column(std::size_t c) const;
  Vec row(std::size_t r) const;
  Vec apply(const Vec& x) const;
  DenseMatrix transpose() const;
  DenseMatrix select_columns(std::size_t begin, std::size_t end) const;
  DenseMatrix select_rows(std::size_t begin, std::size_t end) const;
  bool is_zero() const;

  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  // row[dst] += f * row[src]
  void add_row(std::size_t dst, std::size_t src, const Integer& f);
  void add_col(std::size_t dst, std::size_t src, const Integer& f);
  void negate_row(std::size_t r);
  void negate_col(std::size_t c);

  friend DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b);
  friend bool operator==(const DenseMatrix& a, const DenseMatrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

Vec zero_vec(std::size_t n);
bool is_zero(const Vec& v);
Vec add(const Vec& a, const Vec& b);
Vec sub(const Vec& a, const Vec& b);
Vec scale(const Vec& a, const Integer& s);
Vec reduce_mod(const Vec& a, const Integer& p);
Vec unit_vec(std::size_t n, std::size_t i);

}  // namespace tclab
