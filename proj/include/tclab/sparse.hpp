#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "tclab/abelian.hpp"
#include "tclab/matrix.hpp"

namespace tclab {

// Row-major sparse matrix under unit-pivot elimination. Entries are kept reduced
// modulo `modulus` when it is nonzero.
class SparseRows {
 public:
  struct Entry {
    std::uint32_t col;
    Integer value;
  };
  using Row = std::vector<Entry>;

  SparseRows(const IntMatrix& m, const Integer& modulus);

  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return col_count_.size(); }
  bool row_alive(std::size_t r) const { return row_alive_[r]; }
  bool col_alive(std::size_t c) const { return col_alive_[c]; }
  const Row& row(std::size_t r) const { return rows_[r]; }
  std::size_t col_count(std::size_t c) const { return col_count_[c]; }
  const Integer& modulus() const { return p_; }
  bool is_unit(const Integer& x) const { return p_.is_zero() ? x.is_unit() : !x.is_zero(); }

  // Rows currently holding an entry in column c.
  std::vector<std::uint32_t> rows_in_col(std::size_t c);
  // Clears column c from every other row using pivot (r, c); returns (row, factor)
  // pairs with row += factor * pivot_row. The pivot row and column die.
  std::vector<std::pair<std::uint32_t, Integer>> eliminate(std::size_t r, std::size_t c);
  void kill_row(std::size_t r);
  void kill_col(std::size_t c);

  // Chooses a unit pivot by a Markowitz-style sweep; false when none remains.
  bool pick_pivot(std::size_t& r, std::size_t& c);
  double active_density() const;
  std::size_t live_rows() const { return live_rows_; }
  std::size_t live_cols() const { return live_cols_; }
  DenseMatrix active_dense(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const;

 private:
  Integer norm(const Integer& x) const { return p_.is_zero() ? x : mod_reduce(x, p_); }
  void add_row(std::size_t dst, std::size_t src, const Integer& f);

  Integer p_;
  std::vector<Row> rows_;
  std::vector<std::vector<std::uint32_t>> col_rows_;
  std::vector<std::size_t> col_count_;
  std::vector<char> row_alive_, col_alive_;
  std::size_t live_rows_ = 0, live_cols_ = 0, nnz_ = 0;
  std::vector<std::uint32_t> mark_;
  std::uint32_t stamp_ = 0;
  std::vector<std::size_t> pass_order_;
  std::size_t pass_pos_ = 0;
  bool pass_found_ = false, pass_started_ = false;
};

// Factorization of M for repeated solves of M x = v.
class SparseSolver {
 public:
  explicit SparseSolver(const IntMatrix& m, const Integer& modulus = 0);
  std::optional<Vec> solve(const Vec& v) const;
  std::size_t rows() const { return nrows_; }
  std::size_t cols() const { return ncols_; }

 private:
  struct Step {
    std::uint32_t row, col;
    Integer pivot_inv;
    SparseRows::Row pivot_row;
    std::vector<std::pair<std::uint32_t, Integer>> ops;
  };
  std::size_t nrows_, ncols_;
  Integer p_;
  std::vector<Step> steps_;
  std::vector<std::size_t> rest_rows_, rest_cols_;
  SmithForm rest_;
};

std::optional<Vec> membership(const IntMatrix& m, const Vec& v, const Integer& modulus = 0);

// ker(d_out)/im(d_in) in a diagonal presentation with projection and lift.
class Homology {
 public:
  const PresentedAbelianGroup& group() const { return group_; }
  const Integer& modulus() const { return p_; }
  std::size_t ambient() const { return n_; }
  std::size_t generator_count() const { return factors_.size(); }
  const Vec& factors() const { return factors_; }
  // Coordinates of a cycle, reduced modulo the factors.
  Vec project(const Vec& cycle) const;
  // A cycle representing the given coordinates.
  Vec lift(const Vec& coords) const;

 private:
  friend Homology homology_at(const IntMatrix&, const IntMatrix&, const Integer&);
  struct OutStep {
    std::uint32_t col;
    Integer pivot_inv;
    SparseRows::Row row;
  };
  struct InStep {
    std::uint32_t row;
    std::vector<std::pair<std::uint32_t, Integer>> ops;
  };
  struct Event {
    bool out;
    std::size_t index;
  };
  Integer p_ = 0;
  std::size_t n_ = 0;
  std::vector<OutStep> out_steps_;
  std::vector<InStep> in_steps_;
  std::vector<std::size_t> rest_;  // surviving coordinates
  DenseMatrix proj_;               // rest -> kept coordinates
  DenseMatrix lift_;               // kept coordinates -> rest
  Vec factors_;
  PresentedAbelianGroup group_;
};

// Over Z when modulus = 0; over F_p (the complex tensored with Z/p) otherwise.
Homology homology_at(const IntMatrix& d_in, const IntMatrix& d_out, const Integer& modulus = 0);

}  // namespace tclab
