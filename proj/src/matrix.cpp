#include "tclab/matrix.hpp"

#include <algorithm>

#include "tclab/errors.hpp"

namespace tclab {

namespace {

void normalize(std::vector<Triple>& t) {
  std::sort(t.begin(), t.end(), [](const Triple& a, const Triple& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  std::size_t out = 0;
  for (std::size_t i = 0; i < t.size();) {
    Triple acc = t[i];
    std::size_t j = i + 1;
    while (j < t.size() && t[j].row == acc.row && t[j].col == acc.col) acc.value += t[j++].value;
    if (!acc.value.is_zero()) t[out++] = std::move(acc);
    i = j;
  }
  t.resize(out);
}

}  // namespace

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols, std::vector<Triple> triples)
    : rows_(rows), cols_(cols), triples_(std::move(triples)) {
  for (const auto& t : triples_)
    if (t.row >= rows_ || t.col >= cols_) fail(ErrorCode::DimensionMismatch, "triple out of range");
  normalize(triples_);
}

IntMatrix IntMatrix::identity(std::size_t n) {
  std::vector<Triple> t;
  t.reserve(n);
  for (std::size_t i = 0; i < n; ++i) t.push_back({i, i, 1});
  IntMatrix m(n, n);
  m.triples_ = std::move(t);
  return m;
}

IntMatrix IntMatrix::from_dense(const DenseMatrix& d) {
  IntMatrix m(d.rows(), d.cols());
  for (std::size_t r = 0; r < d.rows(); ++r)
    for (std::size_t c = 0; c < d.cols(); ++c)
      if (!d(r, c).is_zero()) m.triples_.push_back({r, c, d(r, c)});
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<long long>>& rows) {
  std::size_t nc = rows.empty() ? 0 : rows[0].size();
  std::vector<Triple> t;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != nc) fail(ErrorCode::DimensionMismatch, "ragged rows");
    for (std::size_t c = 0; c < nc; ++c)
      if (rows[r][c] != 0) t.push_back({r, c, rows[r][c]});
  }
  return IntMatrix(rows.size(), nc, std::move(t));
}

Integer IntMatrix::at(std::size_t r, std::size_t c) const {
  auto it = std::lower_bound(triples_.begin(), triples_.end(), std::make_pair(r, c),
                             [](const Triple& t, const std::pair<std::size_t, std::size_t>& k) {
                               return t.row != k.first ? t.row < k.first : t.col < k.second;
                             });
  if (it != triples_.end() && it->row == r && it->col == c) return it->value;
  return 0;
}

DenseMatrix IntMatrix::to_dense() const {
  DenseMatrix d(rows_, cols_);
  for (const auto& t : triples_) d(t.row, t.col) = t.value;
  return d;
}

IntMatrix IntMatrix::transpose() const {
  std::vector<Triple> t;
  t.reserve(triples_.size());
  for (const auto& x : triples_) t.push_back({x.col, x.row, x.value});
  return IntMatrix(cols_, rows_, std::move(t));
}

Vec IntMatrix::apply(const Vec& x) const {
  if (x.size() != cols_) fail(ErrorCode::DimensionMismatch, "matrix-vector size");
  Vec y(rows_);
  for (const auto& t : triples_)
    if (!x[t.col].is_zero()) y[t.row] += t.value * x[t.col];
  return y;
}

IntMatrix IntMatrix::scaled(const Integer& s) const {
  std::vector<Triple> t;
  if (!s.is_zero())
    for (const auto& x : triples_) t.push_back({x.row, x.col, x.value * s});
  IntMatrix m(rows_, cols_);
  m.triples_ = std::move(t);
  return m;
}

IntMatrix IntMatrix::reduced_mod(const Integer& p) const {
  if (p.is_zero()) return *this;
  std::vector<Triple> t;
  for (const auto& x : triples_) {
    Integer v = mod_reduce(x.value, p);
    if (!v.is_zero()) t.push_back({x.row, x.col, v});
  }
  IntMatrix m(rows_, cols_);
  m.triples_ = std::move(t);
  return m;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) fail(ErrorCode::DimensionMismatch, "matrix product");
  // Row start offsets of b.
  std::vector<std::size_t> start(b.rows_ + 1, 0);
  for (const auto& t : b.triples_) ++start[t.row + 1];
  for (std::size_t i = 0; i < b.rows_; ++i) start[i + 1] += start[i];
  std::vector<Triple> out;
  std::vector<Integer> acc(b.cols_);
  std::vector<char> used(b.cols_, 0);
  std::vector<std::size_t> touched;
  std::size_t i = 0;
  while (i < a.triples_.size()) {
    std::size_t row = a.triples_[i].row;
    touched.clear();
    for (; i < a.triples_.size() && a.triples_[i].row == row; ++i) {
      const auto& x = a.triples_[i];
      for (std::size_t k = start[x.col]; k < start[x.col + 1]; ++k) {
        const auto& y = b.triples_[k];
        if (!used[y.col]) {
          used[y.col] = 1;
          touched.push_back(y.col);
          acc[y.col] = x.value * y.value;
        } else {
          acc[y.col] += x.value * y.value;
        }
      }
    }
    std::sort(touched.begin(), touched.end());
    for (auto c : touched) {
      if (!acc[c].is_zero()) out.push_back({row, c, acc[c]});
      used[c] = 0;
    }
  }
  IntMatrix m(a.rows_, b.cols_);
  m.triples_ = std::move(out);
  return m;
}

IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) fail(ErrorCode::DimensionMismatch, "matrix sum");
  std::vector<Triple> t = a.triples_;
  t.insert(t.end(), b.triples_.begin(), b.triples_.end());
  return IntMatrix(a.rows_, a.cols_, std::move(t));
}

IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) { return a + b.scaled(-1); }

bool operator==(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_ || a.triples_.size() != b.triples_.size()) return false;
  for (std::size_t i = 0; i < a.triples_.size(); ++i) {
    const auto &x = a.triples_[i], &y = b.triples_[i];
    if (x.row != y.row || x.col != y.col || x.value != y.value) return false;
  }
  return true;
}

IntMatrix IntMatrix::kronecker(const IntMatrix& a, const IntMatrix& b) {
  std::vector<Triple> t;
  t.reserve(a.nnz() * b.nnz());
  for (const auto& x : a.triples_)
    for (const auto& y : b.triples_)
      t.push_back({x.row * b.rows_ + y.row, x.col * b.cols_ + y.col, x.value * y.value});
  return IntMatrix(a.rows_ * b.rows_, a.cols_ * b.cols_, std::move(t));
}

IntMatrix IntMatrix::hstack(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows_ != b.rows_) fail(ErrorCode::DimensionMismatch, "hstack");
  std::vector<Triple> t = a.triples_;
  for (const auto& y : b.triples_) t.push_back({y.row, y.col + a.cols_, y.value});
  return IntMatrix(a.rows_, a.cols_ + b.cols_, std::move(t));
}

IntMatrix IntMatrix::vstack(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.cols_) fail(ErrorCode::DimensionMismatch, "vstack");
  std::vector<Triple> t = a.triples_;
  for (const auto& y : b.triples_) t.push_back({y.row + a.rows_, y.col, y.value});
  return IntMatrix(a.rows_ + b.rows_, a.cols_, std::move(t));
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix d(n, n);
  for (std::size_t i = 0; i < n; ++i) d(i, i) = 1;
  return d;
}

DenseMatrix DenseMatrix::from_columns(std::size_t rows, const std::vector<Vec>& cols) {
  DenseMatrix d(rows, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    if (cols[c].size() != rows) fail(ErrorCode::DimensionMismatch, "column length");
    for (std::size_t r = 0; r < rows; ++r) d(r, c) = cols[c][r];
  }
  return d;
}

Vec DenseMatrix::column(std::size_t c) const {
  Vec v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

Vec DenseMatrix::row(std::size_t r) const {
  return Vec(data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_);
}

Vec DenseMatrix::apply(const Vec& x) const {
  if (x.size() != cols_) fail(ErrorCode::DimensionMismatch, "dense matrix-vector size");
  Vec y(rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if (!x[c].is_zero() && !(*this)(r, c).is_zero()) y[r] += (*this)(r, c) * x[c];
  return y;
}

DenseMatrix DenseMatrix::transpose() const {
  DenseMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

DenseMatrix DenseMatrix::select_columns(std::size_t begin, std::size_t end) const {
  DenseMatrix d(rows_, end - begin);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = begin; c < end; ++c) d(r, c - begin) = (*this)(r, c);
  return d;
}

DenseMatrix DenseMatrix::select_rows(std::size_t begin, std::size_t end) const {
  DenseMatrix d(end - begin, cols_);
  for (std::size_t r = begin; r < end; ++r)
    for (std::size_t c = 0; c < cols_; ++c) d(r - begin, c) = (*this)(r, c);
  return d;
}

bool DenseMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Integer& x) { return x.is_zero(); });
}

void DenseMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
}

void DenseMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, a), (*this)(r, b));
}

void DenseMatrix::add_row(std::size_t dst, std::size_t src, const Integer& f) {
  if (f.is_zero()) return;
  for (std::size_t c = 0; c < cols_; ++c)
    if (!(*this)(src, c).is_zero()) (*this)(dst, c) += f * (*this)(src, c);
}

void DenseMatrix::add_col(std::size_t dst, std::size_t src, const Integer& f) {
  if (f.is_zero()) return;
  for (std::size_t r = 0; r < rows_; ++r)
    if (!(*this)(r, src).is_zero()) (*this)(r, dst) += f * (*this)(r, src);
}

void DenseMatrix::negate_row(std::size_t r) {
  for (std::size_t c = 0; c < cols_; ++c) (*this)(r, c) = -(*this)(r, c);
}

void DenseMatrix::negate_col(std::size_t c) {
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = -(*this)(r, c);
}

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols_ != b.rows_) fail(ErrorCode::DimensionMismatch, "dense product");
  DenseMatrix out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Integer& x = a(i, k);
      if (x.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j)
        if (!b(k, j).is_zero()) out(i, j) += x * b(k, j);
    }
  return out;
}

bool operator==(const DenseMatrix& a, const DenseMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

Vec zero_vec(std::size_t n) { return Vec(n); }

bool is_zero(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](const Integer& x) { return x.is_zero(); });
}

Vec add(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) fail(ErrorCode::DimensionMismatch, "vector sum");
  Vec r(a);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

Vec sub(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) fail(ErrorCode::DimensionMismatch, "vector difference");
  Vec r(a);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return r;
}

Vec scale(const Vec& a, const Integer& s) {
  Vec r(a);
  for (auto& x : r) x *= s;
  return r;
}

Vec reduce_mod(const Vec& a, const Integer& p) {
  if (p.is_zero()) return a;
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = mod_reduce(a[i], p);
  return r;
}

Vec unit_vec(std::size_t n, std::size_t i) {
  Vec v(n);
  v[i] = 1;
  return v;
}

}  // namespace tclab
