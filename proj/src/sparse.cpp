#include "tclab/sparse.hpp"

#include <algorithm>
#include <numeric>

#include "tclab/errors.hpp"

namespace tclab {

namespace {

// Above this density the remaining block is handed to the dense Smith form.
constexpr double kDenseFallback = 0.30;
// Blocks this small are cheap either way; keep eliminating sparsely.
constexpr std::size_t kDenseMinCells = 4096;

const Integer* find_entry(const SparseRows::Row& row, std::size_t c) {
  auto it = std::lower_bound(row.begin(), row.end(), c,
                             [](const SparseRows::Entry& e, std::size_t k) { return e.col < k; });
  if (it != row.end() && it->col == c) return &it->value;
  return nullptr;
}

}  // namespace

SparseRows::SparseRows(const IntMatrix& m, const Integer& modulus)
    : p_(modulus),
      rows_(m.rows()),
      col_rows_(m.cols()),
      col_count_(m.cols(), 0),
      row_alive_(m.rows(), 1),
      col_alive_(m.cols(), 1),
      live_rows_(m.rows()),
      live_cols_(m.cols()),
      mark_(m.rows(), 0) {
  for (const auto& t : m.triples()) {
    Integer v = norm(t.value);
    if (v.is_zero()) continue;
    rows_[t.row].push_back({static_cast<std::uint32_t>(t.col), v});
    col_rows_[t.col].push_back(static_cast<std::uint32_t>(t.row));
    ++col_count_[t.col];
    ++nnz_;
  }
}

std::vector<std::uint32_t> SparseRows::rows_in_col(std::size_t c) {
  ++stamp_;
  auto& list = col_rows_[c];
  std::size_t out = 0;
  for (std::size_t i = 0; i < list.size(); ++i) {
    std::uint32_t r = list[i];
    if (!row_alive_[r] || mark_[r] == stamp_ || !find_entry(rows_[r], c)) continue;
    mark_[r] = stamp_;
    list[out++] = r;
  }
  list.resize(out);
  return list;
}

void SparseRows::add_row(std::size_t dst, std::size_t src, const Integer& f) {
  const Row& a = rows_[dst];
  const Row& b = rows_[src];
  Row merged;
  merged.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].col < b[j].col)) {
      merged.push_back(a[i++]);
    } else if (i == a.size() || b[j].col < a[i].col) {
      if (col_alive_[b[j].col]) {
        Integer v = norm(f * b[j].value);
        if (!v.is_zero()) {
          merged.push_back({b[j].col, v});
          col_rows_[b[j].col].push_back(static_cast<std::uint32_t>(dst));
          ++col_count_[b[j].col];
          ++nnz_;
        }
      }
      ++j;
    } else {
      Integer v = norm(a[i].value + f * b[j].value);
      if (!v.is_zero()) {
        merged.push_back({a[i].col, v});
      } else {
        --col_count_[a[i].col];
        --nnz_;
      }
      ++i;
      ++j;
    }
  }
  rows_[dst] = std::move(merged);
}

std::vector<std::pair<std::uint32_t, Integer>> SparseRows::eliminate(std::size_t r, std::size_t c) {
  const Integer* piv = find_entry(rows_[r], c);
  if (!piv || !is_unit(*piv)) fail(ErrorCode::InvalidInput, "pivot is not a unit");
  Integer inv = unit_inverse(*piv, p_);
  std::vector<std::pair<std::uint32_t, Integer>> ops;
  for (std::uint32_t other : rows_in_col(c)) {
    if (other == r) continue;
    Integer f = norm(-(*find_entry(rows_[other], c)) * inv);
    add_row(other, r, f);
    ops.emplace_back(other, f);
  }
  // Retire the pivot row but keep its storage for the caller.
  row_alive_[r] = 0;
  --live_rows_;
  for (const auto& e : rows_[r]) {
    --col_count_[e.col];
    --nnz_;
  }
  col_alive_[c] = 0;
  --live_cols_;
  return ops;
}

void SparseRows::kill_row(std::size_t r) {
  if (!row_alive_[r]) return;
  row_alive_[r] = 0;
  --live_rows_;
  for (const auto& e : rows_[r]) {
    --col_count_[e.col];
    --nnz_;
  }
  Row().swap(rows_[r]);
}

void SparseRows::kill_col(std::size_t c) {
  if (!col_alive_[c]) return;
  for (std::uint32_t r : rows_in_col(c)) {
    Row& row = rows_[r];
    auto it = std::lower_bound(row.begin(), row.end(), c, [](const Entry& e, std::size_t k) { return e.col < k; });
    row.erase(it);
    --col_count_[c];
    --nnz_;
  }
  col_rows_[c].clear();
  col_alive_[c] = 0;
  --live_cols_;
}

bool SparseRows::pick_pivot(std::size_t& r, std::size_t& c) {
  // Sweeps rows shortest first, taking in each row the unit whose column is
  // sparsest. A new sweep starts only if the previous one found something.
  for (;;) {
    while (pass_pos_ < pass_order_.size()) {
      std::size_t i = pass_order_[pass_pos_++];
      if (!row_alive_[i] || rows_[i].empty()) continue;
      std::size_t bc = SIZE_MAX, cpick = 0;
      for (const auto& e : rows_[i])
        if (col_alive_[e.col] && is_unit(e.value) && col_count_[e.col] < bc) {
          bc = col_count_[e.col];
          cpick = e.col;
        }
      if (bc == SIZE_MAX) continue;
      pass_found_ = true;
      r = i;
      c = cpick;
      return true;
    }
    if (!pass_found_ && pass_started_) return false;
    pass_started_ = true;
    pass_found_ = false;
    pass_order_.clear();
    pass_pos_ = 0;
    for (std::size_t i = 0; i < rows_.size(); ++i)
      if (row_alive_[i] && !rows_[i].empty()) pass_order_.push_back(i);
    std::stable_sort(pass_order_.begin(), pass_order_.end(),
                     [&](std::size_t x, std::size_t y) { return rows_[x].size() < rows_[y].size(); });
    if (pass_order_.empty()) return false;
  }
}

double SparseRows::active_density() const {
  if (live_rows_ == 0 || live_cols_ == 0) return 0.0;
  return static_cast<double>(nnz_) / (static_cast<double>(live_rows_) * static_cast<double>(live_cols_));
}

DenseMatrix SparseRows::active_dense(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const {
  std::vector<std::size_t> pos(col_count_.size(), SIZE_MAX);
  for (std::size_t k = 0; k < cols.size(); ++k) pos[cols[k]] = k;
  DenseMatrix d(rows.size(), cols.size());
  for (std::size_t k = 0; k < rows.size(); ++k)
    for (const auto& e : rows_[rows[k]])
      if (pos[e.col] != SIZE_MAX) d(k, pos[e.col]) = e.value;
  return d;
}

namespace {

bool go_dense(const SparseRows& m) {
  double cells = static_cast<double>(m.live_rows()) * static_cast<double>(m.live_cols());
  return cells > kDenseMinCells && m.active_density() > kDenseFallback;
}

// Repeatedly pivots while units remain; the per-row sweep is restarted after a
// batch so that lengths stay roughly current.
template <typename OnPivot>
bool run_pivots(SparseRows& m, OnPivot&& on_pivot) {
  bool any = false;
  std::size_t r, c;
  while (!go_dense(m) && m.pick_pivot(r, c)) {
    on_pivot(r, c);
    any = true;
  }
  return any;
}

}  // namespace

SparseSolver::SparseSolver(const IntMatrix& m, const Integer& modulus)
    : nrows_(m.rows()), ncols_(m.cols()), p_(modulus) {
  SparseRows w(m, modulus);
  run_pivots(w, [&](std::size_t r, std::size_t c) {
    Step s;
    s.row = static_cast<std::uint32_t>(r);
    s.col = static_cast<std::uint32_t>(c);
    s.pivot_inv = unit_inverse(*find_entry(w.row(r), c), p_);
    s.ops = w.eliminate(r, c);
    s.pivot_row = w.row(r);
    steps_.push_back(std::move(s));
  });
  for (std::size_t i = 0; i < nrows_; ++i)
    if (w.row_alive(i)) rest_rows_.push_back(i);
  for (std::size_t j = 0; j < ncols_; ++j)
    if (w.col_alive(j)) rest_cols_.push_back(j);
  SmithOptions o;
  o.modulus = p_;
  rest_ = smith_form(w.active_dense(rest_rows_, rest_cols_), o);
}

std::optional<Vec> SparseSolver::solve(const Vec& v) const {
  if (v.size() != nrows_) fail(ErrorCode::DimensionMismatch, "right-hand side length");
  auto norm = [&](Integer& x) {
    if (!p_.is_zero()) x = mod_reduce(x, p_);
  };
  Vec w = reduce_mod(v, p_);
  for (const auto& s : steps_) {
    const Integer& piv = w[s.row];
    if (piv.is_zero()) continue;
    for (const auto& [r, f] : s.ops) {
      w[r] += f * piv;
      norm(w[r]);
    }
  }
  Vec wr(rest_rows_.size());
  for (std::size_t k = 0; k < rest_rows_.size(); ++k) wr[k] = w[rest_rows_[k]];
  Vec y = rest_.u.apply(wr);
  Vec z(rest_cols_.size());
  for (std::size_t i = 0; i < y.size(); ++i) {
    norm(y[i]);
    if (i < rest_.rank) {
      const Integer& d = rest_.d(i, i);
      if (!Integer::divides(d, y[i])) return std::nullopt;
      z[i] = Integer::exact_div(y[i], d);
    } else if (!y[i].is_zero()) {
      return std::nullopt;
    }
  }
  Vec xr = rest_.v.apply(z);
  Vec x(ncols_);
  for (std::size_t k = 0; k < rest_cols_.size(); ++k) {
    x[rest_cols_[k]] = xr[k];
    norm(x[rest_cols_[k]]);
  }
  for (auto it = steps_.rbegin(); it != steps_.rend(); ++it) {
    Integer acc = w[it->row];
    for (const auto& e : it->pivot_row)
      if (e.col != it->col && !x[e.col].is_zero()) acc -= e.value * x[e.col];
    x[it->col] = acc * it->pivot_inv;
    norm(x[it->col]);
  }
  return x;
}

std::optional<Vec> membership(const IntMatrix& m, const Vec& v, const Integer& modulus) {
  if (v.size() != m.rows()) fail(ErrorCode::DimensionMismatch, "membership vector length");
  return SparseSolver(m, modulus).solve(v);
}

Homology homology_at(const IntMatrix& d_in, const IntMatrix& d_out, const Integer& modulus) {
  if (d_out.cols() != d_in.rows()) fail(ErrorCode::DimensionMismatch, "homology_at: inner dimensions");
  if (!(d_out * d_in).reduced_mod(modulus).is_zero()) fail(ErrorCode::CompositionNotZero, "d_out * d_in != 0");
  Homology h;
  h.p_ = modulus;
  h.n_ = d_in.rows();
  SparseRows a(d_out, modulus);
  SparseRows b(d_in, modulus);
  for (;;) {
    bool progress = run_pivots(a, [&](std::size_t r, std::size_t c) {
      Homology::OutStep s;
      s.col = static_cast<std::uint32_t>(c);
      s.pivot_inv = unit_inverse(*find_entry(a.row(r), c), modulus);
      for (const auto& e : a.row(r))
        if (e.col != c) s.row.push_back(e);
      a.eliminate(r, c);
      b.kill_row(c);
      h.out_steps_.push_back(std::move(s));
    });
    progress |= run_pivots(b, [&](std::size_t r, std::size_t c) {
      Homology::InStep s;
      s.row = static_cast<std::uint32_t>(r);
      s.ops = b.eliminate(r, c);
      a.kill_col(r);
      h.in_steps_.push_back(std::move(s));
    });
    if (!progress || go_dense(a) || go_dense(b)) break;
  }
  for (std::size_t c = 0; c < h.n_; ++c)
    if (a.col_alive(c)) h.rest_.push_back(c);
  std::vector<std::size_t> arows, bcols;
  for (std::size_t r = 0; r < a.rows(); ++r)
    if (a.row_alive(r)) arows.push_back(r);
  for (std::size_t c = 0; c < b.cols(); ++c)
    if (b.col_alive(c)) bcols.push_back(c);
  DenseMatrix out = a.active_dense(arows, h.rest_);
  DenseMatrix in = b.active_dense(h.rest_, bcols);
  std::size_t k = h.rest_.size();

  SmithOptions o1;
  o1.want_u = false;
  o1.want_v_inv = true;
  o1.modulus = modulus;
  SmithForm f1 = smith_form(out, o1);
  DenseMatrix kbasis = f1.v.select_columns(f1.rank, k);
  DenseMatrix kcoord = f1.v_inv.select_rows(f1.rank, k);
  DenseMatrix x = kcoord * in;
  SmithOptions o2;
  o2.want_u_inv = true;
  o2.want_v = false;
  o2.modulus = modulus;
  SmithForm f2 = smith_form(x, o2);
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < x.rows(); ++i) {
    Integer d = i < f2.rank ? f2.d(i, i) : Integer(0);
    if (d.is_one()) continue;
    kept.push_back(i);
    h.factors_.push_back(modulus.is_zero() ? d : modulus);
  }
  DenseMatrix urows(kept.size(), x.rows()), ucols(x.rows(), kept.size());
  for (std::size_t j = 0; j < kept.size(); ++j)
    for (std::size_t c = 0; c < x.rows(); ++c) {
      urows(j, c) = f2.u(kept[j], c);
      ucols(c, j) = f2.u_inv(c, kept[j]);
    }
  h.proj_ = urows * kcoord;
  h.lift_ = kbasis * ucols;
  h.group_ = PresentedAbelianGroup::diagonal(h.factors_);
  return h;
}

Vec Homology::project(const Vec& cycle) const {
  if (cycle.size() != n_) fail(ErrorCode::DimensionMismatch, "cycle length");
  Vec x = reduce_mod(cycle, p_);
  for (const auto& s : in_steps_) {
    const Integer piv = x[s.row];
    if (piv.is_zero()) continue;
    for (const auto& [r, f] : s.ops) {
      x[r] += f * piv;
      if (!p_.is_zero()) x[r] = mod_reduce(x[r], p_);
    }
  }
  Vec xr(rest_.size());
  for (std::size_t k = 0; k < rest_.size(); ++k) xr[k] = x[rest_[k]];
  Vec c = proj_.apply(xr);
  for (std::size_t i = 0; i < c.size(); ++i)
    if (!factors_[i].is_zero()) c[i] = mod_reduce(c[i], factors_[i]);
  return c;
}

Vec Homology::lift(const Vec& coords) const {
  if (coords.size() != factors_.size()) fail(ErrorCode::DimensionMismatch, "class coordinate length");
  Vec xr = lift_.apply(coords);
  Vec x(n_);
  for (std::size_t k = 0; k < rest_.size(); ++k) x[rest_[k]] = xr[k];
  for (auto it = out_steps_.rbegin(); it != out_steps_.rend(); ++it) {
    Integer acc = 0;
    for (const auto& e : it->row)
      if (!x[e.col].is_zero()) acc -= e.value * x[e.col];
    x[it->col] = acc * it->pivot_inv;
  }
  return reduce_mod(x, p_);
}

}  // namespace tclab
