#include "tclab/smith.hpp"

#include "tclab/errors.hpp"

namespace tclab {

namespace {

struct Tracker {
  DenseMatrix& m;
  const SmithOptions& o;
  SmithForm& f;
  const Integer& p;

  void norm(Integer& x) const {
    if (!p.is_zero()) x = mod_reduce(x, p);
  }
  void norm_row(DenseMatrix& a, std::size_t r) const {
    if (p.is_zero()) return;
    for (std::size_t c = 0; c < a.cols(); ++c) norm(a(r, c));
  }
  void norm_col(DenseMatrix& a, std::size_t c) const {
    if (p.is_zero()) return;
    for (std::size_t r = 0; r < a.rows(); ++r) norm(a(r, c));
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    m.swap_rows(a, b);
    if (o.want_u) f.u.swap_rows(a, b);
    if (o.want_u_inv) f.u_inv.swap_cols(a, b);
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    m.swap_cols(a, b);
    if (o.want_v) f.v.swap_cols(a, b);
    if (o.want_v_inv) f.v_inv.swap_rows(a, b);
  }
  // row dst += q * row src
  void add_row(std::size_t dst, std::size_t src, const Integer& q) {
    if (q.is_zero()) return;
    m.add_row(dst, src, q);
    norm_row(m, dst);
    if (o.want_u) {
      f.u.add_row(dst, src, q);
      norm_row(f.u, dst);
    }
    if (o.want_u_inv) {
      f.u_inv.add_col(src, dst, -q);
      norm_col(f.u_inv, src);
    }
  }
  void add_col(std::size_t dst, std::size_t src, const Integer& q) {
    if (q.is_zero()) return;
    m.add_col(dst, src, q);
    norm_col(m, dst);
    if (o.want_v) {
      f.v.add_col(dst, src, q);
      norm_col(f.v, dst);
    }
    if (o.want_v_inv) {
      f.v_inv.add_row(src, dst, -q);
      norm_row(f.v_inv, src);
    }
  }
  // Multiply row r by a unit c (c^-1 == cinv).
  void scale_row(std::size_t r, const Integer& c, const Integer& cinv) {
    for (std::size_t k = 0; k < m.cols(); ++k) m(r, k) *= c;
    norm_row(m, r);
    if (o.want_u) {
      for (std::size_t k = 0; k < f.u.cols(); ++k) f.u(r, k) *= c;
      norm_row(f.u, r);
    }
    if (o.want_u_inv) {
      for (std::size_t k = 0; k < f.u_inv.rows(); ++k) f.u_inv(k, r) *= cinv;
      norm_col(f.u_inv, r);
    }
  }
};

}  // namespace

Vec SmithForm::diagonal() const {
  Vec out(rank);
  for (std::size_t i = 0; i < rank; ++i) out[i] = d(i, i);
  return out;
}

SmithForm smith_form(const DenseMatrix& input, const SmithOptions& opts) {
  SmithForm f;
  const Integer& p = opts.modulus;
  std::size_t nr = input.rows(), nc = input.cols();
  f.d = input;
  if (!p.is_zero())
    for (std::size_t r = 0; r < nr; ++r)
      for (std::size_t c = 0; c < nc; ++c) f.d(r, c) = mod_reduce(f.d(r, c), p);
  if (opts.want_u) f.u = DenseMatrix::identity(nr);
  if (opts.want_u_inv) f.u_inv = DenseMatrix::identity(nr);
  if (opts.want_v) f.v = DenseMatrix::identity(nc);
  if (opts.want_v_inv) f.v_inv = DenseMatrix::identity(nc);
  Tracker tr{f.d, opts, f, p};
  DenseMatrix& m = f.d;

  auto better = [&](const Integer& cand, const Integer& best) {
    return best.is_zero() || compare(cand.abs(), best.abs()) < 0;
  };

  std::size_t t = 0;
  std::size_t lim = std::min(nr, nc);
  for (; t < lim; ++t) {
    // Pivot: smallest |value|, ties by (row, col).
    std::size_t pr = nr, pc = nc;
    Integer best = 0;
    for (std::size_t r = t; r < nr; ++r)
      for (std::size_t c = t; c < nc; ++c) {
        const Integer& x = m(r, c);
        if (!x.is_zero() && better(x, best)) {
          best = x;
          pr = r;
          pc = c;
          if (best.is_unit() && p.is_zero()) goto found;
        }
      }
    if (pr == nr) break;
  found:
    tr.swap_rows(t, pr);
    tr.swap_cols(t, pc);
    for (;;) {
      if (!p.is_zero()) {
        // Field case: scale the pivot to 1, then clear row and column.
        Integer inv = unit_inverse(m(t, t), p);
        tr.scale_row(t, inv, m(t, t));
        for (std::size_t r = t + 1; r < nr; ++r)
          if (!m(r, t).is_zero()) tr.add_row(r, t, -m(r, t));
        for (std::size_t c = t + 1; c < nc; ++c)
          if (!m(t, c).is_zero()) tr.add_col(c, t, -m(t, c));
        break;
      }
      bool clean = true;
      for (std::size_t r = t + 1; r < nr; ++r) {
        if (m(r, t).is_zero()) continue;
        tr.add_row(r, t, -Integer::round_div(m(r, t), m(t, t)));
        if (!m(r, t).is_zero()) clean = false;
      }
      for (std::size_t c = t + 1; c < nc; ++c) {
        if (m(t, c).is_zero()) continue;
        tr.add_col(c, t, -Integer::round_div(m(t, c), m(t, t)));
        if (!m(t, c).is_zero()) clean = false;
      }
      if (!clean) {
        std::size_t br = t, bc = t;
        Integer b = m(t, t);
        for (std::size_t r = t + 1; r < nr; ++r)
          if (!m(r, t).is_zero() && better(m(r, t), b)) {
            b = m(r, t);
            br = r;
            bc = t;
          }
        for (std::size_t c = t + 1; c < nc; ++c)
          if (!m(t, c).is_zero() && better(m(t, c), b)) {
            b = m(t, c);
            br = t;
            bc = c;
          }
        tr.swap_rows(t, br);
        tr.swap_cols(t, bc);
        continue;
      }
      // Divisibility of the remaining block by the pivot.
      bool fixed = false;
      for (std::size_t r = t + 1; r < nr && !fixed; ++r)
        for (std::size_t c = t + 1; c < nc; ++c)
          if (!Integer::divides(m(t, t), m(r, c))) {
            tr.add_row(t, r, 1);
            fixed = true;
            break;
          }
      if (!fixed) break;
    }
    if (m(t, t).sign() < 0) tr.scale_row(t, -1, -1);
  }
  f.rank = t;
  return f;
}

SmithTriple smith_normal_form(const IntMatrix& m) {
  SmithForm f = smith_form(m.to_dense());
  return {IntMatrix::from_dense(f.u), IntMatrix::from_dense(f.d), IntMatrix::from_dense(f.v)};
}

DenseMatrix kernel_basis(const DenseMatrix& m, const Integer& modulus) {
  SmithOptions o;
  o.want_u = false;
  o.modulus = modulus;
  SmithForm f = smith_form(m, o);
  return f.v.select_columns(f.rank, m.cols());
}

Lattice Lattice::span(std::size_t ambient, const std::vector<Vec>& generators) {
  return span(DenseMatrix::from_columns(ambient, generators));
}

Lattice Lattice::span(const DenseMatrix& g) {
  Lattice l;
  l.ambient_ = g.rows();
  SmithOptions o;
  o.want_u_inv = true;
  o.want_v = false;
  SmithForm f = smith_form(g, o);
  l.u_ = std::move(f.u);
  l.scale_ = f.diagonal();
  for (std::size_t i = 0; i < f.rank; ++i) l.basis_.push_back(scale(f.u_inv.column(i), l.scale_[i]));
  return l;
}

Lattice Lattice::full(std::size_t ambient) { return span(DenseMatrix::identity(ambient)); }

Lattice Lattice::zero(std::size_t ambient) { return span(DenseMatrix(ambient, 0)); }

std::optional<Vec> Lattice::coordinates(const Vec& v) const {
  if (v.size() != ambient_) fail(ErrorCode::DimensionMismatch, "lattice coordinates");
  Vec w = u_.apply(v);
  Vec c(basis_.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i < basis_.size()) {
      if (!Integer::divides(scale_[i], w[i])) return std::nullopt;
      c[i] = Integer::exact_div(w[i], scale_[i]);
    } else if (!w[i].is_zero()) {
      return std::nullopt;
    }
  }
  return c;
}

bool Lattice::contains(const Vec& v) const { return coordinates(v).has_value(); }

bool Lattice::contains(const Lattice& other) const {
  for (const auto& b : other.basis_)
    if (!contains(b)) return false;
  return true;
}

Lattice Lattice::sum(const Lattice& a, const Lattice& b) {
  if (a.ambient_ != b.ambient_) fail(ErrorCode::DimensionMismatch, "lattice sum");
  std::vector<Vec> g = a.basis_;
  g.insert(g.end(), b.basis_.begin(), b.basis_.end());
  return span(a.ambient_, g);
}

Lattice Lattice::intersection(const Lattice& a, const Lattice& b) {
  if (a.ambient_ != b.ambient_) fail(ErrorCode::DimensionMismatch, "lattice intersection");
  std::size_t ka = a.rank(), kb = b.rank();
  DenseMatrix m(a.ambient_, ka + kb);
  for (std::size_t c = 0; c < ka; ++c)
    for (std::size_t r = 0; r < a.ambient_; ++r) m(r, c) = a.basis_[c][r];
  for (std::size_t c = 0; c < kb; ++c)
    for (std::size_t r = 0; r < a.ambient_; ++r) m(r, ka + c) = -b.basis_[c][r];
  DenseMatrix k = kernel_basis(m);
  std::vector<Vec> gens;
  for (std::size_t j = 0; j < k.cols(); ++j) {
    Vec v(a.ambient_);
    for (std::size_t c = 0; c < ka; ++c)
      if (!k(c, j).is_zero())
        for (std::size_t r = 0; r < a.ambient_; ++r) v[r] += k(c, j) * a.basis_[c][r];
    gens.push_back(std::move(v));
  }
  return span(a.ambient_, gens);
}

Lattice Lattice::preimage(const DenseMatrix& f, const Lattice& target) {
  if (f.rows() != target.ambient_) fail(ErrorCode::DimensionMismatch, "lattice preimage");
  std::size_t n = f.cols(), kt = target.rank();
  DenseMatrix m(f.rows(), n + kt);
  for (std::size_t r = 0; r < f.rows(); ++r) {
    for (std::size_t c = 0; c < n; ++c) m(r, c) = f(r, c);
    for (std::size_t c = 0; c < kt; ++c) m(r, n + c) = -target.basis_[c][r];
  }
  DenseMatrix k = kernel_basis(m);
  return span(k.select_rows(0, n));
}

Lattice Lattice::image_under(const DenseMatrix& f) const {
  if (f.cols() != ambient_) fail(ErrorCode::DimensionMismatch, "lattice image");
  std::vector<Vec> g;
  for (const auto& b : basis_) g.push_back(f.apply(b));
  return span(f.rows(), g);
}

}  // namespace tclab
