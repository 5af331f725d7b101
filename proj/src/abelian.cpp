#include "tclab/abelian.hpp"

#include <sstream>

#include "tclab/errors.hpp"

namespace tclab {

PresentedAbelianGroup::PresentedAbelianGroup(std::size_t generators, const IntMatrix& relations) {
  if (relations.rows() != generators) fail(ErrorCode::DimensionMismatch, "relations must have one row per generator");
  z_ = Lattice::full(generators);
  b_ = Lattice::span(relations.to_dense());
}

PresentedAbelianGroup PresentedAbelianGroup::subquotient(Lattice cycles, Lattice boundaries) {
  if (cycles.ambient() != boundaries.ambient()) fail(ErrorCode::DimensionMismatch, "subquotient ambient");
  if (!cycles.contains(boundaries)) fail(ErrorCode::InvalidInput, "boundaries not contained in cycles");
  PresentedAbelianGroup g;
  g.z_ = std::move(cycles);
  g.b_ = std::move(boundaries);
  return g;
}

PresentedAbelianGroup PresentedAbelianGroup::diagonal(const Vec& d) {
  std::vector<Triple> t;
  for (std::size_t i = 0; i < d.size(); ++i)
    if (!d[i].is_zero()) t.push_back({i, i, d[i]});
  return PresentedAbelianGroup(d.size(), IntMatrix(d.size(), d.size(), std::move(t)));
}

IntMatrix PresentedAbelianGroup::relations() const {
  std::vector<Triple> t;
  const auto& bb = b_.basis();
  for (std::size_t c = 0; c < bb.size(); ++c)
    for (std::size_t r = 0; r < bb[c].size(); ++r)
      if (!bb[c][r].is_zero()) t.push_back({r, c, bb[c][r]});
  return IntMatrix(ambient_rank(), bb.size(), std::move(t));
}

const PresentedAbelianGroup::NormalForm& PresentedAbelianGroup::normal_form() const {
  std::call_once(cache_->once, [this] {
    NormalForm& nf = cache_->nf;
    std::size_t k = z_.rank();
    // Boundaries in cycle coordinates.
    std::vector<Vec> cols;
    for (const auto& b : b_.basis()) cols.push_back(*z_.coordinates(b));
    DenseMatrix x = DenseMatrix::from_columns(k, cols);
    SmithOptions o;
    o.want_u_inv = true;
    o.want_v = false;
    SmithForm f = smith_form(x, o);
    DenseMatrix zb = z_.basis_matrix();
    DenseMatrix gens_all = zb * f.u_inv;
    for (std::size_t i = 0; i < k; ++i) {
      Integer d = i < f.rank ? f.d(i, i) : Integer(0);
      if (d.is_one()) continue;
      nf.kept.push_back(i);
      nf.factors.push_back(d);
      nf.gens.push_back(gens_all.column(i));
    }
    nf.coord = DenseMatrix(nf.kept.size(), k);
    for (std::size_t j = 0; j < nf.kept.size(); ++j)
      for (std::size_t c = 0; c < k; ++c) nf.coord(j, c) = f.u(nf.kept[j], c);
  });
  return cache_->nf;
}

const Vec& PresentedAbelianGroup::invariant_factors() const { return normal_form().factors; }

std::size_t PresentedAbelianGroup::free_rank() const {
  std::size_t n = 0;
  for (const auto& d : invariant_factors()) n += d.is_zero();
  return n;
}

std::string PresentedAbelianGroup::describe() const {
  const Vec& f = invariant_factors();
  if (f.empty()) return "0";
  std::ostringstream out;
  std::size_t free = 0;
  bool first = true;
  for (const auto& d : f) {
    if (d.is_zero()) {
      ++free;
      continue;
    }
    out << (first ? "" : " + ") << "Z/" << d.str();
    first = false;
  }
  if (free > 0) out << (first ? "" : " + ") << "Z" << (free > 1 ? "^" + std::to_string(free) : "");
  return out.str();
}

const std::vector<Vec>& PresentedAbelianGroup::generators() const { return normal_form().gens; }

Vec PresentedAbelianGroup::coordinates(const Vec& v) const {
  auto zc = z_.coordinates(v);
  if (!zc) fail(ErrorCode::InvalidInput, "element is not in the group");
  const NormalForm& nf = normal_form();
  Vec c = nf.coord.apply(*zc);
  for (std::size_t i = 0; i < c.size(); ++i)
    if (!nf.factors[i].is_zero()) c[i] = mod_reduce(c[i], nf.factors[i]);
  return c;
}

Vec PresentedAbelianGroup::element(const Vec& coords) const {
  const NormalForm& nf = normal_form();
  if (coords.size() != nf.gens.size()) fail(ErrorCode::DimensionMismatch, "coordinate length");
  Vec v(ambient_rank());
  for (std::size_t i = 0; i < coords.size(); ++i)
    if (!coords[i].is_zero())
      for (std::size_t r = 0; r < v.size(); ++r) v[r] += coords[i] * nf.gens[i][r];
  return v;
}

AbHom::AbHom(PresentedAbelianGroup source, PresentedAbelianGroup target, std::vector<Vec> images)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
  const Vec& f = source_.invariant_factors();
  if (images_.size() != f.size()) fail(ErrorCode::DimensionMismatch, "one image per source generator");
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (images_[i].size() != target_.ambient_rank()) fail(ErrorCode::DimensionMismatch, "image length");
    if (!target_.contains(images_[i])) fail(ErrorCode::InvalidInput, "image outside target");
    if (!target_.is_zero(scale(images_[i], f[i]))) fail(ErrorCode::InvalidInput, "map does not respect relations");
  }
}

AbHom AbHom::from_ambient(const PresentedAbelianGroup& source, const PresentedAbelianGroup& target,
                          const DenseMatrix& f) {
  for (const auto& b : source.boundaries().basis())
    if (!target.is_zero(f.apply(b))) fail(ErrorCode::InvalidInput, "ambient map does not respect relations");
  std::vector<Vec> images;
  for (const auto& g : source.generators()) images.push_back(f.apply(g));
  return AbHom(source, target, std::move(images));
}

AbHom AbHom::identity(const PresentedAbelianGroup& g) { return AbHom(g, g, g.generators()); }

AbHom AbHom::zero(const PresentedAbelianGroup& source, const PresentedAbelianGroup& target) {
  return AbHom(source, target, std::vector<Vec>(source.invariant_factors().size(), Vec(target.ambient_rank())));
}

IntMatrix AbHom::matrix() const {
  std::vector<Triple> t;
  for (std::size_t c = 0; c < images_.size(); ++c) {
    Vec col = target_.coordinates(images_[c]);
    for (std::size_t r = 0; r < col.size(); ++r)
      if (!col[r].is_zero()) t.push_back({r, c, col[r]});
  }
  return IntMatrix(target_.invariant_factors().size(), images_.size(), std::move(t));
}

Vec AbHom::apply_coordinates(const Vec& coords) const {
  Vec v(target_.ambient_rank());
  for (std::size_t i = 0; i < coords.size(); ++i)
    if (!coords[i].is_zero())
      for (std::size_t r = 0; r < v.size(); ++r) v[r] += coords[i] * images_[i][r];
  return v;
}

Vec AbHom::apply(const Vec& v) const { return apply_coordinates(source_.coordinates(v)); }

PresentedAbelianGroup AbHom::kernel() const {
  std::size_t g = images_.size();
  DenseMatrix m = DenseMatrix::from_columns(target_.ambient_rank(), images_);
  Lattice k = Lattice::preimage(m, target_.boundaries());
  std::vector<Vec> gens = source_.boundaries().basis();
  const auto& sg = source_.generators();
  for (const auto& c : k.basis()) {
    Vec v(source_.ambient_rank());
    for (std::size_t i = 0; i < g; ++i)
      if (!c[i].is_zero())
        for (std::size_t r = 0; r < v.size(); ++r) v[r] += c[i] * sg[i][r];
    gens.push_back(std::move(v));
  }
  return PresentedAbelianGroup::subquotient(Lattice::span(source_.ambient_rank(), gens), source_.boundaries());
}

PresentedAbelianGroup AbHom::image() const {
  std::vector<Vec> gens = images_;
  for (const auto& b : target_.boundaries().basis()) gens.push_back(b);
  return PresentedAbelianGroup::subquotient(Lattice::span(target_.ambient_rank(), gens), target_.boundaries());
}

bool AbHom::is_zero() const {
  for (const auto& v : images_)
    if (!target_.is_zero(v)) return false;
  return true;
}

bool AbHom::is_isomorphism() const {
  return kernel().is_trivial() && image().cycles() == target_.cycles();
}

AbHom compose(const AbHom& g, const AbHom& f) {
  if (!(f.target_.cycles() == g.source_.cycles()) || !(f.target_.boundaries() == g.source_.boundaries()))
    fail(ErrorCode::DimensionMismatch, "composition of incompatible maps");
  std::vector<Vec> images;
  for (const auto& v : f.images_) images.push_back(g.apply(v));
  return AbHom(f.source_, g.target_, std::move(images));
}

bool operator==(const AbHom& a, const AbHom& b) {
  if (!(a.source_ == b.source_) || !(a.target_ == b.target_)) return false;
  for (std::size_t i = 0; i < a.images_.size(); ++i)
    if (!a.target_.same_class(a.images_[i], b.images_[i])) return false;
  return true;
}

}  // namespace tclab
