#pragma once

#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "tclab/smith.hpp"

namespace tclab {

// Finitely generated abelian group Z/B with B <= Z <= Z^n. A plain presentation
// (generators, relations) is the case Z = Z^n.
class PresentedAbelianGroup {
 public:
  PresentedAbelianGroup() : PresentedAbelianGroup(0, IntMatrix(0, 0)) {}
  PresentedAbelianGroup(std::size_t generators, const IntMatrix& relations);
  static PresentedAbelianGroup subquotient(Lattice cycles, Lattice boundaries);
  // Z^k with relations diag(d); d = 0 contributes a free summand.
  static PresentedAbelianGroup diagonal(const Vec& d);

  std::size_t ambient_rank() const { return z_.ambient(); }
  std::size_t generator_count() const { return z_.ambient(); }
  // Relations expressed in the ambient coordinates (columns).
  IntMatrix relations() const;
  const Lattice& cycles() const { return z_; }
  const Lattice& boundaries() const { return b_; }

  // Nontrivial invariant factors d1 | d2 | ... with 0 for free summands last.
  const Vec& invariant_factors() const;
  bool is_trivial() const { return invariant_factors().empty(); }
  std::string describe() const;
  std::size_t free_rank() const;

  // Normal-form generators as ambient vectors, one per invariant factor.
  const std::vector<Vec>& generators() const;
  // Coordinates of an element of Z in the normal form, reduced modulo the factors.
  Vec coordinates(const Vec& v) const;
  bool contains(const Vec& v) const { return z_.contains(v); }
  bool is_zero(const Vec& v) const { return b_.contains(v); }
  bool same_class(const Vec& a, const Vec& b) const { return b_.contains(sub(a, b)); }
  Vec element(const Vec& coords) const;

  // Equality as subquotients of the same ambient lattice.
  friend bool operator==(const PresentedAbelianGroup& a, const PresentedAbelianGroup& b) {
    return a.z_ == b.z_ && a.b_ == b.b_;
  }
  bool isomorphic_to(const PresentedAbelianGroup& o) const { return invariant_factors() == o.invariant_factors(); }

 private:
  struct NormalForm {
    Vec factors;
    std::vector<Vec> gens;
    DenseMatrix coord;  // rows: kept SNF rows of U composed with Z-coordinates
    std::vector<std::size_t> kept;
  };
  struct Cache {
    std::once_flag once;
    NormalForm nf;
  };
  const NormalForm& normal_form() const;

  Lattice z_, b_;
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

// Homomorphism given by target-ambient images of the source normal-form generators.
class AbHom {
 public:
  AbHom() = default;
  AbHom(PresentedAbelianGroup source, PresentedAbelianGroup target, std::vector<Vec> images);
  // Induced by an ambient integer matrix that maps Z into Z and B into B.
  static AbHom from_ambient(const PresentedAbelianGroup& source, const PresentedAbelianGroup& target,
                            const DenseMatrix& f);
  static AbHom identity(const PresentedAbelianGroup& g);
  static AbHom zero(const PresentedAbelianGroup& source, const PresentedAbelianGroup& target);

  const PresentedAbelianGroup& source() const { return source_; }
  const PresentedAbelianGroup& target() const { return target_; }
  const std::vector<Vec>& images() const { return images_; }
  // Matrix in normal-form coordinates (target factors x source factors).
  IntMatrix matrix() const;

  Vec apply(const Vec& v) const;
  Vec apply_coordinates(const Vec& coords) const;
  PresentedAbelianGroup kernel() const;
  PresentedAbelianGroup image() const;
  bool is_zero() const;
  bool is_isomorphism() const;
  friend AbHom compose(const AbHom& g, const AbHom& f);  // g after f
  friend bool operator==(const AbHom& a, const AbHom& b);

 private:
  PresentedAbelianGroup source_, target_;
  std::vector<Vec> images_;
};

}  // namespace tclab
