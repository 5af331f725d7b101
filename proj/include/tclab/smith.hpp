#pragma once

#include <optional>
#include <vector>

#include "tclab/matrix.hpp"

namespace tclab {

struct SmithOptions {
  bool want_u = true;
  bool want_u_inv = false;
  bool want_v = true;
  bool want_v_inv = false;
  // 0 for the integers, a prime p for arithmetic in F_p.
  Integer modulus = 0;
};

// U * M * V = D. Over F_p every nonzero diagonal entry is normalized to 1.
struct SmithForm {
  DenseMatrix u, d, v;
  DenseMatrix u_inv, v_inv;
  std::size_t rank = 0;
  Vec diagonal() const;  // the first `rank` diagonal entries
};

SmithForm smith_form(const DenseMatrix& m, const SmithOptions& opts = {});

struct SmithTriple {
  IntMatrix u, d, v;
};
SmithTriple smith_normal_form(const IntMatrix& m);

// Columns spanning the integer kernel, part of a unimodular basis.
DenseMatrix kernel_basis(const DenseMatrix& m, const Integer& modulus = 0);

// Sublattice of Z^n with an SNF-adapted basis for coordinate extraction.
class Lattice {
 public:
  Lattice() = default;
  static Lattice span(std::size_t ambient, const std::vector<Vec>& generators);
  static Lattice span(const DenseMatrix& generators);
  static Lattice full(std::size_t ambient);
  static Lattice zero(std::size_t ambient);

  std::size_t ambient() const { return ambient_; }
  std::size_t rank() const { return basis_.size(); }
  const std::vector<Vec>& basis() const { return basis_; }
  DenseMatrix basis_matrix() const { return DenseMatrix::from_columns(ambient_, basis_); }

  std::optional<Vec> coordinates(const Vec& v) const;
  bool contains(const Vec& v) const;
  bool contains(const Lattice& other) const;
  friend bool operator==(const Lattice& a, const Lattice& b) { return a.contains(b) && b.contains(a); }

  static Lattice sum(const Lattice& a, const Lattice& b);
  static Lattice intersection(const Lattice& a, const Lattice& b);
  // { x : f x in target } for an integer matrix f.
  static Lattice preimage(const DenseMatrix& f, const Lattice& target);
  // f(L) for f with f.cols() == L.ambient().
  Lattice image_under(const DenseMatrix& f) const;

 private:
  std::size_t ambient_ = 0;
  std::vector<Vec> basis_;
  DenseMatrix u_;  // U * G * V = D for the generator matrix
  Vec scale_;      // basis_i = scale_i * u_inv column i
};

}  // namespace tclab
