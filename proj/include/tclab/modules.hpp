#pragma once

#include <string>
#include <vector>

#include "tclab/groups.hpp"
#include "tclab/matrix.hpp"

namespace tclab {

// Z-free module of finite rank with a left action by integer matrices.
// A nonzero characteristic p marks coefficients to be read modulo p.
class GModule {
 public:
  GModule() = default;
  GModule(GroupPtr group, int rank, std::vector<IntMatrix> action, Integer characteristic = 0,
          std::vector<std::string> labels = {});

  static GModule trivial(const GroupPtr& g, int rank = 1, const Integer& characteristic = 0);
  // Permutation module: g sends basis i to basis perm(g, i).
  static GModule permutation(const GroupPtr& g, int rank, const std::vector<std::vector<int>>& perm,
                             std::vector<std::string> labels = {});

  const GroupPtr& group() const { return group_; }
  int rank() const { return rank_; }
  const IntMatrix& action(int g) const { return action_[g]; }
  const std::vector<IntMatrix>& actions() const { return action_; }
  const Integer& characteristic() const { return char_; }
  const std::vector<std::string>& labels() const { return labels_; }
  Vec act(int g, const Vec& v) const;
  GModule with_characteristic(const Integer& p) const;
  bool is_trivial_action() const;

  friend bool operator==(const GModule& a, const GModule& b);

 private:
  void validate() const;
  GroupPtr group_;
  int rank_ = 0;
  std::vector<IntMatrix> action_;
  Integer char_ = 0;
  std::vector<std::string> labels_;
};

// Equivariant map; matrix is target.rank x source.rank.
class ModuleMap {
 public:
  ModuleMap() = default;
  ModuleMap(GModule source, GModule target, IntMatrix matrix, bool check = true);
  static ModuleMap identity(const GModule& m);
  static ModuleMap zero(const GModule& source, const GModule& target);

  const GModule& source() const { return src_; }
  const GModule& target() const { return tgt_; }
  const IntMatrix& matrix() const { return mat_; }
  Vec apply(const Vec& v) const { return mat_.apply(v); }
  bool is_equivariant() const;
  friend ModuleMap compose(const ModuleMap& g, const ModuleMap& f);  // g after f

 private:
  GModule src_, tgt_;
  IntMatrix mat_;
};

struct AugmentationData {
  GModule ideal;       // I with basis {g - 1 : g != e}
  GModule ring;        // Z[G]
  GModule trivial;     // Z
  ModuleMap incl;      // I -> Z[G]
  ModuleMap aug;       // Z[G] -> Z
};

// Z[G] over G x G with (g, h) a = g a h^-1.
GModule group_ring_bimodule(const GroupPtr& g);
// Z[G] over G by left multiplication.
GModule left_regular(const GroupPtr& g);
// The augmentation sequence over G x G (bimodule) or over G (left action).
AugmentationData augmentation_ideal(const GroupPtr& g);
AugmentationData left_augmentation_ideal(const GroupPtr& g);

// Index of g - 1 in the augmentation ideal basis, or -1 for the identity.
int aug_index(const GroupTable& g, int element);
int aug_element(const GroupTable& g, int index);

GModule tensor(const GModule& a, const GModule& b);
GModule tensor_power_diagonal(const GModule& m, int s);
// Hom_Z(A, B); f is stored row-major as an rB x rA matrix, index i*rA + j.
GModule hom_z_module(const GModule& a, const GModule& b);
GModule restrict_along(const GroupHom& h, const GModule& m);
GModule coinduced_from_class(const GroupPtr& g, int representative);

ModuleMap tensor_maps(const ModuleMap& f, const ModuleMap& g);
// F -> F o f as a map Hom(Y, A) -> Hom(X, A) for f: X -> Y.
ModuleMap hom_pullback(const ModuleMap& f, const GModule& a);
// F -> g o F as a map Hom(X, A) -> Hom(X, B) for g: A -> B.
ModuleMap hom_pushforward(const GModule& x, const ModuleMap& g);
// I (x) Hom(I^{s+1}, A) -> Hom(I^s, A), x0 (x) f -> (x1..xs -> f(x0 x1 .. xs)).
ModuleMap evaluation_map(const GModule& ideal, const GModule& a, int s);
// I^k (x) Hom(I^k, A) -> A, x1..xk (x) f -> f(xk .. x1).
ModuleMap pairing_psi(const GModule& ideal, const GModule& a, int k);
// Swap A (x) B -> B (x) A.
ModuleMap swap_map(const GModule& a, const GModule& b);

}  // namespace tclab
