#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tclab/canonical.hpp"

namespace tclab {

// Data of 0 -> I^{s+1} -> Z[G] (x) I^s -> I^s -> 0 over G x G and its dual
// 0 -> Hom(I^s, A) -> Hom(Z[G] (x) I^s, A) -> Hom(I^{s+1}, A) -> 0.
struct SpliceLevel {
  GModule is, is1, ring_is;  // I^s, I^{s+1}, Z[G] (x) I^s
  ModuleMap incl, proj;
  GModule hom_is, hom_is1, hom_ring_is;  // Hom_Z(-, A)
  ShortExactSequence dual;
};
SpliceLevel splice_level(const GroupPtr& g, const GModule& a, int s);

// D_0^{rs} = H^r(GxG, Hom(I^s, A)), E_0^{rs} = H^r(GxG, Hom(Z[G] (x) I^s, A)) with
// the maps i_0 (connecting map of the dual sequence), j_0 (augmentation), k_0
// (inclusion), all as integer matrices on normal-form coordinates. Groups are
// computed for r + s <= n_max + 1 so that pages reach total degree n_max.
class ExactCouple {
 public:
  static std::shared_ptr<const ExactCouple> build(const GroupPtr& g, const GModule& a, int n_max);

  const GroupPtr& group() const { return g_; }
  const GModule& coefficients() const { return a_; }
  int n_max() const { return n_max_; }
  int top() const { return n_max_ + 1; }
  const ResolutionPtr& resolution() const { return res_; }
  bool in_range(int r, int s) const { return r >= 0 && s >= 0 && r + s <= top(); }

  CohomologyPtr d0(int r, int s) const;
  CohomologyPtr e0(int r, int s) const;
  std::size_t d_dim(int r, int s) const;
  std::size_t e_dim(int r, int s) const;
  // D^{r,s} -> D^{r+1,s-1}; D^{r,s} -> E^{r,s}; E^{r,s} -> D^{r,s+1}.
  const DenseMatrix& i0(int r, int s) const;
  const DenseMatrix& j0(int r, int s) const;
  const DenseMatrix& k0(int r, int s) const;
  const SpliceLevel& level(int s) const { return levels_.at(s); }

  // Relation lattices of the coordinate presentations.
  Lattice d_zero(int r, int s) const;
  Lattice e_zero(int r, int s) const;
  // i_0^p : D^{r-p,s+p} -> D^{r,s}.
  DenseMatrix i_power(int p, int r, int s) const;
  // D_p^{r,s} as a lattice containing the relations.
  Lattice d_lattice(int p, int r, int s) const;
  // Cycles and boundaries of E_p^{r,s} in E_0 coordinates.
  Lattice e_cycles(int p, int r, int s) const;
  Lattice e_boundaries(int p, int r, int s) const;
  PresentedAbelianGroup d_page(int p, int r, int s) const;
  PresentedAbelianGroup e_page(int p, int r, int s) const;
  // y with i_0^p(y) = x in D^{r,s}, if x lies in D_p.
  std::optional<Vec> i_power_preimage(int p, int r, int s, const Vec& x) const;
  // d_p on E_0 coordinates of a cycle: E_p^{r,s} -> E_p^{r-p,s+p+1}.
  Vec differential(int p, int r, int s, const Vec& z) const;

 private:
  GroupPtr g_;
  GModule a_;
  int n_max_ = 0;
  ResolutionPtr res_;
  std::vector<SpliceLevel> levels_;
  std::map<std::pair<int, int>, CohomologyPtr> d_, e_;
  std::map<std::pair<int, int>, DenseMatrix> i_, j_, k_;
};
using CouplePtr = std::shared_ptr<const ExactCouple>;

struct PageCheck {
  int p = 0;
  std::size_t exactness_nodes = 0;
  std::size_t homology_nodes = 0;
  // Bidegrees of (i, j, k, d) on this page.
  std::vector<std::pair<int, int>> degrees;
};

struct ExactCouplePage {
  CouplePtr couple;
  int p = 0;
  PageCheck check;
};

ExactCouplePage build_couple(const GroupPtr& g, const GModule& a, int n_max);
// Next page; re-verifies exactness and E_{p+1} = H(E_p, d_p).
ExactCouplePage derive(const ExactCouplePage& page);

// The sign eps with i_0(u) = -eps * ev_*(v cup u), fixed once per process.
struct SignPin {
  int epsilon = 1;
  std::string instance;
  bool reference_degenerate = false;
};
const SignPin& global_sign();

struct BocksteinCheck {
  CohomologyClass snake, via_v;
  bool agree = false;
};
// u in H^r(GxG, Hom(I^{s+1}, A)) on the couple resolution of (g, a).
BocksteinCheck bockstein_via_v(const GModule& a, const CohomologyClass& u, int s, int sign);

struct ObstructionValue {
  int s = 0;
  int page = 0;
  std::pair<int, int> bidegree;
  Vec value;  // coordinates in E_s
  bool zero = true;
};

struct ObstructionReport {
  int degree = 0;
  Vec class_coordinates;
  std::vector<ObstructionValue> obstructions;
  std::string verdict;  // "essential" or "blocked"
  int blocked_at = -1;
  bool zero_divisor = false;
  std::optional<ModuleMap> certificate;  // mu : I^n -> A
  bool certificate_verified = false;
};

// alpha in H^n(G x G, A); the couple must reach n.
ObstructionReport obstruction_sequence(const CouplePtr& couple, const CohomologyClass& alpha);
bool is_zero_divisor(const CohomologyClass& alpha);

struct E0Oracle {
  PresentedAbelianGroup product;
  struct Factor {
    std::vector<int> representative;
    std::vector<int> centralizer;
    Vec invariant_factors;
  };
  std::vector<Factor> factors;
};
E0Oracle e0_oracle(const GroupPtr& g, const GModule& a, int r, int s);

struct PhiReport {
  std::size_t source_rank = 0, target_rank = 0;
  DenseMatrix phi, psi;  // on invariant-lattice coordinates
  bool mutually_inverse = false;
};
// Hom_{GxG}(Z[G] (x) M, N) <-> Hom_G(M~, N~).
PhiReport phi_isomorphism(const GModule& m, const GModule& n);

// v -> omega_*(v | diagonal), H^i(GxG, Hom(Z[G], A)) -> H^i(G, A~).
AbHom gamma_isomorphism(const GroupPtr& g, const GModule& a, int i);

struct TcBound {
  int bound = 1;  // k + 1
  int n = -1, k = -1;
  bool formal = true;
};
TcBound tc_lower_bound(const GroupPtr& g, const GModule& a, int n_max);

}  // namespace tclab
