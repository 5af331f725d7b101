#pragma once

#include <memory>
#include <vector>

#include "tclab/abelian.hpp"
#include "tclab/modules.hpp"
#include "tclab/resolution.hpp"
#include "tclab/sparse.hpp"

namespace tclab {

// Cochains Hom_G(P_n, A) are stored as A^{rank n}: block j holds f(e_j).
std::size_t cochain_dim(const FreeResolution& r, const GModule& a, int n);
// delta^n : C^n -> C^{n+1}, (delta f)(x) = f(dx). Entries reduced mod the characteristic.
IntMatrix cochain_differential(const FreeResolution& r, const GModule& a, int n);

struct CohomologyGroup {
  ResolutionPtr res;
  GModule coeff;
  int degree = 0;
  Homology homology;
  const PresentedAbelianGroup& group() const { return homology.group(); }
};
using CohomologyPtr = std::shared_ptr<const CohomologyGroup>;

// H^n(G, A) on the given resolution; needs n + 1 <= max degree. Memoized.
CohomologyPtr cohomology(const ResolutionPtr& r, const GModule& a, int n);
// Ext^r(M, A) = H^r(G, Hom_Z(M, A)) on the default resolution.
CohomologyPtr ext_via_hom(const GModule& m, const GModule& a, int r, int d_max = kDefaultMaxDegree);

std::uint64_t module_fingerprint(const GModule& m);

class CohomologyClass {
 public:
  CohomologyClass() = default;
  // Checks the cocycle condition.
  CohomologyClass(ResolutionPtr res, GModule coeff, int degree, Vec cocycle);
  static CohomologyClass zero(const ResolutionPtr& res, const GModule& coeff, int degree);
  static CohomologyClass from_coordinates(const CohomologyPtr& h, const Vec& coords);

  const ResolutionPtr& resolution() const { return res_; }
  const GModule& coefficients() const { return coeff_; }
  const GroupPtr& group() const { return res_->group(); }
  int degree() const { return degree_; }
  const Vec& cocycle() const { return cocycle_; }
  // Value f(e_j) in A.
  Vec value(int j) const;

  CohomologyPtr cohomology_group() const { return cohomology(res_, coeff_, degree_); }
  Vec coordinates() const { return cohomology_group()->homology.project(cocycle_); }
  bool is_zero() const;
  friend bool operator==(const CohomologyClass& a, const CohomologyClass& b);
  friend CohomologyClass operator+(const CohomologyClass& a, const CohomologyClass& b);
  friend CohomologyClass operator-(const CohomologyClass& a, const CohomologyClass& b);
  CohomologyClass scaled(const Integer& s) const;

 private:
  ResolutionPtr res_;
  GModule coeff_;
  int degree_ = 0;
  Vec cocycle_;
};

// Chain map P -> Q over a group homomorphism h, phi(g x) = h(g) phi(x).
struct ChainMap {
  ResolutionPtr source, target;
  GroupHom hom;
  std::vector<std::vector<Vec>> images;  // images[n][j] in Q_n
  int max_degree() const { return static_cast<int>(images.size()) - 1; }
};
using ChainMapPtr = std::shared_ptr<const ChainMap>;

// Lifts the identity of Z degreewise by integer solves; memoized.
ChainMapPtr lift_chain_map(const ResolutionPtr& source, const ResolutionPtr& target, const GroupHom& h, int up_to);
// Checks d phi = phi d on every generator.
void verify_chain_map(const ChainMap& phi);

// f -> f o phi, with coefficients restricted along the homomorphism.
CohomologyClass pull_back(const ChainMap& phi, const CohomologyClass& u, const GModule& restricted);
CohomologyClass restriction(const CohomologyClass& u, const GroupHom& h, const ResolutionPtr& source_res);
// Same class on another resolution of the same group.
CohomologyClass convert(const CohomologyClass& u, const ResolutionPtr& res);
CohomologyClass pushforward(const ModuleMap& m, const CohomologyClass& u);

// Front-face/back-face product on the normalized bar resolution, coefficients A (x) B
// with the diagonal action. Inputs on other resolutions are converted first.
CohomologyClass cup_product(const CohomologyClass& u, const CohomologyClass& v);
// Cup product of bar cocycles without forming a class (any degree).
Vec bar_cup_cochain(const GroupTable& g, const GModule& a, int p, const Vec& u, const GModule& b, int q, const Vec& v);

// 0 -> N -> L -> M -> 0 with a Z-linear section of proj and a left inverse of incl.
struct ShortExactSequence {
  ModuleMap incl, proj;
  IntMatrix section;       // M -> L, proj o section = id
  IntMatrix left_inverse;  // L -> N, left_inverse o incl = id

  // Checks exactness and completes a splitting by Smith form.
  static ShortExactSequence from_maps(ModuleMap incl, ModuleMap proj);
  // Same sequence with section + incl o shift.
  ShortExactSequence perturbed(const IntMatrix& shift) const;
};

// Snake-lemma connecting class in H^{n+1}(G, N). With cross_check the class is
// recomputed with a perturbed section and compared.
CohomologyClass connecting_hom(const ShortExactSequence& seq, const CohomologyClass& u, bool cross_check = true);

// Class in Ext^n(Z, N) = H^n(G, N) of 0 -> N -> L_n -> ... -> L_1 -> Z -> 0, given
// as the maps in that order. The resolution must reach degree n + 1.
CohomologyClass class_of_exact_sequence(const std::vector<ModuleMap>& maps, const ResolutionPtr& r);

}  // namespace tclab
