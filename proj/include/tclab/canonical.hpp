#pragma once

#include "tclab/cohomology.hpp"

namespace tclab {

// The canonical class v in H^1(G x G, I) and the class b in H^1(G, I).
struct CanonicalClassBundle {
  GroupPtr group, square;
  AugmentationData bimodule;  // I over G x G
  AugmentationData left;      // I over G
  CohomologyClass v_bar;          // [(g, h)] -> g h^-1 - 1
  CohomologyClass v_homogeneous;  // ((g0,h0),(g1,h1)) -> g1 h1^-1 - g0 h0^-1
  ChainMapPtr comparison;         // homogeneous -> bar
  CohomologyClass b;              // restriction of v along g -> (g, e), on bar(G)
};

// d_max is the length of the bar resolutions carrying the classes (at least 2).
CanonicalClassBundle canonical_cocycle(const GroupPtr& g, int d_max = 2);

// The class of 0 -> I -> Z[G] -> Z -> 0 over G, built independently of v.
CohomologyClass berstein_class_direct(const GroupPtr& g, int d_max = 2);

// f_n on bar(G x G): (x1 - x0) (x) ... (x) (xn - x_{n-1}), x_i = (g1..gi)(h1..hi)^-1.
// Cross-checked against the n-fold cup power of v.
CohomologyClass canonical_power(const GroupPtr& g, int n);
// b^n on bar(G), the same formula with x_i = g1..gi.
CohomologyClass berstein_power(const GroupPtr& g, int n);

// Cochain-level restriction of v to the diagonal on homogeneous resolutions.
Vec diagonal_restriction_cocycle(const GroupPtr& g);
// Simplicial chain map of homogeneous resolutions along a homomorphism.
ChainMapPtr homogeneous_chain_map(const GroupHom& h, int d_max);

struct KappaReport {
  int n = 0;
  std::size_t tuples_checked = 0;
  bool exhaustive = true;
};
// Checks d kappa_j = kappa_{j-1} d for j <= n on homogeneous generators of G x G,
// and (eps (x) 1) kappa_n = f_n. Exhaustive when |G| <= 6, sampled otherwise.
KappaReport kappa_chain_map(const GroupPtr& g, int n, std::uint64_t seed = 0x5eed);

// mu : I^n -> A with mu_*(b^n) = alpha, read off the splice resolution.
ModuleMap universality_mu(const CohomologyClass& alpha);

}  // namespace tclab
