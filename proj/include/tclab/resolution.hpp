#pragma once

#include <memory>
#include <string>
#include <vector>

#include "tclab/groups.hpp"
#include "tclab/matrix.hpp"
#include "tclab/sparse.hpp"

namespace tclab {

// coeff * element . e_generator in a free Z[G]-module.
struct RingTerm {
  Integer coeff;
  int element;
  int generator;
};
using FreeElement = std::vector<RingTerm>;

// Free resolution of the trivial module Z. The Z-basis of P_n is g.e_j with
// index j*|G| + g.
class FreeResolution {
 public:
  FreeResolution(GroupPtr group, std::string flavor, std::vector<int> ranks,
                 std::vector<std::vector<FreeElement>> boundary);

  const GroupPtr& group() const { return group_; }
  const std::string& flavor() const { return flavor_; }
  int max_degree() const { return static_cast<int>(ranks_.size()) - 1; }
  int rank(int n) const { return ranks_.at(n); }
  const std::vector<int>& ranks() const { return ranks_; }
  // Boundary of generator j of P_n, n >= 1.
  const FreeElement& boundary(int n, int j) const { return boundary_.at(n).at(j); }
  // Z-matrix of d_n : P_n -> P_{n-1}; for n = 0 the augmentation onto Z.
  IntMatrix z_matrix(int n) const;
  // Solver for d_n, built on first use.
  const SparseSolver& solver(int n) const;
  // Checks d o d = 0 and exactness of the augmented complex up to degree `up_to`.
  void verify(int up_to) const;

  // g . x for x in the Z-module P_n.
  Vec translate(int n, int g, const Vec& x) const;
  Vec element_vector(int n, const FreeElement& e) const;

 private:
  GroupPtr group_;
  std::string flavor_;
  std::vector<int> ranks_;
  std::vector<std::vector<FreeElement>> boundary_;
  struct SolverCache;
  std::shared_ptr<SolverCache> solvers_;
};

using ResolutionPtr = std::shared_ptr<const FreeResolution>;

constexpr int kDefaultMaxDegree = 4;

ResolutionPtr bar_resolution(const GroupPtr& g, int d_max);
ResolutionPtr homogeneous_resolution(const GroupPtr& g, int d_max);
ResolutionPtr periodic_resolution(const GroupPtr& g, int d_max);
ResolutionPtr tensor_resolutions(const ResolutionPtr& p, const ResolutionPtr& q, const GroupPtr& product_group);
ResolutionPtr splice_resolution(const GroupPtr& g, int d_max);
// Kernel-driven resolution: each degree adds Z[G]-generators greedily from a
// kernel basis until they span the kernel of the previous boundary.
ResolutionPtr reduced_resolution(const GroupPtr& g, int d_max);
// Periodic for cyclic groups, tensor product for product groups, reduced otherwise.
ResolutionPtr default_resolution(const GroupPtr& g, int d_max);

// Tuple helpers for bar-type generators: nonidentity entries, mixed radix |G|-1.
std::vector<int> decode_nontrivial_tuple(const GroupTable& g, std::size_t code, int length);
std::size_t encode_nontrivial_tuple(const GroupTable& g, const std::vector<int>& t);

std::string resolution_key(const GroupTable& g, const std::string& flavor, int d_max);

}  // namespace tclab
