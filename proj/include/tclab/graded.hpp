#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tclab/matrix.hpp"

namespace tclab {

// Free graded-commutative ring over Z given by a basis and structure constants.
// A Kunneth square keeps a pointer to its factor and multiplies on the fly.
class GradedRing {
 public:
  struct Term {
    int basis;
    Integer coeff;
  };
  using Product = std::vector<Term>;

  // table[a * dim + b] = e_a e_b.
  GradedRing(std::string name, std::vector<std::string> labels, std::vector<int> degrees, std::vector<Product> table,
             int unit);
  static std::shared_ptr<const GradedRing> square(const std::shared_ptr<const GradedRing>& r);

  const std::string& name() const { return name_; }
  int dim() const { return static_cast<int>(labels_.size()); }
  int top() const { return top_; }
  int unit() const { return unit_; }
  int degree(int b) const { return degrees_[b]; }
  const std::string& label(int b) const { return labels_[b]; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::vector<int> basis_in_degree(int d) const;
  Product multiply_basis(int a, int b) const;

  // Set for squares: the factor ring, basis index a * dim(factor) + b for a (x) b.
  const std::shared_ptr<const GradedRing>& factor() const { return factor_; }
  int pair(int a, int b) const { return a * factor_->dim() + b; }

  // Exhaustive associativity, graded commutativity and unit checks; throws IdentityCheckFailed.
  void verify() const;

 private:
  GradedRing() = default;
  std::string name_;
  std::vector<std::string> labels_;
  std::vector<int> degrees_;
  std::vector<Product> table_;
  int unit_ = 0;
  int top_ = 0;
  std::shared_ptr<const GradedRing> factor_;
};
using RingPtr = std::shared_ptr<const GradedRing>;

class RingElement {
 public:
  RingElement() = default;
  RingElement(RingPtr ring, Vec coeffs);
  static RingElement zero(const RingPtr& r);
  static RingElement basis(const RingPtr& r, int b, const Integer& c = 1);
  static RingElement one(const RingPtr& r) { return basis(r, r->unit()); }

  const RingPtr& ring() const { return ring_; }
  const Vec& coeffs() const { return c_; }
  bool is_zero() const { return tclab::is_zero(c_); }
  // Degree of a homogeneous element; -1 for zero, -2 when mixed.
  int degree() const;
  std::size_t term_count() const;
  std::string describe() const;

  friend RingElement operator+(const RingElement& a, const RingElement& b);
  friend RingElement operator-(const RingElement& a, const RingElement& b);
  friend RingElement operator*(const RingElement& a, const RingElement& b);
  friend bool operator==(const RingElement& a, const RingElement& b);
  RingElement scaled(const Integer& s) const;

 private:
  RingPtr ring_;
  Vec c_;
};

RingPtr exterior_ring(int n);
RingPtr surface_ring(int g);
RingPtr wedge_ring(int mu);
RingPtr even_truncated_ring(int n);
// "circle", "torus:N" / "exterior:N", "surface:g", "wedge:mu", "even:n".
RingPtr named_ring(const std::string& spec);
// Same ring with basis element i moved to position perm[i].
RingPtr permuted_ring(const RingPtr& r, const std::vector<int>& perm);

RingPtr kunneth_square(const RingPtr& r);
RingElement left(const RingPtr& sq, int a);   // a (x) 1
RingElement right(const RingPtr& sq, int b);  // 1 (x) b
// a (x) 1 - 1 (x) a
RingElement bar(const RingPtr& sq, int a);
// Multiplication R (x) R -> R on a square element.
RingElement multiply_out(const RingElement& x);

// Homogeneous Z-basis of ker(multiplication); checked against a Smith-form kernel.
std::vector<RingElement> zero_divisor_basis(const RingPtr& sq);

struct ZdclResult {
  int zdcl = 0;
  std::vector<RingElement> witness;
  RingElement product;
  std::size_t nodes = 0;
};
// Throws SearchBudgetExceeded (message carries the best bound found) past the budget.
ZdclResult zdcl(const RingPtr& r, std::size_t budget = 20000000);

struct RingMap {
  RingPtr source, target;
  std::vector<RingElement> images;  // one per source basis element
  RingElement apply(const RingElement& x) const;
};
// phi* for phi(x, y) = x y^-1 on Z^N: x_i -> x_i (x) 1 - 1 (x) x_i.
RingMap phi_pullback(int n);

struct EssentialVerdict {
  bool essential = false;
  bool zero_divisor = false;
  std::optional<RingElement> beta;
};
EssentialVerdict abelian_essential_test(int n, const RingElement& alpha);

struct AlphaExpansion {
  RingElement product;
  RingElement formula;
  std::size_t terms = 0;
  bool unit_coefficients = false;
  // Terms where the sign of the literal (-1)^N (-1)^|K| differs from the product.
  std::size_t shuffle_sign_terms = 0;
};
AlphaExpansion expand_alpha(int n);

struct SymplecticPower {
  int n = 0;
  Integer coefficient;  // ubar^{2n} = coefficient * u^n (x) u^n
  Integer binomial;
};
SymplecticPower symplectic_power(int n);

struct TcReport {
  std::string space;
  ZdclResult z;
  int tc_lower = 0;
  std::optional<int> tc_upper;
  std::optional<int> paper_value;
  std::string cd_source;
  std::string verdict;
};
TcReport tc_report(const std::string& space);

}  // namespace tclab
