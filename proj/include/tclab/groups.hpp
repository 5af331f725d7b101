#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace tclab {

class GroupTable;
using GroupPtr = std::shared_ptr<const GroupTable>;

// Finite group as a multiplication table on element indices 0..m-1.
class GroupTable {
 public:
  // Validates the table: Latin square, identity, associativity (exhaustive up
  // to order 64, sampled with a fixed seed above).
  GroupTable(std::vector<std::vector<int>> table, std::string name = "");

  int order() const { return m_; }
  int identity() const { return e_; }
  int mul(int a, int b) const { return table_[static_cast<std::size_t>(a) * m_ + b]; }
  int inv(int a) const { return inv_[a]; }
  int conj(int g, int x) const { return mul(mul(g, x), inv(g)); }  // g x g^-1
  int element_order(int a) const;
  const std::string& name() const { return name_; }
  std::vector<std::vector<int>> rows() const;
  std::uint64_t fingerprint() const { return fp_; }
  bool is_abelian() const;
  // Small generating set, chosen greedily by index.
  const std::vector<int>& generators() const { return gens_; }

  // Set when the group was built by product(); factors of the direct product.
  GroupPtr left_factor() const { return left_; }
  GroupPtr right_factor() const { return right_; }
  // Generator of a cyclic group, or -1.
  int cyclic_generator() const;

 private:
  friend GroupPtr product(const GroupPtr&, const GroupPtr&);
  int m_ = 0;
  int e_ = 0;
  std::vector<int> table_;
  std::vector<int> inv_;
  std::string name_;
  std::uint64_t fp_ = 0;
  std::vector<int> gens_;
  GroupPtr left_, right_;
};

class GroupHom {
 public:
  GroupHom(GroupPtr source, GroupPtr target, std::vector<int> image);
  const GroupPtr& source() const { return src_; }
  const GroupPtr& target() const { return tgt_; }
  int operator()(int g) const { return image_[g]; }
  const std::vector<int>& image() const { return image_; }
  static GroupHom identity(const GroupPtr& g);

 private:
  GroupPtr src_, tgt_;
  std::vector<int> image_;
};

struct TupleOrbit {
  int arity = 0;
  std::vector<int> representative;
  std::vector<std::vector<int>> members;  // sorted lexicographically
  std::vector<int> centralizer;           // N_C, sorted
};

constexpr int kMaxCohomologyOrder = 64;
constexpr int kMaxProductOrder = 4096;

// "c<n>", "d<n>" (dihedral of order 2n), "s3", "q8", "trivial", products "AxB".
GroupPtr named_group(const std::string& spec);
GroupPtr cyclic_group(int n);
GroupPtr dihedral_group(int n);
GroupPtr symmetric3();
GroupPtr quaternion8();
GroupPtr product(const GroupPtr& g, const GroupPtr& h);

// Diagonal g -> (g, g) and left inclusion g -> (g, e) into product(g, g).
GroupHom diagonal(const GroupPtr& g, const GroupPtr& gg);
GroupHom left_inclusion(const GroupPtr& g, const GroupPtr& gg);
GroupHom right_inclusion(const GroupPtr& g, const GroupPtr& gg);
// (x, y) -> x y^-1 from product(g, g) to g.
GroupHom difference_map(const GroupPtr& gg, const GroupPtr& g);

std::vector<int> centralizer(const GroupTable& g, int x);
std::vector<int> conjugacy_class(const GroupTable& g, int x);
// Subgroup on the given (sorted) element list with its inclusion.
GroupHom subgroup(const GroupPtr& g, const std::vector<int>& elements);

std::vector<TupleOrbit> tuple_conjugacy_classes(const GroupTable& g, int s, bool nontrivial_only);

bool isomorphic_by_search(const GroupTable& a, const GroupTable& b);
bool same_group(const GroupTable& a, const GroupTable& b);
// Shared product(g, g), memoized per group object.
GroupPtr square_of(const GroupPtr& g);

}  // namespace tclab
