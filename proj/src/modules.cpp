#include "tclab/modules.hpp"

#include <random>

#include "tclab/errors.hpp"

namespace tclab {

namespace {

constexpr long long kMaxRank = 10000;

Integer joint_characteristic(const Integer& a, const Integer& b) {
  if (a.is_zero()) return b;
  if (b.is_zero() || a == b) return a;
  fail(ErrorCode::InvalidInput, "mixed coefficient characteristics");
}

void check_rank(long long r) {
  if (r > kMaxRank) fail(ErrorCode::RankTooLarge, "module rank " + std::to_string(r));
}

IntMatrix permutation_matrix(int n, const std::vector<int>& image) {
  std::vector<Triple> t;
  for (int i = 0; i < n; ++i) t.push_back({static_cast<std::size_t>(image[i]), static_cast<std::size_t>(i), 1});
  return IntMatrix(n, n, std::move(t));
}

}  // namespace

GModule::GModule(GroupPtr group, int rank, std::vector<IntMatrix> action, Integer characteristic,
                 std::vector<std::string> labels)
    : group_(std::move(group)), rank_(rank), action_(std::move(action)), char_(std::move(characteristic)),
      labels_(std::move(labels)) {
  validate();
}

void GModule::validate() const {
  int m = group_->order();
  if (static_cast<int>(action_.size()) != m) fail(ErrorCode::InvalidInput, "one action matrix per element");
  for (const auto& a : action_)
    if (static_cast<int>(a.rows()) != rank_ || static_cast<int>(a.cols()) != rank_)
      fail(ErrorCode::DimensionMismatch, "action matrix size");
  if (!(action_[group_->identity()] == IntMatrix::identity(rank_)))
    fail(ErrorCode::InvalidInput, "identity does not act trivially");
  auto check = [&](int a, int b) {
    if (!(action_[group_->mul(a, b)] == action_[a] * action_[b]))
      fail(ErrorCode::InvalidInput, "action is not a homomorphism");
  };
  if (m <= 12) {
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) check(a, b);
  } else {
    std::mt19937_64 rng(0x6d0du);
    std::uniform_int_distribution<int> pick(0, m - 1);
    for (int k = 0; k < 48; ++k) check(pick(rng), pick(rng));
    for (int g : group_->generators())
      for (int b = 0; b < m; ++b) check(g, b);
  }
  // Invertibility follows from the group law: a(g) a(g^-1) = I.
  for (int g : group_->generators())
    if (!(action_[g] * action_[group_->inv(g)] == IntMatrix::identity(rank_)))
      fail(ErrorCode::InvalidInput, "action matrix is not invertible");
}

GModule GModule::trivial(const GroupPtr& g, int rank, const Integer& characteristic) {
  return GModule(g, rank, std::vector<IntMatrix>(g->order(), IntMatrix::identity(rank)), characteristic);
}

GModule GModule::permutation(const GroupPtr& g, int rank, const std::vector<std::vector<int>>& perm,
                             std::vector<std::string> labels) {
  std::vector<IntMatrix> act;
  for (int x = 0; x < g->order(); ++x) act.push_back(permutation_matrix(rank, perm[x]));
  return GModule(g, rank, std::move(act), 0, std::move(labels));
}

Vec GModule::act(int g, const Vec& v) const { return action_[g].apply(v); }

GModule GModule::with_characteristic(const Integer& p) const {
  GModule m = *this;
  m.char_ = p;
  return m;
}

bool GModule::is_trivial_action() const {
  IntMatrix id = IntMatrix::identity(rank_);
  for (const auto& a : action_)
    if (!(a == id)) return false;
  return true;
}

bool operator==(const GModule& a, const GModule& b) {
  if (!same_group(*a.group_, *b.group_) || a.rank_ != b.rank_ || a.char_ != b.char_) return false;
  for (std::size_t g = 0; g < a.action_.size(); ++g)
    if (!(a.action_[g] == b.action_[g])) return false;
  return true;
}

ModuleMap::ModuleMap(GModule source, GModule target, IntMatrix matrix, bool check)
    : src_(std::move(source)), tgt_(std::move(target)), mat_(std::move(matrix)) {
  if (!same_group(*src_.group(), *tgt_.group())) fail(ErrorCode::GroupMismatch, "module map between different groups");
  if (static_cast<int>(mat_.rows()) != tgt_.rank() || static_cast<int>(mat_.cols()) != src_.rank())
    fail(ErrorCode::DimensionMismatch, "module map matrix size");
  if (check && !is_equivariant()) fail(ErrorCode::InvalidInput, "module map is not equivariant");
}

bool ModuleMap::is_equivariant() const {
  const Integer& p = tgt_.characteristic();
  for (int g : src_.group()->generators())
    if (!((mat_ * src_.action(g) - tgt_.action(g) * mat_).reduced_mod(p).is_zero())) return false;
  return true;
}

ModuleMap ModuleMap::identity(const GModule& m) { return ModuleMap(m, m, IntMatrix::identity(m.rank()), false); }

ModuleMap ModuleMap::zero(const GModule& source, const GModule& target) {
  return ModuleMap(source, target, IntMatrix(target.rank(), source.rank()), false);
}

ModuleMap compose(const ModuleMap& g, const ModuleMap& f) {
  if (f.tgt_.rank() != g.src_.rank()) fail(ErrorCode::DimensionMismatch, "composition of module maps");
  return ModuleMap(f.src_, g.tgt_, g.mat_ * f.mat_, false);
}

int aug_index(const GroupTable& g, int element) {
  if (element == g.identity()) return -1;
  return element < g.identity() ? element : element - 1;
}

int aug_element(const GroupTable& g, int index) { return index < g.identity() ? index : index + 1; }

GModule group_ring_bimodule(const GroupPtr& g) {
  GroupPtr gg = square_of(g);
  int m = g->order();
  std::vector<std::vector<int>> perm(gg->order(), std::vector<int>(m));
  for (int x = 0; x < gg->order(); ++x)
    for (int a = 0; a < m; ++a) perm[x][a] = g->mul(g->mul(x / m, a), g->inv(x % m));
  return GModule::permutation(gg, m, perm);
}

GModule left_regular(const GroupPtr& g) {
  int m = g->order();
  std::vector<std::vector<int>> perm(m, std::vector<int>(m));
  for (int x = 0; x < m; ++x)
    for (int a = 0; a < m; ++a) perm[x][a] = g->mul(x, a);
  return GModule::permutation(g, m, perm);
}

namespace {

// The augmentation sequence for a permutation module on the group elements.
AugmentationData augmentation_for(const GModule& ring, const GroupTable& g) {
  int m = g.order();
  int r = m - 1;
  std::vector<std::string> labels;
  for (int i = 0; i < r; ++i) labels.push_back("g" + std::to_string(aug_element(g, i)) + "-1");
  // x (a - 1) = x.a - x.e with x.e rewritten as (x.e - 1) + 1.
  std::vector<IntMatrix> act;
  for (int x = 0; x < ring.group()->order(); ++x) {
    const IntMatrix& p = ring.action(x);
    std::vector<int> image(m);
    for (const auto& t : p.triples()) image[t.col] = static_cast<int>(t.row);
    std::vector<Triple> tr;
    int xe = image[g.identity()];
    for (int i = 0; i < r; ++i) {
      int xa = image[aug_element(g, i)];
      if (xa != g.identity()) tr.push_back({static_cast<std::size_t>(aug_index(g, xa)), static_cast<std::size_t>(i), 1});
      if (xe != g.identity()) tr.push_back({static_cast<std::size_t>(aug_index(g, xe)), static_cast<std::size_t>(i), -1});
    }
    act.push_back(IntMatrix(r, r, std::move(tr)));
  }
  AugmentationData d;
  d.ring = ring;
  d.ideal = GModule(ring.group(), r, std::move(act), 0, labels);
  d.trivial = GModule::trivial(ring.group());
  std::vector<Triple> inc;
  for (int i = 0; i < r; ++i) {
    inc.push_back({static_cast<std::size_t>(aug_element(g, i)), static_cast<std::size_t>(i), 1});
    inc.push_back({static_cast<std::size_t>(g.identity()), static_cast<std::size_t>(i), -1});
  }
  d.incl = ModuleMap(d.ideal, ring, IntMatrix(m, r, std::move(inc)));
  std::vector<Triple> au;
  for (int a = 0; a < m; ++a) au.push_back({0, static_cast<std::size_t>(a), 1});
  d.aug = ModuleMap(ring, d.trivial, IntMatrix(1, m, std::move(au)));
  return d;
}

}  // namespace

AugmentationData augmentation_ideal(const GroupPtr& g) { return augmentation_for(group_ring_bimodule(g), *g); }

AugmentationData left_augmentation_ideal(const GroupPtr& g) { return augmentation_for(left_regular(g), *g); }

GModule tensor(const GModule& a, const GModule& b) {
  if (!same_group(*a.group(), *b.group())) fail(ErrorCode::GroupMismatch, "tensor of modules over different groups");
  check_rank(static_cast<long long>(a.rank()) * b.rank());
  std::vector<IntMatrix> act;
  for (int g = 0; g < a.group()->order(); ++g) act.push_back(IntMatrix::kronecker(a.action(g), b.action(g)));
  std::vector<std::string> labels;
  if (!a.labels().empty() && !b.labels().empty())
    for (const auto& x : a.labels())
      for (const auto& y : b.labels()) labels.push_back(x + "|" + y);
  return GModule(a.group(), a.rank() * b.rank(), std::move(act),
                 joint_characteristic(a.characteristic(), b.characteristic()), std::move(labels));
}

GModule tensor_power_diagonal(const GModule& m, int s) {
  double r = 1;
  for (int i = 0; i < s; ++i) r *= m.rank();
  if (r > kMaxRank) fail(ErrorCode::RankTooLarge, "tensor power rank");
  GModule out = GModule::trivial(m.group(), 1, 0);
  for (int i = 0; i < s; ++i) out = (i == 0) ? m : tensor(out, m);
  return out;
}

GModule hom_z_module(const GModule& a, const GModule& b) {
  if (!same_group(*a.group(), *b.group())) fail(ErrorCode::GroupMismatch, "Hom of modules over different groups");
  check_rank(static_cast<long long>(a.rank()) * b.rank());
  std::vector<IntMatrix> act;
  const GroupTable& g = *a.group();
  for (int x = 0; x < g.order(); ++x)
    act.push_back(IntMatrix::kronecker(b.action(x), a.action(g.inv(x)).transpose()));
  return GModule(a.group(), a.rank() * b.rank(), std::move(act),
                 joint_characteristic(a.characteristic(), b.characteristic()));
}

GModule restrict_along(const GroupHom& h, const GModule& m) {
  if (!same_group(*h.target(), *m.group())) fail(ErrorCode::GroupMismatch, "restriction along a map to another group");
  std::vector<IntMatrix> act;
  for (int x = 0; x < h.source()->order(); ++x) act.push_back(m.action(h(x)));
  return GModule(h.source(), m.rank(), std::move(act), m.characteristic(), m.labels());
}

GModule coinduced_from_class(const GroupPtr& g, int representative) {
  std::vector<int> cls = conjugacy_class(*g, representative);
  int r = static_cast<int>(cls.size());
  std::vector<std::vector<int>> perm(g->order(), std::vector<int>(r));
  for (int x = 0; x < g->order(); ++x)
    for (int i = 0; i < r; ++i) {
      int y = g->conj(x, cls[i]);
      perm[x][i] = static_cast<int>(std::lower_bound(cls.begin(), cls.end(), y) - cls.begin());
    }
  std::vector<std::string> labels;
  for (int c : cls) labels.push_back("delta" + std::to_string(c));
  return GModule::permutation(g, r, perm, labels);
}

ModuleMap tensor_maps(const ModuleMap& f, const ModuleMap& g) {
  return ModuleMap(tensor(f.source(), g.source()), tensor(f.target(), g.target()),
                   IntMatrix::kronecker(f.matrix(), g.matrix()), false);
}

ModuleMap hom_pullback(const ModuleMap& f, const GModule& a) {
  // vec(F f) = (I_A (x) f^T) vec(F).
  return ModuleMap(hom_z_module(f.target(), a), hom_z_module(f.source(), a),
                   IntMatrix::kronecker(IntMatrix::identity(a.rank()), f.matrix().transpose()), false);
}

ModuleMap hom_pushforward(const GModule& x, const ModuleMap& g) {
  return ModuleMap(hom_z_module(x, g.source()), hom_z_module(x, g.target()),
                   IntMatrix::kronecker(g.matrix(), IntMatrix::identity(x.rank())), false);
}

ModuleMap evaluation_map(const GModule& ideal, const GModule& a, int s) {
  GModule is = tensor_power_diagonal(ideal, s);
  GModule is1 = tensor_power_diagonal(ideal, s + 1);
  GModule src = tensor(ideal, hom_z_module(is1, a));
  GModule tgt = hom_z_module(is, a);
  std::size_t ri = ideal.rank(), rs = is.rank(), rs1 = is1.rank(), ra = a.rank();
  std::vector<Triple> t;
  for (std::size_t p = 0; p < ri; ++p)
    for (std::size_t x = 0; x < ra; ++x)
      for (std::size_t y = 0; y < rs; ++y) {
        std::size_t col = p * (ra * rs1) + x * rs1 + (p * rs + y);
        t.push_back({x * rs + y, col, 1});
      }
  return ModuleMap(src, tgt, IntMatrix(tgt.rank(), src.rank(), std::move(t)));
}

ModuleMap pairing_psi(const GModule& ideal, const GModule& a, int k) {
  GModule ik = tensor_power_diagonal(ideal, k);
  GModule src = tensor(ik, hom_z_module(ik, a));
  std::size_t ri = ideal.rank(), rk = ik.rank(), ra = a.rank();
  auto reversed = [&](std::size_t code) {
    std::size_t out = 0;
    for (int i = 0; i < k; ++i) {
      out = out * ri + code % ri;
      code /= ri;
    }
    return out;
  };
  std::vector<Triple> t;
  for (std::size_t xcode = 0; xcode < rk; ++xcode) {
    std::size_t z = reversed(xcode);
    for (std::size_t x = 0; x < ra; ++x) t.push_back({x, xcode * (ra * rk) + x * rk + z, 1});
  }
  return ModuleMap(src, a, IntMatrix(ra, src.rank(), std::move(t)));
}

ModuleMap swap_map(const GModule& a, const GModule& b) {
  std::size_t ra = a.rank(), rb = b.rank();
  std::vector<Triple> t;
  for (std::size_t i = 0; i < ra; ++i)
    for (std::size_t j = 0; j < rb; ++j) t.push_back({j * ra + i, i * rb + j, 1});
  return ModuleMap(tensor(a, b), tensor(b, a), IntMatrix(ra * rb, ra * rb, std::move(t)));
}

}  // namespace tclab
