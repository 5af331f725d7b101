#include "tclab/cohomology.hpp"

#include <map>
#include <mutex>
#include <sstream>

#include "tclab/errors.hpp"

namespace tclab {

namespace {

constexpr std::uint64_t kFnvOffset = 1469598103934665603ull;
constexpr std::uint64_t kFnvPrime = 1099511628211ull;

void fnv(std::uint64_t& h, std::uint64_t x) {
  for (int i = 0; i < 8; ++i) {
    h ^= (x >> (8 * i)) & 0xff;
    h *= kFnvPrime;
  }
}

void fnv(std::uint64_t& h, const Integer& x) {
  if (x.is_small()) {
    fnv(h, static_cast<std::uint64_t>(*x.to_int64()));
  } else {
    for (char c : x.str()) fnv(h, static_cast<std::uint64_t>(c));
  }
}

Vec block(const Vec& v, std::size_t j, std::size_t r) {
  return Vec(v.begin() + static_cast<std::ptrdiff_t>(j * r), v.begin() + static_cast<std::ptrdiff_t>((j + 1) * r));
}

void add_block(Vec& v, std::size_t j, const Vec& x) {
  for (std::size_t i = 0; i < x.size(); ++i) v[j * x.size() + i] += x[i];
}

// (delta f) on generators of P_{n+1}.
Vec apply_differential(const FreeResolution& r, const GModule& a, int n, const Vec& f) {
  std::size_t ra = a.rank();
  Vec out(cochain_dim(r, a, n + 1));
  for (int i = 0; i < r.rank(n + 1); ++i)
    for (const auto& t : r.boundary(n + 1, i)) {
      Vec x = a.act(t.element, block(f, t.generator, ra));
      add_block(out, i, scale(x, t.coeff));
    }
  return reduce_mod(out, a.characteristic());
}

void require_degree(const FreeResolution& r, int n) {
  if (n < 0 || n + 1 > r.max_degree())
    fail(ErrorCode::DegreeOutOfRange,
         "degree " + std::to_string(n) + " needs a resolution of length " + std::to_string(n + 1));
}

std::string pointer_key(const void* p) {
  std::ostringstream out;
  out << p;
  return out.str();
}

}  // namespace

std::size_t cochain_dim(const FreeResolution& r, const GModule& a, int n) {
  return static_cast<std::size_t>(r.rank(n)) * a.rank();
}

IntMatrix cochain_differential(const FreeResolution& r, const GModule& a, int n) {
  std::size_t ra = a.rank();
  std::vector<Triple> t;
  for (int i = 0; i < r.rank(n + 1); ++i)
    for (const auto& term : r.boundary(n + 1, i))
      for (const auto& e : a.action(term.element).triples())
        t.push_back({i * ra + e.row, term.generator * ra + e.col, term.coeff * e.value});
  IntMatrix m(cochain_dim(r, a, n + 1), cochain_dim(r, a, n), std::move(t));
  return m.reduced_mod(a.characteristic());
}

std::uint64_t module_fingerprint(const GModule& m) {
  std::uint64_t h = kFnvOffset;
  fnv(h, m.group()->fingerprint());
  fnv(h, static_cast<std::uint64_t>(m.rank()));
  fnv(h, m.characteristic());
  for (const auto& a : m.actions()) {
    fnv(h, static_cast<std::uint64_t>(a.nnz()));
    for (const auto& t : a.triples()) {
      fnv(h, static_cast<std::uint64_t>(t.row));
      fnv(h, static_cast<std::uint64_t>(t.col));
      fnv(h, t.value);
    }
  }
  return h;
}

CohomologyPtr cohomology(const ResolutionPtr& r, const GModule& a, int n) {
  require_degree(*r, n);
  if (!same_group(*r->group(), *a.group())) fail(ErrorCode::GroupMismatch, "coefficients over another group");
  static std::mutex mu;
  static std::map<std::string, CohomologyPtr> cache;
  std::string key = pointer_key(r.get()) + "/" + std::to_string(module_fingerprint(a)) + "/" + std::to_string(n);
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  IntMatrix d_in = n == 0 ? IntMatrix(cochain_dim(*r, a, 0), 0) : cochain_differential(*r, a, n - 1);
  IntMatrix d_out = cochain_differential(*r, a, n);
  auto h = std::make_shared<CohomologyGroup>(
      CohomologyGroup{r, a, n, homology_at(d_in, d_out, a.characteristic())});
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(key, h).first->second;
}

CohomologyPtr ext_via_hom(const GModule& m, const GModule& a, int r, int d_max) {
  return cohomology(default_resolution(m.group(), std::max(d_max, r + 1)), hom_z_module(m, a), r);
}

CohomologyClass::CohomologyClass(ResolutionPtr res, GModule coeff, int degree, Vec cocycle)
    : res_(std::move(res)), coeff_(std::move(coeff)), degree_(degree), cocycle_(std::move(cocycle)) {
  require_degree(*res_, degree_);
  if (cocycle_.size() != cochain_dim(*res_, coeff_, degree_)) fail(ErrorCode::DimensionMismatch, "cocycle length");
  cocycle_ = reduce_mod(cocycle_, coeff_.characteristic());
  if (!tclab::is_zero(apply_differential(*res_, coeff_, degree_, cocycle_)))
    fail(ErrorCode::InvalidInput, "cochain is not a cocycle");
}

CohomologyClass CohomologyClass::zero(const ResolutionPtr& res, const GModule& coeff, int degree) {
  return CohomologyClass(res, coeff, degree, Vec(cochain_dim(*res, coeff, degree)));
}

CohomologyClass CohomologyClass::from_coordinates(const CohomologyPtr& h, const Vec& coords) {
  return CohomologyClass(h->res, h->coeff, h->degree, h->homology.lift(coords));
}

Vec CohomologyClass::value(int j) const { return block(cocycle_, j, coeff_.rank()); }

bool CohomologyClass::is_zero() const { return tclab::is_zero(coordinates()); }

namespace {

void require_comparable(const CohomologyClass& a, const CohomologyClass& b) {
  if (a.degree() != b.degree() || !same_group(*a.group(), *b.group()))
    fail(ErrorCode::GroupMismatch, "classes live in different groups");
  if (!(a.coefficients() == b.coefficients())) fail(ErrorCode::GroupMismatch, "different coefficient modules");
}

CohomologyClass on_resolution_of(const CohomologyClass& b, const CohomologyClass& a) {
  return a.resolution() == b.resolution() ? b : convert(b, a.resolution());
}

}  // namespace

bool operator==(const CohomologyClass& a, const CohomologyClass& b) {
  require_comparable(a, b);
  return (a - b).is_zero();
}

CohomologyClass operator+(const CohomologyClass& a, const CohomologyClass& b) {
  require_comparable(a, b);
  CohomologyClass bb = on_resolution_of(b, a);
  return CohomologyClass(a.resolution(), a.coefficients(), a.degree(), add(a.cocycle(), bb.cocycle()));
}

CohomologyClass operator-(const CohomologyClass& a, const CohomologyClass& b) {
  require_comparable(a, b);
  CohomologyClass bb = on_resolution_of(b, a);
  return CohomologyClass(a.resolution(), a.coefficients(), a.degree(), sub(a.cocycle(), bb.cocycle()));
}

CohomologyClass CohomologyClass::scaled(const Integer& s) const {
  return CohomologyClass(res_, coeff_, degree_, scale(cocycle_, s));
}

namespace {

// Two truncations of one construction: the identity is a chain map between them.
bool same_prefix(const FreeResolution& p, const FreeResolution& q, const GroupHom& h, int up_to) {
  if (p.group() != q.group() || p.flavor() != q.flavor()) return false;
  for (int g = 0; g < p.group()->order(); ++g)
    if (h(g) != g) return false;
  for (int n = 0; n <= up_to; ++n) {
    if (p.rank(n) != q.rank(n)) return false;
    for (int j = 0; n > 0 && j < p.rank(n); ++j) {
      const FreeElement& a = p.boundary(n, j);
      const FreeElement& b = q.boundary(n, j);
      if (a.size() != b.size()) return false;
      for (std::size_t k = 0; k < a.size(); ++k)
        if (a[k].coeff != b[k].coeff || a[k].element != b[k].element || a[k].generator != b[k].generator) return false;
    }
  }
  return true;
}

}  // namespace

ChainMapPtr lift_chain_map(const ResolutionPtr& source, const ResolutionPtr& target, const GroupHom& h, int up_to) {
  if (!same_group(*h.source(), *source->group()) || !same_group(*h.target(), *target->group()))
    fail(ErrorCode::GroupMismatch, "chain map over a mismatched homomorphism");
  up_to = std::min(up_to, std::min(source->max_degree(), target->max_degree()));
  static std::mutex mu;
  static std::map<std::string, ChainMapPtr> cache;
  std::ostringstream key;
  key << source.get() << "/" << target.get();
  for (int x : h.image()) key << "," << x;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key.str());
    if (it != cache.end() && it->second->max_degree() >= up_to) return it->second;
  }
  const FreeResolution& p = *source;
  const FreeResolution& q = *target;
  int mq = q.group()->order();
  auto phi = std::make_shared<ChainMap>(ChainMap{source, target, h, {}});
  phi->images.resize(up_to + 1);
  if (same_prefix(p, q, h, up_to)) {
    for (int n = 0; n <= up_to; ++n)
      for (int j = 0; j < p.rank(n); ++j) {
        Vec v(static_cast<std::size_t>(q.rank(n)) * mq);
        v[static_cast<std::size_t>(j) * mq + q.group()->identity()] = 1;
        phi->images[n].push_back(std::move(v));
      }
    std::lock_guard<std::mutex> lock(mu);
    return cache[key.str()] = phi;
  }
  for (int j = 0; j < p.rank(0); ++j) {
    Vec v(static_cast<std::size_t>(q.rank(0)) * mq);
    v[q.group()->identity()] = 1;
    phi->images[0].push_back(v);
  }
  for (int n = 1; n <= up_to; ++n) {
    const SparseSolver& solver = q.solver(n);
    for (int j = 0; j < p.rank(n); ++j) {
      Vec rhs(static_cast<std::size_t>(q.rank(n - 1)) * mq);
      for (const auto& t : p.boundary(n, j))
        rhs = add(rhs, scale(q.translate(n - 1, h(t.element), phi->images[n - 1][t.generator]), t.coeff));
      auto x = solver.solve(rhs);
      if (!x) fail(ErrorCode::LiftFailed, "chain map lift failed in degree " + std::to_string(n));
      phi->images[n].push_back(std::move(*x));
    }
  }
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[key.str()];
  if (!slot || slot->max_degree() < up_to) slot = phi;
  return slot;
}

void verify_chain_map(const ChainMap& phi) {
  const FreeResolution& p = *phi.source;
  const FreeResolution& q = *phi.target;
  for (int j = 0; j < p.rank(0); ++j)
    if (!(q.z_matrix(0).apply(phi.images[0][j]) == Vec{1}))
      fail(ErrorCode::ChainMapCheckFailed, "augmentation not preserved");
  for (int n = 1; n <= phi.max_degree(); ++n) {
    IntMatrix d = q.z_matrix(n);
    for (int j = 0; j < p.rank(n); ++j) {
      Vec rhs(d.rows());
      for (const auto& t : p.boundary(n, j))
        rhs = add(rhs, scale(q.translate(n - 1, phi.hom(t.element), phi.images[n - 1][t.generator]), t.coeff));
      if (!(d.apply(phi.images[n][j]) == rhs))
        fail(ErrorCode::ChainMapCheckFailed, "d phi != phi d in degree " + std::to_string(n));
    }
  }
}

CohomologyClass pull_back(const ChainMap& phi, const CohomologyClass& u, const GModule& restricted) {
  int n = u.degree();
  if (phi.target != u.resolution()) fail(ErrorCode::GroupMismatch, "chain map does not end at the class resolution");
  if (n > phi.max_degree()) fail(ErrorCode::DegreeOutOfRange, "chain map too short");
  const GModule& a = u.coefficients();
  std::size_t ra = a.rank();
  int mq = phi.target->group()->order();
  Vec out(cochain_dim(*phi.source, restricted, n));
  for (int j = 0; j < phi.source->rank(n); ++j) {
    const Vec& img = phi.images[n][j];
    for (std::size_t idx = 0; idx < img.size(); ++idx) {
      if (img[idx].is_zero()) continue;
      Vec x = a.act(static_cast<int>(idx % mq), u.value(static_cast<int>(idx / mq)));
      add_block(out, j, scale(x, img[idx]));
    }
  }
  (void)ra;
  return CohomologyClass(phi.source, restricted, n, std::move(out));
}

CohomologyClass restriction(const CohomologyClass& u, const GroupHom& h, const ResolutionPtr& source_res) {
  bool identity = h.source() == h.target();
  for (int g = 0; identity && g < h.source()->order(); ++g) identity = h(g) == g;
  GModule restricted = identity ? u.coefficients() : restrict_along(h, u.coefficients());
  ChainMapPtr phi = lift_chain_map(source_res, u.resolution(), h, u.degree());
  return pull_back(*phi, u, restricted);
}

CohomologyClass convert(const CohomologyClass& u, const ResolutionPtr& res) {
  if (res == u.resolution()) return u;
  return restriction(u, GroupHom::identity(u.group()), res);
}

CohomologyClass pushforward(const ModuleMap& m, const CohomologyClass& u) {
  if (!(m.source() == u.coefficients())) fail(ErrorCode::GroupMismatch, "map source is not the coefficient module");
  const FreeResolution& r = *u.resolution();
  Vec out(cochain_dim(r, m.target(), u.degree()));
  for (int j = 0; j < r.rank(u.degree()); ++j) add_block(out, j, m.apply(u.value(j)));
  return CohomologyClass(u.resolution(), m.target(), u.degree(), std::move(out));
}

Vec bar_cup_cochain(const GroupTable& g, const GModule& a, int p, const Vec& u, const GModule& b, int q,
                    const Vec& v) {
  std::size_t ra = a.rank(), rb = b.rank();
  std::size_t count = 1;
  for (int i = 0; i < p + q; ++i) count *= static_cast<std::size_t>(g.order() - 1);
  Vec out(count * ra * rb);
  for (std::size_t code = 0; code < count; ++code) {
    std::vector<int> t = decode_nontrivial_tuple(g, code, p + q);
    std::vector<int> front(t.begin(), t.begin() + p), back(t.begin() + p, t.end());
    Vec uf = block(u, encode_nontrivial_tuple(g, front), ra);
    if (tclab::is_zero(uf)) continue;
    int prod = g.identity();
    for (int x : front) prod = g.mul(prod, x);
    Vec vb = b.act(prod, block(v, encode_nontrivial_tuple(g, back), rb));
    for (std::size_t i = 0; i < ra; ++i) {
      if (uf[i].is_zero()) continue;
      for (std::size_t k = 0; k < rb; ++k)
        if (!vb[k].is_zero()) out[code * ra * rb + i * rb + k] += uf[i] * vb[k];
    }
  }
  return out;
}

CohomologyClass cup_product(const CohomologyClass& u, const CohomologyClass& v) {
  if (!same_group(*u.group(), *v.group())) fail(ErrorCode::GroupMismatch, "cup product over different groups");
  int p = u.degree(), q = v.degree();
  ResolutionPtr bar = bar_resolution(u.group(), p + q + 1);
  CohomologyClass ub = convert(u, bar), vb = convert(v, bar);
  GModule ab = tensor(u.coefficients(), v.coefficients());
  Vec w = bar_cup_cochain(*u.group(), u.coefficients(), p, ub.cocycle(), v.coefficients(), q, vb.cocycle());
  return CohomologyClass(bar, ab, p + q, std::move(w));
}

namespace {

// For a matrix with unit invariant factors, U M V = D; returns V D^+ U, a one-sided inverse.
IntMatrix unit_pseudo_inverse(const IntMatrix& m, std::size_t expected_rank, const char* what) {
  SmithForm s = smith_form(m.to_dense());
  if (s.rank != expected_rank) fail(ErrorCode::NotExact, what);
  DenseMatrix dplus(m.cols(), m.rows());
  for (std::size_t i = 0; i < s.rank; ++i) {
    if (!s.d(i, i).is_unit()) fail(ErrorCode::NoSplitting, what);
    dplus(i, i) = s.d(i, i);  // a unit is its own inverse
  }
  return IntMatrix::from_dense(s.v * dplus * s.u);
}

}  // namespace

ShortExactSequence ShortExactSequence::from_maps(ModuleMap incl, ModuleMap proj) {
  if (!(incl.target() == proj.source())) fail(ErrorCode::DimensionMismatch, "maps are not composable");
  std::size_t rn = incl.source().rank(), rl = incl.target().rank(), rm = proj.target().rank();
  if (!(proj.matrix() * incl.matrix()).is_zero()) fail(ErrorCode::NotExact, "proj o incl != 0");
  if (rl != rn + rm) fail(ErrorCode::NotExact, "ranks do not add up");
  ShortExactSequence s{std::move(incl), std::move(proj), {}, {}};
  s.left_inverse = unit_pseudo_inverse(s.incl.matrix(), rn, "inclusion is not split injective");
  s.section = unit_pseudo_inverse(s.proj.matrix(), rm, "projection is not split surjective");
  return s;
}

ShortExactSequence ShortExactSequence::perturbed(const IntMatrix& shift) const {
  ShortExactSequence s = *this;
  s.section = section + incl.matrix() * shift;
  return s;
}

namespace {

CohomologyClass snake(const ShortExactSequence& seq, const CohomologyClass& u) {
  const FreeResolution& r = *u.resolution();
  int n = u.degree();
  const GModule& l = seq.incl.target();
  const GModule& nmod = seq.incl.source();
  Vec lifted(cochain_dim(r, l, n));
  for (int j = 0; j < r.rank(n); ++j) add_block(lifted, j, seq.section.apply(u.value(j)));
  if (n + 2 > r.max_degree()) fail(ErrorCode::DegreeOutOfRange, "connecting map needs two more degrees");
  Vec d = apply_differential(r, l, n, lifted);
  Vec out(cochain_dim(r, nmod, n + 1));
  for (int j = 0; j < r.rank(n + 1); ++j) {
    Vec y = block(d, j, l.rank());
    Vec x = seq.left_inverse.apply(y);
    if (!(seq.incl.apply(x) == y)) fail(ErrorCode::NotExact, "coboundary of the lift leaves the submodule");
    add_block(out, j, x);
  }
  return CohomologyClass(u.resolution(), nmod, n + 1, std::move(out));
}

}  // namespace

CohomologyClass connecting_hom(const ShortExactSequence& seq, const CohomologyClass& u, bool cross_check) {
  if (!(seq.proj.target() == u.coefficients())) fail(ErrorCode::GroupMismatch, "class is not in the quotient");
  CohomologyClass b = snake(seq, u);
  if (cross_check) {
    std::size_t rn = seq.incl.source().rank(), rm = seq.proj.target().rank();
    std::vector<Triple> t;
    for (std::size_t i = 0; i < rn; ++i)
      for (std::size_t j = 0; j < rm; ++j)
        if ((i + 2 * j) % 3 == 0) t.push_back({i, j, 1});
    CohomologyClass b2 = snake(seq.perturbed(IntMatrix(rn, rm, std::move(t))), u);
    if (!(b == b2)) fail(ErrorCode::CrossCheckFailed, "connecting class depends on the splitting");
  }
  return b;
}

CohomologyClass class_of_exact_sequence(const std::vector<ModuleMap>& maps, const ResolutionPtr& r) {
  if (maps.size() < 2) fail(ErrorCode::InvalidInput, "need at least 0 -> N -> L_1 -> Z -> 0");
  int n = static_cast<int>(maps.size()) - 1;
  const GModule& z = maps.back().target();
  if (z.rank() != 1 || !z.is_trivial_action()) fail(ErrorCode::InvalidInput, "sequence must end in trivial Z");
  for (std::size_t i = 0; i + 1 < maps.size(); ++i)
    if (!(maps[i + 1].matrix() * maps[i].matrix()).is_zero())
      fail(ErrorCode::LiftFailed, "consecutive maps do not compose to zero");
  require_degree(*r, n);
  // phi_k : P_k -> L_{k+1}, with L_{n+1} = N; the map out of L_{k+1} is maps[n - k].
  std::vector<Vec> prev;
  for (int j = 0; j < r->rank(0); ++j) {
    auto x = membership(maps[n].matrix(), Vec{1});
    if (!x) fail(ErrorCode::LiftFailed, "augmentation is not surjective");
    prev.push_back(*x);
  }
  for (int k = 1; k <= n; ++k) {
    const ModuleMap& out = maps[n - k];
    const GModule& lk = out.target();
    SparseSolver solver(out.matrix());
    std::vector<Vec> cur;
    for (int j = 0; j < r->rank(k); ++j) {
      Vec rhs(lk.rank());
      for (const auto& t : r->boundary(k, j)) rhs = add(rhs, scale(lk.act(t.element, prev[t.generator]), t.coeff));
      auto x = solver.solve(rhs);
      if (!x) fail(ErrorCode::LiftFailed, "lift failed in degree " + std::to_string(k));
      cur.push_back(std::move(*x));
    }
    prev = std::move(cur);
  }
  Vec cocycle;
  for (const auto& v : prev) cocycle.insert(cocycle.end(), v.begin(), v.end());
  return CohomologyClass(r, maps[0].source(), n, std::move(cocycle));
}

}  // namespace tclab
