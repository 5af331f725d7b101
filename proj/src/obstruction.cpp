#include "tclab/obstruction.hpp"

#include <algorithm>
#include <functional>
#include <mutex>

#include "tclab/errors.hpp"

namespace tclab {

namespace {

constexpr std::size_t kMaxCoupleRank = 50000;

// F -> F o f on Hom_Z(X, A), for a Z-linear f : X' -> X.
IntMatrix pullback_matrix(const IntMatrix& f, std::size_t ra) {
  return IntMatrix::kronecker(IntMatrix::identity(ra), f.transpose());
}

DenseMatrix induced_matrix(const CohomologyPtr& src, const CohomologyPtr& tgt,
                           const std::function<CohomologyClass(const CohomologyClass&)>& op) {
  std::size_t k = src->homology.generator_count();
  std::size_t t = tgt->homology.generator_count();
  DenseMatrix m(t, k);
  for (std::size_t c = 0; c < k; ++c) {
    CohomologyClass u = CohomologyClass::from_coordinates(src, unit_vec(k, c));
    CohomologyClass w = op(u);
    Vec col = tgt->homology.project(w.cocycle());
    for (std::size_t r = 0; r < t; ++r) m(r, c) = col[r];
  }
  return m;
}

Lattice relation_lattice(const CohomologyPtr& h) {
  const Vec& f = h->homology.factors();
  std::vector<Vec> gens;
  for (std::size_t i = 0; i < f.size(); ++i)
    if (!f[i].is_zero()) gens.push_back(scale(unit_vec(f.size(), i), f[i]));
  return Lattice::span(f.size(), gens);
}

Lattice column_span(const DenseMatrix& m) {
  std::vector<Vec> cols;
  for (std::size_t c = 0; c < m.cols(); ++c) cols.push_back(m.column(c));
  return Lattice::span(m.rows(), cols);
}

DenseMatrix identity_dense(std::size_t n) { return DenseMatrix::identity(n); }

void expect(bool ok, const std::string& what) {
  if (!ok) fail(ErrorCode::ExactnessCheckFailed, what);
}

std::string at(int p, int r, int s) {
  return " (p=" + std::to_string(p) + ", r=" + std::to_string(r) + ", s=" + std::to_string(s) + ")";
}

// Reverses the Kronecker digits of an index of I^n.
std::size_t reverse_digits(std::size_t code, std::size_t base, int n) {
  std::size_t out = 0;
  for (int i = 0; i < n; ++i) {
    out = out * base + code % base;
    code /= base;
  }
  return out;
}

}  // namespace

SpliceLevel splice_level(const GroupPtr& g, const GModule& a, int s) {
  static std::mutex mu;
  static std::map<std::string, SpliceLevel> cache;
  std::string key = std::to_string(g->fingerprint()) + "/" + std::to_string(module_fingerprint(a)) + "/" +
                    std::to_string(s);
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  AugmentationData aug = augmentation_ideal(g);
  SpliceLevel lv;
  lv.is = tensor_power_diagonal(aug.ideal, s);
  lv.is1 = tensor_power_diagonal(aug.ideal, s + 1);
  lv.ring_is = tensor(aug.ring, lv.is);
  lv.incl = tensor_maps(aug.incl, ModuleMap::identity(lv.is));
  lv.proj = ModuleMap(lv.ring_is, lv.is, IntMatrix::kronecker(aug.aug.matrix(), IntMatrix::identity(lv.is.rank())));
  lv.hom_is = hom_z_module(lv.is, a);
  lv.hom_is1 = hom_z_module(lv.is1, a);
  lv.hom_ring_is = hom_z_module(lv.ring_is, a);

  // Z-splitting of the undualized sequence: x -> e (x) x and g (x) x -> (g - 1) (x) x.
  const GroupTable& t = *g;
  std::size_t m = t.order(), d = m - 1, rs = lv.is.rank(), ra = a.rank();
  IntMatrix up(m, 1, {{static_cast<std::size_t>(t.identity()), 0, 1}});
  std::vector<Triple> rt;
  for (int x = 0; x < t.order(); ++x)
    if (x != t.identity()) rt.push_back({static_cast<std::size_t>(aug_index(t, x)), static_cast<std::size_t>(x), 1});
  IntMatrix down(d, m, std::move(rt));
  IntMatrix sec = IntMatrix::kronecker(up, IntMatrix::identity(rs));    // I^s -> Z[G] (x) I^s
  IntMatrix ret = IntMatrix::kronecker(down, IntMatrix::identity(rs));  // Z[G] (x) I^s -> I^{s+1}

  ModuleMap dincl(lv.hom_is, lv.hom_ring_is, pullback_matrix(lv.proj.matrix(), ra));
  ModuleMap dproj(lv.hom_ring_is, lv.hom_is1, pullback_matrix(lv.incl.matrix(), ra));
  ShortExactSequence seq{dincl, dproj, pullback_matrix(ret, ra), pullback_matrix(sec, ra)};
  if (!(seq.proj.matrix() * seq.incl.matrix()).is_zero()) fail(ErrorCode::NotExact, "dual sequence: proj o incl != 0");
  if (!(seq.proj.matrix() * seq.section == IntMatrix::identity(lv.hom_is1.rank())))
    fail(ErrorCode::NoSplitting, "dual sequence: bad section");
  if (!(seq.left_inverse * seq.incl.matrix() == IntMatrix::identity(lv.hom_is.rank())))
    fail(ErrorCode::NoSplitting, "dual sequence: bad left inverse");
  lv.dual = std::move(seq);
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(key, std::move(lv)).first->second;
}

// ---------------------------------------------------------------------------
// Page 0

std::shared_ptr<const ExactCouple> ExactCouple::build(const GroupPtr& g, const GModule& a, int n_max) {
  static std::mutex mu;
  static std::map<std::string, std::shared_ptr<const ExactCouple>> cache;
  GroupPtr gg = square_of(g);
  if (!same_group(*a.group(), *gg)) fail(ErrorCode::GroupMismatch, "coefficients must live over G x G");
  if (n_max < 0) fail(ErrorCode::InvalidInput, "n_max must be nonnegative");
  std::string key = std::to_string(g->fingerprint()) + "/" + std::to_string(module_fingerprint(a)) + "/" +
                    std::to_string(n_max);
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  int top = n_max + 1;
  double biggest = static_cast<double>(g->order()) * a.rank();
  for (int i = 0; i <= top + 1; ++i) biggest *= std::max(1, g->order() - 1);
  if (biggest > static_cast<double>(kMaxCoupleRank))
    fail(ErrorCode::TooLarge, "coefficient modules of rank " + std::to_string(static_cast<long long>(biggest)));

  auto c = std::shared_ptr<ExactCouple>(new ExactCouple());
  c->g_ = g;
  c->a_ = a;
  c->n_max_ = n_max;
  c->res_ = default_resolution(gg, top + 1);
  for (int s = 0; s <= top; ++s) c->levels_.push_back(splice_level(g, a, s));
  for (int total = 0; total <= top; ++total)
    for (int r = 0; r <= total; ++r) {
      int s = total - r;
      c->d_[{r, s}] = cohomology(c->res_, c->levels_[s].hom_is, r);
      c->e_[{r, s}] = cohomology(c->res_, c->levels_[s].hom_ring_is, r);
    }
  for (int total = 0; total <= top; ++total)
    for (int r = 0; r <= total; ++r) {
      int s = total - r;
      const SpliceLevel& lv = c->levels_[s];
      c->j_[{r, s}] = induced_matrix(c->d_[{r, s}], c->e_[{r, s}],
                                     [&](const CohomologyClass& u) { return pushforward(lv.dual.incl, u); });
      if (total < top)
        c->k_[{r, s}] = induced_matrix(c->e_[{r, s}], c->d_[{r, s + 1}],
                                       [&](const CohomologyClass& u) { return pushforward(lv.dual.proj, u); });
      if (s >= 1) {
        const SpliceLevel& below = c->levels_[s - 1];
        c->i_[{r, s}] = induced_matrix(c->d_[{r, s}], c->d_[{r + 1, s - 1}],
                                       [&](const CohomologyClass& u) { return connecting_hom(below.dual, u); });
      }
    }
  std::shared_ptr<const ExactCouple> out = c;
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(key, out).first->second;
}

CohomologyPtr ExactCouple::d0(int r, int s) const {
  auto it = d_.find({r, s});
  if (it == d_.end()) fail(ErrorCode::DegreeOutOfRange, "D_0" + at(0, r, s));
  return it->second;
}

CohomologyPtr ExactCouple::e0(int r, int s) const {
  auto it = e_.find({r, s});
  if (it == e_.end()) fail(ErrorCode::DegreeOutOfRange, "E_0" + at(0, r, s));
  return it->second;
}

std::size_t ExactCouple::d_dim(int r, int s) const { return d0(r, s)->homology.generator_count(); }
std::size_t ExactCouple::e_dim(int r, int s) const { return e0(r, s)->homology.generator_count(); }

const DenseMatrix& ExactCouple::i0(int r, int s) const {
  auto it = i_.find({r, s});
  if (it == i_.end()) fail(ErrorCode::DegreeOutOfRange, "i_0" + at(0, r, s));
  return it->second;
}

const DenseMatrix& ExactCouple::j0(int r, int s) const {
  auto it = j_.find({r, s});
  if (it == j_.end()) fail(ErrorCode::DegreeOutOfRange, "j_0" + at(0, r, s));
  return it->second;
}

const DenseMatrix& ExactCouple::k0(int r, int s) const {
  auto it = k_.find({r, s});
  if (it == k_.end()) fail(ErrorCode::DegreeOutOfRange, "k_0" + at(0, r, s));
  return it->second;
}

Lattice ExactCouple::d_zero(int r, int s) const { return relation_lattice(d0(r, s)); }
Lattice ExactCouple::e_zero(int r, int s) const { return relation_lattice(e0(r, s)); }

// ---------------------------------------------------------------------------
// Derived pages

DenseMatrix ExactCouple::i_power(int p, int r, int s) const {
  if (r - p < 0) return DenseMatrix(d_dim(r, s), 0);
  DenseMatrix m = identity_dense(d_dim(r, s));
  for (int q = 1; q <= p; ++q) m = m * i0(r - q, s + q);
  return m;
}

Lattice ExactCouple::d_lattice(int p, int r, int s) const {
  return Lattice::sum(column_span(i_power(p, r, s)), d_zero(r, s));
}

Lattice ExactCouple::e_cycles(int p, int r, int s) const {
  return Lattice::preimage(k0(r, s), d_lattice(p, r, s + 1));
}

Lattice ExactCouple::e_boundaries(int p, int r, int s) const {
  // j_0 of the kernel of i^p : D^{r,s} -> D^{r+p,s-p}; the whole group when s < p.
  Lattice ker = s - p < 0 ? Lattice::full(d_dim(r, s))
                          : Lattice::preimage(i_power(p, r + p, s - p), d_zero(r + p, s - p));
  return Lattice::sum(ker.image_under(j0(r, s)), e_zero(r, s));
}

PresentedAbelianGroup ExactCouple::d_page(int p, int r, int s) const {
  return PresentedAbelianGroup::subquotient(d_lattice(p, r, s), d_zero(r, s));
}

PresentedAbelianGroup ExactCouple::e_page(int p, int r, int s) const {
  return PresentedAbelianGroup::subquotient(e_cycles(p, r, s), e_boundaries(p, r, s));
}

std::optional<Vec> ExactCouple::i_power_preimage(int p, int r, int s, const Vec& x) const {
  if (p == 0) return x;
  if (r - p < 0) {
    if (d_zero(r, s).contains(x)) return Vec{};
    return std::nullopt;
  }
  DenseMatrix ip = i_power(p, r, s);
  Lattice rel = d_zero(r, s);
  std::vector<Vec> cols;
  for (std::size_t c = 0; c < ip.cols(); ++c) cols.push_back(ip.column(c));
  for (const Vec& b : rel.basis()) cols.push_back(b);
  auto sol = membership(IntMatrix::from_dense(DenseMatrix::from_columns(ip.rows(), cols)), x);
  if (!sol) return std::nullopt;
  return Vec(sol->begin(), sol->begin() + static_cast<std::ptrdiff_t>(ip.cols()));
}

Vec ExactCouple::differential(int p, int r, int s, const Vec& z) const {
  if (r - p < 0) return {};
  Vec x = k0(r, s).apply(z);
  auto y = i_power_preimage(p, r, s + 1, x);
  if (!y) fail(ErrorCode::ExactnessCheckFailed, "d_p applied to a non-cycle" + at(p, r, s));
  return j0(r - p, s + p + 1).apply(*y);
}

namespace {

PageCheck verify_page(const ExactCouple& c, int p) {
  PageCheck chk;
  chk.p = p;
  chk.degrees = {{1, -1}, {0, 1}, {-p, p}, {-p, p + 1}};
  int top = c.top(), nm = c.n_max();
  for (int total = 0; total <= top; ++total)
    for (int r = 0; r <= total; ++r) {
      int s = total - r;
      Lattice dp = c.d_lattice(p, r, s);
      Lattice rel = c.d_zero(r, s);
      // ker(i_p) = im(k_p) at D_p^{r,s}.
      if (s >= 1 && total - 1 <= nm) {
        Lattice ker = Lattice::intersection(dp, Lattice::preimage(c.i0(r, s), c.d_zero(r + 1, s - 1)));
        Lattice im = Lattice::sum(c.e_cycles(p, r, s - 1).image_under(c.k0(r, s - 1)), rel);
        expect(ker == im, "ker i != im k" + at(p, r, s));
        ++chk.exactness_nodes;
      }
      // ker(j_p) = im(i_p) at D_p^{r,s}; j_p lands in E_p^{r-p,s+p}.
      if (r - p >= 0 && total <= nm) {
        DenseMatrix ip = c.i_power(p, r, s);
        Lattice pre = Lattice::preimage(c.j0(r - p, s + p), c.e_boundaries(p, r - p, s + p));
        Lattice ker = Lattice::sum(pre.image_under(ip), rel);
        Lattice im = r >= 1 ? Lattice::sum(c.d_lattice(p, r - 1, s + 1).image_under(c.i0(r - 1, s + 1)), rel) : rel;
        expect(ker == im, "ker j != im i" + at(p, r, s));
        ++chk.exactness_nodes;
      }
      // ker(k_p) = im(j_p) at E_p^{r,s}.
      if (total <= nm) {
        Lattice z = c.e_cycles(p, r, s);
        Lattice b = c.e_boundaries(p, r, s);
        expect(z.contains(b), "boundaries outside cycles" + at(p, r, s));
        Lattice ker = Lattice::intersection(z, Lattice::preimage(c.k0(r, s), c.d_zero(r, s + 1)));
        Lattice im = Lattice::sum(Lattice::full(c.d_dim(r, s)).image_under(c.j0(r, s)), b);
        expect(ker == im, "ker k != im j" + at(p, r, s));
        ++chk.exactness_nodes;
      }
    }
  return chk;
}

// E_{p+1} = H(E_p, d_p) at every bidegree whose neighbours are in range.
std::size_t verify_homology(const ExactCouple& c, int p) {
  std::size_t nodes = 0;
  int nm = c.n_max();
  for (int total = 0; total <= nm; ++total)
    for (int r = 0; r <= total; ++r) {
      int s = total - r;
      bool has_target = r - p >= 0;
      if (has_target && total + 1 > nm) continue;
      Lattice z = c.e_cycles(p, r, s);
      Lattice ker = z;
      if (has_target) {
        std::vector<Vec> images;
        for (const Vec& b : z.basis()) images.push_back(c.differential(p, r, s, b));
        std::size_t amb = c.e_dim(r - p, s + p + 1);
        DenseMatrix m = DenseMatrix::from_columns(amb, images);
        Lattice coeffs = Lattice::preimage(m, c.e_boundaries(p, r - p, s + p + 1));
        ker = Lattice::sum(coeffs.image_under(z.basis_matrix()), c.e_zero(r, s));
      }
      Lattice im = c.e_boundaries(p, r, s);
      if (s == p) {
        // d_p out of the formal row E^{r+p,-1} = D^{r+p,0} hits all of j_0(D^{r,s}).
        im = Lattice::sum(im, Lattice::full(c.d_dim(r, s)).image_under(c.j0(r, s)));
      } else if (s - p - 1 >= 0) {
        std::vector<Vec> images;
        Lattice src = c.e_cycles(p, r + p, s - p - 1);
        for (const Vec& b : src.basis())
          images.push_back(c.differential(p, r + p, s - p - 1, b));
        im = Lattice::sum(im, Lattice::span(c.e_dim(r, s), images));
      }
      expect(ker == c.e_cycles(p + 1, r, s), "E_{p+1} cycles differ from ker d_p" + at(p, r, s));
      expect(im == c.e_boundaries(p + 1, r, s), "E_{p+1} boundaries differ from im d_p" + at(p, r, s));
      ++nodes;
    }
  return nodes;
}

}  // namespace

ExactCouplePage build_couple(const GroupPtr& g, const GModule& a, int n_max) {
  ExactCouplePage page{ExactCouple::build(g, a, n_max), 0, {}};
  page.check = verify_page(*page.couple, 0);
  return page;
}

ExactCouplePage derive(const ExactCouplePage& page) {
  if (page.p + 1 > page.couple->n_max()) fail(ErrorCode::DegreeOutOfRange, "pages stop at p = n_max");
  std::size_t h = verify_homology(*page.couple, page.p);
  ExactCouplePage next{page.couple, page.p + 1, verify_page(*page.couple, page.p + 1)};
  next.check.homology_nodes = h;
  return next;
}

// ---------------------------------------------------------------------------
// Bockstein through the canonical class

BocksteinCheck bockstein_via_v(const GModule& a, const CohomologyClass& u, int s, int sign) {
  GroupPtr gg = u.group();
  GroupPtr g = gg->left_factor();
  if (!g) fail(ErrorCode::GroupMismatch, "class must live over a square G x G");
  SpliceLevel lv = splice_level(g, a, s);
  if (!(u.coefficients() == lv.hom_is1)) fail(ErrorCode::GroupMismatch, "class must have coefficients Hom(I^{s+1}, A)");
  ResolutionPtr res = u.resolution();
  if (res->max_degree() < u.degree() + 2) res = default_resolution(gg, u.degree() + 2);
  CohomologyClass uu = convert(u, res);
  BocksteinCheck out;
  out.snake = connecting_hom(lv.dual, uu);
  CanonicalClassBundle v = canonical_cocycle(g);
  AugmentationData aug = augmentation_ideal(g);
  CohomologyClass prod = cup_product(v.v_bar, uu);
  CohomologyClass ev = pushforward(evaluation_map(aug.ideal, a, s), prod);
  out.via_v = convert(ev, res).scaled(-sign);
  out.agree = out.snake == out.via_v;
  return out;
}

const SignPin& global_sign() {
  static SignPin pin = [] {
    SignPin p;
    struct Instance {
      std::string group;
      bool ideal;
      int r, s;
      std::string label;
    };
    std::vector<Instance> list = {{"c2", false, 0, 0, "C2, A = Z, r = 0, s = 0"},
                                  {"c2", true, 0, 0, "C2, A = I, r = 0, s = 0"},
                                  {"c3", false, 1, 0, "C3, A = Z, r = 1, s = 0"}};
    for (std::size_t k = 0; k < list.size(); ++k) {
      const Instance& in = list[k];
      GroupPtr g = named_group(in.group);
      GroupPtr gg = square_of(g);
      GModule a = in.ideal ? augmentation_ideal(g).ideal : GModule::trivial(gg);
      SpliceLevel lv = splice_level(g, a, in.s);
      ResolutionPtr res = default_resolution(gg, in.r + 2);
      CohomologyPtr h = cohomology(res, lv.hom_is1, in.r);
      for (std::size_t c = 0; c < h->homology.generator_count(); ++c) {
        CohomologyClass u = CohomologyClass::from_coordinates(h, unit_vec(h->homology.generator_count(), c));
        BocksteinCheck b = bockstein_via_v(a, u, in.s, 1);
        if (b.snake.is_zero() && b.via_v.is_zero()) continue;
        if (b.agree) {
          p.epsilon = 1;
        } else if (b.snake == b.via_v.scaled(-1)) {
          p.epsilon = -1;
        } else {
          fail(ErrorCode::CrossCheckFailed, "connecting map and v-cup differ beyond sign on " + in.label);
        }
        p.instance = in.label;
        p.reference_degenerate = k > 0;
        return p;
      }
    }
    fail(ErrorCode::CrossCheckFailed, "no nondegenerate instance to pin the sign");
  }();
  return pin;
}

// ---------------------------------------------------------------------------
// Obstructions

bool is_zero_divisor(const CohomologyClass& alpha) {
  GroupPtr gg = alpha.group();
  GroupPtr g = gg->left_factor();
  if (!g) fail(ErrorCode::GroupMismatch, "class must live over a square G x G");
  ResolutionPtr res = default_resolution(g, alpha.degree() + 1);
  return restriction(alpha, diagonal(g, gg), res).is_zero();
}

namespace {

// 1 in H^0(G x G, Z), or v^n for n >= 1.
CohomologyClass canonical_power_any(const GroupPtr& g, int n) {
  if (n >= 1) return canonical_power(g, n);
  GroupPtr gg = square_of(g);
  return CohomologyClass(bar_resolution(gg, 1), GModule::trivial(gg), 0, Vec{1});
}

}  // namespace

ObstructionReport obstruction_sequence(const CouplePtr& couple, const CohomologyClass& alpha) {
  const ExactCouple& c = *couple;
  int n = alpha.degree();
  if (n > c.n_max()) fail(ErrorCode::DegreeOutOfRange, "couple does not reach the degree of the class");
  if (!(alpha.coefficients() == c.coefficients())) fail(ErrorCode::GroupMismatch, "class has other coefficients");
  ObstructionReport rep;
  rep.degree = n;
  CohomologyClass on_res = convert(alpha, c.resolution());
  CohomologyPtr dn0 = c.d0(n, 0);
  CohomologyClass in_d(c.resolution(), c.level(0).hom_is, n, on_res.cocycle());
  Vec x = dn0->homology.project(in_d.cocycle());
  rep.class_coordinates = x;
  rep.zero_divisor = is_zero_divisor(alpha);

  for (int s = 0; s < n; ++s) {
    auto y = c.i_power_preimage(s, n, 0, x);
    if (!y) fail(ErrorCode::ExactnessCheckFailed, "class left D_s after vanishing obstructions");
    Vec val = c.j0(n - s, s).apply(*y);
    ObstructionValue ov;
    ov.s = s;
    ov.page = s;
    ov.bidegree = {n - s, s};
    ov.zero = c.e_boundaries(s, n - s, s).contains(val);
    ov.value = c.e_page(s, n - s, s).coordinates(val);
    rep.obstructions.push_back(ov);
    if (!ov.zero) {
      rep.verdict = "blocked";
      rep.blocked_at = s;
      return rep;
    }
  }

  auto y = c.i_power_preimage(n, n, 0, x);
  if (!y) fail(ErrorCode::ExactnessCheckFailed, "class outside D_n after all obstructions vanished");
  CohomologyPtr d0n = c.d0(0, n);
  const SpliceLevel& lv = c.level(n);
  const GModule& in = lv.is;
  const GModule& a = c.coefficients();
  std::size_t rn = in.rank(), ra = a.rank(), base = std::max(1, c.group()->order() - 1);
  int sign = 1;
  int e = global_sign().epsilon;
  for (int i = 0; i < n; ++i) sign *= -e;
  // Coordinates in D^{0,n} -> matrix entries of the coefficient map I^n -> A.
  auto entries = [&](const Vec& coords) {
    CohomologyClass f = CohomologyClass::from_coordinates(d0n, coords);
    if (c.resolution()->rank(0) != 1) f = convert(f, bar_resolution(c.resolution()->group(), 1));
    Vec hom = f.value(0);
    Vec out(ra * rn);
    for (std::size_t i = 0; i < ra; ++i)
      for (std::size_t j = 0; j < rn; ++j) out[i * rn + j] = hom[i * rn + reverse_digits(j, base, n)] * Integer(sign);
    return out;
  };
  Vec mu_entries = entries(*y);
  // Greedy l1 reduction modulo ker(i^n) so that the certificate is canonical.
  std::vector<Vec> kernel;
  {
    DenseMatrix ip = c.i_power(n, n, 0);
    Lattice ker = Lattice::preimage(ip, c.d_zero(n, 0));
    for (const Vec& b : ker.basis()) kernel.push_back(entries(b));
  }
  auto l1 = [](const Vec& v) {
    Integer s = 0;
    for (const auto& x : v) s += x.abs();
    return s;
  };
  for (bool improved = true; improved;) {
    improved = false;
    for (const Vec& k : kernel)
      for (int sg : {1, -1}) {
        Vec cand = add(mu_entries, scale(k, Integer(sg)));
        if (l1(cand) < l1(mu_entries)) {
          mu_entries = std::move(cand);
          improved = true;
        }
      }
  }
  // Small kernels: exhaustive over coefficients in [-2, 2], least l1 then lexicographic.
  if (!kernel.empty() && kernel.size() <= 4) {
    std::vector<int> coef(kernel.size(), -2);
    Vec best = mu_entries;
    for (;;) {
      Vec cand = mu_entries;
      for (std::size_t i = 0; i < kernel.size(); ++i) cand = add(cand, scale(kernel[i], Integer(coef[i])));
      Integer lc = l1(cand), lb = l1(best);
      if (lc < lb || (lc == lb && cand < best)) best = std::move(cand);
      std::size_t i = 0;
      while (i < coef.size() && coef[i] == 2) coef[i++] = -2;
      if (i == coef.size()) break;
      ++coef[i];
    }
    mu_entries = std::move(best);
  }
  std::vector<Triple> t;
  for (std::size_t i = 0; i < ra; ++i)
    for (std::size_t j = 0; j < rn; ++j)
      if (!mu_entries[i * rn + j].is_zero()) t.push_back({i, j, mu_entries[i * rn + j]});
  ModuleMap mu(in, a, IntMatrix(ra, rn, std::move(t)));
  rep.certificate = mu;
  CohomologyClass vn = canonical_power_any(c.group(), n);
  rep.certificate_verified = pushforward(mu, vn) == alpha;
  rep.verdict = rep.certificate_verified ? "essential" : "unverified";
  return rep;
}

// ---------------------------------------------------------------------------
// Decomposition oracle and the isomorphisms

E0Oracle e0_oracle(const GroupPtr& g, const GModule& a, int r, int s) {
  if (s < 1) fail(ErrorCode::InvalidInput, "the decomposition needs s >= 1");
  GroupPtr gg = square_of(g);
  if (!same_group(*a.group(), *gg)) fail(ErrorCode::GroupMismatch, "coefficients must live over G x G");
  E0Oracle out;
  Vec all;
  for (const TupleOrbit& o : tuple_conjugacy_classes(*g, s, true)) {
    GroupHom inc = subgroup(g, o.centralizer);
    std::vector<int> image;
    for (int x = 0; x < inc.source()->order(); ++x) image.push_back(inc(x) * g->order() + inc(x));
    GroupHom into(inc.source(), gg, image);
    GModule restricted = restrict_along(into, a);
    CohomologyPtr h = cohomology(default_resolution(inc.source(), r + 1), restricted, r);
    E0Oracle::Factor f{o.representative, o.centralizer, h->group().invariant_factors()};
    all.insert(all.end(), f.invariant_factors.begin(), f.invariant_factors.end());
    out.factors.push_back(std::move(f));
  }
  out.product = PresentedAbelianGroup::diagonal(all);
  return out;
}

namespace {

// Invariants of a module as a lattice.
Lattice invariant_lattice(const GModule& m) {
  const auto& gens = m.group()->generators();
  std::size_t n = m.rank();
  IntMatrix stacked(0, n);
  for (int g : gens) stacked = IntMatrix::vstack(stacked, m.action(g) - IntMatrix::identity(n));
  DenseMatrix k = kernel_basis(stacked.to_dense());
  return column_span(k);
}

DenseMatrix coordinates_in(const Lattice& l, const std::vector<Vec>& vs, const char* what) {
  DenseMatrix out(l.rank(), vs.size());
  for (std::size_t c = 0; c < vs.size(); ++c) {
    auto x = l.coordinates(vs[c]);
    if (!x) fail(ErrorCode::IdentityCheckFailed, what);
    for (std::size_t r = 0; r < l.rank(); ++r) out(r, c) = (*x)[r];
  }
  return out;
}

}  // namespace

PhiReport phi_isomorphism(const GModule& m, const GModule& n) {
  GroupPtr gg = m.group();
  GroupPtr g = gg->left_factor();
  if (!g || !same_group(*n.group(), *gg)) fail(ErrorCode::GroupMismatch, "modules must live over the same G x G");
  const GroupTable& t = *g;
  std::size_t order = t.order(), rm = m.rank(), rn = n.rank(), rx = order * rm;
  GModule x = tensor(group_ring_bimodule(g), m);
  GModule src = hom_z_module(x, n);
  GroupHom diag = diagonal(g, gg);
  GModule tgt = hom_z_module(restrict_along(diag, m), restrict_along(diag, n));
  Lattice ls = invariant_lattice(src), lt = invariant_lattice(tgt);

  auto phi = [&](const Vec& f) {
    Vec out(rn * rm);
    std::size_t e = t.identity();
    for (std::size_t i = 0; i < rn; ++i)
      for (std::size_t k = 0; k < rm; ++k) out[i * rm + k] = f[i * rx + e * rm + k];
    return out;
  };
  auto psi = [&](const Vec& f) {
    IntMatrix fm(rn, rm);
    {
      std::vector<Triple> tr;
      for (std::size_t i = 0; i < rn; ++i)
        for (std::size_t k = 0; k < rm; ++k)
          if (!f[i * rm + k].is_zero()) tr.push_back({i, k, f[i * rm + k]});
      fm = IntMatrix(rn, rm, std::move(tr));
    }
    Vec out(rn * rx);
    for (int a = 0; a < t.order(); ++a) {
      int ga = a * t.order() + t.identity();
      int gi = t.inv(a) * t.order() + t.identity();
      IntMatrix block = n.action(ga) * fm * m.action(gi);
      for (const Triple& tr : block.triples()) out[tr.row * rx + a * rm + tr.col] = tr.value;
    }
    return out;
  };

  PhiReport rep;
  rep.source_rank = ls.rank();
  rep.target_rank = lt.rank();
  std::vector<Vec> ph, ps;
  for (const Vec& b : ls.basis()) ph.push_back(phi(b));
  for (const Vec& b : lt.basis()) ps.push_back(psi(b));
  rep.phi = coordinates_in(lt, ph, "Phi leaves the equivariant maps");
  rep.psi = coordinates_in(ls, ps, "Psi leaves the equivariant maps");
  rep.mutually_inverse = rep.source_rank == rep.target_rank &&
                         rep.phi * rep.psi == DenseMatrix::identity(rep.target_rank) &&
                         rep.psi * rep.phi == DenseMatrix::identity(rep.source_rank);
  return rep;
}

AbHom gamma_isomorphism(const GroupPtr& g, const GModule& a, int i) {
  GroupPtr gg = square_of(g);
  const GroupTable& t = *g;
  GModule ring = group_ring_bimodule(g);
  GModule hom = hom_z_module(ring, a);
  CohomologyPtr src = cohomology(default_resolution(gg, i + 1), hom, i);
  GroupHom diag = diagonal(g, gg);
  ResolutionPtr gres = default_resolution(g, i + 1);
  GModule at = restrict_along(diag, a);
  CohomologyPtr tgt = cohomology(gres, at, i);
  std::size_t ra = a.rank(), m = t.order();
  std::vector<Triple> tr;
  for (std::size_t k = 0; k < ra; ++k) tr.push_back({k, k * m + static_cast<std::size_t>(t.identity()), 1});
  ModuleMap omega(restrict_along(diag, hom), at, IntMatrix(ra, ra * m, std::move(tr)));
  DenseMatrix f = induced_matrix(src, tgt, [&](const CohomologyClass& u) {
    return pushforward(omega, restriction(u, diag, gres));
  });
  return AbHom::from_ambient(src->group(), tgt->group(), f);
}

TcBound tc_lower_bound(const GroupPtr& g, const GModule& a, int n_max) {
  TcBound out;
  if (n_max < 1) return out;
  CouplePtr c = ExactCouple::build(g, a, n_max);
  for (int n = 1; n <= n_max; ++n)
    for (int k = n; k > out.k; --k) {
      if (c->d_page(k, n, 0).is_trivial()) continue;
      out.k = k;
      out.n = n;
      out.bound = k + 1;
      break;
    }
  return out;
}

}  // namespace tclab
