#include "tclab/canonical.hpp"

#include <random>

#include "tclab/errors.hpp"

namespace tclab {

namespace {

// Coordinates of x - y in the augmentation ideal basis.
Vec ideal_difference(const GroupTable& g, int x, int y) {
  Vec v(g.order() - 1);
  if (x != g.identity()) v[aug_index(g, x)] += 1;
  if (y != g.identity()) v[aug_index(g, y)] -= 1;
  return v;
}

Vec kron(const Vec& a, const Vec& b) {
  Vec out(a.size() * b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t k = 0; k < b.size(); ++k)
      if (!b[k].is_zero()) out[i * b.size() + k] = a[i] * b[k];
  }
  return out;
}

// (x1 - x0) (x) (x2 - x1) (x) ... for a sequence x0..xn in G.
Vec difference_tensor(const GroupTable& g, const std::vector<int>& x) {
  Vec out{1};
  for (std::size_t i = 1; i < x.size(); ++i) out = kron(out, ideal_difference(g, x[i], x[i - 1]));
  return out;
}

// x = a b^-1 for the element (a, b) of G x G.
int quotient_of(const GroupTable& g, int y) {
  int m = g.order();
  return g.mul(y / m, g.inv(y % m));
}

// Power cocycle on the normalized bar resolution of `grp`; `to_g` maps a prefix
// product to the point x_i of G.
template <typename ToG>
Vec bar_power_cocycle(const GroupTable& grp, const GroupTable& g, int n, ToG to_g) {
  std::size_t count = 1;
  for (int i = 0; i < n; ++i) count *= grp.order() - 1;
  std::size_t rk = 1;
  for (int i = 0; i < n; ++i) rk *= g.order() - 1;
  Vec out(count * rk);
  for (std::size_t code = 0; code < count; ++code) {
    std::vector<int> t = decode_nontrivial_tuple(grp, code, n);
    std::vector<int> x{g.identity()};
    int prefix = grp.identity();
    for (int y : t) {
      prefix = grp.mul(prefix, y);
      x.push_back(to_g(prefix));
    }
    Vec val = difference_tensor(g, x);
    for (std::size_t i = 0; i < rk; ++i) out[code * rk + i] = val[i];
  }
  return out;
}

}  // namespace

ChainMapPtr homogeneous_chain_map(const GroupHom& h, int d_max) {
  ResolutionPtr src = homogeneous_resolution(h.source(), d_max);
  ResolutionPtr tgt = homogeneous_resolution(h.target(), d_max);
  int ms = h.source()->order(), mt = h.target()->order();
  auto phi = std::make_shared<ChainMap>(ChainMap{src, tgt, h, {}});
  phi->images.resize(d_max + 1);
  for (int n = 0; n <= d_max; ++n)
    for (int code = 0; code < src->rank(n); ++code) {
      int c = code, out = 0, place = 1;
      for (int i = 0; i < n; ++i, c /= ms, place *= mt) out += h(c % ms) * place;
      Vec v(static_cast<std::size_t>(tgt->rank(n)) * mt);
      v[static_cast<std::size_t>(out) * mt + h.target()->identity()] = 1;
      phi->images[n].push_back(std::move(v));
    }
  verify_chain_map(*phi);
  return phi;
}

CohomologyClass berstein_class_direct(const GroupPtr& g, int d_max) {
  AugmentationData left = left_augmentation_ideal(g);
  return class_of_exact_sequence({left.incl, left.aug}, bar_resolution(g, std::max(d_max, 2)));
}

CanonicalClassBundle canonical_cocycle(const GroupPtr& g, int d_max) {
  d_max = std::max(d_max, 2);
  CanonicalClassBundle b;
  b.group = g;
  b.square = square_of(g);
  b.bimodule = augmentation_ideal(g);
  b.left = left_augmentation_ideal(g);
  const GroupTable& gg = *b.square;

  ResolutionPtr bar = bar_resolution(b.square, d_max);
  Vec vb;
  for (int code = 0; code < bar->rank(1); ++code) {
    Vec val = ideal_difference(*g, quotient_of(*g, decode_nontrivial_tuple(gg, code, 1)[0]), g->identity());
    vb.insert(vb.end(), val.begin(), val.end());
  }
  b.v_bar = CohomologyClass(bar, b.bimodule.ideal, 1, vb);

  ResolutionPtr hom = homogeneous_resolution(b.square, 2);
  Vec vh;
  for (int y = 0; y < hom->rank(1); ++y) {
    Vec val = ideal_difference(*g, quotient_of(*g, y), g->identity());
    vh.insert(vh.end(), val.begin(), val.end());
  }
  b.v_homogeneous = CohomologyClass(hom, b.bimodule.ideal, 1, vh);

  // (e, y1, .., yn) -> [y1 | y1^-1 y2 | ...], zero when degenerate.
  auto cmp = std::make_shared<ChainMap>(ChainMap{hom, bar, GroupHom::identity(b.square), {}});
  cmp->images.resize(2);
  for (int n = 0; n <= 1; ++n)
    for (int code = 0; code < hom->rank(n); ++code) {
      Vec v(static_cast<std::size_t>(bar->rank(n)) * gg.order());
      if (n == 0) {
        v[gg.identity()] = 1;
      } else if (code != gg.identity()) {
        v[encode_nontrivial_tuple(gg, {code}) * gg.order() + gg.identity()] = 1;
      }
      cmp->images[n].push_back(std::move(v));
    }
  verify_chain_map(*cmp);
  b.comparison = cmp;
  if (!(pull_back(*cmp, b.v_bar, b.bimodule.ideal).cocycle() == b.v_homogeneous.cocycle()))
    fail(ErrorCode::CrossCheckFailed, "bar and homogeneous canonical cocycles disagree");

  b.b = restriction(b.v_bar, left_inclusion(g, b.square), bar_resolution(g, d_max));
  return b;
}

Vec diagonal_restriction_cocycle(const GroupPtr& g) {
  CanonicalClassBundle b = canonical_cocycle(g);
  ChainMapPtr phi = homogeneous_chain_map(diagonal(g, b.square), 2);
  GModule restricted = restrict_along(phi->hom, b.bimodule.ideal);
  return pull_back(*phi, b.v_homogeneous, restricted).cocycle();
}

CohomologyClass canonical_power(const GroupPtr& g, int n) {
  if (n < 1) fail(ErrorCode::InvalidInput, "power must be positive");
  GroupPtr gg = square_of(g);
  double size = 1;
  for (int i = 0; i <= n; ++i) size *= gg->order() - 1;
  if (size * gg->order() > 4e5) fail(ErrorCode::TooLarge, "canonical power too large");
  AugmentationData bim = augmentation_ideal(g);
  ResolutionPtr bar = bar_resolution(gg, n + 1);
  Vec f = bar_power_cocycle(*gg, *g, n, [&](int y) { return quotient_of(*g, y); });
  CohomologyClass fn(bar, tensor_power_diagonal(bim.ideal, n), n, f);

  CanonicalClassBundle b = canonical_cocycle(g, 2);
  CohomologyClass power = b.v_bar;
  for (int k = 2; k <= n; ++k) power = cup_product(power, b.v_bar);
  if (!(power.coefficients() == fn.coefficients()))
    fail(ErrorCode::CrossCheckFailed, "cup power coefficients differ from I^n");
  bool same_cochain = power.resolution() == fn.resolution() && power.cocycle() == fn.cocycle();
  if (!same_cochain && !(power == fn)) fail(ErrorCode::CrossCheckFailed, "f_n differs from the cup power of v");
  return fn;
}

CohomologyClass berstein_power(const GroupPtr& g, int n) {
  AugmentationData left = left_augmentation_ideal(g);
  ResolutionPtr bar = bar_resolution(g, n + 1);
  Vec f = bar_power_cocycle(*g, *g, n, [](int y) { return y; });
  return CohomologyClass(bar, tensor_power_diagonal(left.ideal, n), n, f);
}

KappaReport kappa_chain_map(const GroupPtr& g, int n, std::uint64_t seed) {
  GroupPtr gg = square_of(g);
  int m = g->order(), mm = gg->order();
  KappaReport report;
  report.n = n;
  report.exhaustive = m <= 6;
  // Elements of Z[G] (x) I^j are indexed a * r^j + code.
  auto kappa = [&](const std::vector<int>& x) {
    Vec head(m);
    head[x[0]] = 1;
    return kron(head, difference_tensor(*g, x));
  };
  auto check_tuple = [&](const std::vector<int>& ys) {
    int j = static_cast<int>(ys.size());
    std::vector<int> x{g->identity()};
    for (int y : ys) x.push_back(quotient_of(*g, y));
    // d kappa_j: eps(x0) (x1 - x0) (x) (x2 - x1) (x) ..., the first factor in Z[G].
    Vec first(m);
    first[x[1]] += 1;
    first[x[0]] -= 1;
    Vec lhs = kron(first, difference_tensor(*g, std::vector<int>(x.begin() + 1, x.end())));
    Vec rhs(lhs.size());
    for (int i = 0; i <= j; ++i) {
      std::vector<int> face;
      for (int k = 0; k <= j; ++k)
        if (k != i) face.push_back(x[k]);
      Vec term = kappa(face);
      rhs = (i % 2) ? sub(rhs, term) : add(rhs, term);
    }
    if (!(lhs == rhs))
      fail(ErrorCode::ChainMapCheckFailed, "kappa does not commute with the differential in degree " + std::to_string(j));
    if (j == n) {
      // (eps (x) 1) kappa_n against f_n on the bar symbol [y1 | y1^-1 y2 | ...].
      Vec top = difference_tensor(*g, x);
      std::vector<int> bar_symbol;
      int prev = gg->identity();
      for (int y : ys) {
        bar_symbol.push_back(gg->mul(gg->inv(prev), y));
        prev = y;
      }
      std::vector<int> xb{g->identity()};
      int prefix = gg->identity();
      for (int y : bar_symbol) {
        prefix = gg->mul(prefix, y);
        xb.push_back(quotient_of(*g, prefix));
      }
      if (!(difference_tensor(*g, xb) == top)) fail(ErrorCode::ChainMapCheckFailed, "top kappa differs from f_n");
    }
    ++report.tuples_checked;
  };
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(0, mm - 1);
  for (int j = 1; j <= n; ++j) {
    double total = 1;
    for (int i = 0; i < j; ++i) total *= mm;
    if (report.exhaustive && total <= 2e6) {
      std::vector<int> ys(j, 0);
      for (std::size_t c = 0; c < static_cast<std::size_t>(total); ++c) {
        std::size_t k = c;
        for (int i = j - 1; i >= 0; --i, k /= mm) ys[i] = static_cast<int>(k % mm);
        check_tuple(ys);
      }
    } else {
      report.exhaustive = false;
      std::vector<int> ys(j);
      for (int s = 0; s < 4000; ++s) {
        for (auto& y : ys) y = pick(rng);
        check_tuple(ys);
      }
    }
  }
  return report;
}

ModuleMap universality_mu(const CohomologyClass& alpha) {
  const GroupPtr& g = alpha.group();
  int n = alpha.degree();
  AugmentationData left = left_augmentation_ideal(g);
  GModule in = n == 0 ? GModule::trivial(g) : tensor_power_diagonal(left.ideal, n);
  ResolutionPtr splice = splice_resolution(g, n + 1);
  CohomologyClass a = convert(alpha, splice);
  const GModule& target = alpha.coefficients();
  std::vector<Triple> t;
  for (int code = 0; code < splice->rank(n); ++code) {
    Vec col = a.value(code);
    for (std::size_t i = 0; i < col.size(); ++i)
      if (!col[i].is_zero()) t.push_back({i, static_cast<std::size_t>(code), col[i]});
  }
  ModuleMap mu(in, target, IntMatrix(target.rank(), in.rank(), std::move(t)), false);
  if (!mu.is_equivariant()) fail(ErrorCode::ConversionFailed, "coefficient map read off the splice is not equivariant");
  CohomologyClass bn = n == 0 ? CohomologyClass(bar_resolution(g, 1), in, 0, Vec{1}) : berstein_power(g, n);
  if (!(pushforward(mu, bn) == alpha)) fail(ErrorCode::ConversionFailed, "pushforward of b^n does not reproduce the class");
  return mu;
}

}  // namespace tclab
