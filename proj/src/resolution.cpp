#include "tclab/resolution.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>

#include "tclab/errors.hpp"
#include "tclab/modules.hpp"
#include "tclab/smith.hpp"

namespace tclab {

namespace {

constexpr double kMaxZRank = 400000;

std::mutex& cache_mutex() {
  static std::mutex mu;
  return mu;
}

std::map<std::string, ResolutionPtr>& cache() {
  static std::map<std::string, ResolutionPtr> c;
  return c;
}

template <typename Build>
ResolutionPtr memoized(const GroupPtr& g, const std::string& flavor, int d_max, Build&& build) {
  std::string key = resolution_key(*g, flavor, d_max);
  {
    std::lock_guard<std::mutex> lock(cache_mutex());
    auto it = cache().find(key);
    if (it != cache().end()) return it->second;
  }
  ResolutionPtr r = build();
  std::lock_guard<std::mutex> lock(cache_mutex());
  return cache().emplace(key, r).first->second;
}

void check_size(double zrank, const std::string& what) {
  if (zrank > kMaxZRank) fail(ErrorCode::TooLarge, what);
}

double ipow(double b, int e) {
  double r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

}  // namespace

struct FreeResolution::SolverCache {
  std::mutex mu;
  std::map<int, std::unique_ptr<SparseSolver>> solvers;
};

FreeResolution::FreeResolution(GroupPtr group, std::string flavor, std::vector<int> ranks,
                               std::vector<std::vector<FreeElement>> boundary)
    : group_(std::move(group)),
      flavor_(std::move(flavor)),
      ranks_(std::move(ranks)),
      boundary_(std::move(boundary)),
      solvers_(std::make_shared<SolverCache>()) {
  if (ranks_.empty()) fail(ErrorCode::InvalidInput, "resolution needs degree 0");
  boundary_.resize(ranks_.size());
  for (std::size_t n = 1; n < ranks_.size(); ++n) {
    if (static_cast<int>(boundary_[n].size()) != ranks_[n]) fail(ErrorCode::InvalidInput, "boundary count");
    for (const auto& e : boundary_[n])
      for (const auto& t : e)
        if (t.generator < 0 || t.generator >= ranks_[n - 1] || t.element < 0 || t.element >= group_->order())
          fail(ErrorCode::InvalidInput, "boundary term out of range");
  }
}

Vec FreeResolution::translate(int n, int g, const Vec& x) const {
  int m = group_->order();
  Vec y(x.size());
  for (std::size_t idx = 0; idx < x.size(); ++idx) {
    if (x[idx].is_zero()) continue;
    std::size_t j = idx / m;
    int h = static_cast<int>(idx % m);
    y[j * m + group_->mul(g, h)] += x[idx];
  }
  (void)n;
  return y;
}

Vec FreeResolution::element_vector(int n, const FreeElement& e) const {
  int m = group_->order();
  Vec v(static_cast<std::size_t>(ranks_.at(n)) * m);
  for (const auto& t : e) v[static_cast<std::size_t>(t.generator) * m + t.element] += t.coeff;
  return v;
}

IntMatrix FreeResolution::z_matrix(int n) const {
  int m = group_->order();
  if (n == 0) {
    std::vector<Triple> t;
    for (int g = 0; g < ranks_[0] * m; ++g) t.push_back({0, static_cast<std::size_t>(g), 1});
    return IntMatrix(1, static_cast<std::size_t>(ranks_[0]) * m, std::move(t));
  }
  std::vector<Triple> t;
  for (int j = 0; j < ranks_.at(n); ++j)
    for (int k = 0; k < m; ++k)
      for (const auto& term : boundary_[n][j])
        t.push_back({static_cast<std::size_t>(term.generator) * m + group_->mul(k, term.element),
                     static_cast<std::size_t>(j) * m + k, term.coeff});
  return IntMatrix(static_cast<std::size_t>(ranks_[n - 1]) * m, static_cast<std::size_t>(ranks_[n]) * m,
                   std::move(t));
}

const SparseSolver& FreeResolution::solver(int n) const {
  std::lock_guard<std::mutex> lock(solvers_->mu);
  auto& slot = solvers_->solvers[n];
  if (!slot) slot = std::make_unique<SparseSolver>(z_matrix(n));
  return *slot;
}

void FreeResolution::verify(int up_to) const {
  up_to = std::min(up_to, max_degree());
  for (int n = 1; n <= up_to; ++n)
    if (!(z_matrix(n - 1) * z_matrix(n)).is_zero())
      fail(ErrorCode::CompositionNotZero, flavor_ + " resolution: d o d != 0 in degree " + std::to_string(n));
  for (int n = 0; n < up_to; ++n) {
    Homology h = homology_at(z_matrix(n + 1), z_matrix(n));
    if (!h.group().is_trivial())
      fail(ErrorCode::NotExact, flavor_ + " resolution not exact at degree " + std::to_string(n));
  }
}

std::vector<int> decode_nontrivial_tuple(const GroupTable& g, std::size_t code, int length) {
  int base = g.order() - 1;
  std::vector<int> t(length);
  for (int i = length - 1; i >= 0; --i) {
    t[i] = aug_element(g, static_cast<int>(code % base));
    code /= base;
  }
  return t;
}

std::size_t encode_nontrivial_tuple(const GroupTable& g, const std::vector<int>& t) {
  std::size_t code = 0;
  for (int x : t) code = code * (g.order() - 1) + aug_index(g, x);
  return code;
}

std::string resolution_key(const GroupTable& g, const std::string& flavor, int d_max) {
  std::ostringstream out;
  out << std::hex << g.fingerprint() << std::dec << "-" << g.order() << "-" << flavor << "-" << d_max;
  return out.str();
}

ResolutionPtr bar_resolution(const GroupPtr& g, int d_max) {
  return memoized(g, "bar", d_max, [&] {
    int m = g->order();
    check_size(ipow(m - 1, d_max) * m, "bar resolution too large");
    std::vector<int> ranks(d_max + 1);
    std::vector<std::vector<FreeElement>> bd(d_max + 1);
    for (int n = 0; n <= d_max; ++n) ranks[n] = static_cast<int>(ipow(m - 1, n));
    int e = g->identity();
    for (int n = 1; n <= d_max; ++n) {
      bd[n].resize(ranks[n]);
      for (int code = 0; code < ranks[n]; ++code) {
        std::vector<int> t = decode_nontrivial_tuple(*g, code, n);
        FreeElement& out = bd[n][code];
        // g1 [g2 | ... | gn]
        out.push_back({1, t[0], static_cast<int>(encode_nontrivial_tuple(*g, {t.begin() + 1, t.end()}))});
        for (int i = 1; i < n; ++i) {
          std::vector<int> f(t.begin(), t.end());
          int prod = g->mul(f[i - 1], f[i]);
          if (prod == e) continue;
          f[i - 1] = prod;
          f.erase(f.begin() + i);
          out.push_back({(i % 2) ? -1 : 1, e, static_cast<int>(encode_nontrivial_tuple(*g, f))});
        }
        out.push_back({(n % 2) ? -1 : 1, e, static_cast<int>(encode_nontrivial_tuple(*g, {t.begin(), t.end() - 1}))});
      }
    }
    return std::make_shared<const FreeResolution>(g, "bar", ranks, bd);
  });
}

ResolutionPtr homogeneous_resolution(const GroupPtr& g, int d_max) {
  return memoized(g, "homogeneous", d_max, [&] {
    int m = g->order();
    check_size(ipow(m, d_max + 1), "homogeneous resolution too large");
    std::vector<int> ranks(d_max + 1);
    std::vector<std::vector<FreeElement>> bd(d_max + 1);
    for (int n = 0; n <= d_max; ++n) ranks[n] = static_cast<int>(ipow(m, n));
    // Generator code encodes (g1..gn) of the tuple (e, g1, .., gn).
    auto encode = [&](const std::vector<int>& t) {
      int code = 0;
      for (int x : t) code = code * m + x;
      return code;
    };
    for (int n = 1; n <= d_max; ++n) {
      bd[n].resize(ranks[n]);
      for (int code = 0; code < ranks[n]; ++code) {
        std::vector<int> full(n + 1);
        full[0] = g->identity();
        for (int i = n, c = code; i >= 1; --i, c /= m) full[i] = c % m;
        for (int i = 0; i <= n; ++i) {
          std::vector<int> face;
          for (int k = 0; k <= n; ++k)
            if (k != i) face.push_back(full[k]);
          int lead = face[0];
          std::vector<int> norm;
          for (std::size_t k = 1; k < face.size(); ++k) norm.push_back(g->mul(g->inv(lead), face[k]));
          bd[n][code].push_back({(i % 2) ? -1 : 1, lead, encode(norm)});
        }
      }
    }
    return std::make_shared<const FreeResolution>(g, "homogeneous", ranks, bd);
  });
}

ResolutionPtr periodic_resolution(const GroupPtr& g, int d_max) {
  int t = g->cyclic_generator();
  if (t < 0) fail(ErrorCode::InvalidInput, "periodic resolution needs a cyclic group");
  return memoized(g, "periodic", d_max, [&] {
    int m = g->order();
    std::vector<int> ranks(d_max + 1, 1);
    std::vector<std::vector<FreeElement>> bd(d_max + 1);
    for (int n = 1; n <= d_max; ++n) {
      FreeElement e;
      if (n % 2 == 1) {
        if (m > 1) {
          e.push_back({1, t, 0});
          e.push_back({-1, g->identity(), 0});
        }
      } else {
        for (int k = 0; k < m; ++k) e.push_back({1, k, 0});
      }
      bd[n].push_back(e);
    }
    return std::make_shared<const FreeResolution>(g, "periodic", ranks, bd);
  });
}

ResolutionPtr tensor_resolutions(const ResolutionPtr& p, const ResolutionPtr& q, const GroupPtr& gh) {
  const GroupTable& g = *p->group();
  const GroupTable& h = *q->group();
  if (gh->order() != g.order() * h.order()) fail(ErrorCode::GroupMismatch, "tensor resolution needs the product group");
  int d_max = std::min(p->max_degree(), q->max_degree());
  std::string flavor = "tensor(" + p->flavor() + "," + q->flavor() + ")";
  return memoized(gh, flavor, d_max, [&] {
    int mh = h.order();
    // Generator (i, a, b) in degree n = i + j, ordered by i, then a, then b.
    std::vector<std::vector<int>> offset(d_max + 1, std::vector<int>(d_max + 1, 0));
    std::vector<int> ranks(d_max + 1, 0);
    for (int n = 0; n <= d_max; ++n)
      for (int i = 0; i <= n; ++i) {
        offset[n][i] = ranks[n];
        ranks[n] += p->rank(i) * q->rank(n - i);
      }
    double zr = 0;
    for (int n = 0; n <= d_max; ++n) zr = std::max(zr, static_cast<double>(ranks[n]) * gh->order());
    check_size(zr, "tensor resolution too large");
    auto gen = [&](int n, int i, int a, int b) { return offset[n][i] + a * q->rank(n - i) + b; };
    std::vector<std::vector<FreeElement>> bd(d_max + 1);
    for (int n = 1; n <= d_max; ++n) {
      bd[n].resize(ranks[n]);
      for (int i = 0; i <= n; ++i) {
        int j = n - i;
        for (int a = 0; a < p->rank(i); ++a)
          for (int b = 0; b < q->rank(j); ++b) {
            FreeElement& out = bd[n][gen(n, i, a, b)];
            if (i > 0)
              for (const auto& t : p->boundary(i, a))
                out.push_back({t.coeff, t.element * mh + h.identity(), gen(n - 1, i - 1, t.generator, b)});
            if (j > 0) {
              Integer sign = (i % 2) ? -1 : 1;
              for (const auto& t : q->boundary(j, b))
                out.push_back({sign * t.coeff, g.identity() * mh + t.element, gen(n - 1, i, a, t.generator)});
            }
          }
      }
    }
    return std::make_shared<const FreeResolution>(gh, flavor, ranks, bd);
  });
}

ResolutionPtr splice_resolution(const GroupPtr& g, int d_max) {
  return memoized(g, "splice", d_max, [&] {
    int m = g->order();
    check_size(ipow(m - 1, d_max) * m, "splice resolution too large");
    int e = g->identity();
    std::vector<int> ranks(d_max + 1);
    std::vector<std::vector<FreeElement>> bd(d_max + 1);
    for (int n = 0; n <= d_max; ++n) ranks[n] = static_cast<int>(ipow(m - 1, n));
    for (int n = 1; n <= d_max; ++n) {
      bd[n].resize(ranks[n]);
      for (int code = 0; code < ranks[n]; ++code) {
        std::vector<int> t = decode_nontrivial_tuple(*g, code, n);
        int b1 = t[0];
        int binv = g->inv(b1);
        // (b1 - 1) (x) y = b1 . (1 (x) b1^-1 y) - 1 (x) y, where
        // b1^-1 (y - 1) = (b1^-1 y - 1) - (b1^-1 - 1).
        std::vector<std::pair<std::vector<int>, int>> terms{{{}, 1}};
        for (int i = 1; i < n; ++i) {
          std::vector<std::pair<std::vector<int>, int>> next;
          int shifted = g->mul(binv, t[i]);
          for (const auto& [tuple, sign] : terms) {
            if (shifted != e) {
              auto a = tuple;
              a.push_back(shifted);
              next.push_back({a, sign});
            }
            auto b = tuple;
            b.push_back(binv);
            next.push_back({b, -sign});
          }
          terms = std::move(next);
        }
        FreeElement& out = bd[n][code];
        for (const auto& [tuple, sign] : terms)
          out.push_back({sign, b1, static_cast<int>(encode_nontrivial_tuple(*g, tuple))});
        out.push_back({-1, e, static_cast<int>(encode_nontrivial_tuple(*g, {t.begin() + 1, t.end()}))});
      }
    }
    return std::make_shared<const FreeResolution>(g, "splice", ranks, bd);
  });
}

namespace {

std::size_t weight(const Vec& v) {
  std::size_t w = 0;
  for (const auto& x : v)
    if (!x.is_zero()) w += 1 + (x.abs() > Integer(1) ? 1 : 0);
  return w;
}

// Pairwise size reduction of a lattice basis: subtract rounded multiples while
// the l1 norm drops. Keeps the span.
void size_reduce(std::vector<Vec>& basis) {
  auto l1 = [](const Vec& v) {
    Integer s = 0;
    for (const auto& x : v) s += x.abs();
    return s;
  };
  bool changed = true;
  for (int round = 0; changed && round < 50; ++round) {
    changed = false;
    for (std::size_t i = 0; i < basis.size(); ++i)
      for (std::size_t j = 0; j < basis.size(); ++j) {
        if (i == j) continue;
        for (int sgn : {1, -1}) {
          Vec cand = sgn > 0 ? sub(basis[i], basis[j]) : add(basis[i], basis[j]);
          if (l1(cand) < l1(basis[i])) {
            basis[i] = cand;
            changed = true;
          }
        }
      }
  }
}

}  // namespace

ResolutionPtr reduced_resolution(const GroupPtr& g, int d_max) {
  return memoized(g, "reduced", d_max, [&] {
    int m = g->order();
    std::vector<int> ranks{1};
    std::vector<std::vector<FreeElement>> bd(1);
    auto translate = [&](const Vec& x, int k) {
      Vec y(x.size());
      for (std::size_t idx = 0; idx < x.size(); ++idx)
        if (!x[idx].is_zero()) y[(idx / m) * m + g->mul(k, static_cast<int>(idx % m))] += x[idx];
      return y;
    };
    for (int n = 1; n <= d_max; ++n) {
      FreeResolution partial(g, "reduced", ranks, bd);
      IntMatrix prev = partial.z_matrix(n - 1);
      std::size_t amb = prev.cols();
      DenseMatrix kb = kernel_basis(prev.to_dense());
      std::vector<Vec> candidates;
      if (n == 1) {
        for (int x : g->generators()) {
          Vec v(amb);
          v[x] += 1;
          v[g->identity()] -= 1;
          candidates.push_back(v);
        }
      }
      std::vector<Vec> kernel;
      for (std::size_t c = 0; c < kb.cols(); ++c) kernel.push_back(kb.column(c));
      size_reduce(kernel);
      std::stable_sort(kernel.begin(), kernel.end(), [](const Vec& a, const Vec& b) { return weight(a) < weight(b); });
      candidates.insert(candidates.end(), kernel.begin(), kernel.end());
      Lattice target = Lattice::span(amb, kernel);
      std::vector<Vec> span_gens;
      Lattice s = Lattice::zero(amb);
      std::vector<FreeElement> gens;
      for (const auto& v : candidates) {
        if (s.rank() == target.rank() && s.contains(target)) break;
        if (s.contains(v)) continue;
        for (int k = 0; k < m; ++k) span_gens.push_back(translate(v, k));
        s = Lattice::span(amb, span_gens);
        FreeElement e;
        for (std::size_t idx = 0; idx < amb; ++idx)
          if (!v[idx].is_zero()) e.push_back({v[idx], static_cast<int>(idx % m), static_cast<int>(idx / m)});
        gens.push_back(std::move(e));
      }
      if (!(s.rank() == target.rank() && s.contains(target)))
        fail(ErrorCode::NotExact, "reduced resolution failed to span the kernel");
      ranks.push_back(static_cast<int>(gens.size()));
      bd.push_back(std::move(gens));
    }
    return std::make_shared<const FreeResolution>(g, "reduced", ranks, bd);
  });
}

ResolutionPtr default_resolution(const GroupPtr& g, int d_max) {
  if (g->cyclic_generator() >= 0) return periodic_resolution(g, d_max);
  if (g->left_factor() && g->right_factor())
    return tensor_resolutions(default_resolution(g->left_factor(), d_max), default_resolution(g->right_factor(), d_max),
                              g);
  return reduced_resolution(g, d_max);
}

}  // namespace tclab
