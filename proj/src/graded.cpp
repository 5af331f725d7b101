#include "tclab/graded.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>

#include "tclab/errors.hpp"
#include "tclab/smith.hpp"
#include "tclab/sparse.hpp"

namespace tclab {

namespace {

void add_term(GradedRing::Product& p, int basis, const Integer& c) {
  if (c.is_zero()) return;
  for (auto& t : p)
    if (t.basis == basis) {
      t.coeff += c;
      return;
    }
  p.push_back({basis, c});
}

void normalize(GradedRing::Product& p) {
  p.erase(std::remove_if(p.begin(), p.end(), [](const GradedRing::Term& t) { return t.coeff.is_zero(); }), p.end());
  std::sort(p.begin(), p.end(), [](const auto& a, const auto& b) { return a.basis < b.basis; });
}

int koszul(int a, int b) { return (a % 2 != 0 && b % 2 != 0) ? -1 : 1; }

void check(bool ok, const std::string& what) {
  if (!ok) fail(ErrorCode::IdentityCheckFailed, what);
}

int parse_param(const std::string& spec, const std::string& prefix) {
  std::string rest = spec.substr(prefix.size());
  if (rest.empty() || !std::all_of(rest.begin(), rest.end(), ::isdigit))
    fail(ErrorCode::UnknownSpec, "expected a number after '" + prefix + "' in '" + spec + "'");
  return std::stoi(rest);
}

template <class F>
RingPtr memo(const std::string& key, F make) {
  static std::mutex mu;
  static std::map<std::string, RingPtr> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  RingPtr r = make();
  r->verify();
  return cache.emplace(key, r).first->second;
}

}  // namespace

GradedRing::GradedRing(std::string name, std::vector<std::string> labels, std::vector<int> degrees,
                       std::vector<Product> table, int unit)
    : name_(std::move(name)), labels_(std::move(labels)), degrees_(std::move(degrees)), table_(std::move(table)),
      unit_(unit) {
  std::size_t d = labels_.size();
  if (degrees_.size() != d || table_.size() != d * d) fail(ErrorCode::DimensionMismatch, "ring structure constants");
  if (unit_ < 0 || static_cast<std::size_t>(unit_) >= d || degrees_[unit_] != 0)
    fail(ErrorCode::InvalidInput, "unit must be a degree-0 basis element");
  for (auto& p : table_) normalize(p);
  for (int x : degrees_) top_ = std::max(top_, x);
}

RingPtr GradedRing::square(const RingPtr& r) {
  auto s = std::shared_ptr<GradedRing>(new GradedRing());
  int d = r->dim();
  s->name_ = r->name() + "^2";
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      s->labels_.push_back(r->label(a) + "⊗" + r->label(b));
      s->degrees_.push_back(r->degree(a) + r->degree(b));
    }
  s->unit_ = r->unit() * d + r->unit();
  s->top_ = 2 * r->top();
  s->factor_ = r;
  return s;
}

std::vector<int> GradedRing::basis_in_degree(int d) const {
  std::vector<int> out;
  for (int b = 0; b < dim(); ++b)
    if (degrees_[b] == d) out.push_back(b);
  return out;
}

GradedRing::Product GradedRing::multiply_basis(int a, int b) const {
  if (!factor_) return table_[static_cast<std::size_t>(a) * dim() + b];
  int d = factor_->dim();
  int a1 = a / d, a2 = a % d, b1 = b / d, b2 = b % d;
  Product left = factor_->multiply_basis(a1, b1);
  if (left.empty()) return {};
  Product right = factor_->multiply_basis(a2, b2);
  int sign = koszul(factor_->degree(a2), factor_->degree(b1));
  Product out;
  for (const auto& l : left)
    for (const auto& r : right) out.push_back({l.basis * d + r.basis, l.coeff * r.coeff * Integer(sign)});
  normalize(out);
  return out;
}

void GradedRing::verify() const {
  int d = dim();
  for (int a = 0; a < d; ++a) {
    Product u1 = multiply_basis(unit_, a), u2 = multiply_basis(a, unit_);
    check(u1.size() == 1 && u1[0].basis == a && u1[0].coeff == Integer(1), name_ + ": left unit");
    check(u2.size() == 1 && u2[0].basis == a && u2[0].coeff == Integer(1), name_ + ": right unit");
    for (int b = 0; b < d; ++b) {
      Product ab = multiply_basis(a, b), ba = multiply_basis(b, a);
      for (const auto& t : ab) check(degrees_[t.basis] == degrees_[a] + degrees_[b], name_ + ": degree of a product");
      int s = koszul(degrees_[a], degrees_[b]);
      Product sba;
      for (const auto& t : ba) sba.push_back({t.basis, t.coeff * Integer(s)});
      bool same = ab.size() == sba.size();
      for (std::size_t i = 0; same && i < ab.size(); ++i)
        same = ab[i].basis == sba[i].basis && ab[i].coeff == sba[i].coeff;
      check(same, name_ + ": graded commutativity on " + labels_[a] + ", " + labels_[b]);
      if (ab.empty()) continue;
      for (int c = 0; c < d; ++c) {
        Product lhs, rhs;
        for (const auto& t : ab)
          for (const auto& u : multiply_basis(t.basis, c)) add_term(lhs, u.basis, t.coeff * u.coeff);
        for (const auto& t : multiply_basis(b, c))
          for (const auto& u : multiply_basis(a, t.basis)) add_term(rhs, u.basis, t.coeff * u.coeff);
        normalize(lhs);
        normalize(rhs);
        bool eq = lhs.size() == rhs.size();
        for (std::size_t i = 0; eq && i < lhs.size(); ++i) eq = lhs[i].basis == rhs[i].basis && lhs[i].coeff == rhs[i].coeff;
        check(eq, name_ + ": associativity");
      }
    }
  }
}

// ---------------------------------------------------------------------------
// Elements

RingElement::RingElement(RingPtr ring, Vec coeffs) : ring_(std::move(ring)), c_(std::move(coeffs)) {
  if (ring_ && c_.size() != static_cast<std::size_t>(ring_->dim()))
    fail(ErrorCode::DimensionMismatch, "coefficient vector length");
}

RingElement RingElement::zero(const RingPtr& r) { return RingElement(r, Vec(r->dim())); }

RingElement RingElement::basis(const RingPtr& r, int b, const Integer& c) {
  if (!r) return RingElement();
  Vec v(r->dim());
  v[b] = c;
  return RingElement(r, std::move(v));
}

int RingElement::degree() const {
  int d = -1;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    int e = ring_->degree(static_cast<int>(i));
    if (d >= 0 && d != e) return -2;
    d = e;
  }
  return d;
}

std::size_t RingElement::term_count() const {
  return static_cast<std::size_t>(std::count_if(c_.begin(), c_.end(), [](const Integer& x) { return !x.is_zero(); }));
}

std::string RingElement::describe() const {
  std::string out;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    const Integer& x = c_[i];
    if (x.is_zero()) continue;
    bool neg = x.sign() < 0;
    Integer m = x.abs();
    if (out.empty()) out += neg ? "-" : "";
    else out += neg ? " - " : " + ";
    if (!(m == Integer(1))) out += m.str() + "*";
    out += ring_->label(static_cast<int>(i));
  }
  return out.empty() ? "0" : out;
}

namespace {
void same_ring(const RingElement& a, const RingElement& b) {
  if (a.ring() != b.ring()) fail(ErrorCode::GroupMismatch, "elements of different rings");
}
}  // namespace

RingElement operator+(const RingElement& a, const RingElement& b) {
  same_ring(a, b);
  return RingElement(a.ring(), add(a.coeffs(), b.coeffs()));
}

RingElement operator-(const RingElement& a, const RingElement& b) {
  same_ring(a, b);
  return RingElement(a.ring(), sub(a.coeffs(), b.coeffs()));
}

RingElement operator*(const RingElement& a, const RingElement& b) {
  same_ring(a, b);
  const RingPtr& r = a.ring();
  Vec out(r->dim());
  for (int i = 0; i < r->dim(); ++i) {
    if (a.coeffs()[i].is_zero()) continue;
    for (int j = 0; j < r->dim(); ++j) {
      if (b.coeffs()[j].is_zero()) continue;
      Integer c = a.coeffs()[i] * b.coeffs()[j];
      for (const auto& t : r->multiply_basis(i, j)) out[t.basis] += c * t.coeff;
    }
  }
  return RingElement(r, std::move(out));
}

bool operator==(const RingElement& a, const RingElement& b) { return a.ring() == b.ring() && a.coeffs() == b.coeffs(); }

RingElement RingElement::scaled(const Integer& s) const { return RingElement(ring_, scale(c_, s)); }

// ---------------------------------------------------------------------------
// Named rings

RingPtr exterior_ring(int n) {
  if (n < 0 || n > 6) fail(ErrorCode::TooLarge, "exterior rings are shipped for N <= 6");
  return memo("exterior:" + std::to_string(n), [n] {
    std::vector<int> masks;
    for (int m = 0; m < (1 << n); ++m) masks.push_back(m);
    std::stable_sort(masks.begin(), masks.end(), [](int a, int b) {
      int pa = __builtin_popcount(a), pb = __builtin_popcount(b);
      if (pa != pb) return pa < pb;
      for (int i = 0;; ++i) {
        bool ia = (a >> i) & 1, ib = (b >> i) & 1;
        if (ia != ib) return ia;
      }
    });
    std::vector<int> index(1 << n);
    std::vector<std::string> labels;
    std::vector<int> degrees;
    for (std::size_t k = 0; k < masks.size(); ++k) {
      index[masks[k]] = static_cast<int>(k);
      std::string l;
      for (int i = 0; i < n; ++i)
        if ((masks[k] >> i) & 1) l += "x" + std::to_string(i + 1);
      labels.push_back(l.empty() ? "1" : l);
      degrees.push_back(__builtin_popcount(masks[k]));
    }
    std::size_t d = masks.size();
    std::vector<GradedRing::Product> table(d * d);
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t b = 0; b < d; ++b) {
        int s = masks[a], t = masks[b];
        if (s & t) continue;
        int inv = 0;
        for (int i = 0; i < n; ++i)
          if ((s >> i) & 1)
            for (int j = 0; j < i; ++j)
              if ((t >> j) & 1) ++inv;
        table[a * d + b] = {{index[s | t], Integer(inv % 2 ? -1 : 1)}};
      }
    return std::make_shared<const GradedRing>("exterior(" + std::to_string(n) + ")", labels, degrees, table, 0);
  });
}

RingPtr surface_ring(int g) {
  if (g < 1 || g > 4) fail(ErrorCode::TooLarge, "surface rings are shipped for 1 <= g <= 4");
  return memo("surface:" + std::to_string(g), [g] {
    int d = 2 * g + 2, w = d - 1;
    std::vector<std::string> labels{"1"};
    std::vector<int> degrees{0};
    for (int i = 1; i <= g; ++i) labels.push_back("a" + std::to_string(i)), degrees.push_back(1);
    for (int i = 1; i <= g; ++i) labels.push_back("b" + std::to_string(i)), degrees.push_back(1);
    labels.push_back("w");
    degrees.push_back(2);
    std::vector<GradedRing::Product> table(static_cast<std::size_t>(d) * d);
    auto put = [&](int a, int b, int c, int s) { table[static_cast<std::size_t>(a) * d + b] = {{c, Integer(s)}}; };
    for (int a = 0; a < d; ++a) {
      put(0, a, a, 1);
      put(a, 0, a, 1);
    }
    for (int i = 1; i <= g; ++i) {
      put(i, g + i, w, 1);
      put(g + i, i, w, -1);
    }
    return std::make_shared<const GradedRing>("surface(" + std::to_string(g) + ")", labels, degrees, table, 0);
  });
}

RingPtr wedge_ring(int mu) {
  if (mu < 1 || mu > 6) fail(ErrorCode::TooLarge, "wedge rings are shipped for 1 <= mu <= 6");
  return memo("wedge:" + std::to_string(mu), [mu] {
    int d = mu + 1;
    std::vector<std::string> labels{"1"};
    std::vector<int> degrees{0};
    for (int i = 1; i <= mu; ++i) labels.push_back("x" + std::to_string(i)), degrees.push_back(1);
    std::vector<GradedRing::Product> table(static_cast<std::size_t>(d) * d);
    for (int a = 0; a < d; ++a) {
      table[a] = {{a, Integer(1)}};
      table[static_cast<std::size_t>(a) * d] = {{a, Integer(1)}};
    }
    return std::make_shared<const GradedRing>("wedge(" + std::to_string(mu) + ")", labels, degrees, table, 0);
  });
}

RingPtr even_truncated_ring(int n) {
  if (n < 1 || n > 4) fail(ErrorCode::TooLarge, "truncated rings are shipped for 1 <= n <= 4");
  return memo("even:" + std::to_string(n), [n] {
    int d = n + 1;
    std::vector<std::string> labels;
    std::vector<int> degrees;
    for (int k = 0; k <= n; ++k) {
      labels.push_back(k == 0 ? "1" : k == 1 ? "u" : "u^" + std::to_string(k));
      degrees.push_back(2 * k);
    }
    std::vector<GradedRing::Product> table(static_cast<std::size_t>(d) * d);
    for (int a = 0; a < d; ++a)
      for (int b = 0; a + b < d; ++b) table[static_cast<std::size_t>(a) * d + b] = {{a + b, Integer(1)}};
    return std::make_shared<const GradedRing>("even(" + std::to_string(n) + ")", labels, degrees, table, 0);
  });
}

RingPtr named_ring(const std::string& spec) {
  if (spec == "circle") return exterior_ring(1);
  for (const char* p : {"torus:", "exterior:"})
    if (spec.rfind(p, 0) == 0) return exterior_ring(parse_param(spec, p));
  if (spec.rfind("surface:", 0) == 0) return surface_ring(parse_param(spec, "surface:"));
  if (spec.rfind("wedge:", 0) == 0) return wedge_ring(parse_param(spec, "wedge:"));
  if (spec.rfind("even:", 0) == 0) return even_truncated_ring(parse_param(spec, "even:"));
  fail(ErrorCode::UnknownSpec, "unknown space '" + spec + "' (circle, torus:N, surface:g, wedge:mu, even:n)");
}

RingPtr permuted_ring(const RingPtr& r, const std::vector<int>& perm) {
  int d = r->dim();
  if (static_cast<int>(perm.size()) != d) fail(ErrorCode::DimensionMismatch, "permutation length");
  std::vector<std::string> labels(d);
  std::vector<int> degrees(d);
  for (int i = 0; i < d; ++i) {
    labels[perm[i]] = r->label(i);
    degrees[perm[i]] = r->degree(i);
  }
  std::vector<GradedRing::Product> table(static_cast<std::size_t>(d) * d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      GradedRing::Product p;
      for (const auto& t : r->multiply_basis(a, b)) p.push_back({perm[t.basis], t.coeff});
      table[static_cast<std::size_t>(perm[a]) * d + perm[b]] = p;
    }
  auto out = std::make_shared<const GradedRing>(r->name() + "'", labels, degrees, table, perm[r->unit()]);
  out->verify();
  return out;
}

// ---------------------------------------------------------------------------
// Squares and zero-divisors

RingPtr kunneth_square(const RingPtr& r) {
  if (r->dim() > 64) fail(ErrorCode::TooLarge, "square of a ring of dimension above 64");
  static std::mutex mu;
  static std::map<const GradedRing*, std::pair<RingPtr, RingPtr>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(r.get());
  if (it != cache.end()) return it->second.second;
  RingPtr s = GradedRing::square(r);
  if (r->dim() <= 8) s->verify();
  cache.emplace(r.get(), std::make_pair(r, s));
  return s;
}

RingElement left(const RingPtr& sq, int a) { return RingElement::basis(sq, sq->pair(a, sq->factor()->unit())); }
RingElement right(const RingPtr& sq, int b) { return RingElement::basis(sq, sq->pair(sq->factor()->unit(), b)); }
RingElement bar(const RingPtr& sq, int a) { return left(sq, a) - right(sq, a); }

RingElement multiply_out(const RingElement& x) {
  const RingPtr& sq = x.ring();
  const RingPtr& r = sq->factor();
  if (!r) fail(ErrorCode::InvalidInput, "multiplication map needs a square");
  Vec out(r->dim());
  int d = r->dim();
  for (int p = 0; p < sq->dim(); ++p) {
    if (x.coeffs()[p].is_zero()) continue;
    for (const auto& t : r->multiply_basis(p / d, p % d)) out[t.basis] += x.coeffs()[p] * t.coeff;
  }
  return RingElement(r, std::move(out));
}

std::vector<RingElement> zero_divisor_basis(const RingPtr& sq) {
  const RingPtr& r = sq->factor();
  if (!r) fail(ErrorCode::InvalidInput, "zero-divisors live in a square");
  int d = r->dim(), u = r->unit();
  std::vector<RingElement> out;
  // a (x) b with b != 1: (ab) (x) 1 - a (x) b, or a (x) b itself when ab = 0.
  for (int deg = 0; deg <= sq->top(); ++deg)
    for (int p : sq->basis_in_degree(deg)) {
      int a = p / d, b = p % d;
      if (b == u) continue;
      RingElement e = RingElement::basis(sq, p);
      GradedRing::Product ab = r->multiply_basis(a, b);
      if (ab.empty()) {
        out.push_back(e);
        continue;
      }
      RingElement c = RingElement::zero(sq);
      for (const auto& t : ab) c = c + left(sq, t.basis).scaled(t.coeff);
      out.push_back(c - e);
    }
  // Cross-check against a Smith-form kernel degree by degree.
  if (sq->dim() <= 4096)
    for (int deg = 0; deg <= sq->top(); ++deg) {
      std::vector<int> src = sq->basis_in_degree(deg), tgt = r->basis_in_degree(deg);
      if (src.empty()) continue;
      std::map<int, std::size_t> row;
      for (std::size_t i = 0; i < tgt.size(); ++i) row[tgt[i]] = i;
      DenseMatrix m(tgt.size(), src.size());
      for (std::size_t j = 0; j < src.size(); ++j)
        for (const auto& t : r->multiply_basis(src[j] / d, src[j] % d)) m(row.at(t.basis), j) += t.coeff;
      Lattice ker = Lattice::span(kernel_basis(m));
      std::vector<Vec> mine;
      for (const auto& e : out) {
        if (e.degree() != deg) continue;
        Vec v(src.size());
        for (std::size_t j = 0; j < src.size(); ++j) v[j] = e.coeffs()[src[j]];
        mine.push_back(v);
      }
      check(Lattice::span(src.size(), mine) == ker && mine.size() == ker.rank(),
            "zero-divisor basis disagrees with the Smith kernel in degree " + std::to_string(deg));
    }
  return out;
}

ZdclResult zdcl(const RingPtr& r, std::size_t budget) {
  RingPtr sq = kunneth_square(r);
  std::vector<RingElement> zd = zero_divisor_basis(sq);
  std::stable_sort(zd.begin(), zd.end(), [](const RingElement& a, const RingElement& b) { return a.degree() < b.degree(); });
  ZdclResult best;
  best.product = RingElement::one(sq);
  std::vector<int> path;
  int top = sq->top();
  std::size_t nodes = 0;
  std::function<void(std::size_t, const RingElement&, int)> dfs = [&](std::size_t start, const RingElement& p, int deg) {
    for (std::size_t i = start; i < zd.size(); ++i) {
      int di = zd[i].degree();
      if (deg + di > top) break;
      if (++nodes > budget)
        fail(ErrorCode::SearchBudgetExceeded, "zdcl search budget exhausted; best lower bound " + std::to_string(best.zdcl));
      RingElement q = p * zd[i];
      if (q.is_zero()) continue;
      path.push_back(static_cast<int>(i));
      if (static_cast<int>(path.size()) > best.zdcl) {
        best.zdcl = static_cast<int>(path.size());
        best.witness.clear();
        for (int k : path) best.witness.push_back(zd[k]);
        best.product = q;
      }
      dfs(i, q, deg + di);
      path.pop_back();
    }
  };
  dfs(0, RingElement::one(sq), 0);
  best.nodes = nodes;
  return best;
}

// ---------------------------------------------------------------------------
// Abelian identities

RingElement RingMap::apply(const RingElement& x) const {
  RingElement out = RingElement::zero(target);
  for (int i = 0; i < source->dim(); ++i)
    if (!x.coeffs()[i].is_zero()) out = out + images[i].scaled(x.coeffs()[i]);
  return out;
}

RingMap phi_pullback(int n) {
  RingPtr r = exterior_ring(n);
  RingPtr sq = kunneth_square(r);
  RingMap m{r, sq, {}};
  for (int b = 0; b < r->dim(); ++b) {
    RingElement img = RingElement::one(sq);
    const std::string& l = r->label(b);
    // Labels of the exterior basis list the generators x_i in increasing order.
    for (std::size_t pos = 0; (pos = l.find('x', pos)) != std::string::npos;) {
      std::size_t end = pos + 1;
      while (end < l.size() && isdigit(static_cast<unsigned char>(l[end]))) ++end;
      int i = std::stoi(l.substr(pos + 1, end - pos - 1));
      img = img * bar(sq, 1 + (i - 1));
      pos = end;
    }
    m.images.push_back(img);
  }
  for (int a = 0; a < r->dim(); ++a)
    for (int b = 0; b < r->dim(); ++b) {
      RingElement ab = RingElement::zero(r);
      for (const auto& t : r->multiply_basis(a, b)) ab = ab + RingElement::basis(r, t.basis, t.coeff);
      check(m.apply(ab) == m.images[a] * m.images[b], "phi* is not multiplicative");
    }
  return m;
}

EssentialVerdict abelian_essential_test(int n, const RingElement& alpha) {
  RingMap phi = phi_pullback(n);
  if (alpha.ring() != phi.target) fail(ErrorCode::GroupMismatch, "class must live in the square of exterior(N)");
  int deg = alpha.degree();
  if (deg == -2) fail(ErrorCode::InvalidInput, "class must be homogeneous");
  EssentialVerdict v;
  v.zero_divisor = multiply_out(alpha).is_zero();
  if (alpha.is_zero()) {
    v.essential = true;
    v.beta = RingElement::zero(phi.source);
    return v;
  }
  std::vector<int> src = phi.source->basis_in_degree(deg);
  std::vector<Triple> t;
  for (std::size_t j = 0; j < src.size(); ++j) {
    const Vec& c = phi.images[src[j]].coeffs();
    for (std::size_t i = 0; i < c.size(); ++i)
      if (!c[i].is_zero()) t.push_back({i, j, c[i]});
  }
  auto sol = membership(IntMatrix(alpha.ring()->dim(), src.size(), std::move(t)), alpha.coeffs());
  if (!sol) return v;
  RingElement beta = RingElement::zero(phi.source);
  for (std::size_t j = 0; j < src.size(); ++j) beta = beta + RingElement::basis(phi.source, src[j], (*sol)[j]);
  check(phi.apply(beta) == alpha, "preimage under phi* does not reproduce the class");
  v.essential = true;
  v.beta = beta;
  return v;
}

AlphaExpansion expand_alpha(int n) {
  if (n < 1 || n > 6) fail(ErrorCode::TooLarge, "expansion is shipped for 1 <= N <= 6");
  RingPtr r = exterior_ring(n);
  RingPtr sq = kunneth_square(r);
  AlphaExpansion out;
  out.product = RingElement::one(sq);
  for (int i = 1; i <= n; ++i) out.product = out.product * bar(sq, i);
  // Sum over K: sign (-1)^N (-1)^|K| times the shuffle sign of moving x_K to the left.
  std::map<std::string, int> by_label;
  for (int b = 0; b < r->dim(); ++b) by_label[r->label(b)] = b;
  out.formula = RingElement::zero(sq);
  for (int k = 0; k < (1 << n); ++k) {
    std::string lk, lc;
    int inv = 0, size = 0;
    for (int j = 0; j < n; ++j) {
      bool in = (k >> j) & 1;
      (in ? lk : lc) += "x" + std::to_string(j + 1);
      if (in) {
        ++size;
        for (int i = 0; i < j; ++i)
          if (!((k >> i) & 1)) ++inv;
      }
    }
    int literal = ((n + size) % 2) ? -1 : 1;
    int sign = literal * (inv % 2 ? -1 : 1);
    if (inv % 2) ++out.shuffle_sign_terms;
    int a = by_label.at(lk.empty() ? "1" : lk), c = by_label.at(lc.empty() ? "1" : lc);
    out.formula = out.formula + RingElement::basis(sq, sq->pair(a, c), sign);
  }
  out.terms = out.product.term_count();
  out.unit_coefficients = std::all_of(out.product.coeffs().begin(), out.product.coeffs().end(),
                                      [](const Integer& x) { return x.is_zero() || x.abs() == Integer(1); });
  check(out.product == out.formula, "product of the alpha_i differs from the sum over K");
  check(out.terms == (std::size_t{1} << n) && out.unit_coefficients, "expansion does not have 2^N unit terms");
  return out;
}

SymplecticPower symplectic_power(int n) {
  RingPtr r = even_truncated_ring(n);
  RingPtr sq = kunneth_square(r);
  RingElement ub = bar(sq, 1);
  RingElement p = RingElement::one(sq);
  for (int i = 0; i < 2 * n; ++i) p = p * ub;
  SymplecticPower out;
  out.n = n;
  int target = sq->pair(n, n);
  out.coefficient = p.coeffs()[target];
  check(p.term_count() == 1, "ubar^{2n} has more than one term");
  long long binom = 1;
  for (int i = 1; i <= n; ++i) binom = binom * (n + i) / i;
  out.binomial = Integer(binom);
  check(out.coefficient.abs() == out.binomial, "coefficient of u^n (x) u^n is not the central binomial");
  return out;
}

TcReport tc_report(const std::string& space) {
  TcReport rep;
  rep.space = space;
  RingPtr r = named_ring(space);
  rep.z = zdcl(r);
  rep.tc_lower = rep.z.zdcl + 1;
  auto upper = [&](int cd, std::string why) {
    rep.tc_upper = cd + 1;
    rep.cd_source = std::move(why);
  };
  if (space == "circle") {
    upper(2, "cd(Z x Z) = 2");
    rep.paper_value = 2;
  } else if (space.rfind("torus:", 0) == 0 || space.rfind("exterior:", 0) == 0) {
    int n = (r->dim() == 1) ? 0 : __builtin_ctz(static_cast<unsigned>(r->dim()));
    upper(2 * n, "cd(Z^N x Z^N) = 2N");
  } else if (space.rfind("surface:", 0) == 0) {
    upper(4, "cd of a product of two surface groups is 4");
    if (r->dim() > 4) rep.paper_value = 5;
  } else if (space.rfind("wedge:", 0) == 0) {
    upper(2, "cd(F_mu x F_mu) = 2");
    if (r->dim() > 2) rep.paper_value = 3;
  } else {
    rep.cd_source = "not aspherical; no upper bound from cd";
  }
  rep.verdict = rep.tc_upper && *rep.tc_upper == rep.tc_lower ? "determined" : "open";
  return rep;
}

}  // namespace tclab
