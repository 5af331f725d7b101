#include "tclab/groups.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <functional>
#include <map>
#include <mutex>
#include <random>

#include "tclab/errors.hpp"

namespace tclab {

GroupTable::GroupTable(std::vector<std::vector<int>> table, std::string name) : name_(std::move(name)) {
  m_ = static_cast<int>(table.size());
  if (m_ == 0) fail(ErrorCode::InvalidInput, "empty group table");
  table_.resize(static_cast<std::size_t>(m_) * m_);
  for (int a = 0; a < m_; ++a) {
    if (static_cast<int>(table[a].size()) != m_) fail(ErrorCode::InvalidInput, "table is not square");
    std::vector<char> seen(m_, 0);
    for (int b = 0; b < m_; ++b) {
      int v = table[a][b];
      if (v < 0 || v >= m_ || seen[v]) fail(ErrorCode::InvalidInput, "table is not a Latin square");
      seen[v] = 1;
      table_[static_cast<std::size_t>(a) * m_ + b] = v;
    }
  }
  for (int b = 0; b < m_; ++b) {
    std::vector<char> seen(m_, 0);
    for (int a = 0; a < m_; ++a) {
      int v = mul(a, b);
      if (seen[v]) fail(ErrorCode::InvalidInput, "table is not a Latin square");
      seen[v] = 1;
    }
  }
  e_ = -1;
  for (int a = 0; a < m_ && e_ < 0; ++a) {
    bool ok = true;
    for (int b = 0; b < m_ && ok; ++b) ok = mul(a, b) == b && mul(b, a) == b;
    if (ok) e_ = a;
  }
  if (e_ < 0) fail(ErrorCode::InvalidInput, "no identity element");
  inv_.assign(m_, -1);
  for (int a = 0; a < m_; ++a)
    for (int b = 0; b < m_; ++b)
      if (mul(a, b) == e_) {
        if (mul(b, a) != e_) fail(ErrorCode::InvalidInput, "inverse mismatch");
        inv_[a] = b;
      }
  fp_ = 1469598103934665603ULL;
  auto feed = [&](std::uint64_t v) {
    for (int i = 0; i < 4; ++i) {
      fp_ ^= (v >> (8 * i)) & 0xff;
      fp_ *= 1099511628211ULL;
    }
  };
  feed(static_cast<std::uint64_t>(m_));
  for (int v : table_) feed(static_cast<std::uint64_t>(v));
  std::vector<char> reached(m_, 0);
  reached[e_] = 1;
  std::size_t n_reached = 1;
  for (int a = 0; a < m_ && n_reached < static_cast<std::size_t>(m_); ++a) {
    if (reached[a]) continue;
    gens_.push_back(a);
    // Close the reached set under right multiplication by all generators.
    std::vector<int> frontier;
    for (int x = 0; x < m_; ++x)
      if (reached[x]) frontier.push_back(x);
    while (!frontier.empty()) {
      int x = frontier.back();
      frontier.pop_back();
      for (int g : gens_) {
        int y = mul(x, g);
        if (!reached[y]) {
          reached[y] = 1;
          ++n_reached;
          frontier.push_back(y);
        }
      }
    }
  }
  auto assoc = [&](int a, int b, int c) { return mul(mul(a, b), c) == mul(a, mul(b, c)); };
  if (m_ <= 64) {
    for (int a = 0; a < m_; ++a)
      for (int b = 0; b < m_; ++b)
        for (int c = 0; c < m_; ++c)
          if (!assoc(a, b, c)) fail(ErrorCode::InvalidInput, "table is not associative");
  } else {
    std::mt19937_64 rng(0x7c1ab5eedULL);
    std::uniform_int_distribution<int> pick(0, m_ - 1);
    for (int k = 0; k < 200000; ++k)
      if (!assoc(pick(rng), pick(rng), pick(rng))) fail(ErrorCode::InvalidInput, "table is not associative");
  }
}

int GroupTable::element_order(int a) const {
  int k = 1;
  for (int x = a; x != e_; x = mul(x, a)) ++k;
  return k;
}

std::vector<std::vector<int>> GroupTable::rows() const {
  std::vector<std::vector<int>> out(m_, std::vector<int>(m_));
  for (int a = 0; a < m_; ++a)
    for (int b = 0; b < m_; ++b) out[a][b] = mul(a, b);
  return out;
}

bool GroupTable::is_abelian() const {
  for (int a = 0; a < m_; ++a)
    for (int b = a + 1; b < m_; ++b)
      if (mul(a, b) != mul(b, a)) return false;
  return true;
}

int GroupTable::cyclic_generator() const {
  for (int a = 0; a < m_; ++a)
    if (element_order(a) == m_) return a;
  return -1;
}

GroupHom::GroupHom(GroupPtr source, GroupPtr target, std::vector<int> image)
    : src_(std::move(source)), tgt_(std::move(target)), image_(std::move(image)) {
  if (static_cast<int>(image_.size()) != src_->order()) fail(ErrorCode::InvalidInput, "image array length");
  for (int v : image_)
    if (v < 0 || v >= tgt_->order()) fail(ErrorCode::InvalidInput, "image out of range");
  for (int a = 0; a < src_->order(); ++a)
    for (int b = 0; b < src_->order(); ++b)
      if (image_[src_->mul(a, b)] != tgt_->mul(image_[a], image_[b]))
        fail(ErrorCode::InvalidInput, "not a homomorphism");
}

GroupHom GroupHom::identity(const GroupPtr& g) {
  std::vector<int> im(g->order());
  for (int i = 0; i < g->order(); ++i) im[i] = i;
  return GroupHom(g, g, im);
}

GroupPtr cyclic_group(int n) {
  if (n < 1) fail(ErrorCode::InvalidInput, "cyclic order must be positive");
  if (n > kMaxCohomologyOrder) fail(ErrorCode::OrderTooLarge, "cyclic order " + std::to_string(n));
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) t[a][b] = (a + b) % n;
  return std::make_shared<const GroupTable>(t, "c" + std::to_string(n));
}

GroupPtr dihedral_group(int n) {
  // Order 2n; element r^k s^f has index k + n f.
  if (n < 1) fail(ErrorCode::InvalidInput, "dihedral parameter must be positive");
  if (2 * n > kMaxCohomologyOrder) fail(ErrorCode::OrderTooLarge, "dihedral order " + std::to_string(2 * n));
  int m = 2 * n;
  std::vector<std::vector<int>> t(m, std::vector<int>(m));
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      int k1 = a % n, f1 = a / n, k2 = b % n, f2 = b / n;
      int k = ((f1 ? k1 - k2 : k1 + k2) % n + n) % n;
      t[a][b] = k + n * (f1 ^ f2);
    }
  return std::make_shared<const GroupTable>(t, "d" + std::to_string(n));
}

GroupPtr symmetric3() {
  std::vector<std::array<int, 3>> perms;
  std::array<int, 3> p{0, 1, 2};
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  std::vector<std::vector<int>> t(6, std::vector<int>(6));
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) {
      std::array<int, 3> c{};
      for (int x = 0; x < 3; ++x) c[x] = perms[a][perms[b][x]];
      t[a][b] = static_cast<int>(std::find(perms.begin(), perms.end(), c) - perms.begin());
    }
  return std::make_shared<const GroupTable>(t, "s3");
}

GroupPtr quaternion8() {
  // Units 1, i, j, k with sign; index 2*unit + (negative ? 1 : 0).
  static const int unit_mul[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static const int unit_sign[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
  std::vector<std::vector<int>> t(8, std::vector<int>(8));
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b) {
      int ua = a / 2, ub = b / 2;
      int sign = unit_sign[ua][ub] * (a % 2 ? -1 : 1) * (b % 2 ? -1 : 1);
      t[a][b] = 2 * unit_mul[ua][ub] + (sign < 0 ? 1 : 0);
    }
  return std::make_shared<const GroupTable>(t, "q8");
}

GroupPtr product(const GroupPtr& g, const GroupPtr& h) {
  long long m = static_cast<long long>(g->order()) * h->order();
  if (m > kMaxProductOrder) fail(ErrorCode::OrderTooLarge, "product order " + std::to_string(m));
  int n = h->order();
  std::vector<std::vector<int>> t(m, std::vector<int>(m));
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) t[a][b] = g->mul(a / n, b / n) * n + h->mul(a % n, b % n);
  auto out = std::make_shared<GroupTable>(t, g->name() + "x" + h->name());
  out->left_ = g;
  out->right_ = h;
  return out;
}

GroupPtr named_group(const std::string& raw) {
  std::string spec;
  for (char c : raw) spec.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  auto x = spec.find('x');
  if (x != std::string::npos) return product(named_group(spec.substr(0, x)), named_group(spec.substr(x + 1)));
  if (spec == "trivial" || spec == "1") return cyclic_group(1);
  if (spec == "s3") return symmetric3();
  if (spec == "q8") return quaternion8();
  if (spec.size() >= 2 && (spec[0] == 'c' || spec[0] == 'd') &&
      std::all_of(spec.begin() + 1, spec.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
    if (spec.size() > 6) fail(ErrorCode::OrderTooLarge, spec);
    int n = std::stoi(spec.substr(1));
    return spec[0] == 'c' ? cyclic_group(n) : dihedral_group(n);
  }
  fail(ErrorCode::UnknownFamily, "unknown group '" + raw + "'");
}

namespace {

void require_square(const GroupPtr& g, const GroupPtr& gg) {
  if (gg->order() != g->order() * g->order()) fail(ErrorCode::GroupMismatch, "expected the square of the group");
}

}  // namespace

GroupHom diagonal(const GroupPtr& g, const GroupPtr& gg) {
  require_square(g, gg);
  std::vector<int> im(g->order());
  for (int a = 0; a < g->order(); ++a) im[a] = a * g->order() + a;
  return GroupHom(g, gg, im);
}

GroupHom left_inclusion(const GroupPtr& g, const GroupPtr& gg) {
  require_square(g, gg);
  std::vector<int> im(g->order());
  for (int a = 0; a < g->order(); ++a) im[a] = a * g->order() + g->identity();
  return GroupHom(g, gg, im);
}

GroupHom right_inclusion(const GroupPtr& g, const GroupPtr& gg) {
  require_square(g, gg);
  std::vector<int> im(g->order());
  for (int a = 0; a < g->order(); ++a) im[a] = g->identity() * g->order() + a;
  return GroupHom(g, gg, im);
}

GroupHom difference_map(const GroupPtr& gg, const GroupPtr& g) {
  require_square(g, gg);
  int m = g->order();
  std::vector<int> im(gg->order());
  for (int a = 0; a < gg->order(); ++a) im[a] = g->mul(a / m, g->inv(a % m));
  return GroupHom(gg, g, im);
}

std::vector<int> centralizer(const GroupTable& g, int x) {
  std::vector<int> out;
  for (int h = 0; h < g.order(); ++h)
    if (g.mul(h, x) == g.mul(x, h)) out.push_back(h);
  return out;
}

std::vector<int> conjugacy_class(const GroupTable& g, int x) {
  std::vector<int> out;
  for (int h = 0; h < g.order(); ++h) out.push_back(g.conj(h, x));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

GroupHom subgroup(const GroupPtr& g, const std::vector<int>& elements) {
  std::vector<int> el = elements;
  std::sort(el.begin(), el.end());
  std::map<int, int> pos;
  for (std::size_t i = 0; i < el.size(); ++i) pos[el[i]] = static_cast<int>(i);
  int k = static_cast<int>(el.size());
  std::vector<std::vector<int>> t(k, std::vector<int>(k));
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) {
      auto it = pos.find(g->mul(el[a], el[b]));
      if (it == pos.end()) fail(ErrorCode::InvalidInput, "element list is not a subgroup");
      t[a][b] = it->second;
    }
  auto sub = std::make_shared<const GroupTable>(t, g->name() + "-sub" + std::to_string(k));
  return GroupHom(sub, g, el);
}

std::vector<TupleOrbit> tuple_conjugacy_classes(const GroupTable& g, int s, bool nontrivial_only) {
  int m = g.order();
  std::vector<int> alphabet;
  for (int a = 0; a < m; ++a)
    if (!nontrivial_only || a != g.identity()) alphabet.push_back(a);
  int base = static_cast<int>(alphabet.size());
  double count = 1;
  for (int i = 0; i < s; ++i) count *= base;
  if (count > 1e6) fail(ErrorCode::TooManyTuples, std::to_string(static_cast<long long>(count)) + " tuples");
  std::size_t total = static_cast<std::size_t>(count);
  std::vector<int> letter_of(m, -1);
  for (int i = 0; i < base; ++i) letter_of[alphabet[i]] = i;
  auto decode = [&](std::size_t code) {
    std::vector<int> t(s);
    for (int i = s - 1; i >= 0; --i) {
      t[i] = alphabet[code % base];
      code /= base;
    }
    return t;
  };
  auto encode = [&](const std::vector<int>& t) {
    std::size_t code = 0;
    for (int v : t) code = code * base + letter_of[v];
    return code;
  };
  std::vector<char> seen(total, 0);
  std::vector<TupleOrbit> out;
  for (std::size_t code = 0; code < total; ++code) {
    if (seen[code]) continue;
    TupleOrbit o;
    o.arity = s;
    o.representative = decode(code);
    std::vector<std::size_t> members;
    for (int h = 0; h < m; ++h) {
      std::vector<int> t(s);
      for (int i = 0; i < s; ++i) t[i] = g.conj(h, o.representative[i]);
      std::size_t c = encode(t);
      if (!seen[c]) {
        seen[c] = 1;
        members.push_back(c);
      }
      bool fixes = true;
      for (int i = 0; i < s && fixes; ++i) fixes = t[i] == o.representative[i];
      if (fixes) o.centralizer.push_back(h);
    }
    std::sort(members.begin(), members.end());
    for (auto c : members) o.members.push_back(decode(c));
    out.push_back(std::move(o));
  }
  return out;
}

bool same_group(const GroupTable& a, const GroupTable& b) {
  return &a == &b || (a.order() == b.order() && a.fingerprint() == b.fingerprint());
}

GroupPtr square_of(const GroupPtr& g) {
  static std::mutex mu;
  static std::map<const GroupTable*, std::pair<GroupPtr, GroupPtr>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(g.get());
  if (it != cache.end()) return it->second.second;
  GroupPtr gg = product(g, g);
  cache[g.get()] = {g, gg};
  return gg;
}

bool isomorphic_by_search(const GroupTable& a, const GroupTable& b) {
  if (a.order() != b.order()) return false;
  int m = a.order();
  std::vector<int> map(m, -1), used(m, 0);
  map[a.identity()] = b.identity();
  used[b.identity()] = 1;
  // Backtracking over element images with full homomorphism checks on assigned pairs.
  std::function<bool(int)> go = [&](int x) -> bool {
    if (x == m) return true;
    if (map[x] >= 0) return go(x + 1);
    for (int y = 0; y < m; ++y) {
      if (used[y] || a.element_order(x) != b.element_order(y)) continue;
      map[x] = y;
      used[y] = 1;
      bool ok = true;
      for (int u = 0; u < m && ok; ++u)
        for (int v = 0; v < m && ok; ++v)
          if (map[u] >= 0 && map[v] >= 0 && map[a.mul(u, v)] >= 0)
            ok = map[a.mul(u, v)] == b.mul(map[u], map[v]);
      if (ok && go(x + 1)) return true;
      map[x] = -1;
      used[y] = 0;
    }
    return false;
  };
  return go(0);
}

}  // namespace tclab
