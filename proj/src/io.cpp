#include "tclab/io.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "tclab/errors.hpp"

namespace tclab {

namespace fs = std::filesystem;

Json to_json(const Integer& x) {
  if (auto v = x.to_int64()) return *v;
  return x.str();
}

Json to_json(const Vec& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(to_json(x));
  return out;
}

Json to_json(const IntMatrix& m) {
  Json out = Json::array();
  DenseMatrix d = m.to_dense();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_json(d(i, j)));
    out.push_back(row);
  }
  return out;
}

Integer integer_from_json(const Json& j) {
  if (j.is_number_integer()) return Integer(static_cast<long long>(j.get<std::int64_t>()));
  if (j.is_string()) return Integer::parse(j.get<std::string>());
  fail(ErrorCode::InvalidInput, "expected an integer, got " + j.dump());
}

namespace {

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::IoError, "cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    fail(ErrorCode::InvalidInput, path + ": " + e.what());
  }
}

bool looks_like_path(const std::string& ref) {
  return ref.find('/') != std::string::npos || (ref.size() > 5 && ref.substr(ref.size() - 5) == ".json");
}

IntMatrix matrix_from_json(const Json& j, int rank) {
  if (!j.is_array() || static_cast<int>(j.size()) != rank) fail(ErrorCode::InvalidInput, "action matrix must be square");
  std::vector<Triple> t;
  for (int r = 0; r < rank; ++r) {
    const Json& row = j[r];
    if (!row.is_array() || static_cast<int>(row.size()) != rank)
      fail(ErrorCode::InvalidInput, "action matrix must be square");
    for (int c = 0; c < rank; ++c) {
      Integer v = integer_from_json(row[c]);
      if (!v.is_zero()) t.push_back({static_cast<std::size_t>(r), static_cast<std::size_t>(c), v});
    }
  }
  return IntMatrix(rank, rank, std::move(t));
}

int parse_suffix(const std::string& ref, const std::string& prefix) {
  std::string rest = ref.substr(prefix.size());
  try {
    std::size_t used = 0;
    int v = std::stoi(rest, &used);
    if (used == rest.size()) return v;
  } catch (const std::exception&) {
  }
  fail(ErrorCode::UnknownSpec, "bad parameter in " + ref);
}

bool starts_with(const std::string& s, const std::string& p) { return s.rfind(p, 0) == 0; }

}  // namespace

GroupPtr group_from_json(const Json& j, const std::string& name) {
  if (!j.is_object() || !j.contains("order") || !j.contains("table"))
    fail(ErrorCode::InvalidInput, "group JSON needs \"order\" and \"table\"");
  int m = j.at("order").get<int>();
  if (m < 1) fail(ErrorCode::InvalidInput, "group order must be positive");
  if (m > kMaxProductOrder) fail(ErrorCode::OrderTooLarge, "order " + std::to_string(m));
  std::vector<std::vector<int>> rows;
  try {
    rows = j.at("table").get<std::vector<std::vector<int>>>();
  } catch (const Json::exception& e) {
    fail(ErrorCode::InvalidInput, std::string("table: ") + e.what());
  }
  if (static_cast<int>(rows.size()) != m) fail(ErrorCode::InvalidInput, "table has the wrong number of rows");
  return std::make_shared<const GroupTable>(std::move(rows), name);
}

Json group_to_json(const GroupTable& g) { return Json{{"order", g.order()}, {"table", g.rows()}}; }

GroupPtr load_group(const std::string& ref) {
  if (looks_like_path(ref)) return group_from_json(read_json_file(ref), fs::path(ref).stem().string());
  return named_group(ref);
}

GModule load_module(const std::string& ref, const GroupPtr& g, bool over_square) {
  GroupPtr target = over_square ? square_of(g) : g;
  if (ref == "trivial-Z") return GModule::trivial(target);
  if (starts_with(ref, "trivial-Fp:")) {
    int p = parse_suffix(ref, "trivial-Fp:");
    if (p < 2) fail(ErrorCode::UnknownSpec, "characteristic must be at least 2");
    return GModule::trivial(target, 1, p);
  }
  if (ref == "group-ring") return over_square ? group_ring_bimodule(g) : left_regular(g);
  if (ref == "aug-ideal") return over_square ? augmentation_ideal(g).ideal : left_augmentation_ideal(g).ideal;
  if (starts_with(ref, "aug-ideal-power:")) {
    int s = parse_suffix(ref, "aug-ideal-power:");
    if (s < 0) fail(ErrorCode::UnknownSpec, "negative power");
    if (s == 0) return GModule::trivial(target);
    GModule i = over_square ? augmentation_ideal(g).ideal : left_augmentation_ideal(g).ideal;
    return tensor_power_diagonal(i, s);
  }
  if (starts_with(ref, "coinduced:")) {
    if (over_square) fail(ErrorCode::UnknownSpec, "coinduced modules are defined over G");
    int rep = parse_suffix(ref, "coinduced:");
    if (rep < 0 || rep >= g->order()) fail(ErrorCode::UnknownSpec, "class representative out of range");
    return coinduced_from_class(g, rep);
  }
  if (!looks_like_path(ref)) fail(ErrorCode::UnknownSpec, "unknown module " + ref);

  Json j = read_json_file(ref);
  if (!j.is_object() || !j.contains("rank") || !j.contains("action"))
    fail(ErrorCode::InvalidInput, "module JSON needs \"rank\" and \"action\"");
  if (j.contains("group")) {
    GroupPtr declared = j.at("group").is_object() ? group_from_json(j.at("group"))
                                                  : load_group(j.at("group").get<std::string>());
    if (!same_group(*declared, *target)) fail(ErrorCode::GroupMismatch, "module group differs from --group");
  }
  int rank = j.at("rank").get<int>();
  if (rank < 0) fail(ErrorCode::InvalidInput, "negative rank");
  Integer ch = j.contains("characteristic") ? integer_from_json(j.at("characteristic")) : Integer(0);
  const Json& act = j.at("action");
  std::vector<IntMatrix> action(target->order());
  std::vector<bool> given(target->order(), false);
  auto put = [&](int el, const Json& mat) {
    if (el < 0 || el >= target->order()) fail(ErrorCode::InvalidInput, "action element out of range");
    action[el] = matrix_from_json(mat, rank);
    given[el] = true;
  };
  if (act.is_object()) {
    for (auto it = act.begin(); it != act.end(); ++it) put(std::stoi(it.key()), it.value());
  } else if (act.is_array()) {
    for (std::size_t el = 0; el < act.size(); ++el) put(static_cast<int>(el), act[el]);
  } else {
    fail(ErrorCode::InvalidInput, "action must be an object or an array");
  }
  // Elements not listed are filled in from products of listed ones.
  given[target->identity()] = true;
  action[target->identity()] = IntMatrix::identity(rank);
  bool grew = true;
  while (grew) {
    grew = false;
    for (int a = 0; a < target->order(); ++a)
      for (int b = 0; b < target->order(); ++b)
        if (given[a] && given[b] && !given[target->mul(a, b)]) {
          action[target->mul(a, b)] = (action[a] * action[b]).reduced_mod(ch);
          given[target->mul(a, b)] = true;
          grew = true;
        }
  }
  for (bool b : given)
    if (!b) fail(ErrorCode::InvalidInput, "listed elements do not generate the group");
  return GModule(target, rank, std::move(action), ch);
}

Json resolution_to_json(const FreeResolution& r) {
  Json degrees = Json::array();
  for (int n = 0; n <= r.max_degree(); ++n) {
    Json bd = Json::array();
    if (n >= 1)
      for (int j = 0; j < r.rank(n); ++j) {
        Json terms = Json::array();
        for (const auto& t : r.boundary(n, j)) terms.push_back(Json::array({to_json(t.coeff), t.element, t.generator}));
        bd.push_back(terms);
      }
    degrees.push_back(Json{{"degree", n}, {"rank", r.rank(n)}, {"boundary", bd}});
  }
  return Json{{"group", group_to_json(*r.group())},
              {"flavor", r.flavor()},
              {"key", resolution_key(*r.group(), r.flavor(), r.max_degree())},
              {"degrees", degrees}};
}

ResolutionPtr resolution_from_json(const Json& j, const GroupPtr& g) {
  try {
    GroupPtr stored = group_from_json(j.at("group"));
    if (!same_group(*stored, *g) || stored->rows() != g->rows())
      fail(ErrorCode::GroupMismatch, "stored resolution is over another group");
    std::vector<int> ranks;
    std::vector<std::vector<FreeElement>> boundary;
    for (const auto& d : j.at("degrees")) {
      int n = d.at("degree").get<int>();
      if (n != static_cast<int>(ranks.size())) fail(ErrorCode::InvalidInput, "degrees out of order");
      ranks.push_back(d.at("rank").get<int>());
      std::vector<FreeElement> bd;
      for (const auto& terms : d.at("boundary")) {
        FreeElement e;
        for (const auto& t : terms) {
          int el = t.at(1).get<int>(), gen = t.at(2).get<int>();
          if (el < 0 || el >= g->order() || gen < 0 || n == 0 || gen >= ranks[n - 1])
            fail(ErrorCode::InvalidInput, "boundary term out of range");
          e.push_back({integer_from_json(t.at(0)), el, gen});
        }
        bd.push_back(std::move(e));
      }
      if (n >= 1 && static_cast<int>(bd.size()) != ranks.back())
        fail(ErrorCode::InvalidInput, "boundary count differs from rank");
      boundary.push_back(std::move(bd));
    }
    if (ranks.empty()) fail(ErrorCode::InvalidInput, "no degrees");
    return std::make_shared<const FreeResolution>(g, j.at("flavor").get<std::string>(), std::move(ranks),
                                                  std::move(boundary));
  } catch (const Json::exception& e) {
    fail(ErrorCode::InvalidInput, std::string("resolution JSON: ") + e.what());
  }
}

ResolutionPtr build_resolution(const GroupPtr& g, const std::string& flavor, int d_max) {
  if (flavor == "bar") return bar_resolution(g, d_max);
  if (flavor == "homogeneous") return homogeneous_resolution(g, d_max);
  if (flavor == "periodic") return periodic_resolution(g, d_max);
  if (flavor == "splice") return splice_resolution(g, d_max);
  if (flavor == "reduced") return reduced_resolution(g, d_max);
  if (flavor == "default") return default_resolution(g, d_max);
  fail(ErrorCode::UnknownSpec, "unknown resolution flavor " + flavor);
}

std::string ResolutionCache::from_env() {
  const char* v = std::getenv("TC_LAB_CACHE");
  return v ? std::string(v) : std::string();
}

std::string ResolutionCache::path_for(const GroupTable& g, const std::string& flavor, int d_max) const {
  return (fs::path(dir_) / (resolution_key(g, flavor, d_max) + ".json")).string();
}

ResolutionPtr ResolutionCache::get(const GroupPtr& g, const std::string& flavor, int d_max) const {
  if (!enabled()) return build_resolution(g, flavor, d_max);
  std::string path = path_for(*g, flavor, d_max);
  if (fs::exists(path)) {
    try {
      ResolutionPtr r = resolution_from_json(read_json_file(path), g);
      if (r->max_degree() != d_max) fail(ErrorCode::InvalidInput, "stored degree range differs");
      r->verify(d_max);
      return r;
    } catch (const Error& e) {
      std::cerr << "warning: ignoring cache entry " << path << " (" << e.what() << "); recomputing\n";
    }
  }
  ResolutionPtr r = build_resolution(g, flavor, d_max);
  std::error_code ec;
  fs::create_directories(dir_, ec);
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp);
    if (out) out << canonical_dump(resolution_to_json(*r));
  }
  fs::rename(tmp, path, ec);
  if (ec) std::cerr << "warning: cannot write cache entry " << path << "\n";
  return r;
}

std::string canonical_dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace tclab
