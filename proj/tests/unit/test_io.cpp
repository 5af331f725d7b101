#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "tclab/errors.hpp"
#include "tclab/io.hpp"

using namespace tclab;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("tclab-test-" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

}  // namespace

TEST_CASE("integer encoding") {
  CHECK(to_json(Integer(-7)) == Json(-7));
  Integer big = Integer::parse("123456789012345678901234567890");
  CHECK(to_json(big).is_string());
  CHECK(integer_from_json(to_json(big)) == big);
}

TEST_CASE("group JSON round trip") {
  auto s3 = named_group("s3");
  GroupPtr back = group_from_json(group_to_json(*s3));
  CHECK(back->rows() == s3->rows());
  CHECK_THROWS_AS(group_from_json(Json{{"order", 2}, {"table", {{0, 1}, {1, 1}}}}), Error);
  CHECK_THROWS_AS(group_from_json(Json{{"order", 2}}), Error);
}

TEST_CASE("module shortcuts and module files") {
  auto c3 = named_group("c3");
  CHECK(load_module("trivial-Z", c3, false).rank() == 1);
  CHECK(load_module("trivial-Fp:5", c3, false).characteristic() == Integer(5));
  CHECK(load_module("group-ring", c3, true).group()->order() == 9);
  CHECK(load_module("aug-ideal", c3, true) == augmentation_ideal(c3).ideal);
  CHECK(load_module("aug-ideal-power:2", c3, false).rank() == 4);
  CHECK_THROWS_AS(load_module("sign", c3, false), Error);

  fs::path dir = scratch_dir("module");
  fs::path file = dir / "sign.json";
  std::ofstream(file) << R"({"group": "c2", "rank": 1, "action": {"1": [[-1]]}})";
  GModule sign = load_module(file.string(), named_group("c2"), false);
  CHECK(sign.action(1).at(0, 0) == Integer(-1));
  CHECK_THROWS_AS(load_module(file.string(), c3, false), Error);
  fs::remove_all(dir);
}

TEST_CASE("resolution cache reloads identically and survives corruption") {
  auto s3 = named_group("s3");
  fs::path dir = scratch_dir("cache");
  ResolutionCache cache(dir.string());
  ResolutionPtr first = cache.get(s3, "bar", 3);
  std::string path = cache.path_for(*s3, "bar", 3);
  CHECK(path != cache.path_for(*s3, "bar", 2));
  REQUIRE(fs::exists(path));
  ResolutionPtr again = cache.get(s3, "bar", 3);
  CHECK(canonical_dump(resolution_to_json(*again)) == canonical_dump(resolution_to_json(*first)));
  CHECK(again.get() != first.get());

  std::ofstream(path) << "{ not json";
  ResolutionPtr rebuilt = cache.get(s3, "bar", 3);
  CHECK(canonical_dump(resolution_to_json(*rebuilt)) == canonical_dump(resolution_to_json(*first)));
  fs::remove_all(dir);
}
