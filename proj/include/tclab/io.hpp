#pragma once

#include <string>

#include "json.hpp"
#include "tclab/modules.hpp"
#include "tclab/resolution.hpp"

namespace tclab {

using Json = nlohmann::json;

// Integers as JSON numbers when they fit in 64 bits, decimal strings otherwise.
Json to_json(const Integer& x);
Json to_json(const Vec& v);
Json to_json(const IntMatrix& m);  // dense rows
Integer integer_from_json(const Json& j);

// {"order": m, "table": [[int]]}
GroupPtr group_from_json(const Json& j, const std::string& name = "");
Json group_to_json(const GroupTable& g);
// Shipped name ("c3", "s3", "c2xc2", ...) or a path to a group JSON file.
GroupPtr load_group(const std::string& ref);

// Shortcuts "trivial-Z", "trivial-Fp:p", "group-ring", "aug-ideal", "aug-ideal-power:s",
// "coinduced:rep", or a path to {"group": ref, "rank": r, "action": {"g": matrix}}.
// With over_square the shortcuts name the G x G modules (two-sided group ring and I).
GModule load_module(const std::string& ref, const GroupPtr& g, bool over_square);

Json resolution_to_json(const FreeResolution& r);
ResolutionPtr resolution_from_json(const Json& j, const GroupPtr& g);
ResolutionPtr build_resolution(const GroupPtr& g, const std::string& flavor, int d_max);

// Content-addressed store keyed by resolution_key; a corrupt or mismatched file is
// reported on stderr and rebuilt.
class ResolutionCache {
 public:
  explicit ResolutionCache(std::string dir) : dir_(std::move(dir)) {}
  // Directory from TC_LAB_CACHE, or empty when unset.
  static std::string from_env();
  std::string path_for(const GroupTable& g, const std::string& flavor, int d_max) const;
  ResolutionPtr get(const GroupPtr& g, const std::string& flavor, int d_max) const;
  bool enabled() const { return !dir_.empty(); }

 private:
  std::string dir_;
};

// Dumps with sorted keys and a trailing newline.
std::string canonical_dump(const Json& j);

}  // namespace tclab
