// tc-lab: command-line front end. Exit 0 on success, 2 when a check fails, 1 on usage errors.

#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "tclab/errors.hpp"
#include "tclab/reports.hpp"
#include "tclab/verify.hpp"

using namespace tclab;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitCheck = 2;

bool is_check_failure(ErrorCode c) {
  switch (c) {
    case ErrorCode::CrossCheckFailed:
    case ErrorCode::ConversionFailed:
    case ErrorCode::ChainMapCheckFailed:
    case ErrorCode::ExactnessCheckFailed:
    case ErrorCode::IdentityCheckFailed:
    case ErrorCode::CompositionNotZero:
    case ErrorCode::NotExact:
      return true;
    default:
      return false;
  }
}

Vec parse_coordinates(const std::string& text) {
  Vec out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) fail(ErrorCode::InvalidInput, "empty entry in --class");
    out.push_back(Integer::parse(item));
  }
  return out;
}

void print_text(const Json& j, std::ostream& out, const std::string& indent = "") {
  for (auto it = j.begin(); it != j.end(); ++it) {
    const Json& v = it.value();
    bool nested = (v.is_object() && !v.empty()) || (v.is_array() && !v.empty() && v.front().is_object());
    if (!nested) {
      out << indent << it.key() << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
    } else if (v.is_object()) {
      out << indent << it.key() << ":\n";
      print_text(v, out, indent + "  ");
    } else {
      out << indent << it.key() << ":\n";
      for (const auto& item : v) {
        out << indent << "  -\n";
        print_text(item, out, indent + "    ");
      }
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Algebraic topological complexity lab"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "text";
  std::string cache_dir;
  std::string level = "fast";
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--cache", cache_dir, "Resolution cache directory (default: $TC_LAB_CACHE)");
  app.add_option("--level", level, "Verification level")->check(CLI::IsMember({"fast", "exhaustive"}));

  std::string group, module = "trivial-Z", coeff = "trivial-Z", space, flavor = "default", suite, class_text;
  int degree = 1, s_max = 2, r_max = 2, i_max = 2, n_max = 2;

  auto* cohomology = app.add_subcommand("cohomology", "H^n(G, M)");
  cohomology->add_option("--group", group, "Group name or JSON file")->required();
  cohomology->add_option("--module", module, "Module shortcut or JSON file");
  cohomology->add_option("--degree", degree, "Degree n")->required();
  cohomology->add_option("--flavor", flavor, "bar, homogeneous, periodic, splice, reduced or default");

  auto* ext = app.add_subcommand("ext", "Ext^r(M, A) over Z[G]");
  ext->add_option("--group", group)->required();
  ext->add_option("--module", module)->required();
  ext->add_option("--coeff", coeff)->required();
  ext->add_option("--degree", degree)->required();

  auto* canonical = app.add_subcommand("canonical", "Canonical class v and its restrictions");
  canonical->add_option("--group", group)->required();

  auto* power = app.add_subcommand("power", "v^n through the explicit cocycle f_n");
  power->add_option("--group", group)->required();
  power->add_option("--degree", degree, "Power n")->required();

  auto* obstructions = app.add_subcommand("obstructions", "Obstructions to essentiality of a class");
  obstructions->add_option("--group", group)->required();
  obstructions->add_option("--coeff", coeff, "Coefficients over G x G")->required();
  obstructions->add_option("--degree", degree)->required();
  obstructions->add_option("--class", class_text, "Comma-separated coordinates in H^n(G x G, A)");

  auto* essential = app.add_subcommand("essential", "Essentiality of each generator of H^n(G x G, A)");
  essential->add_option("--group", group)->required();
  essential->add_option("--coeff", coeff)->required();
  essential->add_option("--degree", degree)->required();

  auto* e0 = app.add_subcommand("e0-check", "E_0 term against the centralizer decomposition");
  e0->add_option("--group", group)->required();
  e0->add_option("--coeff", coeff);
  e0->add_option("--s-max", s_max)->check(CLI::Range(1, 4));
  e0->add_option("--r-max", r_max)->check(CLI::Range(0, 3));

  auto* phi = app.add_subcommand("phi-check", "Phi/Psi and Gamma isomorphisms");
  phi->add_option("--group", group)->required();
  phi->add_option("--coeff", coeff);
  phi->add_option("--i-max", i_max)->check(CLI::Range(0, 3));

  auto* zd = app.add_subcommand("zdcl", "Zero-divisor cup length of a shipped space");
  zd->add_option("--space", space)->required();

  auto* tc = app.add_subcommand("tc-report", "TC bounds for a space, or the algebraic bound for a group");
  auto* tc_space = tc->add_option("--space", space);
  auto* tc_group = tc->add_option("--group", group);
  tc->add_option("--coeff", coeff);
  tc->add_option("--n-max", n_max)->check(CLI::Range(1, 4));
  tc_space->excludes(tc_group);

  auto* verify = app.add_subcommand("verify", "Run acceptance suites");
  verify->add_option("--suite", suite, "Suite name or all")->required();
  verify->add_option("--group", group, "Restrict group-indexed suites to one group");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    ResolutionCache cache(cache_dir.empty() ? ResolutionCache::from_env() : cache_dir);
    Json report;
    if (*verify) {
      if (!is_suite(suite)) {
        std::string names;
        for (const auto& n : suite_names()) names += " " + n;
        std::cerr << "error: unknown suite " << suite << "; choose all or one of:" << names << "\n";
        return kExitUsage;
      }
      SuiteOptions opt;
      if (!group.empty()) opt.group = group;
      opt.exhaustive = level == "exhaustive";
      std::vector<SuiteResult> results = run_suites(suite, opt);
      report = suites_json(results);
      if (format == "json") {
        std::cout << canonical_dump(report);
      } else {
        for (const auto& r : results) std::cout << r.to_text();
      }
      return report["passed"].get<bool>() ? kExitOk : kExitCheck;
    }
    if (*cohomology) report = cohomology_report(group, module, degree, flavor, cache);
    if (*ext) report = ext_report(group, module, coeff, degree, cache);
    if (*canonical) report = canonical_report(group);
    if (*power) report = power_report(group, degree);
    if (*obstructions)
      report = obstructions_report(group, coeff, degree,
                                   class_text.empty() ? std::nullopt : std::optional<Vec>(parse_coordinates(class_text)));
    if (*essential) report = essential_report(group, coeff, degree);
    if (*e0) report = e0_report(group, coeff, s_max, r_max);
    if (*phi) report = phi_report(group, coeff, i_max);
    if (*zd) report = zdcl_report(space);
    if (*tc) {
      if (space.empty() == group.empty()) {
        std::cerr << "error: tc-report needs exactly one of --space or --group\n";
        return kExitUsage;
      }
      report = space.empty() ? tc_group_report(group, coeff, n_max) : tc_space_report(space);
    }
    if (format == "json") {
      std::cout << canonical_dump(report);
    } else {
      print_text(report, std::cout);
    }
    return report.value("ok", true) ? kExitOk : kExitCheck;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return is_check_failure(e.code()) ? kExitCheck : kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
