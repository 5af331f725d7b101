#pragma once

#include <optional>
#include <string>

#include "tclab/io.hpp"

namespace tclab {

// JSON reports behind the command-line subcommands. Every report carries
// "ok": false when a check it performs fails.

Json group_report(const PresentedAbelianGroup& a);

// H^n(G, M) on a resolution of the given flavor, through the cache when enabled.
Json cohomology_report(const std::string& group, const std::string& module, int degree, const std::string& flavor,
                       const ResolutionCache& cache);
// Ext^r_{Z[G]}(M, A) = H^r(G, Hom(M, A)).
Json ext_report(const std::string& group, const std::string& module, const std::string& coeff, int degree,
                const ResolutionCache& cache);
Json canonical_report(const std::string& group);
Json power_report(const std::string& group, int n);
// Obstructions j_s(alpha) for alpha in H^n(G x G, A). Without coordinates the class is
// v^n, which needs A = I^n.
Json obstructions_report(const std::string& group, const std::string& coeff, int degree,
                         const std::optional<Vec>& coordinates);
Json essential_report(const std::string& group, const std::string& coeff, int degree);
Json e0_report(const std::string& group, const std::string& coeff, int s_max, int r_max);
Json phi_report(const std::string& group, const std::string& coeff, int i_max);
Json zdcl_report(const std::string& space);
Json tc_space_report(const std::string& space);
Json tc_group_report(const std::string& group, const std::string& coeff, int n_max);

}  // namespace tclab
