#include "tclab/reports.hpp"

#include "tclab/errors.hpp"
#include "tclab/graded.hpp"
#include "tclab/obstruction.hpp"

namespace tclab {

namespace {

Json class_json(const CohomologyClass& u) {
  CohomologyPtr h = u.cohomology_group();
  return Json{{"group", group_report(h->group())}, {"coordinates", to_json(u.coordinates())}, {"zero", u.is_zero()}};
}

Json opt_int(const std::optional<int>& v) { return v ? Json(*v) : Json(nullptr); }

// The class with the given coordinates in H^n(G x G, A), on the couple's resolution.
CohomologyClass couple_class(const CouplePtr& c, int n, const Vec& coords) {
  CohomologyPtr h = c->d0(n, 0);
  if (coords.size() != h->homology.generator_count())
    fail(ErrorCode::InvalidInput, "class needs " + std::to_string(h->homology.generator_count()) + " coordinates");
  auto u = CohomologyClass::from_coordinates(h, coords);
  return CohomologyClass(u.resolution(), c->coefficients(), n, u.cocycle());
}

Json obstruction_json(const ObstructionReport& rep) {
  Json obs = Json::array();
  for (const auto& o : rep.obstructions)
    obs.push_back(Json{{"s", o.s},
                       {"page", o.page},
                       {"bidegree", {o.bidegree.first, o.bidegree.second}},
                       {"value", to_json(o.value)},
                       {"zero", o.zero}});
  Json j{{"class", to_json(rep.class_coordinates)},
         {"degree", rep.degree},
         {"obstructions", obs},
         {"verdict", rep.verdict},
         {"zero_divisor", rep.zero_divisor},
         {"certificate", rep.certificate ? to_json(rep.certificate->matrix()) : Json(nullptr)},
         {"certificate_verified", rep.certificate_verified}};
  j["blocked_at"] = rep.blocked_at >= 0 ? Json(rep.blocked_at) : Json(nullptr);
  j["ok"] = rep.verdict != "unverified";
  return j;
}

}  // namespace

Json group_report(const PresentedAbelianGroup& a) {
  return Json{{"invariant_factors", to_json(a.invariant_factors())}, {"description", a.describe()}};
}

Json cohomology_report(const std::string& group, const std::string& module, int degree, const std::string& flavor,
                       const ResolutionCache& cache) {
  if (degree < 0) fail(ErrorCode::DegreeOutOfRange, "degree must be nonnegative");
  GroupPtr g = load_group(group);
  GModule m = load_module(module, g, false);
  ResolutionPtr r = cache.get(g, flavor, std::max(degree + 1, 1));
  CohomologyPtr h = cohomology(r, m, degree);
  return Json{{"group", group},        {"module", module},
              {"degree", degree},      {"flavor", flavor},
              {"resolution", resolution_key(*g, flavor, r->max_degree())},
              {"cohomology", group_report(h->group())},
              {"ok", true}};
}

Json ext_report(const std::string& group, const std::string& module, const std::string& coeff, int degree,
                const ResolutionCache& cache) {
  if (degree < 0) fail(ErrorCode::DegreeOutOfRange, "degree must be nonnegative");
  GroupPtr g = load_group(group);
  GModule m = load_module(module, g, false);
  GModule a = load_module(coeff, g, false);
  ResolutionPtr r = cache.get(g, "default", std::max(degree + 1, 1));
  CohomologyPtr h = cohomology(r, hom_z_module(m, a), degree);
  return Json{{"group", group}, {"module", module}, {"coeff", coeff}, {"degree", degree},
              {"ext", group_report(h->group())}, {"ok", true}};
}

Json canonical_report(const std::string& group) {
  GroupPtr g = load_group(group);
  CanonicalClassBundle b = canonical_cocycle(g);
  bool restriction = b.b == berstein_class_direct(g);
  bool diagonal = is_zero(diagonal_restriction_cocycle(g));
  return Json{{"group", group},
              {"v", class_json(b.v_bar)},
              {"b", class_json(b.b)},
              {"claims",
               {{{"claim", "v restricted to G x 1 equals b"}, {"holds", restriction}},
                {{"claim", "v restricted to the diagonal is zero as a cocycle"}, {"holds", diagonal}}}},
              {"ok", restriction && diagonal}};
}

Json power_report(const std::string& group, int n) {
  if (n < 1) fail(ErrorCode::DegreeOutOfRange, "power must be positive");
  GroupPtr g = load_group(group);
  // canonical_power throws CrossCheckFailed when f_n and the cup power disagree.
  CohomologyClass fn = canonical_power(g, n);
  return Json{{"group", group},
              {"degree", n},
              {"class", class_json(fn)},
              {"claims", {{{"claim", "f_n equals the n-fold cup power of v"}, {"holds", true}}}},
              {"ok", true}};
}

Json obstructions_report(const std::string& group, const std::string& coeff, int degree,
                         const std::optional<Vec>& coordinates) {
  if (degree < 0) fail(ErrorCode::DegreeOutOfRange, "degree must be nonnegative");
  GroupPtr g = load_group(group);
  GModule a = load_module(coeff, g, true);
  CouplePtr c = ExactCouple::build(g, a, std::max(degree, 1));
  CohomologyClass alpha;
  std::string label;
  if (coordinates) {
    alpha = couple_class(c, degree, *coordinates);
    label = "given";
  } else {
    if (degree < 1) fail(ErrorCode::InvalidInput, "give --class for degree 0");
    GModule in = tensor_power_diagonal(augmentation_ideal(g).ideal, degree);
    if (!(a == in)) fail(ErrorCode::InvalidInput, "without --class the coefficients must be I^n (aug-ideal-power:n)");
    alpha = degree == 1 ? canonical_cocycle(g).v_bar : canonical_power(g, degree);
    label = degree == 1 ? "v" : "v^" + std::to_string(degree);
  }
  Json j = obstruction_json(obstruction_sequence(c, alpha));
  j["group"] = group;
  j["coeff"] = coeff;
  j["class_label"] = label;
  return j;
}

Json essential_report(const std::string& group, const std::string& coeff, int degree) {
  if (degree < 1) fail(ErrorCode::DegreeOutOfRange, "degree must be positive");
  GroupPtr g = load_group(group);
  GModule a = load_module(coeff, g, true);
  CouplePtr c = ExactCouple::build(g, a, degree);
  CohomologyPtr h = c->d0(degree, 0);
  Json list = Json::array();
  bool ok = true;
  for (std::size_t i = 0; i < h->homology.generator_count(); ++i) {
    Json r = obstruction_json(obstruction_sequence(c, couple_class(c, degree, unit_vec(h->homology.generator_count(), i))));
    ok = ok && r["ok"].get<bool>();
    list.push_back(r);
  }
  return Json{{"group", group},
              {"coeff", coeff},
              {"degree", degree},
              {"cohomology", group_report(h->group())},
              {"generators", list},
              {"ok", ok}};
}

Json e0_report(const std::string& group, const std::string& coeff, int s_max, int r_max) {
  GroupPtr g = load_group(group);
  GModule a = load_module(coeff, g, true);
  Json rows = Json::array();
  bool ok = true;
  for (int s = 1; s <= s_max; ++s)
    for (int r = 0; r <= r_max; ++r) {
      SpliceLevel lv = splice_level(g, a, s);
      PresentedAbelianGroup direct = ext_via_hom(lv.ring_is, a, r, r + 1)->group();
      E0Oracle o = e0_oracle(g, a, r, s);
      Json factors = Json::array();
      for (const auto& f : o.factors)
        factors.push_back(Json{{"representative", f.representative},
                               {"centralizer", f.centralizer},
                               {"invariant_factors", to_json(f.invariant_factors)}});
      bool agree = direct.isomorphic_to(o.product);
      ok = ok && agree;
      rows.push_back(Json{{"r", r},
                          {"s", s},
                          {"direct", group_report(direct)},
                          {"product", group_report(o.product)},
                          {"classes", factors},
                          {"agree", agree}});
    }
  return Json{{"group", group},
              {"coeff", coeff},
              {"claim", "E_0^{r,s} is the product over joint classes C of H^r(N_C, A|N_C)"},
              {"checks", rows},
              {"ok", ok}};
}

Json phi_report(const std::string& group, const std::string& coeff, int i_max) {
  GroupPtr g = load_group(group);
  GModule a = load_module(coeff, g, true);
  PhiReport p = phi_isomorphism(a, a);
  Json gammas = Json::array();
  bool ok = p.mutually_inverse;
  for (int i = 0; i <= i_max; ++i) {
    AbHom gm = gamma_isomorphism(g, a, i);
    bool iso = gm.source().isomorphic_to(gm.target()) && gm.is_isomorphism();
    ok = ok && iso;
    gammas.push_back(
        Json{{"i", i}, {"source", group_report(gm.source())}, {"target", group_report(gm.target())}, {"isomorphism", iso}});
  }
  return Json{{"group", group},
              {"coeff", coeff},
              {"phi", {{"source_rank", p.source_rank}, {"target_rank", p.target_rank}, {"mutually_inverse", p.mutually_inverse}}},
              {"gamma", gammas},
              {"ok", ok}};
}

Json zdcl_report(const std::string& space) {
  ZdclResult z = zdcl(named_ring(space));
  Json witness = Json::array();
  for (const auto& w : z.witness) witness.push_back(w.describe());
  return Json{{"space", space}, {"zdcl", z.zdcl}, {"witness", witness}, {"product", z.product.describe()}, {"ok", true}};
}

Json tc_space_report(const std::string& space) {
  TcReport r = tc_report(space);
  Json witness = Json::array();
  for (const auto& w : r.z.witness) witness.push_back(w.describe());
  bool ok = !r.paper_value || *r.paper_value >= r.tc_lower;
  return Json{{"space", space},         {"zdcl", r.z.zdcl},           {"witness", witness},
              {"tc_lower", r.tc_lower}, {"tc_upper", opt_int(r.tc_upper)}, {"paper_value", opt_int(r.paper_value)},
              {"cd_source", r.cd_source}, {"verdict", r.verdict},      {"ok", ok}};
}

Json tc_group_report(const std::string& group, const std::string& coeff, int n_max) {
  GroupPtr g = load_group(group);
  TcBound b = tc_lower_bound(g, load_module(coeff, g, true), n_max);
  Json j{{"group", group}, {"coeff", coeff}, {"n_max", n_max}, {"tc_lower", b.bound}, {"formal", b.formal}, {"ok", true}};
  j["bidegree"] = b.n >= 0 ? Json{b.n, 0} : Json(nullptr);
  j["k"] = b.k >= 0 ? Json(b.k) : Json(nullptr);
  return j;
}

}  // namespace tclab
