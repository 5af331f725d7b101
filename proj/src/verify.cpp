#include "tclab/verify.hpp"

#include <functional>
#include <random>
#include <sstream>

#include "tclab/errors.hpp"
#include "tclab/graded.hpp"
#include "tclab/obstruction.hpp"

namespace tclab {

namespace {

using Check = std::function<std::string()>;  // empty string on success

void run_instance(SuiteResult& out, const std::string& id, const Check& check) {
  InstanceResult r;
  r.instance = id;
  try {
    r.detail = check();
    r.ok = r.detail.empty();
  } catch (const Error& e) {
    r.detail = e.what();
  } catch (const std::exception& e) {
    r.detail = std::string("unexpected: ") + e.what();
  }
  out.instances.push_back(std::move(r));
}

std::string factors_str(const Vec& v) {
  std::ostringstream s;
  s << "[";
  for (std::size_t i = 0; i < v.size(); ++i) s << (i ? "," : "") << v[i].str();
  s << "]";
  return s.str();
}

std::vector<std::string> groups_for(const SuiteOptions& opt, std::vector<std::string> defaults) {
  if (opt.group) return {*opt.group};
  return defaults;
}

// Coefficients over G x G: trivial Z or the bimodule I.
GModule square_coeff(const GroupPtr& g, bool ideal) {
  return ideal ? augmentation_ideal(g).ideal : GModule::trivial(square_of(g));
}

const char* coeff_name(bool ideal) { return ideal ? "I" : "Z"; }

// All elements of a diagonal presentation; free coordinates range over [-2, 2].
std::vector<Vec> enumerate_elements(const Vec& factors) {
  std::vector<Vec> out{Vec{}};
  for (const auto& f : factors) {
    std::vector<Integer> values;
    if (f.is_zero()) {
      for (int v = -2; v <= 2; ++v) values.push_back(v);
    } else {
      long long d = *f.to_int64();
      for (long long v = 0; v < d; ++v) values.push_back(v);
    }
    std::vector<Vec> next;
    for (const auto& prefix : out)
      for (const auto& v : values) {
        Vec x = prefix;
        x.push_back(v);
        next.push_back(std::move(x));
      }
    out = std::move(next);
  }
  return out;
}

std::string coords_str(const Vec& v) { return factors_str(v); }

// ---------------------------------------------------------------------------

SuiteResult tc_values(const SuiteOptions&) {
  SuiteResult out{"tc-values", 1, "zdcl of H*(X) and tc_lower = zdcl + 1 for circle, tori, wedges of circles, surfaces", {}};
  struct Target {
    std::string space;
    int zdcl;
    std::optional<int> paper;
  };
  std::vector<Target> targets{{"circle", 1, 2}};
  for (int mu = 2; mu <= 4; ++mu) targets.push_back({"wedge:" + std::to_string(mu), 2, 3});
  for (int g = 2; g <= 3; ++g) targets.push_back({"surface:" + std::to_string(g), 4, 5});
  for (int n = 1; n <= 3; ++n) targets.push_back({"torus:" + std::to_string(n), n, std::nullopt});
  for (const auto& t : targets)
    run_instance(out, t.space, [&]() -> std::string {
      TcReport r = tc_report(t.space);
      if (r.z.zdcl != t.zdcl) return "zdcl " + std::to_string(r.z.zdcl) + ", expected " + std::to_string(t.zdcl);
      if (r.tc_lower != t.zdcl + 1) return "tc_lower " + std::to_string(r.tc_lower);
      if (r.z.product.is_zero()) return "witness product vanishes";
      if (t.paper && (!r.paper_value || *r.paper_value != *t.paper || r.tc_lower != *t.paper))
        return "tc_lower differs from the quoted value";
      return "";
    });
  return out;
}

SuiteResult e0_decomposition(const SuiteOptions& opt) {
  SuiteResult out{"e0-decomposition", 2,
                  "H^r(GxG, Hom(Z[G] (x) I^s, A)) = product over joint classes C of H^r(N_C, A|N_C)", {}};
  for (const auto& name : groups_for(opt, {"c2", "c3", "c4", "s3"}))
    for (int s = 1; s <= 2; ++s)
      for (int r = 0; r <= 2; ++r)
        for (bool ideal : {false, true}) {
          std::string id = name + " s=" + std::to_string(s) + " r=" + std::to_string(r) + " A=" + coeff_name(ideal);
          run_instance(out, id, [&]() -> std::string {
            GroupPtr g = load_group(name);
            GModule a = square_coeff(g, ideal);
            SpliceLevel lv = splice_level(g, a, s);
            Vec direct = ext_via_hom(lv.ring_is, a, r, r + 1)->group().invariant_factors();
            Vec oracle = e0_oracle(g, a, r, s).product.invariant_factors();
            if (direct != oracle) return "direct " + factors_str(direct) + " vs product " + factors_str(oracle);
            return "";
          });
        }
  return out;
}

SuiteResult canonical_identities(const SuiteOptions& opt) {
  SuiteResult out{"canonical-identities", 3,
                  "v restricted to G x 1 is b; v restricted to the diagonal is zero as a cocycle; f_n = v^n", {}};
  for (const auto& name : groups_for(opt, {"trivial", "c2", "c3", "c4", "c5", "c6", "c2xc2", "s3", "d4", "q8"})) {
    run_instance(out, name + " restriction to G x 1", [&]() -> std::string {
      GroupPtr g = load_group(name);
      return canonical_cocycle(g).b == berstein_class_direct(g) ? "" : "restriction differs from b";
    });
    run_instance(out, name + " restriction to the diagonal", [&]() -> std::string {
      return is_zero(diagonal_restriction_cocycle(load_group(name))) ? "" : "diagonal cocycle is nonzero";
    });
  }
  // f_n against cup powers on C2 and C3 only; larger squares exceed the cochain size cap.
  for (const auto& name : groups_for(opt, {"c2", "c3"})) {
    if (name != "c2" && name != "c3") continue;
    for (int n = 1; n <= 3; ++n)
      run_instance(out, name + " f_" + std::to_string(n), [&]() -> std::string {
        GroupPtr g = load_group(name);
        CohomologyClass fn = canonical_power(g, n);
        CohomologyClass power = canonical_cocycle(g).v_bar;
        for (int k = 2; k <= n; ++k) power = cup_product(power, canonical_cocycle(g).v_bar);
        if (!(power == fn)) return "f_n differs from the cup power";
        if (fn.is_zero()) return "f_n vanishes";
        return "";
      });
  }
  return out;
}

SuiteResult bockstein(const SuiteOptions& opt) {
  SuiteResult out{"bockstein", 4, "i_0(u) = -eps ev_*(v cup u) with one fixed sign eps", {}};
  const SignPin& pin = global_sign();
  std::mt19937_64 rng(0x7c1ab);
  for (const auto& name : groups_for(opt, {"c2", "c3"}))
    for (bool ideal : {false, true})
      for (int r = 0; r <= 1; ++r)
        for (int s = 0; s <= 1; ++s)
          for (int sample = 0; sample < (opt.exhaustive ? 6 : 2); ++sample) {
            // Draw before the instance runs so the stream does not depend on failures.
            std::vector<std::uint64_t> draws(8);
            for (auto& d : draws) d = rng();
            std::string id = name + " A=" + coeff_name(ideal) + " r=" + std::to_string(r) + " s=" + std::to_string(s) +
                             " #" + std::to_string(sample);
            run_instance(out, id, [&]() -> std::string {
              GroupPtr g = load_group(name);
              GModule a = square_coeff(g, ideal);
              SpliceLevel lv = splice_level(g, a, s);
              CohomologyPtr h = cohomology(default_resolution(square_of(g), r + 2), lv.hom_is1, r);
              const Vec& f = h->homology.factors();
              Vec c(f.size());
              bool nonzero = false;
              for (std::size_t i = 0; i < f.size(); ++i) {
                std::uint64_t d = draws[i % draws.size()] >> (i / draws.size());
                c[i] = f[i].is_zero() ? Integer(static_cast<long long>(d % 7) - 3)
                                      : Integer(static_cast<long long>(d % static_cast<std::uint64_t>(*f[i].to_int64())));
                nonzero = nonzero || !c[i].is_zero();
              }
              if (!nonzero && !c.empty()) c[0] = 1;
              CohomologyClass u = CohomologyClass::from_coordinates(h, c);
              BocksteinCheck b = bockstein_via_v(a, u, s, pin.epsilon);
              if (!b.agree) return "classes differ at u = " + coords_str(c);
              return "";
            });
          }
  return out;
}

SuiteResult kappa(const SuiteOptions& opt) {
  SuiteResult out{"kappa", 5, "d kappa_j = kappa_{j-1} d and (eps (x) 1) kappa_n = f_n on every generator", {}};
  for (const auto& name : groups_for(opt, {"c2", "c3", "c4", "c5", "c6", "c2xc2", "s3"}))
    run_instance(out, name + " n=3", [&]() -> std::string {
      KappaReport r = kappa_chain_map(load_group(name), 3);
      if (!r.exhaustive) return "only sampled";
      if (r.tuples_checked == 0) return "no generators checked";
      return "";
    });
  return out;
}

SuiteResult degree_one(const SuiteOptions& opt) {
  SuiteResult out{"degree-one-essential", 6,
                  "a class in H^1(GxG, A) is essential iff it is a zero-divisor; mu_*(v) reproduces it", {}};
  for (const auto& name : groups_for(opt, {"c2", "c3"}))
    for (bool ideal : {true, false}) {
      GroupPtr g;
      CouplePtr c;
      CohomologyPtr h;
      std::string prefix = name + " A=" + coeff_name(ideal);
      try {
        g = load_group(name);
        c = ExactCouple::build(g, square_coeff(g, ideal), 1);
        h = c->d0(1, 0);
      } catch (const Error& e) {
        run_instance(out, prefix, [&]() -> std::string { return e.what(); });
        continue;
      }
      for (const Vec& coords : enumerate_elements(h->homology.factors()))
        run_instance(out, prefix + " " + coords_str(coords), [&]() -> std::string {
          auto u = CohomologyClass::from_coordinates(h, coords);
          CohomologyClass alpha(u.resolution(), c->coefficients(), 1, u.cocycle());
          ObstructionReport rep = obstruction_sequence(c, alpha);
          bool essential = rep.verdict == "essential";
          if (essential != rep.zero_divisor) return "verdict " + rep.verdict + " disagrees with the zero-divisor test";
          if (essential && (!rep.certificate || !rep.certificate_verified)) return "certificate missing";
          if (essential && !(pushforward(*rep.certificate, canonical_cocycle(g).v_bar) == alpha))
            return "certificate does not reproduce the class";
          return "";
        });
    }
  return out;
}

SuiteResult universality(const SuiteOptions& opt) {
  SuiteResult out{"universality", 7, "every alpha in H^n(G, A) is mu_*(b^n) for some mu : I^n -> A", {}};
  for (const auto& name : groups_for(opt, {"c2", "c3"}))
    for (bool ideal : {false, true})
      for (int n = 0; n <= 2; ++n) {
        std::string prefix = name + " A=" + coeff_name(ideal) + " n=" + std::to_string(n);
        CohomologyPtr h;
        GroupPtr g;
        try {
          g = load_group(name);
          GModule a = ideal ? left_augmentation_ideal(g).ideal : GModule::trivial(g);
          h = cohomology(default_resolution(g, 3), a, n);
        } catch (const Error& e) {
          run_instance(out, prefix, [&]() -> std::string { return e.what(); });
          continue;
        }
        for (const Vec& coords : enumerate_elements(h->homology.factors()))
          run_instance(out, prefix + " " + coords_str(coords), [&]() -> std::string {
            CohomologyClass alpha = CohomologyClass::from_coordinates(h, coords);
            ModuleMap mu = universality_mu(alpha);
            CohomologyClass bn = n == 0 ? CohomologyClass(bar_resolution(g, 1), GModule::trivial(g), 0, Vec{1})
                                        : berstein_power(g, n);
            return pushforward(mu, bn) == alpha ? "" : "pushforward differs";
          });
      }
  return out;
}

SuiteResult phi_gamma(const SuiteOptions& opt) {
  SuiteResult out{"phi-gamma", 8,
                  "Hom_{GxG}(Z[G] (x) M, N) = Hom_G(M~, N~) and H^i(GxG, Hom(Z[G], A)) = H^i(G, A~)", {}};
  for (const auto& name : groups_for(opt, {"c2", "c3", "s3"})) {
    for (bool m_ideal : {false, true})
      for (bool n_ideal : {false, true})
        run_instance(out, name + " Phi M=" + coeff_name(m_ideal) + " N=" + coeff_name(n_ideal), [&]() -> std::string {
          GroupPtr g = load_group(name);
          PhiReport p = phi_isomorphism(square_coeff(g, m_ideal), square_coeff(g, n_ideal));
          if (p.source_rank != p.target_rank) return "ranks differ";
          return p.mutually_inverse ? "" : "Phi and Psi are not mutually inverse";
        });
    for (bool ideal : {false, true})
      for (int i = 0; i <= 2; ++i)
        run_instance(out, name + " Gamma A=" + coeff_name(ideal) + " i=" + std::to_string(i), [&]() -> std::string {
          GroupPtr g = load_group(name);
          AbHom gm = gamma_isomorphism(g, square_coeff(g, ideal), i);
          if (!gm.source().isomorphic_to(gm.target()))
            return "invariant factors " + gm.source().describe() + " vs " + gm.target().describe();
          return gm.is_isomorphism() ? "" : "Gamma is not an isomorphism";
        });
  }
  return out;
}

SuiteResult abelian(const SuiteOptions&) {
  SuiteResult out{"abelian", 9,
                  "prod_i (x_i (x) 1 - 1 (x) x_i) expands over subsets K with unit coefficients; x (x) x is a "
                  "zero-divisor that is not essential",
                  {}};
  for (int n = 1; n <= 4; ++n)
    run_instance(out, "N=" + std::to_string(n), [&]() -> std::string {
      AlphaExpansion e = expand_alpha(n);
      if (!(e.product == e.formula)) return "product differs from the subset sum";
      if (e.terms != (std::size_t{1} << n)) return "term count " + std::to_string(e.terms);
      if (!e.unit_coefficients) return "coefficient other than +-1";
      return "";
    });
  run_instance(out, "x (x) x, N=1", [&]() -> std::string {
    RingMap phi = phi_pullback(1);
    EssentialVerdict v = abelian_essential_test(1, RingElement::basis(phi.target, phi.target->pair(1, 1)));
    if (!v.zero_divisor) return "not a zero-divisor";
    if (v.essential) return "classified as essential";
    return "";
  });
  return out;
}

SuiteResult symplectic(const SuiteOptions&) {
  SuiteResult out{"symplectic", 10, "ubar^{2n} = +-C(2n, n) u^n (x) u^n", {}};
  for (int n = 1; n <= 3; ++n)
    run_instance(out, "n=" + std::to_string(n), [&]() -> std::string {
      long long binom = 1;
      for (int k = 1; k <= n; ++k) binom = binom * (n + k) / k;
      SymplecticPower p = symplectic_power(n);
      if (p.coefficient.abs() != Integer(binom)) return "coefficient " + p.coefficient.str();
      return "";
    });
  return out;
}

SuiteResult couple_integrity(const SuiteOptions& opt) {
  SuiteResult out{"couple-integrity", 11,
                  "pages are exact couples with deg i = (1,-1), deg k = (0,1), deg j_p = (-p,p), deg d_p = (-p,p+1) "
                  "and E_{p+1} = H(E_p, d_p)",
                  {}};
  const int n_max = 3;
  for (const auto& name : groups_for(opt, {"c2", "c3"}))
    for (bool ideal : {false, true})
      run_instance(out, name + " A=" + coeff_name(ideal) + " n_max=3", [&]() -> std::string {
        GroupPtr g = load_group(name);
        ExactCouplePage page = build_couple(g, square_coeff(g, ideal), n_max);
        for (int p = 0;; ++p) {
          std::vector<std::pair<int, int>> expect{{1, -1}, {0, 1}, {-p, p}, {-p, p + 1}};
          if (page.p != p) return "page index out of step";
          if (page.check.degrees != expect) return "degree table differs on page " + std::to_string(p);
          if (page.check.exactness_nodes == 0) return "no exactness nodes checked on page " + std::to_string(p);
          if (p > 0 && page.check.homology_nodes == 0) return "no homology nodes checked on page " + std::to_string(p);
          if (p == n_max) break;
          page = derive(page);
        }
        return "";
      });
  return out;
}

using SuiteFn = SuiteResult (*)(const SuiteOptions&);

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> r{
      {"tc-values", tc_values},         {"e0-decomposition", e0_decomposition},
      {"canonical-identities", canonical_identities},
      {"bockstein", bockstein},         {"kappa", kappa},
      {"degree-one-essential", degree_one},
      {"universality", universality},   {"phi-gamma", phi_gamma},
      {"abelian", abelian},             {"symplectic", symplectic},
      {"couple-integrity", couple_integrity}};
  return r;
}

}  // namespace

bool SuiteResult::passed() const { return !instances.empty() && first_failure() == nullptr; }

const InstanceResult* SuiteResult::first_failure() const {
  for (const auto& i : instances)
    if (!i.ok) return &i;
  return nullptr;
}

Json SuiteResult::to_json() const {
  Json list = Json::array();
  std::size_t failures = 0;
  for (const auto& i : instances) {
    list.push_back(Json{{"instance", i.instance}, {"ok", i.ok}, {"detail", i.detail}});
    failures += !i.ok;
  }
  Json first = nullptr;
  if (const InstanceResult* f = first_failure()) first = Json{{"instance", f->instance}, {"detail", f->detail}};
  return Json{{"suite", name},     {"criterion", criterion}, {"claim", claim},     {"passed", passed()},
              {"instances", list}, {"failures", failures},   {"first_failure", first}};
}

std::string SuiteResult::to_text() const {
  std::ostringstream s;
  std::size_t failures = 0;
  for (const auto& i : instances) failures += !i.ok;
  s << (passed() ? "PASS" : "FAIL") << "  " << criterion << ". " << name << "  (" << instances.size() - failures << "/"
    << instances.size() << ")  " << claim << "\n";
  if (const InstanceResult* f = first_failure()) s << "      first failure: " << f->instance << ": " << f->detail << "\n";
  return s.str();
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& [name, fn] : registry()) n.push_back(name);
    return n;
  }();
  return names;
}

bool is_suite(const std::string& name) {
  if (name == "all") return true;
  for (const auto& n : suite_names())
    if (n == name) return true;
  return false;
}

SuiteResult run_suite(const std::string& name, const SuiteOptions& opt) {
  for (const auto& [n, fn] : registry())
    if (n == name) return fn(opt);
  fail(ErrorCode::UnknownSpec, "unknown suite " + name);
}

std::vector<SuiteResult> run_suites(const std::string& name, const SuiteOptions& opt) {
  if (name != "all") return {run_suite(name, opt)};
  std::vector<SuiteResult> out;
  for (const auto& n : suite_names()) out.push_back(run_suite(n, opt));
  return out;
}

Json suites_json(const std::vector<SuiteResult>& results) {
  Json list = Json::array();
  bool all = true;
  for (const auto& r : results) {
    list.push_back(r.to_json());
    all = all && r.passed();
  }
  return Json{{"suites", list}, {"passed", all}};
}

}  // namespace tclab
