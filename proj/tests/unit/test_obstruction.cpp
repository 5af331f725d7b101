#include "doctest.h"

#include "tclab/obstruction.hpp"

using namespace tclab;

namespace {

GModule coeff(const GroupPtr& g, bool ideal) {
  return ideal ? augmentation_ideal(g).ideal : GModule::trivial(square_of(g));
}

}  // namespace

TEST_CASE("E0 oracle on small groups") {
  auto c2 = named_group("c2");
  auto s3 = named_group("s3");
  CHECK(e0_oracle(c2, coeff(c2, false), 2, 1).product.invariant_factors() == Vec{2});
  CHECK(e0_oracle(s3, coeff(s3, false), 2, 1).product.invariant_factors() == Vec{6});
  E0Oracle z = e0_oracle(s3, coeff(s3, false), 0, 1);
  CHECK(z.factors.size() == 2);
  CHECK(z.product.invariant_factors() == Vec{0, 0});
}

TEST_CASE("E0 of the couple matches the oracle") {
  for (const char* name : {"c2", "c3"})
    for (bool ideal : {false, true}) {
      auto g = named_group(name);
      CouplePtr c = ExactCouple::build(g, coeff(g, ideal), 1);
      for (int r = 0; r <= 1; ++r)
        CHECK(c->e0(r, 1)->group().invariant_factors() ==
              e0_oracle(g, coeff(g, ideal), r, 1).product.invariant_factors());
    }
}

TEST_CASE("couple pages are exact") {
  for (const char* name : {"c2", "c3"})
    for (bool ideal : {false, true}) {
      auto g = named_group(name);
      ExactCouplePage p = build_couple(g, coeff(g, ideal), 3);
      CHECK(p.check.exactness_nodes > 0);
      for (int k = 0; k < 3; ++k) {
        p = derive(p);
        CHECK(p.check.homology_nodes > 0);
        CHECK(p.check.degrees[2] == std::make_pair(-p.p, p.p));
      }
    }
}

TEST_CASE("pinned sign and the Bockstein identity") {
  const SignPin& pin = global_sign();
  CHECK((pin.epsilon == 1 || pin.epsilon == -1));
  CHECK(pin.reference_degenerate);
  auto c3 = named_group("c3");
  GModule a = coeff(c3, true);
  SpliceLevel lv = splice_level(c3, a, 0);
  CohomologyPtr h = cohomology(default_resolution(square_of(c3), 3), lv.hom_is1, 1);
  for (std::size_t c = 0; c < h->homology.generator_count(); ++c) {
    auto u = CohomologyClass::from_coordinates(h, unit_vec(h->homology.generator_count(), c));
    CHECK(bockstein_via_v(a, u, 0, pin.epsilon).agree);
  }
}

TEST_CASE("canonical class is essential with identity certificate") {
  auto c3 = named_group("c3");
  GModule a = coeff(c3, true);
  CouplePtr c = ExactCouple::build(c3, a, 1);
  ObstructionReport rep = obstruction_sequence(c, canonical_cocycle(c3).v_bar);
  CHECK(rep.verdict == "essential");
  CHECK(rep.certificate_verified);
  CHECK(rep.certificate->matrix() == IntMatrix::identity(2));
  CHECK(rep.zero_divisor);
}

TEST_CASE("degree one: essential iff zero divisor") {
  for (const char* name : {"c2", "c3"})
    for (bool ideal : {false, true}) {
      auto g = named_group(name);
      GModule a = coeff(g, ideal);
      CouplePtr c = ExactCouple::build(g, a, 1);
      CohomologyPtr h = c->d0(1, 0);
      std::size_t k = h->homology.generator_count();
      for (std::size_t i = 0; i < k; ++i) {
        auto u = CohomologyClass::from_coordinates(h, unit_vec(k, i));
        CohomologyClass alpha(u.resolution(), a, 1, u.cocycle());
        ObstructionReport rep = obstruction_sequence(c, alpha);
        CHECK((rep.verdict == "essential") == rep.zero_divisor);
        if (rep.verdict == "essential") CHECK(rep.certificate_verified);
      }
    }
}

TEST_CASE("Phi and Gamma are isomorphisms") {
  for (const char* name : {"c2", "c3", "s3"}) {
    auto g = named_group(name);
    for (bool ideal : {false, true}) {
      GModule a = coeff(g, ideal);
      PhiReport p = phi_isomorphism(a, a);
      CHECK(p.mutually_inverse);
      for (int i = 0; i <= 2; ++i) {
        AbHom gm = gamma_isomorphism(g, a, i);
        CHECK(gm.source().isomorphic_to(gm.target()));
        CHECK(gm.is_isomorphism());
      }
    }
  }
}

TEST_CASE("TC lower bound") {
  auto c2 = named_group("c2");
  TcBound b = tc_lower_bound(c2, coeff(c2, true), 1);
  CHECK(b.bound >= 2);
  auto t = named_group("trivial");
  CHECK(tc_lower_bound(t, coeff(t, false), 2).bound == 1);
}
