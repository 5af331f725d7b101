#include "doctest.h"

#include "tclab/cohomology.hpp"
#include "tclab/errors.hpp"

using namespace tclab;

namespace {

GModule sign_module(const GroupPtr& c2) {
  std::vector<IntMatrix> act(2);
  act[c2->identity()] = IntMatrix::identity(1);
  act[1 - c2->identity()] = IntMatrix::identity(1).scaled(-1);
  return GModule(c2, 1, act);
}

Vec factors(const CohomologyPtr& h) { return h->group().invariant_factors(); }

}  // namespace

TEST_CASE("cohomology of C2 with trivial and sign coefficients") {
  auto c2 = named_group("c2");
  auto z = GModule::trivial(c2);
  auto r = periodic_resolution(c2, 4);
  CHECK(factors(cohomology(r, z, 0)) == Vec{0});
  CHECK(factors(cohomology(r, z, 1)).empty());
  CHECK(factors(cohomology(r, z, 2)) == Vec{2});
  CHECK(factors(cohomology(r, sign_module(c2), 1)) == Vec{2});
  CHECK_THROWS_AS(cohomology(r, z, 4), Error);
}

TEST_CASE("cohomology does not depend on the resolution") {
  for (const char* name : {"c2", "c3", "c4", "s3"}) {
    auto g = named_group(name);
    std::vector<GModule> coeffs{GModule::trivial(g), left_augmentation_ideal(g).ideal};
    if (g->order() == 2) coeffs.push_back(sign_module(g));
    std::vector<ResolutionPtr> rs{bar_resolution(g, 4), homogeneous_resolution(g, 3), default_resolution(g, 4)};
    for (const auto& a : coeffs)
      for (int n = 0; n <= 2; ++n) {
        Vec ref = factors(cohomology(rs[0], a, n));
        for (const auto& r : rs) CHECK(factors(cohomology(r, a, n)) == ref);
      }
  }
}

TEST_CASE("cup square of the degree one mod 2 class") {
  auto c2 = named_group("c2");
  auto f2 = GModule::trivial(c2, 1, 2);
  auto r = bar_resolution(c2, 3);
  auto h1 = cohomology(r, f2, 1);
  REQUIRE(h1->group().invariant_factors() == Vec{2});
  CohomologyClass t = CohomologyClass::from_coordinates(h1, {1});
  CohomologyClass tt = cup_product(t, t);
  CHECK_FALSE(tt.is_zero());
  CHECK(tt.coordinates() == Vec{1});
}

TEST_CASE("cup product unit and graded commutativity") {
  auto c3 = named_group("c3");
  auto z = GModule::trivial(c3);
  auto r = bar_resolution(c3, 4);
  CohomologyClass one = CohomologyClass::from_coordinates(cohomology(r, z, 0), {1});
  CohomologyClass u = CohomologyClass::from_coordinates(cohomology(r, z, 2), {1});
  CohomologyClass uu = cup_product(u, one);
  CHECK(uu == u);
  auto i = left_augmentation_ideal(c3).ideal;
  CohomologyClass w = CohomologyClass::from_coordinates(cohomology(r, i, 1), {1});
  CohomologyClass a = cup_product(w, u);
  CohomologyClass b = pushforward(swap_map(z, i), cup_product(u, w));
  CHECK(a == b);
}

TEST_CASE("augmentation sequence gives the canonical cocycle") {
  auto c2 = named_group("c2");
  auto gg = square_of(c2);
  AugmentationData aug = augmentation_ideal(c2);
  auto r = bar_resolution(gg, 3);
  CohomologyClass v = class_of_exact_sequence({aug.incl, aug.aug}, r);
  // value on [(g, h)] is g h^-1 - 1 in the basis {x - 1 : x != e}
  for (int code = 0; code < r->rank(1); ++code) {
    int x = decode_nontrivial_tuple(*gg, code, 1)[0];
    int g = x / 2, h = x % 2;
    int d = c2->mul(g, c2->inv(h));
    Vec expect(1);
    if (d != c2->identity()) expect[aug_index(*c2, d)] = 1;
    CHECK(v.value(code) == expect);
  }
  CHECK_FALSE(v.is_zero());
  auto seq = ShortExactSequence::from_maps(aug.incl, aug.aug);
  CohomologyClass one = CohomologyClass::from_coordinates(cohomology(r, aug.trivial, 0), {1});
  CHECK(connecting_hom(seq, one) == v);
  CHECK(connecting_hom(seq, CohomologyClass::zero(r, aug.trivial, 0)).is_zero());
}

TEST_CASE("restriction along identity and chain maps between resolutions") {
  auto s3 = named_group("s3");
  auto z = GModule::trivial(s3);
  auto bar = bar_resolution(s3, 3);
  auto red = default_resolution(s3, 3);
  verify_chain_map(*lift_chain_map(bar, red, GroupHom::identity(s3), 3));
  verify_chain_map(*lift_chain_map(red, bar, GroupHom::identity(s3), 3));
  auto h2 = cohomology(red, z, 2);
  REQUIRE(h2->group().invariant_factors() == Vec{2});
  CohomologyClass u = CohomologyClass::from_coordinates(h2, {1});
  CohomologyClass ub = convert(u, bar);
  CHECK_FALSE(ub.is_zero());
  CHECK(convert(ub, red) == u);
}
