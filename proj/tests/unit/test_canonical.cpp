#include "doctest.h"

#include "tclab/canonical.hpp"

using namespace tclab;

TEST_CASE("canonical cocycle values for C2") {
  auto c2 = named_group("c2");
  CanonicalClassBundle b = canonical_cocycle(c2);
  const GroupTable& gg = *b.square;
  int g = 1 - c2->identity(), e = c2->identity();
  for (int code = 0; code < b.v_bar.resolution()->rank(1); ++code) {
    int y = decode_nontrivial_tuple(gg, code, 1)[0];
    int a = y / 2, c = y % 2;
    Vec expect{a == c ? 0 : 1};
    CHECK(b.v_bar.value(code) == expect);
    if ((a == g && c == e) || (a == e && c == g)) CHECK(b.v_bar.value(code) == Vec{1});
  }
  CHECK_FALSE(b.v_bar.is_zero());
  CHECK_FALSE(b.b.is_zero());
  CHECK(b.b == berstein_class_direct(c2));
}

TEST_CASE("restriction identities for shipped groups") {
  for (const char* name : {"trivial", "c2", "c3", "c4", "c2xc2", "s3", "c5", "c6"}) {
    auto g = named_group(name);
    CanonicalClassBundle b = canonical_cocycle(g);
    CHECK(b.b == berstein_class_direct(g));
    CHECK(is_zero(diagonal_restriction_cocycle(g)));
  }
}

TEST_CASE("canonical powers agree with cup powers") {
  for (const char* name : {"c2", "c3"})
    for (int n = 1; n <= 3; ++n) CHECK_NOTHROW(canonical_power(named_group(name), n));
}

TEST_CASE("kappa chain maps") {
  for (const char* name : {"c2", "c3", "s3"}) {
    KappaReport r = kappa_chain_map(named_group(name), 3);
    CHECK(r.exhaustive);
    CHECK(r.tuples_checked > 0);
  }
}

TEST_CASE("universality for small groups") {
  for (const char* name : {"c2", "c3"}) {
    auto g = named_group(name);
    std::vector<GModule> coeffs{GModule::trivial(g), left_augmentation_ideal(g).ideal};
    for (const auto& a : coeffs)
      for (int n = 0; n <= 2; ++n) {
        auto h = cohomology(default_resolution(g, 4), a, n);
        for (std::size_t i = 0; i < h->homology.generator_count(); ++i) {
          Vec c(h->homology.generator_count());
          c[i] = 1;
          CohomologyClass alpha = CohomologyClass::from_coordinates(h, c);
          CHECK_NOTHROW(universality_mu(alpha));
        }
      }
  }
}
