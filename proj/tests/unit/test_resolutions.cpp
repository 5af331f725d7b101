#include "doctest.h"

#include "tclab/groups.hpp"
#include "tclab/resolution.hpp"

using namespace tclab;

TEST_CASE("bar resolution ranks and exactness") {
  auto c3 = named_group("c3");
  auto r = bar_resolution(c3, 3);
  CHECK(r->rank(2) == 4);
  r->verify(3);
  auto c2 = named_group("c2");
  auto b2 = bar_resolution(c2, 4);
  for (int n = 0; n <= 4; ++n) CHECK(b2->rank(n) == 1);
  b2->verify(4);
}

TEST_CASE("homogeneous, periodic, splice and reduced resolutions are exact") {
  for (const char* name : {"c2", "c3", "c4", "s3"}) {
    auto g = named_group(name);
    homogeneous_resolution(g, 2)->verify(2);
    splice_resolution(g, 3)->verify(3);
    reduced_resolution(g, 4)->verify(4);
    if (g->cyclic_generator() >= 0) periodic_resolution(g, 4)->verify(4);
  }
}

TEST_CASE("tensor of periodic C2 resolutions") {
  auto c2 = named_group("c2");
  auto gg = square_of(c2);
  auto p = periodic_resolution(c2, 3);
  auto t = tensor_resolutions(p, p, gg);
  for (int n = 0; n <= 3; ++n) CHECK(t->rank(n) == n + 1);
  t->verify(3);
  default_resolution(square_of(named_group("s3")), 3)->verify(3);
}
