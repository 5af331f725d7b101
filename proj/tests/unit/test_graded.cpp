#include "doctest.h"

#include "tclab/errors.hpp"
#include "tclab/graded.hpp"

using namespace tclab;

TEST_CASE("named rings") {
  RingPtr e1 = named_ring("exterior:1");
  CHECK(e1->dim() == 2);
  RingElement x = RingElement::basis(e1, 1);
  CHECK((x * x).is_zero());
  RingPtr w = named_ring("wedge:2");
  CHECK(w->basis_in_degree(1).size() == 2);
  CHECK(w->basis_in_degree(2).empty());
  RingPtr s = named_ring("surface:2");
  CHECK(s->basis_in_degree(1).size() == 4);
  RingElement a1 = RingElement::basis(s, 1), b1 = RingElement::basis(s, 3);
  RingElement a2 = RingElement::basis(s, 2), b2 = RingElement::basis(s, 4);
  CHECK(a1 * b1 == a2 * b2);
  CHECK((a1 * b1).degree() == 2);
  CHECK_THROWS_AS(named_ring("klein"), Error);
}

TEST_CASE("kunneth square signs") {
  RingPtr sq = kunneth_square(named_ring("circle"));
  RingElement xl = left(sq, 1), xr = right(sq, 1);
  RingElement xx = RingElement::basis(sq, sq->pair(1, 1));
  CHECK(xl * xr == xx);
  CHECK(xr * xl == xx.scaled(-1));
  CHECK(sq->unit() == sq->pair(0, 0));
  RingPtr s2 = kunneth_square(named_ring("surface:2"));
  CHECK(s2->basis_in_degree(4).size() == 1);
}

TEST_CASE("zero-divisor basis") {
  RingPtr sq = kunneth_square(named_ring("circle"));
  auto zd = zero_divisor_basis(sq);
  CHECK(zd.size() == 2);
  CHECK(zd[0] == bar(sq, 1));
  CHECK(zd[1] == RingElement::basis(sq, sq->pair(1, 1)));
  RingPtr w = kunneth_square(named_ring("wedge:2"));
  std::size_t deg2 = 0;
  for (const auto& z : zero_divisor_basis(w)) deg2 += z.degree() == 2;
  CHECK(deg2 == 4);
}

TEST_CASE("zero-divisor cup length") {
  ZdclResult c = zdcl(named_ring("circle"));
  CHECK(c.zdcl == 1);
  CHECK(c.witness[0] == bar(kunneth_square(named_ring("circle")), 1));
  for (int mu = 2; mu <= 4; ++mu) CHECK(zdcl(named_ring("wedge:" + std::to_string(mu))).zdcl == 2);
  for (int g = 2; g <= 3; ++g) CHECK(zdcl(named_ring("surface:" + std::to_string(g))).zdcl == 4);
  for (int n = 1; n <= 3; ++n) {
    ZdclResult t = zdcl(named_ring("torus:" + std::to_string(n)));
    CHECK(t.zdcl == n);
    RingPtr sq = kunneth_square(named_ring("torus:" + std::to_string(n)));
    RingElement prod = RingElement::one(sq);
    for (int i = 1; i <= n; ++i) prod = prod * bar(sq, i);
    CHECK_FALSE(prod.is_zero());
  }
}

TEST_CASE("zdcl is invariant under relabeling") {
  RingPtr r = named_ring("surface:2");
  std::vector<int> perm{0, 4, 3, 2, 1, 5};
  CHECK(zdcl(permuted_ring(r, perm)).zdcl == zdcl(r).zdcl);
}

TEST_CASE("phi pullback and the abelian essential test") {
  RingMap phi = phi_pullback(2);
  RingPtr sq = phi.target;
  CHECK(phi.images[0] == RingElement::one(sq));
  CHECK(phi.images[1] == bar(sq, 1));
  CHECK(phi.images[3] == bar(sq, 1) * bar(sq, 2));
  for (int b = 1; b < phi.source->dim(); ++b) CHECK(multiply_out(phi.images[b]).is_zero());

  RingMap phi1 = phi_pullback(1);
  EssentialVerdict v = abelian_essential_test(1, bar(phi1.target, 1));
  CHECK(v.essential);
  CHECK(*v.beta == RingElement::basis(phi1.source, 1));
  EssentialVerdict xx = abelian_essential_test(1, RingElement::basis(phi1.target, phi1.target->pair(1, 1)));
  CHECK(xx.zero_divisor);
  CHECK_FALSE(xx.essential);
  EssentialVerdict img = abelian_essential_test(2, phi.images[3]);
  CHECK(img.essential);
  CHECK(*img.beta == RingElement::basis(phi.source, 3));
}

TEST_CASE("alpha expansion and symplectic powers") {
  for (int n = 1; n <= 4; ++n) {
    AlphaExpansion e = expand_alpha(n);
    CHECK(e.terms == (std::size_t{1} << n));
    CHECK(e.unit_coefficients);
  }
  CHECK(symplectic_power(1).coefficient == Integer(-2));
  CHECK(symplectic_power(2).coefficient.abs() == Integer(6));
  CHECK(symplectic_power(3).coefficient.abs() == Integer(20));
}

TEST_CASE("tc reports") {
  TcReport c = tc_report("circle");
  CHECK(c.tc_lower == 2);
  CHECK(*c.tc_upper == 3);
  CHECK(*c.paper_value == 2);
  TcReport w = tc_report("wedge:2");
  CHECK(w.tc_lower == 3);
  CHECK(w.verdict == "determined");
  TcReport s = tc_report("surface:2");
  CHECK(s.tc_lower == 5);
  CHECK(*s.paper_value == 5);
  CHECK(s.verdict == "determined");
}
