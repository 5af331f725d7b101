#include "doctest.h"

#include "tclab/abelian.hpp"
#include "tclab/smith.hpp"
#include "tclab/sparse.hpp"

using namespace tclab;

namespace {

// Product of the nonzero invariant factors equals the gcd of maximal minors
// for a 2x2 matrix: d1 = gcd(entries), d1*d2 = |det|.
Integer det2(const DenseMatrix& m) { return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0); }

}  // namespace

TEST_CASE("integer promotion and floor division") {
  Integer big = Integer(std::numeric_limits<long long>::max()) + Integer(1);
  CHECK_FALSE(big.is_small());
  CHECK(big - Integer(1) == Integer(std::numeric_limits<long long>::max()));
  CHECK(Integer::floor_div(-7, 2) == Integer(-4));
  CHECK(Integer::floor_mod(-7, 2) == Integer(1));
  CHECK(Integer::gcd(12, -18) == Integer(6));
}

TEST_CASE("smith form of 2x2 matrices matches minors") {
  for (int a = -3; a <= 3; ++a)
    for (int b = -3; b <= 3; b += 2)
      for (int c = -2; c <= 2; ++c) {
        DenseMatrix m = IntMatrix::from_rows({{a, b}, {c, a + c}}).to_dense();
        SmithForm s = smith_form(m, {true, true, true, true, 0});
        CHECK(s.u * m * s.v == s.d);
        CHECK(s.u * s.u_inv == DenseMatrix::identity(2));
        CHECK(s.v * s.v_inv == DenseMatrix::identity(2));
        Integer g = Integer::gcd(Integer::gcd(a, b), Integer::gcd(c, a + c));
        CHECK(abs(s.d(0, 0)) == g);
        CHECK(abs(s.d(0, 0) * s.d(1, 1)) == abs(det2(m)));
      }
}

TEST_CASE("presented group from relations") {
  // Z^3 / <(2,0,0), (0,4,6)> = Z/2 + Z/2 + Z
  IntMatrix rel = IntMatrix::from_rows({{2, 0}, {0, 4}, {0, 6}});
  PresentedAbelianGroup g(3, rel);
  CHECK(g.invariant_factors() == Vec{2, 2, 0});
  CHECK(g.describe() == "Z/2 + Z/2 + Z");
  CHECK(g.is_zero({2, 4, 6}));
  CHECK_FALSE(g.is_zero({1, 0, 0}));
}

TEST_CASE("homology of the periodic C2 cochain complex") {
  // Z -0-> Z -2-> Z -0-> Z
  IntMatrix zero = IntMatrix::from_rows({{0}});
  IntMatrix two = IntMatrix::from_rows({{2}});
  CHECK(homology_at(IntMatrix(1, 0), zero).group().invariant_factors() == Vec{0});
  CHECK(homology_at(zero, two).group().is_trivial());
  CHECK(homology_at(two, zero).group().invariant_factors() == Vec{2});
  Homology mod2 = homology_at(zero, two, 2);
  CHECK(mod2.group().invariant_factors() == Vec{2});
}

TEST_CASE("homology projection and lift round trip") {
  IntMatrix d_in = IntMatrix::from_rows({{1, 1}, {1, -1}, {0, 0}});
  IntMatrix d_out = IntMatrix(1, 3, {});
  Homology h = homology_at(d_in, d_out);
  CHECK(h.group().invariant_factors() == Vec{2, 0});
  for (std::size_t i = 0; i < h.generator_count(); ++i) {
    Vec c(h.generator_count());
    c[i] = 1;
    CHECK(h.project(h.lift(c)) == c);
  }
  CHECK(h.project({1, 1, 0}) == Vec{0, 0});
}

TEST_CASE("lattice intersection and preimage") {
  Lattice a = Lattice::span(2, {{2, 0}, {0, 3}});
  Lattice b = Lattice::span(2, {{3, 0}, {0, 2}});
  Lattice c = Lattice::intersection(a, b);
  CHECK(c.contains(Vec{6, 0}));
  CHECK(c.contains(Vec{0, 6}));
  CHECK_FALSE(c.contains(Vec{2, 0}));
  CHECK(Lattice::sum(a, b) == Lattice::full(2));
  DenseMatrix f = IntMatrix::from_rows({{1, 1}}).to_dense();
  Lattice pre = Lattice::preimage(f, Lattice::span(1, {{2}}));
  CHECK(pre.contains(Vec{1, 1}));
  CHECK_FALSE(pre.contains(Vec{1, 0}));
}

TEST_CASE("sparse solver agrees with membership") {
  IntMatrix m = IntMatrix::from_rows({{1, 2, 0}, {0, 2, 4}, {1, 0, 1}});
  SparseSolver s(m);
  auto x = s.solve({3, 6, 2});
  REQUIRE(x);
  CHECK(m.apply(*x) == Vec{3, 6, 2});
}
