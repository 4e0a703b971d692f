#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "sonnp/matrix.hpp"
#include "sonnp/rational.hpp"

using namespace sonnp;

TEST_CASE("rational canonical form") {
  CHECK(rat(2, 4) == rat(1, 2));
  CHECK(rat(-3, 6) == rat(-1, 2));
  CHECK(rat(1, 3) + rat(1, 6) == rat(1, 2));
  Rational r = rat(6, -4);
  CHECK(r.get_den() > 0);
  CHECK(r == rat(-3, 2));
  CHECK(to_string(rat(1, 2)) == "1/2");
  CHECK(to_string(rat(5)) == "5");
}

TEST_CASE("quadratic field arithmetic") {
  Sqrt2 s = Sqrt2::sqrt2();
  CHECK(s * s == Sqrt2{rat(2), rat(0)});
  CHECK(s * Sqrt2::inv_sqrt2() == Sqrt2{rat(1), rat(0)});
  Sqrt2 u{rat(1), rat(1)};   // 1 + sqrt2
  Sqrt2 v{rat(-1), rat(1)};  // -1 + sqrt2
  CHECK(u * v == Sqrt2{rat(1), rat(0)});
  CHECK((u / v) * v == u);
  CHECK((u - u).is_zero());
  CHECK(scalar_is_zero(Sqrt2{}));
  CHECK(!scalar_is_zero(v));
  CHECK(-u + u == Sqrt2{});
}

TEST_CASE("seeded generator is deterministic and bounded") {
  Rng a(12345), b(12345);
  for (int i = 0; i < 50; ++i) CHECK(a.next_u64() == b.next_u64());
  Rng c(9);
  for (int i = 0; i < 200; ++i) {
    long l = c.next_long(-3, 7);
    CHECK(l >= -3);
    CHECK(l <= 7);
    Rational p = c.next_positive_rational(100);
    CHECK(p > 0);
    CHECK(p.get_num() <= 100);
    CHECK(p.get_den() <= 100);
    Rational q = c.next_rational(100);
    CHECK(abs(q.get_num()) <= 100);
    CHECK(q.get_den() <= 100);
    CHECK(c.next_nonzero_rational(100) != 0);
  }
  Rng d(1), e(2);
  bool differ = false;
  for (int i = 0; i < 10; ++i) differ |= d.next_u64() != e.next_u64();
  CHECK(differ);
}

TEST_CASE("matrix arithmetic") {
  QMatrix a(2, 2);
  a(0, 0) = rat(1);
  a(0, 1) = rat(2);
  a(1, 0) = rat(3);
  a(1, 1) = rat(4);
  CHECK(a * QMatrix::identity(2) == a);
  CHECK(a.transpose().transpose() == a);
  CHECK(a.trace() == rat(5));
  CHECK((a - a).is_zero());
  CHECK(a.scaled(rat(2))(1, 1) == rat(8));
  QMatrix ai = inverse(a);
  CHECK(a * ai == QMatrix::identity(2));

  QMatrix sing(2, 2);
  sing(0, 0) = rat(1);
  sing(0, 1) = rat(2);
  sing(1, 0) = rat(2);
  sing(1, 1) = rat(4);
  CHECK(rank(sing) == 1);
  CHECK_THROWS_AS(inverse(sing), Error);
  QMatrix ker = kernel_basis(sing);
  CHECK(ker.cols() == 1);
  CHECK((sing * ker).is_zero());
}

TEST_CASE("nilpotent exponential") {
  QMatrix n(3, 3);
  n(0, 1) = rat(1);
  n(1, 2) = rat(1);
  QMatrix e = mat_exp_nilpotent(n, 3);
  CHECK(e.is_upper_unipotent());
  CHECK(e(0, 1) == rat(1));
  CHECK(e(0, 2) == rat(1, 2));  // x^2/2 term
  QMatrix en = mat_exp_nilpotent(n.scaled(rat(-1)), 3);
  CHECK(e * en == QMatrix::identity(3));
}

TEST_CASE("characteristic polynomial") {
  QMatrix d(2, 2);
  d(0, 0) = rat(2);
  d(1, 1) = rat(3);
  auto cp = char_poly(d);  // t^2 - 5t + 6
  REQUIRE(cp.size() == 3);
  CHECK(cp[0] == rat(1));
  CHECK(cp[1] == rat(-5));
  CHECK(cp[2] == rat(6));
  // trace and determinant read off the coefficients
  QMatrix m(3, 3);
  Rng rng(4);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) m(i, j) = rng.next_rational(5);
  auto cm = char_poly(m);
  CHECK(cm[1] == -m.trace());
}
