#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "sonnp/lie.hpp"

using namespace sonnp;

static const Family kFamilies[] = {Family::SO_n_nminus1, Family::SO_n_n, Family::SO_n_nplus1};

TEST_CASE("algebra dimensions d(d-1)/2") {
  for (Family f : kFamilies)
    for (int n = 2; n <= 5; ++n) {
      GroupKind k{f, n};
      std::size_t d = ambient_dim(k);
      CHECK(lie_algebra_dim(k) == d * (d - 1) / 2);
    }
  CHECK(lie_algebra_dim({Family::SO_n_nplus1, 3}) == 21);  // n(2n+1)
  CHECK(lie_algebra_dim({Family::SO_n_n, 3}) == 15);       // n(2n-1)
  CHECK(lie_algebra_dim({Family::SO_n_nminus1, 3}) == 10); // (2n-1)(n-1)
}

TEST_CASE("defining form") {
  for (Family f : kFamilies)
    for (int n = 2; n <= 4; ++n) {
      GroupKind k{f, n};
      QMatrix j = build_form(k);
      std::size_t d = ambient_dim(k);
      CHECK(j == j.transpose());
      CHECK(rank(j) == d);
      for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c < d; ++c)
          if (r + c != d - 1) CHECK(j(r, c) == 0);
      if (f == Family::SO_n_nplus1) CHECK(j(n, n) == rat(-1));
    }
}

TEST_CASE("membership and torus") {
  GroupKind k{Family::SO_n_nplus1, 3};
  CHECK(in_lie_algebra(QMatrix(ambient_dim(k), ambient_dim(k)), k));
  CHECK(!in_lie_algebra(elem(ambient_dim(k), 1, 2) + elem(ambient_dim(k), 2, 1), k));
  std::vector<Rational> x = {rat(1), rat(-2), rat(3)};
  QMatrix t = torus_element(k, x);
  CHECK(in_lie_algebra(t, k));
  CHECK(t(0, 0) == rat(1));
  CHECK(t.trace() == 0);
}

TEST_CASE("simple root spaces lie in the algebra with the right weight") {
  Rng rng(11);
  for (Family f : kFamilies)
    for (int n = 2; n <= 5; ++n) {
      GroupKind k{f, n};
      RootDatum rd = root_datum(k);
      std::size_t r = torus_rank(k);
      REQUIRE(rd.simple_roots.size() == r);
      REQUIRE(rd.root_spaces.size() == rd.simple_roots.size());
      std::vector<Rational> x;
      for (std::size_t i = 0; i < r; ++i) x.push_back(rng.next_rational(9));
      QMatrix t = torus_element(k, x);
      for (std::size_t i = 0; i < rd.simple_roots.size(); ++i) {
        Rational w = rd.simple_roots[i].eval(x);
        for (const QMatrix &g : rd.root_spaces[i]) {
          CHECK(in_lie_algebra(g, k));
          CHECK(bracket(t, g) == g.scaled(w));
        }
      }
    }
}

TEST_CASE("parabolic nilradical pieces") {
  for (int n = 2; n <= 4; ++n) {
    GroupKind k{Family::SO_n_nplus1, n};
    std::vector<std::size_t> theta;
    for (std::size_t j = 1; j + 1 <= static_cast<std::size_t>(n); ++j) theta.push_back(j);
    ParabolicDatum pd = parabolic_datum(k, theta);
    REQUIRE(pd.pieces.size() == theta.size());
    // the piece at the last retained node is three-dimensional
    CHECK(pd.pieces.back().size() == 3);
    for (std::size_t i = 0; i + 1 < pd.pieces.size(); ++i) CHECK(pd.pieces[i].size() == 1);
    for (const auto &piece : pd.pieces)
      for (const QMatrix &g : piece) CHECK(in_lie_algebra(g, k));
  }
  // only the full Borel and the standard parabolic are supported
  bool unsupported = false;
  try {
    parabolic_datum({Family::SO_n_nplus1, 3}, {1});
  } catch (const Error &e) {
    unsupported = e.code == "UnsupportedTheta";
  }
  CHECK(unsupported);
}

TEST_CASE("bracket is antisymmetric and closes") {
  Rng rng(5);
  GroupKind k{Family::SO_n_n, 3};
  RootDatum rd = root_datum(k);
  for (std::size_t i = 0; i < rd.root_spaces.size(); ++i)
    for (std::size_t j = 0; j < rd.root_spaces.size(); ++j) {
      QMatrix b = bracket(rd.root_spaces[i][0], rd.root_spaces[j][0]);
      CHECK(in_lie_algebra(b, k));
      CHECK(b == -bracket(rd.root_spaces[j][0], rd.root_spaces[i][0]));
    }
}
