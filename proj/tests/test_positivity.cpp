#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "sonnp/positivity.hpp"

using namespace sonnp;

static const Family kFamilies[] = {Family::SO_n_nminus1, Family::SO_n_n, Family::SO_n_nplus1};

TEST_CASE("schedule slots follow the longest-word blocks") {
  for (Family f : kFamilies)
    for (int n = 2; n <= 4; ++n) {
      GroupKind k{f, n};
      Schedule sch = schedule(k);
      CHECK(!sch.slots.empty());
      CHECK(sch.block_starts.front() == 0);
      std::size_t light = 0;
      for (const auto &s : sch.slots)
        if (s.is_light_cone) {
          ++light;
          CHECK(s.basis.size() == 3);
        } else {
          CHECK(s.basis.size() == 1);
        }
      // only SO(n,n+1) schedules carry light-cone slots, one per block
      if (f == Family::SO_n_nplus1)
        CHECK(light == sch.block_starts.size());
      else
        CHECK(light == 0);
    }
}

TEST_CASE("cone membership") {
  GroupKind k{Family::SO_n_nplus1, 2};
  Schedule sch = schedule(k);
  const ConeSlot &slot = sch.slots.back().is_light_cone ? sch.slots.back() : sch.slots.front();
  REQUIRE(slot.is_light_cone);
  CHECK(slot.contains(std::vector<Rational>{rat(1), rat(0), rat(1)}));   // 2xz - y^2 = 2 > 0
  CHECK(!slot.contains(std::vector<Rational>{rat(1), rat(2), rat(1)}));  // 2xz - y^2 = -2
  CHECK(!slot.contains(std::vector<Rational>{rat(-1), rat(0), rat(-1)})); // backward sheet
  CHECK(!slot.contains(std::vector<Rational>{rat(0), rat(0), rat(1)}));  // boundary
}

TEST_CASE("semigroup elements are unipotent and in the group") {
  Rng rng(21);
  for (Family f : kFamilies)
    for (int n = 2; n <= 4; ++n) {
      GroupKind k{f, n};
      Schedule sch = schedule(k);
      QMatrix j = build_form(k);
      auto p = random_cone_params<Rational>(sch, rng);
      QMatrix u = semigroup_element(sch, p);
      CHECK(u.is_upper_unipotent());
      CHECK(QMatrix(u.transpose() * j * u) == j);
    }
}

TEST_CASE("factorization round trip") {
  Rng rng(42);
  for (Family f : kFamilies)
    for (int n = 2; n <= 4; ++n) {
      GroupKind k{f, n};
      Schedule sch = schedule(k);
      for (int t = 0; t < 10; ++t) {
        auto p = random_cone_params<Rational>(sch, rng);
        QMatrix u = semigroup_element(sch, p);
        auto res = factorize(k, u);
        REQUIRE(res.ok());
        CHECK(res.params == p);  // parameters are uniquely determined
      }
    }
}

TEST_CASE("products of positive elements stay positive") {
  Rng rng(7);
  for (Family f : kFamilies)
    for (int n = 2; n <= 4; ++n) {
      GroupKind k{f, n};
      Schedule sch = schedule(k);
      for (int t = 0; t < 5; ++t) {
        auto p = random_cone_params<Rational>(sch, rng);
        auto q = random_cone_params<Rational>(sch, rng);
        QMatrix u = semigroup_element(sch, p) * semigroup_element(sch, q);
        CHECK(factorize(k, u).ok());
      }
    }
}

TEST_CASE("non-positive elements are rejected") {
  Rng rng(3);
  for (Family f : kFamilies)
    for (int n = 2; n <= 4; ++n) {
      GroupKind k{f, n};
      CHECK(!factorize(k, QMatrix::identity(ambient_dim(k))).ok());
      Schedule sch = schedule(k);
      auto p = random_cone_params<Rational>(sch, rng);
      for (auto &slot : p)
        for (auto &v : slot) v = -v;  // exponentials of the negated cone
      QMatrix u = semigroup_element(sch, p, /*check_cones=*/false);
      CHECK(!factorize(k, u).ok());
    }
}

TEST_CASE("factorize validates its input") {
  GroupKind k{Family::SO_n_nminus1, 2};
  std::size_t d = ambient_dim(k);
  QMatrix lower = QMatrix::identity(d);
  lower(d - 1, 0) = rat(1);
  CHECK_THROWS_AS(factorize(k, lower), Error);
  QMatrix notgrp = QMatrix::identity(d);
  notgrp(0, 1) = rat(1);  // unipotent but does not preserve the form
  bool not_in_group = false;
  try {
    factorize(k, notgrp);
  } catch (const Error &e) {
    not_in_group = e.code == "NotInGroup";
  }
  CHECK(not_in_group);
}

TEST_CASE("embeddings preserve the form and the algebra") {
  for (Family f : {Family::SO_n_nminus1, Family::SO_n_n})
    for (int n = 2; n <= 4; ++n) {
      GroupKind src{f, n};
      GroupKind tgt{f == Family::SO_n_nminus1 ? Family::SO_n_n : Family::SO_n_nplus1, n};
      SMatrix jt = convert_matrix<Sqrt2>(build_form(tgt));
      SMatrix g = embed_group(src, QMatrix::identity(ambient_dim(src)));
      CHECK(g == SMatrix::identity(ambient_dim(tgt)));
      RootDatum rd = root_datum(src);
      for (const auto &rs : rd.root_spaces)
        for (const QMatrix &m : rs) {
          SMatrix im = embed_alg(src, m);
          CHECK((im.transpose() * jt + jt * im).is_zero());
        }
    }
}

TEST_CASE("parameter transport lands in the target cones") {
  Rng rng(17);
  for (Family f : {Family::SO_n_nminus1, Family::SO_n_n})
    for (int n = 2; n <= 4; ++n) {
      GroupKind src{f, n};
      Schedule sch = schedule(src);
      for (int t = 0; t < 10; ++t) {
        auto p = random_cone_params<Sqrt2>(sch, rng);
        EmbedCheckReport rep = embedding_positivity_check(src, p);
        CHECK(rep.params_in_cones);
        CHECK(rep.products_equal);
      }
    }
}

TEST_CASE("flags") {
  for (Family f : kFamilies)
    for (int n = 2; n <= 4; ++n) {
      GroupKind k{f, n};
      IsotropicFlag s = standard_flag(k);
      IsotropicFlag o = opposite_flag(k);
      validate_flag(s);
      validate_flag(o);
      CHECK(s.spaces.size() == flag_steps(k));
      CHECK(flag_transverse(s, o));
      CHECK(!flag_transverse(s, s));
    }
  IsotropicFlag bad = standard_flag({Family::SO_n_nplus1, 2});
  bad.spaces.pop_back();
  CHECK_THROWS_AS(validate_flag(bad), Error);
}

TEST_CASE("unipotent transitivity") {
  Rng rng(13);
  for (Family f : kFamilies)
    for (int n = 2; n <= 3; ++n) {
      GroupKind k{f, n};
      Schedule sch = schedule(k);
      auto p = random_cone_params<Rational>(sch, rng);
      QMatrix u = semigroup_element(sch, p);
      IsotropicFlag x0 = apply_to_flag(u, opposite_flag(k));
      CHECK(solve_unipotent(x0) == u);
    }
}

TEST_CASE("triple certification") {
  Rng rng(29);
  for (Family f : kFamilies)
    for (int n = 2; n <= 3; ++n) {
      GroupKind k{f, n};
      Schedule sch = schedule(k);
      auto p = random_cone_params<Rational>(sch, rng);
      QMatrix u = semigroup_element(sch, p);
      IsotropicFlag x0 = apply_to_flag(u, opposite_flag(k));
      CHECK(triple_is_positive(standard_flag(k), x0, opposite_flag(k)));
      // non-transverse middle flag
      CHECK(!triple_is_positive(standard_flag(k), opposite_flag(k), opposite_flag(k)));
      // wrong outer pair
      CHECK_THROWS_AS(
          triple_is_positive(opposite_flag(k), x0, opposite_flag(k)), Error);
    }
}
