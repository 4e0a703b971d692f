#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "sonnp/cohomology.hpp"

using namespace sonnp;

TEST_CASE("line bundle cohomology dimensions") {
  for (int g = 2; g <= 5; ++g) {
    CurveContext ctx{g};
    CHECK(rr_dims(k_pow(0), ctx).h0 == 1);
    CHECK(rr_dims(k_pow(0), ctx).h1 == g);
    CHECK(rr_dims(k_pow(1), ctx).h0 == g);
    CHECK(rr_dims(k_pow(1), ctx).h1 == 1);
    CHECK(rr_dims(k_pow(2), ctx).h0 == 3 * (g - 1));
    CHECK(rr_dims(k_pow(-1), ctx).h0 == 0);
    for (long p = -3; p <= 3; ++p) {
      DimReport r = rr_dims(k_pow(p), ctx);
      CHECK(r.h0 - r.h1 == k_pow(p).degree(g) + 1 - g);  // Riemann-Roch
      CHECK(r.h0 >= 0);
      CHECK(r.h1 >= 0);
    }
    // generic torsion twist kills sections in degree 0
    DimReport t = rr_dims(m_pow(1, 0, Torsion::Generic), ctx);
    CHECK(t.h0 == 0);
    // a low positive-degree generic twist falls back to the generic count
    DimReport u = rr_dims(m_pow(1, 1, Torsion::Generic), ctx);
    CHECK(u.generic_mode);
    CHECK(u.h0 == std::max(1L + 1 - g, 0L));
  }
}

TEST_CASE("grade window and guards") {
  CHECK(min_grade(2) == -2);
  CHECK(max_grade(2) == 0);
  CHECK(min_grade(4) == -6);
  CHECK(max_grade(4) == 4);
  CurveContext ctx{2};
  bool bad = false;
  try {
    graded_table(2, ctx, Torsion::Generic, 5);
  } catch (const Error &e) {
    bad = e.code == "BadGrade";
  }
  CHECK(bad);
}

TEST_CASE("deformation complex dimensions agree between routes") {
  for (int n = 2; n <= 5; ++n)
    for (int g = 2; g <= 4; ++g)
      for (Torsion t : {Torsion::Generic, Torsion::SquareTrivial, Torsion::Trivial})
        for (long k = min_grade(n); k <= max_grade(n); ++k) {
          CurveContext ctx{g};
          HypercohReport h = hypercoh_dims(n, ctx, t, k);
          CHECK(h.match);
          CHECK(h.route_a.h2 == 0);
          CHECK(h.route_a.h0 - h.route_a.h1 == hypercoh_euler(n, ctx, t, k));
        }
}

TEST_CASE("known deformation values") {
  CurveContext ctx{2};
  HypercohReport h = hypercoh_dims(2, ctx, Torsion::Generic, -2);
  CHECK(h.route_a.h0 == 0);
  CHECK(h.route_a.h1 == 9);
  CHECK(h.route_a.h2 == 0);
}

TEST_CASE("expected dimension equals the differential count") {
  for (int n = 1; n <= 6; ++n)
    for (int g = 2; g <= 6; ++g) {
      ExpectedDim e = expected_dim(n, g);
      CHECK(e.expected == static_cast<long>(n) * (2 * n + 1) * (2 * g - 2));
      CHECK(e.expected == e.diff_space);
    }
}

TEST_CASE("component dimensions are d-independent") {
  for (int n = 1; n <= 5; ++n)
    for (int g = 2; g <= 4; ++g) {
      long dmax = static_cast<long>(n) * (2 * g - 2);
      for (long d = 1; d <= dmax; ++d) {
        ComponentDims c = component_dims(n, g, d);
        CHECK(c.base + c.fiber + c.extra == c.total);
        CHECK(c.total == static_cast<long>(n) * (2 * n + 1) * (g - 1));
      }
      bool out = false;
      try {
        component_dims(n, g, dmax + 1);
      } catch (const Error &e) {
        out = e.code == "DegreeOutOfRange";
      }
      CHECK(out);
    }
}

TEST_CASE("component census") {
  CensusReport c = census(3, 2);
  CHECK(c.total == 101);
  CHECK(c.formulas_agree);
  CHECK(c.formula_a == 101);
  long compact = 0, sw = 0, xd = 0;
  for (const auto &e : c.entries) {
    if (e.label == "compact-type") compact = e.count;
    else if (e.label == "X_sw") sw = e.count;
    else xd += e.count;
  }
  CHECK(compact == 4L * (1 << 4));       // 4 * 2^{2g}
  CHECK(sw == 2L * ((1 << 4) - 1));      // 2(2^{2g} - 1)
  CHECK(xd == 3 * (2 * 2 - 2) + 1);      // X_d for d in (0, n(2g-2)] plus X_0

  for (int n = 2; n <= 6; ++n)
    for (int g = 2; g <= 4; ++g) CHECK(census(n, g).formulas_agree);
  CHECK(census(2, 2).hermitian_caveat);
  CHECK(!census(3, 2).hermitian_caveat);
  bool unsupported = false;
  try {
    census(1, 2);
  } catch (const Error &e) {
    unsupported = e.code == "UnsupportedRank";
  }
  CHECK(unsupported);
}

TEST_CASE("spin lifting parity") {
  CHECK(lifts_to_spin(0));
  CHECK(lifts_to_spin(2));
  CHECK(!lifts_to_spin(1));
  CHECK(!lifts_to_spin(3));
}
