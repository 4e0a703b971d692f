// End-to-end gate: one pass/fail line per criterion, all comparisons exact.

#include <cstdio>
#include <string>

#include "sonnp/bundles.hpp"
#include "sonnp/cohomology.hpp"
#include "sonnp/positivity.hpp"

using namespace sonnp;

static int g_failures = 0;

static void report(int idx, const std::string &what, bool ok) {
  std::printf("%s criterion %d: %s\n", ok ? "PASS" : "FAIL", idx, what.c_str());
  if (!ok) ++g_failures;
}

static const Family kFamilies[] = {Family::SO_n_nminus1, Family::SO_n_n, Family::SO_n_nplus1};

// 1. component count 101 at (n,g) = (3,2); both counting formulas agree
static void criterion1() {
  bool ok = census(3, 2).total == 101;
  for (int g = 2; g <= 6; ++g)
    for (int n = 3; n <= 8; ++n) ok = ok && census(n, g).formulas_agree;
  report(1, "census(3,2) total 101; formulas agree for g in [2,6], n in [3,8]", ok);
}

// 2. expected dimension equals the differential count; component totals d-free
static void criterion2() {
  bool ok = true;
  for (int n = 1; n <= 6; ++n)
    for (int g = 2; g <= 6; ++g) {
      ExpectedDim e = expected_dim(n, g);
      ok = ok && e.expected == e.diff_space;
      long want = static_cast<long>(n) * (2 * n + 1) * (g - 1);
      for (long d = 1; d <= static_cast<long>(n) * (2 * g - 2); ++d)
        ok = ok && component_dims(n, g, d).total == want;
    }
  report(2, "expected dim and d-independent component totals, n in [1,6], g in [2,6]", ok);
}

// 3. both hypercohomology routes agree with vanishing top degree
static void criterion3() {
  bool ok = true;
  for (int n = 2; n <= 6; ++n)
    for (int g = 2; g <= 4; ++g)
      for (Torsion t : {Torsion::Generic, Torsion::SquareTrivial, Torsion::Trivial})
        for (long k = min_grade(n); k <= max_grade(n); ++k) {
          CurveContext ctx{g};
          HypercohReport h = hypercoh_dims(n, ctx, t, k);
          ok = ok && h.match && h.route_a.h2 == 0;
        }
  report(3, "hypercohomology routes agree, H^2 = 0, n in [2,6], g in [2,4]", ok);
}

// 4. longest-word schedules reduced and longest up to rank 8
static void criterion4() {
  bool ok = true;
  for (int n = 2; n <= 8; ++n) {
    for (Family f : kFamilies) {
      LongestReport r = verify_paper_longest({f, n});
      ok = ok && r.is_reduced && r.is_longest;
      if (f == Family::SO_n_n)
        ok = ok && r.target_length == static_cast<std::size_t>(n) * (n - 1);
    }
  }
  report(4, "longest words reduced+longest for n <= 8 (split form repaired, total n(n-1))", ok);
}

// 5. positivity of products: 500 seeded samples per group, n in [2,4]
static void criterion5() {
  bool ok = true;
  for (Family f : kFamilies)
    for (int n = 2; n <= 4; ++n) {
      GroupKind k{f, n};
      Schedule sch = schedule(k);
      Rng rng(1000 + 10 * n + static_cast<int>(f));
      for (int t = 0; t < 500; ++t) {
        auto p = random_cone_params<Rational>(sch, rng);
        auto q = random_cone_params<Rational>(sch, rng);
        QMatrix u = semigroup_element(sch, p) * semigroup_element(sch, q);
        ok = ok && factorize(k, u).ok();
      }
    }
  report(5, "semigroup closure on 500 samples per group, n in [2,4]", ok);
}

// 6. embedding identity on 500 samples per rank, both embeddings
static void criterion6() {
  bool ok = true;
  for (Family f : {Family::SO_n_nminus1, Family::SO_n_n})
    for (int n = 2; n <= 4; ++n) {
      GroupKind src{f, n};
      Schedule sch = schedule(src);
      Rng rng(2000 + 10 * n + static_cast<int>(f));
      for (int t = 0; t < 500; ++t) {
        auto p = random_cone_params<Sqrt2>(sch, rng);
        ok = ok && embedding_positivity_check(src, p).ok();
      }
    }
  report(6, "embedding parameter identity on 500 samples per rank, both embeddings", ok);
}

// 7. stability classifications, cross-checked by subset enumeration
static void criterion7() {
  bool ok = true;
  CurveContext ctx{2};
  SectionSymbol mu = SectionSymbol::named("mu", true);
  SectionSymbol nu = SectionSymbol::named("nu", true);
  SectionSymbol z = SectionSymbol::zero();
  auto agree = [&](const FamilyDatum &f, Stability expect) {
    StabilityReport s = stability(f);
    bool r = s.verdict == expect;
    if (f.n <= 4) r = r && stability_bruteforce(f).verdict == s.verdict;
    return r;
  };
  for (int n = 1; n <= 4; ++n) {
    auto q = default_q(n - 1);
    long dmax = static_cast<long>(n) * (2 * ctx.g - 2);
    for (long d = 1; d <= dmax; ++d)
      ok = ok && agree(build_psi_d(n, ctx, d, mu, z, q), Stability::Stable);
    ok = ok && agree(build_psi_d(n, ctx, 1, z, z, q), Stability::Unstable);
    ok = ok && agree(build_psi_0(n, ctx, Torsion::Generic, mu, nu, q), Stability::Stable);
    ok = ok && agree(build_psi_0(n, ctx, Torsion::Generic, mu, z, q), Stability::Unstable);
    ok = ok && agree(build_psi_0(n, ctx, Torsion::Generic, z, nu, q), Stability::Unstable);
    ok = ok && agree(build_psi_0(n, ctx, Torsion::Trivial, z, z, q),
                     Stability::StrictlyPolystable);
  }
  // rank one: the auxiliary degree is capped at 2g-2
  bool bound = true;
  try {
    build_psi_d(1, ctx, 2 * ctx.g - 2, mu, z, {});
  } catch (const Error &) {
    bound = false;
  }
  try {
    build_psi_d(1, ctx, 2 * ctx.g - 1, mu, z, {});
    bound = false;
  } catch (const Error &e) {
    bound = bound && e.code == "DegreeOutOfRange";
  }
  ok = ok && bound;
  report(7, "stability oracle matches classifications and brute force, n <= 4", ok);
}

// 8. gauge identities for 100 random scalings per rank; invariants on orbits
static void criterion8() {
  bool ok = true;
  for (int n = 1; n <= 4; ++n) {
    Rng rng(3000 + n);
    CurveContext ctx{2};
    std::vector<SectionSymbol> q;
    for (int j = 1; j < n; ++j)
      q.push_back(SectionSymbol::valued("q_" + std::to_string(2 * j),
                                        rng.next_nonzero_rational()));
    FamilyDatum f =
        build_psi_d(n, ctx, 1, SectionSymbol::valued("mu", rng.next_nonzero_rational()),
                    SectionSymbol::valued("nu", rng.next_nonzero_rational()), q);
    AssembledField af = assemble_sl(instantiate(f));
    auto embed_gauge = [](const QMatrix &gv, const QMatrix &gw) {
      std::size_t rv = gv.rows(), rw = gw.rows();
      QMatrix g(rv + rw, rv + rw);
      for (std::size_t i = 0; i < rv; ++i)
        for (std::size_t j2 = 0; j2 < rv; ++j2) g(i, j2) = gv(i, j2);
      for (std::size_t i = 0; i < rw; ++i)
        for (std::size_t j2 = 0; j2 < rw; ++j2) g(rv + i, rv + j2) = gw(i, j2);
      return g;
    };
    for (int t = 0; t < 100; ++t) {
      GaugePair gp{GaugePair::Kind::Scaling, rng.next_nonzero_rational(9)};
      FamilyDatum fb = apply_gauge(gp, f);
      auto [gv, gw] = gauge_matrices(gp, f);
      QMatrix g = embed_gauge(gv, gw);
      AssembledField bf = assemble_sl(instantiate(fb));
      ok = ok && QMatrix(g * af.phi.scaled(gp.lambda) * inverse(g)) == bf.phi;
      try {
        auto cp = char_poly(af.phi.scaled(gp.lambda));
        std::vector<Rational> even;
        bool odd_zero = true;
        for (std::size_t j = 1; j < cp.size(); ++j) {
          if (j % 2 == 1)
            odd_zero = odd_zero && cp[j] == 0;
          else
            even.push_back(cp[j]);
        }
        ok = ok && odd_zero && hitchin_invariants(fb, 0) == even;
      } catch (const Error &) {
        ok = false;
      }
    }
    GaugePair sw{GaugePair::Kind::Switching, Rational(1)};
    FamilyDatum fs = apply_gauge(sw, f);
    auto [gv, gw] = gauge_matrices(sw, f);
    QMatrix g = embed_gauge(gv, gw);
    AssembledField sf = assemble_sl(instantiate(fs));
    try {
      ok = ok && QMatrix(g * af.phi * inverse(g)) == sf.phi && orbit_equal(f, fs) &&
           hitchin_invariants(fs, 0) == hitchin_invariants(f, 0);
    } catch (const Error &) {
      ok = false;
    }
  }
  report(8, "gauge identities for 100 scalings per rank; invariants constant on orbits", ok);
}

// 9. triple certification: 200 positive and 200 negative samples per group
static void criterion9() {
  bool ok = true;
  for (Family f : kFamilies)
    for (int n = 2; n <= 3; ++n) {
      GroupKind k{f, n};
      Schedule sch = schedule(k);
      Rng rng(4000 + 10 * n + static_cast<int>(f));
      for (int t = 0; t < 200; ++t) {
        auto p = random_cone_params<Rational>(sch, rng);
        QMatrix u = semigroup_element(sch, p);
        IsotropicFlag x0 = apply_to_flag(u, opposite_flag(k));
        ok = ok && triple_is_positive(standard_flag(k), x0, opposite_flag(k));
        for (auto &slot : p)
          for (auto &v : slot) v = -v;
        QMatrix un = semigroup_element(sch, p, /*check_cones=*/false);
        IsotropicFlag xb = apply_to_flag(un, opposite_flag(k));
        ok = ok && !triple_is_positive(standard_flag(k), xb, opposite_flag(k));
      }
    }
  report(9, "triple certification: 200 positive accepted, 200 negative rejected per group", ok);
}

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  std::printf("%s: %d criterion failure(s)\n", g_failures == 0 ? "OK" : "FAILED", g_failures);
  return g_failures == 0 ? 0 : 1;
}
