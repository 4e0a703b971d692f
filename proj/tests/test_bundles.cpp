#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "sonnp/bundles.hpp"

using namespace sonnp;

static CurveContext ctx2{2};

static std::vector<SectionSymbol> valued_q(int n, Rng &rng) {
  std::vector<SectionSymbol> q;
  for (int j = 1; j < n; ++j)
    q.push_back(SectionSymbol::valued("q_" + std::to_string(2 * j), rng.next_nonzero_rational()));
  return q;
}

TEST_CASE("line bundle symbols") {
  CHECK(k_pow(2).degree(2) == 4);
  CHECK(k_pow(1).tensor(k_pow(-1)).is_trivial());
  LineBundleSymbol m = m_pow(2, 0, Torsion::SquareTrivial);
  CHECK(m.eff_m() == 0);  // M^2 = O under the square-trivial flag
  CHECK(m_pow(1, 0, Torsion::SquareTrivial).eff_m() == 1);
  CHECK(m_pow(3, 0, Torsion::Trivial).is_trivial());
  CHECK(hom_symbol(k_pow(1), k_pow(3)) == k_pow(2));
}

TEST_CASE("family constructors typecheck") {
  for (int n = 1; n <= 4; ++n) {
    SectionSymbol mu = SectionSymbol::named("mu", true);
    SectionSymbol nu = SectionSymbol::named("nu", true);
    SectionSymbol z = SectionSymbol::zero();
    auto q = default_q(n - 1);
    if (n >= 2) CHECK(typecheck(build_hitchin(n, ctx2)).empty());
    long dmax = static_cast<long>(n) * (2 * ctx2.g - 2);
    for (long d : {1L, dmax})
      CHECK(typecheck(build_psi_d(n, ctx2, d, mu, z, q)).empty());
    CHECK(typecheck(build_psi_0(n, ctx2, Torsion::Generic, mu, nu, q)).empty());
    CurveContext prym = ctx2;
    prym.double_cover = prym.prym = true;
    if (n >= 2) CHECK(typecheck(build_psi_sw(n, prym, 1, mu, q)).empty());
    if (n >= 2) CHECK(typecheck(build_so_nn_hitchin(n, ctx2, default_q(n - 1), SectionSymbol::named("q_n", true))).empty());
  }
}

TEST_CASE("constructor guards") {
  SectionSymbol mu = SectionSymbol::named("mu", true);
  bool out_of_range = false;
  try {
    build_psi_d(2, ctx2, 5, mu, SectionSymbol::zero(), default_q(1));
  } catch (const Error &e) {
    out_of_range = e.code == "DegreeOutOfRange";
  }
  CHECK(out_of_range);
  bool no_prym = false;
  try {
    build_psi_sw(2, ctx2, 1, mu, default_q(1));  // plain context, no double cover
  } catch (const Error &e) {
    no_prym = e.code == "NoPrymFlag";
  }
  CHECK(no_prym);
}

TEST_CASE("assembled field lies in the orthogonal algebra") {
  Rng rng(31);
  for (int n = 1; n <= 4; ++n) {
    FamilyDatum f = build_psi_d(n, ctx2, 1, SectionSymbol::named("mu", true),
                                SectionSymbol::zero(), default_q(n - 1));
    RankLevelField rl = instantiate(f, &rng);
    AssembledField af = assemble_sl(rl);
    CHECK((af.phi.transpose() * af.j + af.j * af.phi).is_zero());
    CHECK(af.phi.trace() == 0);
    // eta* is the pairing-adjoint with a sign
    CHECK(eta_star(rl) == QMatrix(inverse(rl.qv) * rl.eta.transpose() * rl.qw).scaled(rat(-1)));
  }
}

TEST_CASE("odd characteristic coefficients vanish") {
  Rng rng(8);
  for (int n = 1; n <= 4; ++n) {
    FamilyDatum f = build_psi_d(n, ctx2, 2, SectionSymbol::valued("mu", rng.next_nonzero_rational()),
                                SectionSymbol::valued("nu", rng.next_nonzero_rational()),
                                valued_q(n, rng));
    auto inv = hitchin_invariants(f, 0);
    CHECK(inv.size() == static_cast<std::size_t>(n));  // p_2, p_4, ..., p_{2n}
    // valued data: independent of the instantiation seed
    CHECK(hitchin_invariants(f, 99) == inv);
  }
}

TEST_CASE("stability classifications") {
  SectionSymbol mu = SectionSymbol::named("mu", true);
  SectionSymbol nu = SectionSymbol::named("nu", true);
  SectionSymbol z = SectionSymbol::zero();
  for (int n = 1; n <= 4; ++n) {
    auto q = default_q(n - 1);
    long dmax = static_cast<long>(n) * (2 * ctx2.g - 2);
    for (long d = 1; d <= dmax; ++d) {
      FamilyDatum f = build_psi_d(n, ctx2, d, mu, z, q);
      StabilityReport s = stability(f);
      CHECK(s.verdict == Stability::Stable);
      CHECK(stability_bruteforce(f).verdict == s.verdict);
    }
    // mu = 0 leaves a positive-degree invariant line
    FamilyDatum f0 = build_psi_d(n, ctx2, 1, z, z, q);
    StabilityReport s0 = stability(f0);
    CHECK(s0.verdict == Stability::Unstable);
    CHECK(s0.has_witness);
    CHECK(s0.witness_degree > 0);
    CHECK(stability_bruteforce(f0).verdict == Stability::Unstable);
    // the d = 0 wall
    CHECK(stability(build_psi_0(n, ctx2, Torsion::Generic, mu, nu, q)).verdict ==
          Stability::Stable);
    CHECK(stability(build_psi_0(n, ctx2, Torsion::Generic, mu, z, q)).verdict ==
          Stability::Unstable);
    CHECK(stability(build_psi_0(n, ctx2, Torsion::Generic, z, nu, q)).verdict ==
          Stability::Unstable);
    CHECK(stability(build_psi_0(n, ctx2, Torsion::Trivial, z, z, q)).verdict ==
          Stability::StrictlyPolystable);
  }
}

TEST_CASE("gauge identities") {
  Rng rng(55);
  int n = 3;
  FamilyDatum f = build_psi_d(n, ctx2, 1, SectionSymbol::valued("mu", rat(2)),
                              SectionSymbol::valued("nu", rat(3)), valued_q(n, rng));
  AssembledField af = assemble_sl(instantiate(f));
  for (int t = 0; t < 10; ++t) {
    GaugePair gp{GaugePair::Kind::Scaling, rng.next_nonzero_rational(9)};
    FamilyDatum fb = apply_gauge(gp, f);
    auto [gv, gw] = gauge_matrices(gp, f);
    std::size_t rv = gv.rows(), rw = gw.rows(), d = rv + rw;
    QMatrix g(d, d);
    for (std::size_t i = 0; i < rv; ++i)
      for (std::size_t j = 0; j < rv; ++j) g(i, j) = gv(i, j);
    for (std::size_t i = 0; i < rw; ++i)
      for (std::size_t j = 0; j < rw; ++j) g(rv + i, rv + j) = gw(i, j);
    AssembledField bf = assemble_sl(instantiate(fb));
    CHECK(QMatrix(g * af.phi.scaled(gp.lambda) * inverse(g)) == bf.phi);
  }
  // switching is an involution on orbits and fixes the invariants
  GaugePair sw{GaugePair::Kind::Switching, rat(1)};
  FamilyDatum fs = apply_gauge(sw, f);
  CHECK(orbit_equal(f, fs));
  CHECK(orbit_equal(apply_gauge(sw, fs), f));
  CHECK(hitchin_invariants(fs, 0) == hitchin_invariants(f, 0));
  CHECK(fibration_point(fs) == fibration_point(f));
}

TEST_CASE("fibration coordinates") {
  Rng rng(2);
  int n = 2;
  FamilyDatum f = build_psi_d(n, ctx2, 1, SectionSymbol::valued("mu", rat(5)),
                              SectionSymbol::valued("nu", rat(7)), valued_q(n, rng));
  auto p = fibration_point(f);
  REQUIRE(p.size() == static_cast<std::size_t>(n));
  CHECK(p.back() == rat(35));  // the top coordinate is the product mu nu
}
