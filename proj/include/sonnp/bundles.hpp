#ifndef SONNP_BUNDLES_H
#define SONNP_BUNDLES_H

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "sonnp/matrix.hpp"

namespace sonnp {

// Formal line-bundle bookkeeping over a genus-g curve: powers of the canonical
// bundle K and of one auxiliary degree-d bundle M, with a torsion flag that
// decides which formal powers are actually trivial.
enum class Torsion { Generic, SquareTrivial, Trivial };

inline std::string torsion_name(Torsion t) {
  switch (t) {
    case Torsion::Generic: return "generic";
    case Torsion::SquareTrivial: return "square-trivial";
    case Torsion::Trivial: return "trivial";
  }
  return "?";
}

struct CurveContext {
  int g = 2;
  bool double_cover = false;  // presence of the unramified double cover
  bool prym = false;          // the auxiliary bundle satisfies the Prym condition

  int cover_genus() const { return 2 * g - 1; }
};

struct LineBundleSymbol {
  long k_power = 0;
  long m_power = 0;
  long m_degree = 0;
  Torsion torsion = Torsion::Generic;

  long degree(int g) const { return k_power * (2 * g - 2) + m_power * m_degree; }

  // Effective power of M once the torsion flag collapses formal powers.
  long eff_m() const {
    switch (torsion) {
      case Torsion::Trivial: return 0;
      case Torsion::SquareTrivial: return std::abs(m_power % 2);
      case Torsion::Generic: return m_power;
    }
    return m_power;
  }

  bool is_trivial() const { return k_power == 0 && eff_m() == 0; }

  LineBundleSymbol inverse() const {
    LineBundleSymbol s = *this;
    s.k_power = -k_power;
    s.m_power = -m_power;
    return s;
  }

  LineBundleSymbol tensor(const LineBundleSymbol &o) const {
    LineBundleSymbol s = *this;
    s.k_power += o.k_power;
    s.m_power += o.m_power;
    return s;
  }

  // Isomorphism-class key (valid when both symbols share m_degree/torsion).
  std::pair<long, long> key() const { return {k_power, eff_m()}; }
  bool operator<(const LineBundleSymbol &o) const { return key() < o.key(); }
  bool operator==(const LineBundleSymbol &o) const { return key() == o.key(); }

  std::string str() const {
    std::string s;
    if (k_power != 0) s += "K^" + std::to_string(k_power);
    if (m_power != 0) s += (s.empty() ? "" : " ") + std::string("M^") + std::to_string(m_power);
    return s.empty() ? "O" : s;
  }
};

inline LineBundleSymbol k_pow(long p) { return {p, 0, 0, Torsion::Generic}; }

inline LineBundleSymbol m_pow(long p, long deg, Torsion t) { return {0, p, deg, t}; }

// Hom(a, b) as a symbol.
inline LineBundleSymbol hom_symbol(const LineBundleSymbol &a, const LineBundleSymbol &b) {
  return b.tensor(a.inverse());
}

// One summand of an orthogonal chain bundle. rank 2 marks the pushforward
// block of the double-cover constructions; dual is the index of the summand it
// pairs with (antidiagonal chain pairing, self-paired center/rank-2 blocks).
struct Summand {
  LineBundleSymbol sym;
  int rank = 1;
  std::string label;
  std::size_t dual = 0;
  int sw2 = 0;  // component label of a rank-2 pushforward block
};

struct OrthChainBundle {
  std::vector<Summand> summands;

  int total_rank() const {
    int r = 0;
    for (const auto &s : summands) r += s.rank;
    return r;
  }

  LineBundleSymbol det() const {
    LineBundleSymbol d;
    for (const auto &s : summands) d = d.tensor(s.sym);
    return d;
  }

  // Pairing well-definedness: summand tensor its dual is trivial.
  bool pairing_ok() const {
    for (std::size_t i = 0; i < summands.size(); ++i) {
      const Summand &s = summands[i];
      if (s.dual >= summands.size()) return false;
      if (summands[s.dual].dual != i) return false;
      if (s.rank == 2) continue;  // self-dual block, pairing internal
      if (!s.sym.tensor(summands[s.dual].sym).is_trivial()) return false;
    }
    return true;
  }
};

// Chain bundle with plain antidiagonal pairing.
inline OrthChainBundle chain_bundle(const std::vector<LineBundleSymbol> &syms,
                                    const std::vector<std::string> &labels) {
  OrthChainBundle b;
  for (std::size_t i = 0; i < syms.size(); ++i)
    b.summands.push_back({syms[i], 1, labels[i], syms.size() - 1 - i, 0});
  return b;
}

enum class SectionKind { Zero, One, Named };

struct SectionSymbol {
  SectionKind kind = SectionKind::Zero;
  std::string name;
  bool marked_nonzero = false;
  bool has_value = false;
  Rational value{0};

  static SectionSymbol zero() { return {}; }
  static SectionSymbol one() { return {SectionKind::One, "1", true, true, Rational(1)}; }
  static SectionSymbol named(const std::string &n, bool nonzero) {
    return {SectionKind::Named, n, nonzero, false, Rational(0)};
  }
  static SectionSymbol valued(const std::string &n, const Rational &v) {
    return {SectionKind::Named, n, v != 0, true, v};
  }

  bool is_zero() const {
    if (kind == SectionKind::Zero) return true;
    if (has_value) return value == 0;
    return !marked_nonzero;
  }
};

// W-summand x V-summand grid of section symbols (summand-level, so the
// rank-2 pushforward block occupies a single row).
struct HiggsFieldMatrix {
  std::size_t rows = 0, cols = 0;
  std::vector<SectionSymbol> entries;

  HiggsFieldMatrix() = default;
  HiggsFieldMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), entries(r * c) {}

  SectionSymbol &at(std::size_t r, std::size_t c) { return entries[r * cols + c]; }
  const SectionSymbol &at(std::size_t r, std::size_t c) const { return entries[r * cols + c]; }
};

enum class FamilyKind { Hitchin, PsiD, Psi0, PsiSw, SoNnHitchin };

inline std::string family_kind_name(FamilyKind k) {
  switch (k) {
    case FamilyKind::Hitchin: return "hitchin";
    case FamilyKind::PsiD: return "psi_d";
    case FamilyKind::Psi0: return "psi_0";
    case FamilyKind::PsiSw: return "psi_sw";
    case FamilyKind::SoNnHitchin: return "so_nn_hitchin";
  }
  return "?";
}

struct FamilyDatum {
  FamilyKind kind = FamilyKind::Hitchin;
  int n = 1;
  CurveContext ctx;
  long m_degree = 0;          // degree of the datum's auxiliary bundle (signed)
  Torsion torsion = Torsion::Generic;
  bool m_inverted = false;    // datum's M is the inverse of the reference bundle
  int sw2 = 0;
  SectionSymbol mu, nu;
  std::vector<SectionSymbol> q;  // q[j-1] is q_{2j} (q_n for SoNnHitchin held in qn)
  SectionSymbol qn;              // the odd invariant of the SO(n,n) family
  OrthChainBundle V, W;
  HiggsFieldMatrix eta;
};

// ---------------------------------------------------------------------------
// Family constructors

// q names: q[j-1] named "q_{2j}".
inline std::vector<SectionSymbol> default_q(int count) {
  std::vector<SectionSymbol> q;
  for (int j = 1; j <= count; ++j) q.push_back(SectionSymbol::named("q_" + std::to_string(2 * j), false));
  return q;
}

inline FamilyDatum build_hitchin(int n, const CurveContext &ctx,
                                 const std::vector<SectionSymbol> &q) {
  if (n < 1) fail("DegreeOutOfRange", "rank must be at least 1");
  if (q.size() != static_cast<std::size_t>(n)) fail("DimensionMismatch", "need q_2..q_{2n}");
  FamilyDatum f;
  f.kind = FamilyKind::Hitchin;
  f.n = n;
  f.ctx = ctx;
  f.q = q;
  std::vector<LineBundleSymbol> vs, ws;
  std::vector<std::string> vl, wl;
  for (int i = 0; i < n; ++i) {
    vs.push_back(k_pow(n - 1 - 2 * i));
    vl.push_back("V" + std::to_string(i + 1));
  }
  for (int i = 0; i <= n; ++i) {
    ws.push_back(k_pow(n - 2 * i));
    wl.push_back("W" + std::to_string(i + 1));
  }
  f.V = chain_bundle(vs, vl);
  f.W = chain_bundle(ws, wl);
  f.eta = HiggsFieldMatrix(n + 1, n);
  for (int j = 1; j <= n; ++j) f.eta.at(0, j - 1) = q[j - 1];
  for (int i = 2; i <= n + 1; ++i) {
    f.eta.at(i - 1, i - 2) = SectionSymbol::one();
    if (i <= n)
      for (int j = i; j <= n; ++j) f.eta.at(i - 1, j - 1) = q[j - i];
  }
  return f;
}

inline FamilyDatum build_hitchin(int n, const CurveContext &ctx) {
  return build_hitchin(n, ctx, default_q(n));
}

// Shared shape of the d-labeled families: W = M + K-chain + M^{-1}. m_degree
// may be negative (the mirror family produced by the switching gauge).
inline FamilyDatum build_psi_shape(FamilyKind kind, int n, const CurveContext &ctx,
                                   long m_degree, Torsion torsion, bool m_inverted,
                                   const SectionSymbol &mu, const SectionSymbol &nu,
                                   const std::vector<SectionSymbol> &q) {
  if (q.size() + 1 != static_cast<std::size_t>(n)) fail("DimensionMismatch", "need q_2..q_{2n-2}");
  FamilyDatum f;
  f.kind = kind;
  f.n = n;
  f.ctx = ctx;
  f.m_degree = m_degree;
  f.torsion = torsion;
  f.m_inverted = m_inverted;
  f.mu = mu;
  f.nu = nu;
  f.q = q;
  std::vector<LineBundleSymbol> vs, ws;
  std::vector<std::string> vl, wl;
  for (int i = 0; i < n; ++i) {
    vs.push_back(k_pow(n - 1 - 2 * i));
    vl.push_back("V" + std::to_string(i + 1));
  }
  ws.push_back(m_pow(1, m_degree, torsion));
  wl.push_back("M");
  for (int i = 0; i < n - 1; ++i) {
    ws.push_back(k_pow(n - 2 - 2 * i));
    wl.push_back("W" + std::to_string(i + 2));
  }
  ws.push_back(m_pow(-1, m_degree, torsion));
  wl.push_back("M^-1");
  f.V = chain_bundle(vs, vl);
  f.W = chain_bundle(ws, wl);
  f.eta = HiggsFieldMatrix(n + 1, n);
  f.eta.at(0, n - 1) = nu;
  f.eta.at(n, n - 1) = mu;
  for (int i = 2; i <= n; ++i) {
    f.eta.at(i - 1, i - 2) = SectionSymbol::one();
    for (int j = i; j <= n - 1; ++j) f.eta.at(i - 1, j - 1) = q[j - i];
  }
  return f;
}

inline FamilyDatum build_psi_d(int n, const CurveContext &ctx, long d,
                               const SectionSymbol &mu, const SectionSymbol &nu,
                               const std::vector<SectionSymbol> &q) {
  if (n < 1) fail("DegreeOutOfRange", "rank must be at least 1");
  long dmax = static_cast<long>(n) * (2 * ctx.g - 2);
  if (d < 0 || d > dmax)
    fail("DegreeOutOfRange", "d = " + std::to_string(d) + " outside [0, " + std::to_string(dmax) + "]");
  return build_psi_shape(d == 0 ? FamilyKind::Psi0 : FamilyKind::PsiD, n, ctx, d,
                         Torsion::Generic, false, mu, nu, q);
}

inline FamilyDatum build_psi_0(int n, const CurveContext &ctx, Torsion torsion,
                               const SectionSymbol &mu, const SectionSymbol &nu,
                               const std::vector<SectionSymbol> &q) {
  if (n < 1) fail("DegreeOutOfRange", "rank must be at least 1");
  return build_psi_shape(FamilyKind::Psi0, n, ctx, 0, torsion, false, mu, nu, q);
}

// Rank-2 pushforward block descriptor.
struct PushforwardBlock {
  LineBundleSymbol sym;  // degree-0 rank-2 symbol placeholder
  int sw2 = 0;
  long cover_m_degree = 0;
};

inline PushforwardBlock pushforward_rank2(const CurveContext &ctx, long cover_m_degree, int sw2) {
  if (!ctx.double_cover || !ctx.prym)
    fail("NoPrymFlag", "pushforward requires a double cover with the Prym condition");
  PushforwardBlock b;
  // deg pi_* M = deg M + (1 - cover_genus) + 2(g - 1) = deg M for this cover.
  b.sym = LineBundleSymbol{0, 0, 0, Torsion::Generic};
  b.sw2 = sw2;
  b.cover_m_degree = cover_m_degree;
  return b;
}

inline FamilyDatum build_psi_sw(int n, const CurveContext &ctx, int sw2,
                                const SectionSymbol &mu, const std::vector<SectionSymbol> &q) {
  if (n < 2) fail("DegreeOutOfRange", "rank must be at least 2");
  if (q.size() + 1 != static_cast<std::size_t>(n)) fail("DimensionMismatch", "need q_2..q_{2n-2}");
  PushforwardBlock pb = pushforward_rank2(ctx, 0, sw2);
  FamilyDatum f;
  f.kind = FamilyKind::PsiSw;
  f.n = n;
  f.ctx = ctx;
  f.sw2 = sw2;
  f.mu = mu;
  f.q = q;
  std::vector<LineBundleSymbol> vs;
  std::vector<std::string> vl;
  for (int i = 0; i < n; ++i) {
    vs.push_back(k_pow(n - 1 - 2 * i));
    vl.push_back("V" + std::to_string(i + 1));
  }
  f.V = chain_bundle(vs, vl);
  f.W.summands.push_back({pb.sym, 2, "pi_*M", 0, pb.sw2});
  for (int i = 0; i < n - 1; ++i) {
    Summand s;
    s.sym = k_pow(n - 2 - 2 * i);
    s.label = "W" + std::to_string(i + 2);
    s.dual = n - 1 - i;  // antidiagonal among the line summands; block 0 self-paired
    f.W.summands.push_back(s);
  }
  f.eta = HiggsFieldMatrix(n, n);  // summand-level rows: block + n-1 lines
  f.eta.at(0, n - 1) = mu;         // pi_* mu into the rank-2 block
  for (int i = 2; i <= n; ++i) {
    f.eta.at(i - 1, i - 2) = SectionSymbol::one();
    for (int j = i; j <= n - 1; ++j) f.eta.at(i - 1, j - 1) = q[j - i];
  }
  return f;
}

// SO(n,n) Hitchin shape: V = K^{n-2} + ... + K^{2-n} + O (self-paired last
// slot), W = K^{n-1} + ... + K^{1-n}; row 1 carries q_2..q_{2(n-1)} and the odd
// invariant q_n at (1,n), subdiagonal ones below.
inline FamilyDatum build_so_nn_hitchin(int n, const CurveContext &ctx,
                                       const std::vector<SectionSymbol> &q,
                                       const SectionSymbol &qn) {
  if (n < 2) fail("DegreeOutOfRange", "rank must be at least 2");
  if (q.size() + 1 != static_cast<std::size_t>(n)) fail("DimensionMismatch", "need q_2..q_{2n-2}");
  FamilyDatum f;
  f.kind = FamilyKind::SoNnHitchin;
  f.n = n;
  f.ctx = ctx;
  f.q = q;
  f.qn = qn;
  for (int i = 0; i < n - 1; ++i) {
    Summand s;
    s.sym = k_pow(n - 2 - 2 * i);
    s.label = "V" + std::to_string(i + 1);
    s.dual = n - 2 - i;
    f.V.summands.push_back(s);
  }
  {
    Summand s;
    s.sym = LineBundleSymbol{};
    s.label = "O";
    s.dual = n - 1;
    f.V.summands.push_back(s);
  }
  std::vector<LineBundleSymbol> ws;
  std::vector<std::string> wl;
  for (int i = 0; i < n; ++i) {
    ws.push_back(k_pow(n - 1 - 2 * i));
    wl.push_back("W" + std::to_string(i + 1));
  }
  f.W = chain_bundle(ws, wl);
  f.eta = HiggsFieldMatrix(n, n);
  for (int j = 1; j <= n - 1; ++j) f.eta.at(0, j - 1) = q[j - 1];
  f.eta.at(0, n - 1) = qn;
  for (int j = 1; j <= n - 1; ++j) f.eta.at(j, j - 1) = SectionSymbol::one();
  for (int i = 2; i <= n - 1; ++i)
    for (int j = i; j <= n - 1; ++j) f.eta.at(i - 1, j - 1) = q[j - i];
  return f;
}

inline FamilyDatum build_so_nn_hitchin(int n, const CurveContext &ctx) {
  SectionSymbol qn = SectionSymbol::named("q_" + std::to_string(n), false);
  return build_so_nn_hitchin(n, ctx, default_q(n - 1), qn);
}

// ---------------------------------------------------------------------------
// Type checking

inline LineBundleSymbol entry_hom_symbol(const FamilyDatum &f, std::size_t row, std::size_t col) {
  LineBundleSymbol k1 = k_pow(1);
  return hom_symbol(f.V.summands[col].sym, f.W.summands[row].sym).tensor(k1);
}

inline long entry_hom_degree(const FamilyDatum &f, std::size_t row, std::size_t col) {
  const Summand &w = f.W.summands[row];
  const Summand &v = f.V.summands[col];
  long d = w.sym.degree(f.ctx.g) - v.sym.degree(f.ctx.g) + (2 * f.ctx.g - 2);
  if (w.rank == 2) d = w.sym.degree(f.ctx.g) + 2 * (-v.sym.degree(f.ctx.g) + 2 * f.ctx.g - 2);
  return d;
}

inline std::vector<std::string> typecheck(const FamilyDatum &f) {
  std::vector<std::string> errs;
  if (!f.V.pairing_ok()) errs.push_back("V pairing not well defined");
  if (!f.W.pairing_ok()) errs.push_back("W pairing not well defined");
  if (!f.V.det().is_trivial()) errs.push_back("det V not trivial");
  if (!f.W.det().is_trivial()) errs.push_back("det W not trivial");
  for (std::size_t r = 0; r < f.eta.rows; ++r)
    for (std::size_t c = 0; c < f.eta.cols; ++c) {
      const SectionSymbol &s = f.eta.at(r, c);
      std::string where = "entry (" + std::to_string(r + 1) + "," + std::to_string(c + 1) + ")";
      if (s.kind == SectionKind::Zero) continue;
      long deg = entry_hom_degree(f, r, c);
      if (s.kind == SectionKind::One) {
        if (f.W.summands[r].rank != 1 || !entry_hom_symbol(f, r, c).is_trivial())
          errs.push_back(where + ": unit entry over a nontrivial bundle");
      } else if (s.marked_nonzero && deg < 0) {
        errs.push_back(where + ": negative-degree section marked nonzero");
      }
    }
  return errs;
}

// ---------------------------------------------------------------------------
// Numeric assembly: eta and the full (2n+1)-square field

struct RankLevelField {
  QMatrix qv, qw;   // chain pairings at rank level
  QMatrix eta;      // rank(W) x rank(V)
};

inline Rational section_value(const SectionSymbol &s, Rng *rng) {
  if (s.kind == SectionKind::Zero) return Rational(0);
  if (s.has_value) return s.value;
  if (!s.marked_nonzero) return Rational(0);
  if (rng == nullptr) fail("InvalidParams", "section '" + s.name + "' has no value");
  return rng->next_nonzero_rational();
}

// Pairing Gram matrix of an orthogonal chain bundle at rank level. Rank-2
// blocks expand to two slots paired with each other.
inline QMatrix chain_pairing(const OrthChainBundle &b) {
  std::size_t d = b.total_rank();
  QMatrix q(d, d);
  std::vector<std::size_t> offset(b.summands.size());
  std::size_t pos = 0;
  for (std::size_t i = 0; i < b.summands.size(); ++i) {
    offset[i] = pos;
    pos += b.summands[i].rank;
  }
  for (std::size_t i = 0; i < b.summands.size(); ++i) {
    if (b.summands[i].rank == 2) {
      q(offset[i], offset[i] + 1) = Rational(1);
      q(offset[i] + 1, offset[i]) = Rational(1);
    } else {
      q(offset[i], offset[b.summands[i].dual]) = Rational(1);
    }
  }
  return q;
}

// Numeric instantiation. Sections without values are drawn from rng (nonzero
// markers) or set to zero. The rank-2 pushforward block expands to the two
// cover slots; its entry becomes the two components of the pushed-forward
// section (equal values in this pointwise model).
inline RankLevelField instantiate(const FamilyDatum &f, Rng *rng = nullptr) {
  RankLevelField out;
  out.qv = chain_pairing(f.V);
  out.qw = chain_pairing(f.W);
  std::size_t rv = f.V.total_rank(), rw = f.W.total_rank();
  out.eta = QMatrix(rw, rv);
  std::size_t row = 0;
  for (std::size_t r = 0; r < f.eta.rows; ++r) {
    for (std::size_t c = 0; c < f.eta.cols; ++c) {
      const SectionSymbol &s = f.eta.at(r, c);
      if (s.kind == SectionKind::Zero) continue;
      Rational v = section_value(s, rng);
      out.eta(row, c) = v;
      if (f.W.summands[r].rank == 2) out.eta(row + 1, c) = v;
    }
    row += f.W.summands[r].rank;
  }
  return out;
}

// eta^* = -Q_V^{-1} eta^T Q_W at rank level.
inline QMatrix eta_star(const RankLevelField &rl) {
  return (inverse(rl.qv) * rl.eta.transpose() * rl.qw).scaled(Rational(-1));
}

// Full field [[0, eta*],[eta, 0]] on V + W, with its invariance form.
struct AssembledField {
  QMatrix phi;
  QMatrix j;
};

inline AssembledField assemble_sl(const RankLevelField &rl) {
  std::size_t rv = rl.qv.rows(), rw = rl.qw.rows(), d = rv + rw;
  AssembledField out{QMatrix(d, d), QMatrix(d, d)};
  QMatrix es = eta_star(rl);
  for (std::size_t i = 0; i < rv; ++i)
    for (std::size_t j2 = 0; j2 < rw; ++j2) {
      out.phi(i, rv + j2) = es(i, j2);
      out.phi(rv + j2, i) = rl.eta(j2, i);
    }
  for (std::size_t i = 0; i < rv; ++i)
    for (std::size_t j2 = 0; j2 < rv; ++j2) out.j(i, j2) = rl.qv(i, j2);
  for (std::size_t i = 0; i < rw; ++i)
    for (std::size_t j2 = 0; j2 < rw; ++j2) out.j(rv + i, rv + j2) = rl.qw(i, j2);
  if (!(out.phi.transpose() * out.j + out.j * out.phi).is_zero())
    fail("NotInGroup", "assembled field does not preserve the form");
  return out;
}

// ---------------------------------------------------------------------------
// Chain stability oracle

enum class Stability { Stable, StrictlyPolystable, Unstable };

inline std::string stability_name(Stability s) {
  switch (s) {
    case Stability::Stable: return "stable";
    case Stability::StrictlyPolystable: return "strictly-polystable";
    case Stability::Unstable: return "unstable";
  }
  return "?";
}

struct StabilityReport {
  Stability verdict = Stability::Stable;
  std::vector<std::string> witness;  // summand labels of the extremal invariant subbundle
  long witness_degree = 0;
  bool has_witness = false;
};

// Directed graph on the summands of V + W: an edge x -> y whenever the field
// has a nonzero entry mapping x into y (eta edges and their adjoint mirrors).
struct SummandGraph {
  std::vector<std::string> labels;
  std::vector<long> degrees;
  std::vector<std::vector<std::size_t>> out;
};

inline SummandGraph summand_graph(const FamilyDatum &f) {
  for (std::size_t r = 0; r < f.eta.rows; ++r)
    for (std::size_t c = 0; c < f.eta.cols; ++c)
      if (f.eta.at(r, c).kind == SectionKind::Named && f.eta.at(r, c).has_value &&
          f.eta.at(r, c).marked_nonzero != (f.eta.at(r, c).value != 0))
        fail("UnsupportedField", "inconsistent section marking");
  SummandGraph g;
  const std::size_t nv = f.V.summands.size(), nw = f.W.summands.size();
  for (const auto &s : f.V.summands) {
    g.labels.push_back("V:" + s.label);
    g.degrees.push_back(s.sym.degree(f.ctx.g));
  }
  for (const auto &s : f.W.summands) {
    g.labels.push_back("W:" + s.label);
    g.degrees.push_back(s.sym.degree(f.ctx.g));
  }
  g.out.resize(nv + nw);
  for (std::size_t r = 0; r < f.eta.rows; ++r)
    for (std::size_t c = 0; c < f.eta.cols; ++c) {
      if (f.eta.at(r, c).is_zero()) continue;
      // eta edge V_c -> W_r.
      g.out[c].push_back(nv + r);
      // adjoint edge W_{dual r} -> V_{dual c}.
      g.out[nv + f.W.summands[r].dual].push_back(f.V.summands[c].dual);
    }
  return g;
}

inline bool subset_closed(const SummandGraph &g, unsigned long mask) {
  for (std::size_t i = 0; i < g.out.size(); ++i) {
    if (!(mask >> i & 1)) continue;
    for (std::size_t j : g.out[i])
      if (!(mask >> j & 1)) return false;
  }
  return true;
}

inline long subset_degree(const SummandGraph &g, unsigned long mask) {
  long d = 0;
  for (std::size_t i = 0; i < g.out.size(); ++i)
    if (mask >> i & 1) d += g.degrees[i];
  return d;
}

// Invariant subbundles generated by closing summand subsets under the field.
inline std::vector<unsigned long> closed_subsets(const SummandGraph &g) {
  const std::size_t m = g.out.size();
  if (m > 24) fail("UnsupportedField", "too many summands for the chain oracle");
  std::vector<unsigned long> out;
  std::set<unsigned long> seen;
  for (unsigned long seed = 1; seed < (1ul << m) - 1; ++seed) {
    unsigned long mask = seed;
    bool grew = true;
    while (grew) {
      grew = false;
      for (std::size_t i = 0; i < m; ++i) {
        if (!(mask >> i & 1)) continue;
        for (std::size_t j : g.out[i])
          if (!(mask >> j & 1)) { mask |= 1ul << j; grew = true; }
      }
    }
    if (mask != (1ul << m) - 1 && seen.insert(mask).second) out.push_back(mask);
  }
  return out;
}

inline StabilityReport classify_stability(const SummandGraph &g,
                                          const std::vector<unsigned long> &invariant) {
  StabilityReport rep;
  long best = 0;
  unsigned long best_mask = 0;
  bool any = false;
  for (unsigned long mask : invariant) {
    long d = subset_degree(g, mask);
    if (!any || d > best) { best = d; best_mask = mask; any = true; }
  }
  if (!any || best < 0) {
    rep.verdict = Stability::Stable;
    if (any) {
      rep.has_witness = true;
      rep.witness_degree = best;
    }
  } else if (best > 0) {
    rep.verdict = Stability::Unstable;
    rep.has_witness = true;
    rep.witness_degree = best;
  } else {
    // Degree 0: polystable iff every degree-0 invariant subbundle has an
    // invariant complement.
    bool polystable = true;
    const unsigned long full = (1ul << g.out.size()) - 1;
    for (unsigned long mask : invariant)
      if (subset_degree(g, mask) == 0 && !subset_closed(g, full & ~mask)) {
        polystable = false;
        best_mask = mask;
        break;
      }
    rep.verdict = polystable ? Stability::StrictlyPolystable : Stability::Unstable;
    rep.has_witness = true;
    rep.witness_degree = 0;
    if (polystable) {
      for (unsigned long mask : invariant)
        if (subset_degree(g, mask) == 0) { best_mask = mask; break; }
    }
  }
  if (rep.has_witness)
    for (std::size_t i = 0; i < g.out.size(); ++i)
      if (best_mask >> i & 1) rep.witness.push_back(g.labels[i]);
  return rep;
}

inline StabilityReport stability(const FamilyDatum &f) {
  SummandGraph g = summand_graph(f);
  return classify_stability(g, closed_subsets(g));
}

// Independent enumeration: test every subset for closedness directly.
inline StabilityReport stability_bruteforce(const FamilyDatum &f) {
  SummandGraph g = summand_graph(f);
  const std::size_t m = g.out.size();
  if (m > 24) fail("UnsupportedField", "too many summands for brute force");
  std::vector<unsigned long> invariant;
  for (unsigned long mask = 1; mask < (1ul << m) - 1; ++mask)
    if (subset_closed(g, mask)) invariant.push_back(mask);
  return classify_stability(g, invariant);
}

// ---------------------------------------------------------------------------
// Gauge action and orbits

struct GaugePair {
  enum class Kind { Scaling, Switching } kind = Kind::Scaling;
  Rational lambda{1};
};

inline FamilyDatum apply_gauge(const GaugePair &gp, const FamilyDatum &f) {
  FamilyDatum out = f;
  if (gp.kind == GaugePair::Kind::Scaling) {
    if (gp.lambda == 0) fail("InvalidGauge", "scaling gauge needs nonzero lambda");
    auto scale = [&](SectionSymbol &s, long power) {
      if (s.kind != SectionKind::Named || !s.has_value) return;
      Rational p(1);
      for (long i = 0; i < power; ++i) p *= gp.lambda;
      s.value *= p;
      s.marked_nonzero = s.value != 0;
    };
    if (f.kind == FamilyKind::PsiD || f.kind == FamilyKind::Psi0) {
      scale(out.nu, 2 * f.n);
      for (std::size_t j = 0; j < out.q.size(); ++j) scale(out.q[j], 2 * static_cast<long>(j + 1));
      // rebuild eta entries from the transformed data
      out = build_psi_shape(out.kind, out.n, out.ctx, out.m_degree, out.torsion,
                            out.m_inverted, out.mu, out.nu, out.q);
    } else if (f.kind == FamilyKind::Hitchin) {
      for (std::size_t j = 0; j < out.q.size(); ++j) scale(out.q[j], 2 * static_cast<long>(j + 1));
      out = build_hitchin(out.n, out.ctx, out.q);
    } else {
      fail("InvalidGauge", "scaling gauge unsupported for this family");
    }
    return out;
  }
  // Switching gauge: swap M and M^{-1} (and with them mu and nu).
  if (f.kind != FamilyKind::PsiD && f.kind != FamilyKind::Psi0)
    fail("InvalidGauge", "switching gauge applies to the d-labeled families");
  FamilyKind kind = f.m_degree == 0 ? FamilyKind::Psi0 : FamilyKind::PsiD;
  return build_psi_shape(kind, f.n, f.ctx, -f.m_degree, f.torsion, !f.m_inverted,
                         f.nu, f.mu, f.q);
}

// Explicit gauge matrices at rank level (for verifying the printed identities).
inline std::pair<QMatrix, QMatrix> gauge_matrices(const GaugePair &gp, const FamilyDatum &f) {
  const int n = f.n;
  std::size_t rv = f.V.total_rank(), rw = f.W.total_rank();
  QMatrix gv(rv, rv), gw(rw, rw);
  if (gp.kind == GaugePair::Kind::Scaling) {
    if (gp.lambda == 0) fail("InvalidGauge", "scaling gauge needs nonzero lambda");
    auto pw = [&](long e) {
      Rational p(1);
      for (long i = 0; i < e; ++i) p *= gp.lambda;
      for (long i = 0; i > e; --i) p /= gp.lambda;
      return p;
    };
    for (int i = 0; i < n; ++i) gv(i, i) = pw(n - 1 - 2 * i);
    for (int i = 0; i <= n; ++i) gw(i, i) = pw(n - 2 * i);
    return {gv, gw};
  }
  for (std::size_t i = 0; i < rv; ++i) gv(i, i) = Rational(-1);
  gw(0, rw - 1) = Rational(-1);
  gw(rw - 1, 0) = Rational(-1);
  for (std::size_t i = 1; i + 1 < rw; ++i) gw(i, i) = Rational(-1);
  return {gv, gw};
}

inline bool section_equal(const SectionSymbol &a, const SectionSymbol &b) {
  if (a.is_zero() || b.is_zero()) return a.is_zero() == b.is_zero();
  if (a.has_value && b.has_value) return a.value == b.value;
  return a.marked_nonzero == b.marked_nonzero;
}

// mu = lambda mu', nu = lambda^{-1} nu' for some nonzero lambda.
inline bool scaling_equivalent(const SectionSymbol &mu, const SectionSymbol &nu,
                               const SectionSymbol &mu2, const SectionSymbol &nu2) {
  if (mu.is_zero() != mu2.is_zero() || nu.is_zero() != nu2.is_zero()) return false;
  if (mu.has_value && nu.has_value && mu2.has_value && nu2.has_value)
    return mu.value * nu.value == mu2.value * nu2.value;
  return true;
}

inline bool m_equal(const FamilyDatum &a, const FamilyDatum &b) {
  if (a.torsion != b.torsion) return false;
  if (a.m_degree != b.m_degree) return false;
  if (a.torsion == Torsion::SquareTrivial || a.torsion == Torsion::Trivial) return true;
  return a.m_inverted == b.m_inverted;
}

inline bool q_equal(const FamilyDatum &a, const FamilyDatum &b) {
  if (a.q.size() != b.q.size()) return false;
  for (std::size_t i = 0; i < a.q.size(); ++i)
    if (!section_equal(a.q[i], b.q[i])) return false;
  return section_equal(a.qn, b.qn);
}

inline bool orbit_equal(const FamilyDatum &a, const FamilyDatum &b) {
  if (a.kind != b.kind || a.n != b.n || a.ctx.g != b.ctx.g) {
    bool d_pair = (a.kind == FamilyKind::PsiD || a.kind == FamilyKind::Psi0) &&
                  (b.kind == FamilyKind::PsiD || b.kind == FamilyKind::Psi0);
    if (!(d_pair && a.n == b.n && a.ctx.g == b.ctx.g)) fail("MixedFamilies", "data from different families");
  }
  switch (a.kind) {
    case FamilyKind::Hitchin:
    case FamilyKind::SoNnHitchin:
      return q_equal(a, b);
    case FamilyKind::PsiD:
    case FamilyKind::Psi0: {
      auto direct = [&](const FamilyDatum &x, const FamilyDatum &y) {
        return m_equal(x, y) && q_equal(x, y) && scaling_equivalent(x.mu, x.nu, y.mu, y.nu);
      };
      if (direct(a, b)) return true;
      return direct(a, apply_gauge({GaugePair::Kind::Switching, Rational(1)}, b));
    }
    case FamilyKind::PsiSw: {
      // M ~ iota^* M = M^{-1}, so inversion never distinguishes orbits here.
      if (a.sw2 != b.sw2 || !q_equal(a, b)) return false;
      if (a.mu.has_value && b.mu.has_value)
        return a.mu.value == b.mu.value || a.mu.value == -b.mu.value;
      return a.mu.is_zero() == b.mu.is_zero();
    }
  }
  return false;
}

// Even characteristic coefficients of the assembled field; odd coefficients
// are checked to vanish.
inline std::vector<Rational> hitchin_invariants(const FamilyDatum &f, unsigned long seed) {
  Rng rng(seed);
  RankLevelField rl = instantiate(f, &rng);
  AssembledField af = assemble_sl(rl);
  std::vector<Rational> cp = char_poly(af.phi);  // leading-first, degree d
  const std::size_t d = af.phi.rows();
  std::vector<Rational> even;
  for (std::size_t j = 1; j <= d; ++j) {
    if (j % 2 == 1) {
      if (cp[j] != 0) fail("NotInGroup", "odd characteristic coefficient is nonzero");
    } else {
      even.push_back(cp[j]);
    }
  }
  return even;
}

// Hitchin-fibration coordinates: the differentials plus p_n = mu (x) nu.
inline std::vector<Rational> fibration_point(const FamilyDatum &f) {
  if (f.kind != FamilyKind::PsiD && f.kind != FamilyKind::Psi0)
    fail("MixedFamilies", "fibration coordinates defined for the d-labeled families");
  std::vector<Rational> p;
  for (const auto &s : f.q) {
    if (!s.has_value && s.marked_nonzero) fail("InvalidParams", "q without value");
    p.push_back(s.has_value ? s.value : Rational(0));
  }
  Rational mu = f.mu.has_value ? f.mu.value : Rational(0);
  Rational nu = f.nu.has_value ? f.nu.value : Rational(0);
  p.push_back(mu * nu);
  return p;
}

}  // namespace sonnp

#endif  // SONNP_BUNDLES_H
