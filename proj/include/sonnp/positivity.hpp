#ifndef SONNP_POSITIVITY_H
#define SONNP_POSITIVITY_H

#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "sonnp/lie.hpp"
#include "sonnp/poly.hpp"
#include "sonnp/weyl.hpp"

namespace sonnp {

// One slot of a positive-semigroup factorization schedule: a graded piece
// u_beta with its invariant cone (a ray for 1-dimensional pieces, the open
// forward light cone for the 3-dimensional SO(n,n+1) piece).
struct ConeSlot {
  std::vector<QMatrix> basis;
  bool is_light_cone = false;

  std::size_t dim() const { return basis.size(); }

  // Strict (open-cone) membership of a coordinate vector in this basis.
  template <class T>
  bool contains(const std::vector<T> &c) const {
    if (c.size() != basis.size()) return false;
    if (!is_light_cone) return scalar_is_positive(c[0]);
    // (x, y, z): 2xz - y^2 > 0 and x > 0 (forward component).
    T q = T(2) * c[0] * c[2] - c[1] * c[1];
    return scalar_is_positive(q) && scalar_is_positive(c[0]);
  }

  static bool scalar_is_positive(const Rational &v) { return v > 0; }
  static bool scalar_is_positive(const Sqrt2 &v) {
    // a + b*sqrt2 > 0, decided exactly.
    if (v.b == 0) return v.a > 0;
    if (v.a == 0) return v.b > 0;
    if (v.a > 0 && v.b > 0) return true;
    if (v.a < 0 && v.b < 0) return false;
    // Signs differ: compare a^2 with 2 b^2.
    bool a_side_wins = v.a * v.a > 2 * v.b * v.b;
    return a_side_wins ? v.a > 0 : v.b > 0;
  }
};

// The factorization schedule of the canonical longest-word expression:
// one slot per letter, in product order.
struct Schedule {
  GroupKind kind;
  std::vector<ConeSlot> slots;
  std::vector<std::size_t> block_starts;  // slot index where each block begins

  std::size_t total_params() const {
    std::size_t t = 0;
    for (const auto &s : slots) t += s.dim();
    return t;
  }
};

// Graded pieces indexed by generator: simple root spaces, except for
// SO(n,n+1) where the schedule runs over the Theta-parabolic pieces.
inline std::vector<std::vector<QMatrix>> cone_pieces(GroupKind k) {
  if (k.family == Family::SO_n_nplus1) {
    std::vector<std::size_t> theta(k.n - 1);
    for (int i = 0; i + 1 < k.n; ++i) theta[i] = i + 1;
    return parabolic_datum(k, theta).pieces;
  }
  return root_datum(k).root_spaces;
}

inline Schedule schedule(GroupKind k) {
  Schedule sch{k, {}, {}};
  std::vector<std::vector<QMatrix>> pieces = cone_pieces(k);
  for (const auto &block : longest_word_blocks(k)) {
    sch.block_starts.push_back(sch.slots.size());
    for (std::size_t g : block.gens) {
      ConeSlot slot;
      slot.basis = pieces.at(g - 1);
      slot.is_light_cone = slot.basis.size() == 3;
      sch.slots.push_back(std::move(slot));
    }
  }
  return sch;
}

// Parameters for a schedule: one coordinate vector per slot.
template <class T>
using SemigroupParams = std::vector<std::vector<T>>;

// Seeded sample strictly inside every cone of the schedule. For the light
// cone, |y| <= min(x,z) * u with |u| < 1 guarantees y^2 < 2xz.
template <class T>
SemigroupParams<T> random_cone_params(const Schedule &sch, Rng &rng) {
  SemigroupParams<T> p;
  for (const auto &slot : sch.slots) {
    if (!slot.is_light_cone) {
      p.push_back({T(rng.next_positive_rational(20))});
    } else {
      Rational x = rng.next_positive_rational(20), z = rng.next_positive_rational(20);
      Rational y = (x < z ? x : z) * rat(rng.next_long(-9, 9), 10);
      p.push_back({T(x), T(y), T(z)});
    }
  }
  return p;
}

template <class T>
Matrix<T> convert_matrix(const QMatrix &m) {
  Matrix<T> out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = T(m(i, j));
  return out;
}

template <>
inline Matrix<Rational> convert_matrix<Rational>(const QMatrix &m) { return m; }

// Product of nilpotent exponentials over the schedule, in the printed order.
template <class T>
Matrix<T> semigroup_element(const Schedule &sch, const SemigroupParams<T> &params,
                            bool check_cones = true) {
  if (params.size() != sch.slots.size())
    fail("InvalidParams", "parameter slot count does not match schedule");
  const std::size_t d = ambient_dim(sch.kind);
  Matrix<T> g = Matrix<T>::identity(d);
  for (std::size_t s = 0; s < sch.slots.size(); ++s) {
    const ConeSlot &slot = sch.slots[s];
    if (params[s].size() != slot.dim())
      fail("InvalidParams", "parameter dimension does not match cone slot");
    if (check_cones && !slot.contains(params[s]))
      fail("InvalidParams", "parameter outside its cone");
    Matrix<T> n(d, d);
    for (std::size_t i = 0; i < slot.dim(); ++i)
      n = n + convert_matrix<T>(slot.basis[i]).scaled(params[s][i]);
    g = g * mat_exp_nilpotent(n, d + 1);
  }
  return g;
}

// Symbolic product of the schedule with one fresh variable per parameter,
// cached per group kind (it is the expensive part of factorize).
struct SymbolicSchedule {
  Schedule sch;
  PMatrix product;
  // var index ranges per slot
  std::vector<std::pair<std::size_t, std::size_t>> var_ranges;
};

inline const SymbolicSchedule &symbolic_schedule(GroupKind k) {
  static std::map<std::pair<int, int>, SymbolicSchedule> cache;
  auto key = std::make_pair(static_cast<int>(k.family), k.n);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  SymbolicSchedule sym;
  sym.sch = schedule(k);
  const std::size_t d = ambient_dim(k);
  PMatrix g = PMatrix::identity(d);
  std::size_t var = 0;
  for (const auto &slot : sym.sch.slots) {
    std::size_t lo = var;
    PMatrix n(d, d);
    for (std::size_t i = 0; i < slot.dim(); ++i) {
      PMatrix b = poly_matrix(slot.basis[i]);
      for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c < d; ++c)
          if (!b(r, c).is_zero()) n(r, c) += b(r, c) * Poly::var(var);
      ++var;
    }
    sym.var_ranges.emplace_back(lo, var);
    g = g * poly_exp_nilpotent(n);
  }
  sym.product = std::move(g);
  return cache.emplace(key, std::move(sym)).first->second;
}

enum class FactorizeStatus { Ok, NotPositive };

template <class T>
struct FactorizeResult {
  FactorizeStatus status = FactorizeStatus::NotPositive;
  SemigroupParams<T> params;

  bool ok() const { return status == FactorizeStatus::Ok; }
};

// Parameters of the final schedule block, recovered from the block's first
// row. The block word is g_1 (inner) g_1 with g_1 = E_{1,2} - E_{d-1,d}: the
// outer coefficients read off from columns 2, d-1, d, and the interior is the
// final block one rank down, supported on the middle coordinates. Returns
// false (not positive / not in the block's image) on a vanishing pivot.
inline bool last_block_params(GroupKind k, const std::vector<Rational> &row,
                              std::vector<std::vector<Rational>> &out) {
  const std::size_t d = ambient_dim(k);
  if (k.n == 2) {
    switch (k.family) {
      case Family::SO_n_nminus1:  // word [1]
        out.push_back({row[1]});
        return true;
      case Family::SO_n_n:        // word [1, 2], commuting branch letters
        out.push_back({row[1]});
        out.push_back({row[2]});
        return true;
      case Family::SO_n_nplus1:   // single light-cone slot
        out.push_back({row[1], row[2], row[3]});
        return true;
    }
    return false;
  }
  // row = e_1 + t_1 * (inner row 2) + t_l * e_2 - t_1 t_l * inner(2,d-1) e_d.
  if (row[d - 2] == 0) return false;
  Rational tl = -row[d - 1] / row[d - 2];
  Rational t1 = row[1] - tl;
  if (t1 == 0) return false;
  std::vector<Rational> inner_row(d - 2);
  inner_row[0] = Rational(1);
  for (std::size_t i = 1; i + 2 < d; ++i) inner_row[i] = row[i + 1] / t1;
  std::vector<std::vector<Rational>> inner;
  if (!last_block_params(GroupKind{k.family, k.n - 1}, inner_row, inner)) return false;
  out.push_back({t1});
  for (auto &p : inner) out.push_back(std::move(p));
  out.push_back({tl});
  return true;
}

// Recover schedule parameters from a unipotent group element, or report
// NotPositive. The final block's parameters are read off the first row
// (last_block_params); dividing that block off leaves the schedule of the
// same family at rank n-1 on the middle coordinates, which recurses down to
// rank 2, solved by substitution on the cached symbolic product. On success
// the product is re-verified exactly and every parameter must lie strictly
// inside its cone.
inline FactorizeResult<Rational> factorize(GroupKind k, const QMatrix &u) {
  const std::size_t d = ambient_dim(k);
  if (u.rows() != d || u.cols() != d || !u.is_upper_unipotent())
    fail("NotUnipotent", "factorize requires an upper unipotent matrix");
  QMatrix j = build_form(k);
  if (u.transpose() * j * u != j) fail("NotInGroup", "matrix does not preserve the form");

  FactorizeResult<Rational> res;
  if (k.n > 2) {
    const Schedule sch = schedule(k);
    const std::size_t last_start = sch.block_starts.back();
    std::vector<Rational> row(d);
    for (std::size_t c = 0; c < d; ++c) row[c] = u(0, c);
    std::vector<std::vector<Rational>> bp;
    if (!last_block_params(k, row, bp)) return res;
    if (bp.size() + last_start != sch.slots.size()) fail("Internal", "block slot mismatch");
    Schedule tail{k, {sch.slots.begin() + last_start, sch.slots.end()}, {0}};
    for (std::size_t s = 0; s < bp.size(); ++s)
      if (bp[s].size() != tail.slots[s].dim()) return res;
    QMatrix b = semigroup_element(tail, bp, /*check_cones=*/false);
    QMatrix p = u * inverse(b);
    // The remainder must live in the subgroup fixing the first and last
    // coordinates (identity first row / last column).
    if (!p.is_upper_unipotent()) return res;
    for (std::size_t c = 1; c < d; ++c)
      if (p(0, c) != 0 || p(c - 1, d - 1) != 0) return res;
    QMatrix mid(d - 2, d - 2);
    for (std::size_t r = 0; r + 2 < d; ++r)
      for (std::size_t c = 0; c + 2 < d; ++c) mid(r, c) = p(r + 1, c + 1);
    FactorizeResult<Rational> inner = factorize(GroupKind{k.family, k.n - 1}, mid);
    if (!inner.ok()) return res;
    SemigroupParams<Rational> params = std::move(inner.params);
    for (auto &c : bp) params.push_back(std::move(c));
    for (std::size_t s = 0; s < sch.slots.size(); ++s)
      if (!sch.slots[s].contains(params[s])) return res;  // boundary or negative
    if (semigroup_element(sch, params) != u) return res;
    res.status = FactorizeStatus::Ok;
    res.params = std::move(params);
    return res;
  }

  const SymbolicSchedule &sym = symbolic_schedule(k);
  const std::size_t nvars = sym.sch.total_params();

  std::vector<std::optional<Rational>> solved(nvars);
  std::size_t remaining = nvars;

  // Working copies of the upper-triangle entry equations F_ij(p) = u_ij.
  std::vector<Poly> lhs;
  std::vector<Rational> rhs;
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = r + 1; c < d; ++c) {
      lhs.push_back(sym.product(r, c));
      rhs.push_back(u(r, c));
    }

  bool progress = true;
  while (remaining > 0 && progress) {
    progress = false;
    for (std::size_t e = 0; e < lhs.size(); ++e) {
      auto vs = lhs[e].vars();
      if (vs.size() != 1) continue;
      unsigned v = vs[0];
      if (solved[v] || lhs[e].degree_in(v) != 1) continue;
      Poly a = lhs[e].coeff_of(v);
      if (!a.is_constant() || a.constant_value() == 0) continue;
      Rational value = (rhs[e] - (lhs[e] - Poly::var(v) * a).constant_value()) /
                       a.constant_value();
      solved[v] = value;
      --remaining;
      progress = true;
      for (auto &p : lhs)
        if (!p.is_zero()) p = p.substitute(v, value);
    }
  }
  if (remaining > 0) return res;  // stuck: not factorizable by this schedule
  for (std::size_t e = 0; e < lhs.size(); ++e)
    if (!lhs[e].is_constant() || lhs[e].constant_value() != rhs[e]) return res;

  SemigroupParams<Rational> params;
  for (std::size_t s = 0; s < sym.sch.slots.size(); ++s) {
    std::vector<Rational> c;
    for (std::size_t v = sym.var_ranges[s].first; v < sym.var_ranges[s].second; ++v)
      c.push_back(*solved[v]);
    if (!sym.sch.slots[s].contains(c)) return res;  // boundary or negative
    params.push_back(std::move(c));
  }
  // Paranoia: the recovered parameters reproduce u exactly.
  if (semigroup_element(sym.sch, params) != u) return res;
  res.status = FactorizeStatus::Ok;
  res.params = std::move(params);
  return res;
}

// ---------------------------------------------------------------------------
// Isometric embeddings SO(n,n-1) -> SO(n,n) -> SO(n,n+1), realized as
// conjugation by the explicit isometry of quadratic spaces. The change of
// basis for the first one involves (e_n -+ e_{n+1})/sqrt2, so everything is
// computed over Q[sqrt2].

struct Embedding {
  GroupKind src, tgt;
  SMatrix t;      // isometry (R^src + R*w, J_src + (-1)) -> (R^tgt, J_tgt)
  SMatrix t_inv;
};

inline Embedding make_embedding(GroupKind src) {
  Embedding e;
  e.src = src;
  const long n = src.n;
  const std::size_t ds = ambient_dim(src);
  if (src.family == Family::SO_n_nminus1) {
    e.tgt = GroupKind{Family::SO_n_n, src.n};
    const std::size_t dt = 2 * n;
    SMatrix t(dt, dt);
    Sqrt2 h = Sqrt2::inv_sqrt2();
    for (long i = 1; i <= n - 1; ++i) t(i - 1, i - 1) = Sqrt2(1);
    t(n - 1, n - 1) = h;       // e_n -> (e_n + e_{n+1})/sqrt2
    t(n, n - 1) = h;
    for (long i = n + 1; i <= 2 * n - 1; ++i) t(i, i - 1) = Sqrt2(1);
    t(n - 1, dt - 1) = h;      // extra vector -> (e_n - e_{n+1})/sqrt2
    t(n, dt - 1) = -h;
    e.t = t;
  } else if (src.family == Family::SO_n_n) {
    e.tgt = GroupKind{Family::SO_n_nplus1, src.n};
    const std::size_t dt = 2 * n + 1;
    SMatrix t(dt, dt);
    for (long i = 1; i <= n; ++i) t(i - 1, i - 1) = Sqrt2(1);
    for (long i = n + 1; i <= 2 * n; ++i) t(i, i - 1) = Sqrt2(1);
    t(n, dt - 1) = Sqrt2(1);   // extra vector -> e_{n+1}
    e.t = t;
  } else {
    fail("DimensionMismatch", "no embedding out of SO(n,n+1)");
  }
  (void)ds;
  e.t_inv = inverse(e.t);
  return e;
}

inline const Embedding &embedding(GroupKind src) {
  static std::map<std::pair<int, int>, Embedding> cache;
  auto key = std::make_pair(static_cast<int>(src.family), src.n);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  return cache.emplace(key, make_embedding(src)).first->second;
}

// Lie algebra embedding: A |-> T (A + 0) T^{-1}.
inline SMatrix embed_alg(GroupKind src, const SMatrix &a) {
  const Embedding &e = embedding(src);
  const std::size_t ds = ambient_dim(src), dt = ambient_dim(e.tgt);
  if (a.rows() != ds || a.cols() != ds)
    fail("DimensionMismatch", "embed: matrix has wrong ambient dimension");
  SMatrix padded(dt, dt);
  for (std::size_t i = 0; i < ds; ++i)
    for (std::size_t j = 0; j < ds; ++j) padded(i, j) = a(i, j);
  return e.t * padded * e.t_inv;
}

inline SMatrix embed_alg(GroupKind src, const QMatrix &a) {
  return embed_alg(src, convert_matrix<Sqrt2>(a));
}

// Group embedding: g |-> T (g + 1) T^{-1}.
inline SMatrix embed_group(GroupKind src, const SMatrix &g) {
  const Embedding &e = embedding(src);
  const std::size_t ds = ambient_dim(src), dt = ambient_dim(e.tgt);
  if (g.rows() != ds || g.cols() != ds)
    fail("DimensionMismatch", "embed: matrix has wrong ambient dimension");
  SMatrix padded(dt, dt);
  for (std::size_t i = 0; i < ds; ++i)
    for (std::size_t j = 0; j < ds; ++j) padded(i, j) = g(i, j);
  padded(dt - 1, dt - 1) = Sqrt2(1);
  return e.t * padded * e.t_inv;
}

inline SMatrix embed_group(GroupKind src, const QMatrix &g) {
  return embed_group(src, convert_matrix<Sqrt2>(g));
}

// Parameter transport along the embeddings, block by block:
//   SO(n,n-1) b_1(v)            -> SO(n,n)  d_1(v/sqrt2) d_2(v/sqrt2)
//   SO(n,n-1) b_j(u..,v,w..)    -> SO(n,n)  d_{j+1}(u.., v/sqrt2, v/sqrt2, w..)
//   SO(n,n)   d_1(a) d_2(b)     -> SO(n,n+1) B_1(light (b,0,a))
//   SO(n,n)   d_j(u..,b,a,w..)  -> SO(n,n+1) B_{j-1}(u.., light (b,0,a), w..)
inline SemigroupParams<Sqrt2> map_params(GroupKind src,
                                         const SemigroupParams<Sqrt2> &p) {
  const Schedule src_sch = schedule(src);
  SemigroupParams<Sqrt2> out;
  Sqrt2 h = Sqrt2::inv_sqrt2();
  if (src.family == Family::SO_n_nminus1) {
    // Blocks b_j have odd length 2j-1 with the v-slot in the middle.
    std::size_t s = 0;
    for (long j = 1; j <= src.n - 1; ++j) {
      std::size_t len = 2 * j - 1;
      for (std::size_t i = 0; i < len; ++i, ++s) {
        out.push_back({p[s][0]});
        if (i + 1 == (len + 1) / 2) {  // middle slot: v -> (v/sqrt2, v/sqrt2)
          out.back() = {p[s][0] * h};
          out.push_back({p[s][0] * h});
        }
      }
    }
  } else if (src.family == Family::SO_n_n) {
    // d_1(v_n), d_2(v_{n-1}), then palindromic d_j with (v_{n-1}, v_n) middle.
    out.push_back({p[1][0], Sqrt2(0), p[0][0]});
    std::size_t s = 2;
    for (long j = 3; j <= src.n; ++j) {
      std::size_t asc = j - 2;
      for (std::size_t i = 0; i < asc; ++i, ++s) out.push_back({p[s][0]});
      out.push_back({p[s][0], Sqrt2(0), p[s + 1][0]});
      s += 2;
      for (std::size_t i = 0; i < asc; ++i, ++s) out.push_back({p[s][0]});
    }
  } else {
    fail("DimensionMismatch", "no parameter transport out of SO(n,n+1)");
  }
  return out;
}

struct EmbedCheckReport {
  bool params_in_cones = false;
  bool products_equal = false;
  bool ok() const { return params_in_cones && products_equal; }
};

// The embedding propositions at parameter level:
// iota(F_src(p)) = F_tgt(map(p)) exactly, with map(p) strictly positive.
inline EmbedCheckReport embedding_positivity_check(GroupKind src,
                                                   const SemigroupParams<Sqrt2> &p) {
  EmbedCheckReport rep;
  const Embedding &e = embedding(src);
  Schedule src_sch = schedule(src), tgt_sch = schedule(e.tgt);
  SemigroupParams<Sqrt2> q = map_params(src, p);
  rep.params_in_cones = true;
  if (q.size() != tgt_sch.slots.size()) {
    rep.params_in_cones = false;
    return rep;
  }
  for (std::size_t s = 0; s < q.size(); ++s)
    if (!tgt_sch.slots[s].contains(q[s])) rep.params_in_cones = false;
  SMatrix lhs = embed_group(src, semigroup_element(src_sch, p));
  SMatrix rhs = semigroup_element(tgt_sch, q, /*check_cones=*/false);
  rep.products_equal = lhs == rhs;
  return rep;
}

// ---------------------------------------------------------------------------
// Isotropic flags and positive triples.

struct IsotropicFlag {
  GroupKind kind;
  std::vector<QMatrix> spaces;  // nested isotropic subspaces, as d x j bases
};

// Number of flag steps for the group's supported flag variety: full isotropic
// flags (Borel) for SO(n,n-1)/SO(n,n), V_1 .. V_{n-1} for (SO(n,n+1), Theta).
inline std::size_t flag_steps(GroupKind k) {
  switch (k.family) {
    case Family::SO_n_nminus1: return k.n - 1;
    case Family::SO_n_n: return k.n;
    case Family::SO_n_nplus1: return k.n - 1;
  }
  return 0;
}

inline void validate_flag(const IsotropicFlag &f) {
  const std::size_t d = ambient_dim(f.kind);
  QMatrix j = build_form(f.kind);
  if (f.spaces.size() != flag_steps(f.kind))
    fail("MalformedFlag", "wrong number of flag steps");
  for (std::size_t s = 0; s < f.spaces.size(); ++s) {
    const QMatrix &v = f.spaces[s];
    if (v.rows() != d || v.cols() != s + 1) fail("MalformedFlag", "bad basis shape");
    if (rank(v) != s + 1) fail("MalformedFlag", "flag basis not independent");
    if (!(v.transpose() * j * v).is_zero()) fail("MalformedFlag", "subspace not isotropic");
    if (s > 0) {
      QMatrix joint(d, (s + 1) + s);
      for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t c = 0; c <= s; ++c) joint(r, c) = v(r, c);
        for (std::size_t c = 0; c < s; ++c) joint(r, s + 1 + c) = f.spaces[s - 1](r, c);
      }
      if (rank(joint) != s + 1) fail("MalformedFlag", "flag not nested");
    }
  }
}

// g . flag (column-space action).
inline IsotropicFlag apply_to_flag(const QMatrix &g, const IsotropicFlag &f) {
  IsotropicFlag out{f.kind, {}};
  for (const auto &v : f.spaces) out.spaces.push_back(g * v);
  return out;
}

inline IsotropicFlag standard_flag(GroupKind k) {
  const std::size_t d = ambient_dim(k);
  IsotropicFlag f{k, {}};
  for (std::size_t s = 1; s <= flag_steps(k); ++s) {
    QMatrix v(d, s);
    for (std::size_t c = 0; c < s; ++c) v(c, c) = Rational(1);
    f.spaces.push_back(v);
  }
  return f;
}

inline IsotropicFlag opposite_flag(GroupKind k) {
  const std::size_t d = ambient_dim(k);
  IsotropicFlag f{k, {}};
  for (std::size_t s = 1; s <= flag_steps(k); ++s) {
    QMatrix v(d, s);
    for (std::size_t c = 0; c < s; ++c) v(d - 1 - c, c) = Rational(1);
    f.spaces.push_back(v);
  }
  return f;
}

// Basis of V^perp (w.r.t. the form of k) as columns.
inline QMatrix perp_basis(GroupKind k, const QMatrix &v) {
  QMatrix j = build_form(k);
  return kernel_basis(QMatrix(v.transpose() * j));
}

// Transversality: V_j(x) intersects V_j(y)^perp trivially for every j.
inline bool flag_transverse(const IsotropicFlag &x, const IsotropicFlag &y) {
  if (!(x.kind == y.kind)) fail("MalformedFlag", "flags from different groups");
  validate_flag(x);
  validate_flag(y);
  const std::size_t d = ambient_dim(x.kind);
  for (std::size_t s = 0; s < x.spaces.size(); ++s) {
    QMatrix perp = perp_basis(x.kind, y.spaces[s]);
    QMatrix joint(d, x.spaces[s].cols() + perp.cols());
    for (std::size_t r = 0; r < d; ++r) {
      for (std::size_t c = 0; c < x.spaces[s].cols(); ++c) joint(r, c) = x.spaces[s](r, c);
      for (std::size_t c = 0; c < perp.cols(); ++c)
        joint(r, x.spaces[s].cols() + c) = perp(r, c);
    }
    if (rank(joint) != d) return false;
  }
  return true;
}

// Greedily extend the columns of `have` by columns of `candidates` keeping
// independence; returns the chosen extension columns.
inline std::vector<std::vector<Rational>> extend_basis(const QMatrix &have,
                                                       const QMatrix &candidates,
                                                       std::size_t target_rank) {
  const std::size_t d = have.rows();
  std::vector<std::vector<Rational>> chosen;
  QMatrix cur = have;
  while (cur.cols() < target_rank) {
    bool found = false;
    for (std::size_t c = 0; c < candidates.cols() && !found; ++c) {
      QMatrix trial(d, cur.cols() + 1);
      for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t cc = 0; cc < cur.cols(); ++cc) trial(r, cc) = cur(r, cc);
        trial(r, cur.cols()) = candidates(r, c);
      }
      if (rank(trial) == cur.cols() + 1) {
        std::vector<Rational> col(d);
        for (std::size_t r = 0; r < d; ++r) col[r] = candidates(r, c);
        chosen.push_back(col);
        cur = trial;
        found = true;
      }
    }
    if (!found) fail("MalformedFlag", "could not extend basis");
  }
  return chosen;
}

// The unique block-upper-unipotent u_0 with u_0 . (opposite chain) = chain of
// x_0, found by a block UL decomposition of an adapted basis matrix. Throws
// NotTransverse when a pivot block is singular.
inline QMatrix solve_unipotent(const IsotropicFlag &x0) {
  GroupKind k = x0.kind;
  const std::size_t d = ambient_dim(k);
  const std::size_t m = flag_steps(k);

  // Adapted basis A: trailing s columns span the s-th piece of the extended
  // chain V_1 c .. c V_m c V_m^perp c .. c V_1^perp c R^d of x0.
  QMatrix a(d, d);
  // Columns d .. d-m+1: nested basis v_1..v_m (v_s extends V_{s-1} to V_s).
  QMatrix nested(d, 0);
  for (std::size_t s = 0; s < m; ++s) {
    auto ext = extend_basis(nested, x0.spaces[s], s + 1);
    QMatrix next(d, s + 1);
    for (std::size_t r = 0; r < d; ++r) {
      for (std::size_t c = 0; c < s; ++c) next(r, c) = nested(r, c);
      next(r, s) = ext[0][r];
    }
    nested = next;
    for (std::size_t r = 0; r < d; ++r) a(r, d - 1 - s) = ext[0][r];
  }
  // Columns d-m .. m+1: complete V_m inside V_m^perp.
  QMatrix filled = nested;
  if (d > 2 * m) {
    QMatrix perp = perp_basis(k, x0.spaces[m - 1]);
    auto ext = extend_basis(filled, perp, d - m);
    QMatrix next(d, d - m);
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < m; ++c) next(r, c) = filled(r, c);
    for (std::size_t i = 0; i < ext.size(); ++i)
      for (std::size_t r = 0; r < d; ++r) {
        next(r, m + i) = ext[i][r];
        a(r, d - m - 1 - i) = ext[i][r];
      }
    filled = next;
  }
  // Columns m .. 1: one new vector per V_j^perp, then complete to R^d.
  for (std::size_t s = m; s >= 1; --s) {
    QMatrix cand =
        s > 1 ? perp_basis(k, x0.spaces[s - 2]) : QMatrix::identity(d);
    auto ext = extend_basis(filled, cand, d - s + 1);
    QMatrix next(d, filled.cols() + 1);
    for (std::size_t r = 0; r < d; ++r) {
      for (std::size_t c = 0; c < filled.cols(); ++c) next(r, c) = filled(r, c);
      next(r, filled.cols()) = ext[0][r];
      a(r, s - 1) = ext[0][r];
    }
    filled = next;
  }

  // Block sizes along the chain: [1^m, d-2m, 1^m] (middle block may be absent).
  std::vector<std::size_t> blocks(m, 1);
  if (d > 2 * m) blocks.push_back(d - 2 * m);
  blocks.insert(blocks.end(), m, 1);

  // A = U L with U block-upper-unipotent, L block-lower. Reverse both index
  // orders: P A P = Lt Ut is a standard block LU (unit block-lower Lt).
  QMatrix rev(d, d);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c) rev(r, c) = a(d - 1 - r, d - 1 - c);

  std::vector<std::size_t> starts;
  {
    std::size_t at = 0;
    for (std::size_t b : blocks) {
      starts.push_back(at);
      at += b;
    }
  }
  const std::size_t nb = blocks.size();
  QMatrix lt = QMatrix::identity(d), ut(d, d);
  auto get_block = [&](const QMatrix &mat, std::size_t bi, std::size_t bj) {
    QMatrix out(blocks[bi], blocks[bj]);
    for (std::size_t r = 0; r < blocks[bi]; ++r)
      for (std::size_t c = 0; c < blocks[bj]; ++c)
        out(r, c) = mat(starts[bi] + r, starts[bj] + c);
    return out;
  };
  auto set_block = [&](QMatrix &mat, std::size_t bi, std::size_t bj, const QMatrix &blk) {
    for (std::size_t r = 0; r < blocks[bi]; ++r)
      for (std::size_t c = 0; c < blocks[bj]; ++c)
        mat(starts[bi] + r, starts[bj] + c) = blk(r, c);
  };
  for (std::size_t kk = 0; kk < nb; ++kk) {
    for (std::size_t j = kk; j < nb; ++j) {
      QMatrix blk = get_block(rev, kk, j);
      for (std::size_t s = 0; s < kk; ++s)
        blk = blk - get_block(lt, kk, s) * get_block(ut, s, j);
      set_block(ut, kk, j, blk);
    }
    QMatrix pivot = get_block(ut, kk, kk);
    if (rank(pivot) != blocks[kk]) fail("NotTransverse", "singular chain pivot block");
    QMatrix pivot_inv = inverse(pivot);
    for (std::size_t i = kk + 1; i < nb; ++i) {
      QMatrix blk = get_block(rev, i, kk);
      for (std::size_t s = 0; s < kk; ++s)
        blk = blk - get_block(lt, i, s) * get_block(ut, s, kk);
      set_block(lt, i, kk, QMatrix(blk * pivot_inv));
    }
  }
  // u_0 = P Lt P.
  QMatrix u0(d, d);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c) u0(r, c) = lt(d - 1 - r, d - 1 - c);
  return u0;
}

// Positive-triple certificate: with (x_plus, x_minus) the standard pair,
// x_0 is positive relative to them iff the unique unipotent u_0 with
// u_0 . x_minus = x_0 factorizes with strictly positive parameters.
inline bool triple_is_positive(const IsotropicFlag &x_plus, const IsotropicFlag &x0,
                               const IsotropicFlag &x_minus) {
  GroupKind k = x0.kind;
  validate_flag(x0);
  auto same_spans = [&](const IsotropicFlag &a, const IsotropicFlag &b) {
    if (a.spaces.size() != b.spaces.size()) return false;
    for (std::size_t s = 0; s < a.spaces.size(); ++s) {
      const QMatrix &u = a.spaces[s], &v = b.spaces[s];
      QMatrix joint(u.rows(), u.cols() + v.cols());
      for (std::size_t r = 0; r < u.rows(); ++r) {
        for (std::size_t c = 0; c < u.cols(); ++c) joint(r, c) = u(r, c);
        for (std::size_t c = 0; c < v.cols(); ++c) joint(r, u.cols() + c) = v(r, c);
      }
      if (rank(joint) != u.cols()) return false;
    }
    return true;
  };
  if (!same_spans(x_plus, standard_flag(k)) || !same_spans(x_minus, opposite_flag(k)))
    fail("MalformedFlag", "triple certification requires the standard pair");
  QMatrix u0 = solve_unipotent(x0);
  try {
    return factorize(k, u0).ok();
  } catch (const Error &err) {
    if (err.code == "NotInGroup" || err.code == "NotUnipotent") return false;
    throw;
  }
}

}  // namespace sonnp

#endif  // SONNP_POSITIVITY_H
