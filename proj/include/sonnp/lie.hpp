#ifndef SONNP_LIE_H
#define SONNP_LIE_H

#include <cstddef>
#include <string>
#include <vector>

#include "sonnp/matrix.hpp"

namespace sonnp {

// The three indefinite orthogonal families, realized with antidiagonal forms
// in the coordinates where the fixed torus is diagonal.
enum class Family { SO_n_nminus1, SO_n_n, SO_n_nplus1 };

struct GroupKind {
  Family family;
  int n;

  bool operator==(const GroupKind &o) const { return family == o.family && n == o.n; }
};

inline std::string family_name(Family f) {
  switch (f) {
    case Family::SO_n_nminus1: return "so_n_nm1";
    case Family::SO_n_n: return "so_n_n";
    case Family::SO_n_nplus1: return "so_n_np1";
  }
  return "?";
}

inline std::size_t ambient_dim(GroupKind k) {
  switch (k.family) {
    case Family::SO_n_nminus1: return 2 * k.n - 1;
    case Family::SO_n_n: return 2 * k.n;
    case Family::SO_n_nplus1: return 2 * k.n + 1;
  }
  return 0;
}

inline std::size_t torus_rank(GroupKind k) {
  return k.family == Family::SO_n_nminus1 ? k.n - 1 : k.n;
}

// 1-based column index of the "center" coordinate (the one carrying the
// lone +/-1 diagonal term of the form), or 0 if there is none.
inline std::size_t center_col(GroupKind k) {
  switch (k.family) {
    case Family::SO_n_nminus1: return k.n;
    case Family::SO_n_n: return 0;
    case Family::SO_n_nplus1: return k.n + 1;
  }
  return 0;
}

// Gram matrix of the bilinear form: antidiagonal ones, except the center
// entry which is +1 for SO(n,n-1) and -1 for SO(n,n+1).
inline QMatrix build_form(GroupKind k) {
  const std::size_t d = ambient_dim(k);
  QMatrix j(d, d);
  for (std::size_t i = 0; i < d; ++i) j(i, d - 1 - i) = Rational(1);
  if (k.family == Family::SO_n_nplus1) j(k.n, k.n) = Rational(-1);
  return j;
}

// Elementary matrix E_{rc} (1-based) of size d.
inline QMatrix elem(std::size_t d, std::size_t r, std::size_t c) {
  QMatrix m(d, d);
  m(r - 1, c - 1) = Rational(1);
  return m;
}

template <class T>
bool in_lie_algebra(const Matrix<T> &a, GroupKind k, const Matrix<T> &j) {
  if (a.rows() != ambient_dim(k) || a.cols() != ambient_dim(k))
    fail("DimensionMismatch", "matrix size does not match ambient dimension for " +
                                  family_name(k.family) + " n=" + std::to_string(k.n));
  return (a.transpose() * j + j * a).is_zero();
}

inline bool in_lie_algebra(const QMatrix &a, GroupKind k) {
  return in_lie_algebra(a, k, build_form(k));
}

// Torus Lie-algebra element for coordinates (x_1..x_r):
// diag(x_1,...,x_r, [0,] -x_r,...,-x_1), the middle 0 present iff odd ambient.
inline QMatrix torus_element(GroupKind k, const std::vector<Rational> &x) {
  const std::size_t r = torus_rank(k), d = ambient_dim(k);
  if (x.size() != r) fail("DimensionMismatch", "torus coordinate count != rank");
  QMatrix t(d, d);
  for (std::size_t i = 0; i < r; ++i) {
    t(i, i) = x[i];
    t(d - 1 - i, d - 1 - i) = -x[i];
  }
  return t;
}

// Torus group element diag(t_1..t_r, [1,] t_r^{-1}..t_1^{-1}).
template <class T>
Matrix<T> torus_group_element(GroupKind k, const std::vector<T> &t) {
  const std::size_t r = torus_rank(k), d = ambient_dim(k);
  if (t.size() != r) fail("DimensionMismatch", "torus coordinate count != rank");
  Matrix<T> g(d, d);
  if (d % 2 == 1) g(r, r) = T(1);
  for (std::size_t i = 0; i < r; ++i) {
    if (scalar_is_zero(t[i])) fail("SingularMatrix", "torus entry is zero");
    g(i, i) = t[i];
    g(d - 1 - i, d - 1 - i) = T(1) / t[i];
  }
  return g;
}

// A simple root as an integer functional on the torus coordinates x_1..x_r.
struct RootFunctional {
  std::vector<long> coeffs;

  Rational eval(const std::vector<Rational> &x) const {
    Rational v(0);
    for (std::size_t i = 0; i < coeffs.size(); ++i) v += Rational(coeffs[i]) * x[i];
    return v;
  }
};

struct RootDatum {
  GroupKind kind;
  std::size_t rank;
  std::vector<RootFunctional> simple_roots;        // index j-1 <-> beta_j / delta_j
  std::vector<std::vector<QMatrix>> root_spaces;   // basis of each simple root space
};

inline RootDatum root_datum(GroupKind k) {
  const std::size_t r = torus_rank(k), d = ambient_dim(k);
  const long n = k.n;
  RootDatum rd{k, r, {}, {}};
  auto diff_root = [&](std::size_t j) {  // x_j - x_{j+1}, 1-based j
    RootFunctional f{std::vector<long>(r, 0)};
    f.coeffs[j - 1] = 1;
    f.coeffs[j] = -1;
    return f;
  };
  switch (k.family) {
    case Family::SO_n_nminus1:
      // beta_j = x_j - x_{j+1} (j <= n-2), beta_{n-1} = x_{n-1}.
      for (long j = 1; j <= n - 2; ++j) {
        rd.simple_roots.push_back(diff_root(j));
        rd.root_spaces.push_back({elem(d, j, j + 1) - elem(d, 2 * n - 1 - j, 2 * n - j)});
      }
      {
        RootFunctional f{std::vector<long>(r, 0)};
        f.coeffs[r - 1] = 1;
        rd.simple_roots.push_back(f);
        rd.root_spaces.push_back({elem(d, n - 1, n) - elem(d, n, n + 1)});
      }
      break;
    case Family::SO_n_n:
      // delta_j = x_j - x_{j+1} (j <= n-1), delta_n = x_{n-1} + x_n.
      for (long j = 1; j <= n - 1; ++j) {
        rd.simple_roots.push_back(diff_root(j));
        rd.root_spaces.push_back({elem(d, j, j + 1) - elem(d, 2 * n - j, 2 * n + 1 - j)});
      }
      {
        RootFunctional f{std::vector<long>(r, 0)};
        f.coeffs[r - 2] = 1;
        f.coeffs[r - 1] = 1;
        rd.simple_roots.push_back(f);
        rd.root_spaces.push_back({elem(d, n - 1, n + 1) - elem(d, n, n + 2)});
      }
      break;
    case Family::SO_n_nplus1:
      // beta_j = x_j - x_{j+1} (j <= n-1), beta_n = x_n.
      for (long j = 1; j <= n - 1; ++j) {
        rd.simple_roots.push_back(diff_root(j));
        rd.root_spaces.push_back({elem(d, j, j + 1) - elem(d, 2 * n + 1 - j, 2 * n + 2 - j)});
      }
      {
        RootFunctional f{std::vector<long>(r, 0)};
        f.coeffs[r - 1] = 1;
        rd.simple_roots.push_back(f);
        rd.root_spaces.push_back({elem(d, n, n + 1) + elem(d, n + 1, n + 2)});
      }
      break;
  }
  return rd;
}

// Graded unipotent data for the two parabolic configurations the toolkit
// supports: the Borel (Theta = all simple roots) for each group, and
// Theta = {beta_1..beta_{n-1}} for SO(n,n+1), whose last graded piece is the
// 3-dimensional representation of the SO(1,2) Levi factor.
struct ParabolicDatum {
  GroupKind kind;
  std::vector<std::size_t> theta;               // 1-based simple root indices
  std::vector<std::vector<QMatrix>> pieces;     // basis of u_beta per Theta index
  std::string levi_shape;
};

inline ParabolicDatum parabolic_datum(GroupKind k, const std::vector<std::size_t> &theta) {
  const std::size_t r = torus_rank(k), d = ambient_dim(k);
  const long n = k.n;
  std::vector<std::size_t> full(r);
  for (std::size_t i = 0; i < r; ++i) full[i] = i + 1;
  RootDatum rd = root_datum(k);
  ParabolicDatum pd{k, theta, {}, ""};
  if (theta == full) {
    for (std::size_t i = 0; i < r; ++i) pd.pieces.push_back(rd.root_spaces[i]);
    pd.levi_shape = "torus (R^*)^" + std::to_string(r);
    return pd;
  }
  if (k.family == Family::SO_n_nplus1 && n >= 2) {
    std::vector<std::size_t> borel_minus_last(r - 1);
    for (std::size_t i = 0; i + 1 < r; ++i) borel_minus_last[i] = i + 1;
    if (theta == borel_minus_last) {
      for (long j = 1; j <= n - 2; ++j) pd.pieces.push_back(rd.root_spaces[j - 1]);
      // u_{beta_{n-1}}: root spaces of beta_{n-1}, beta_{n-1}+beta_n,
      // beta_{n-1}+2beta_n.
      pd.pieces.push_back({elem(d, n - 1, n) - elem(d, n + 2, n + 3),
                           elem(d, n - 1, n + 1) + elem(d, n + 1, n + 3),
                           elem(d, n - 1, n + 2) - elem(d, n, n + 3)});
      pd.levi_shape = "(R^*)^" + std::to_string(r - 1) + " x SO(1,2)";
      return pd;
    }
  }
  fail("UnsupportedTheta", "parabolic configuration not supported for " +
                               family_name(k.family) + " n=" + std::to_string(k.n));
}

// Lie bracket.
template <class T>
Matrix<T> bracket(const Matrix<T> &a, const Matrix<T> &b) {
  return a * b - b * a;
}

// Dimension of the realized Lie algebra: nullity of A |-> A^T J + J A.
inline std::size_t lie_algebra_dim(GroupKind k) {
  const std::size_t d = ambient_dim(k);
  QMatrix j = build_form(k);
  // Linear map on d^2 coordinates; row (a,b) of the constraint matrix is the
  // (a,b) entry of A^T J + J A as a function of the entries of A.
  QMatrix sys(d * d, d * d);
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b)
      for (std::size_t c = 0; c < d; ++c) {
        sys(a * d + b, c * d + a) += j(c, b);  // (A^T J)_{ab} = sum_c A_{ca} J_{cb}
        sys(a * d + b, c * d + b) += j(a, c);  // (J A)_{ab}  = sum_c J_{ac} A_{cb}
      }
  return d * d - rank(sys);
}

}  // namespace sonnp

#endif  // SONNP_LIE_H
