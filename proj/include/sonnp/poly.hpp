#ifndef SONNP_POLY_H
#define SONNP_POLY_H

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "sonnp/matrix.hpp"

namespace sonnp {

// Sparse multivariate polynomial over Rational. Monomials are sparse
// exponent maps var-index -> exponent, so polynomials over different variable
// sets mix freely.
class Poly {
 public:
  using Monomial = std::map<unsigned, unsigned>;

  Poly() = default;
  Poly(long v) { if (v != 0) terms_[{}] = Rational(v); }  // NOLINT
  Poly(const Rational &v) { if (v != 0) terms_[{}] = v; }  // NOLINT

  static Poly var(unsigned i) {
    Poly p;
    p.terms_[{{i, 1}}] = Rational(1);
    return p;
  }

  bool is_zero() const { return terms_.empty(); }

  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
  }

  Rational constant_value() const {
    if (terms_.empty()) return Rational(0);
    auto it = terms_.find({});
    return it == terms_.end() ? Rational(0) : it->second;
  }

  // Variables actually occurring.
  std::vector<unsigned> vars() const {
    std::map<unsigned, bool> seen;
    for (const auto &[m, c] : terms_)
      for (const auto &[v, e] : m) seen[v] = true;
    std::vector<unsigned> out;
    for (const auto &[v, b] : seen) out.push_back(v);
    return out;
  }

  unsigned degree_in(unsigned v) const {
    unsigned d = 0;
    for (const auto &[m, c] : terms_) {
      auto it = m.find(v);
      if (it != m.end() && it->second > d) d = it->second;
    }
    return d;
  }

  Poly operator-() const {
    Poly p;
    for (const auto &[m, c] : terms_) p.terms_[m] = -c;
    return p;
  }

  Poly operator+(const Poly &o) const {
    Poly p = *this;
    for (const auto &[m, c] : o.terms_) {
      auto it = p.terms_.find(m);
      if (it == p.terms_.end()) {
        p.terms_[m] = c;
      } else {
        it->second += c;
        if (it->second == 0) p.terms_.erase(it);
      }
    }
    return p;
  }

  Poly operator-(const Poly &o) const { return *this + (-o); }

  Poly operator*(const Poly &o) const {
    Poly p;
    for (const auto &[m1, c1] : terms_)
      for (const auto &[m2, c2] : o.terms_) {
        Monomial m = m1;
        for (const auto &[v, e] : m2) m[v] += e;
        auto it = p.terms_.find(m);
        if (it == p.terms_.end()) {
          Rational c = c1 * c2;
          if (c != 0) p.terms_[m] = c;
        } else {
          it->second += c1 * c2;
          if (it->second == 0) p.terms_.erase(it);
        }
      }
    return p;
  }

  Poly &operator+=(const Poly &o) { *this = *this + o; return *this; }
  Poly &operator-=(const Poly &o) { *this = *this - o; return *this; }
  Poly &operator*=(const Poly &o) { *this = *this * o; return *this; }

  Poly scaled(const Rational &s) const {
    Poly p;
    if (s == 0) return p;
    for (const auto &[m, c] : terms_) p.terms_[m] = c * s;
    return p;
  }

  bool operator==(const Poly &o) const { return terms_ == o.terms_; }
  bool operator!=(const Poly &o) const { return !(*this == o); }

  // Substitute value for variable v.
  Poly substitute(unsigned v, const Rational &value) const {
    Poly p;
    for (const auto &[m, c] : terms_) {
      auto it = m.find(v);
      if (it == m.end()) {
        p += monomial_poly(m, c);
      } else {
        Rational scale = c;
        for (unsigned e = 0; e < it->second; ++e) scale *= value;
        Monomial m2 = m;
        m2.erase(v);
        p += monomial_poly(m2, scale);
      }
    }
    return p;
  }

  Rational evaluate(const std::vector<Rational> &values) const {
    Rational total(0);
    for (const auto &[m, c] : terms_) {
      Rational t = c;
      for (const auto &[v, e] : m) {
        for (unsigned i = 0; i < e; ++i) t *= values.at(v);
      }
      total += t;
    }
    return total;
  }

  // Coefficient of v (the polynomial must be degree <= 1 in v for this to be
  // the linear coefficient).
  Poly coeff_of(unsigned v) const {
    Poly p;
    for (const auto &[m, c] : terms_) {
      auto it = m.find(v);
      if (it != m.end() && it->second == 1) {
        Monomial m2 = m;
        m2.erase(v);
        p += monomial_poly(m2, c);
      }
    }
    return p;
  }

 private:
  static Poly monomial_poly(const Monomial &m, const Rational &c) {
    Poly p;
    if (c != 0) p.terms_[m] = c;
    return p;
  }

  std::map<Monomial, Rational> terms_;
};

inline bool scalar_is_zero(const Poly &p) { return p.is_zero(); }

inline std::string to_string(const Poly &p) {
  return p.is_constant() ? p.constant_value().get_str() : std::string("<poly>");
}

using PMatrix = Matrix<Poly>;

inline PMatrix poly_matrix(const QMatrix &m) {
  PMatrix p(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m(i, j) != 0) p(i, j) = Poly(m(i, j));
  return p;
}

// exp of a nilpotent polynomial matrix (truncates when the power vanishes).
inline PMatrix poly_exp_nilpotent(const PMatrix &n) {
  PMatrix result = PMatrix::identity(n.rows());
  PMatrix power = PMatrix::identity(n.rows());
  Rational factorial(1);
  for (std::size_t i = 1; i <= n.rows(); ++i) {
    power = power * n;
    if (power.is_zero()) return result;
    factorial *= Rational(static_cast<long>(i));
    PMatrix term(n.rows(), n.cols());
    for (std::size_t r = 0; r < n.rows(); ++r)
      for (std::size_t c = 0; c < n.cols(); ++c)
        term(r, c) = power(r, c).scaled(Rational(1) / factorial);
    result = result + term;
  }
  fail("NotNilpotent", "polynomial matrix exponential did not terminate");
}

}  // namespace sonnp

#endif  // SONNP_POLY_H
