#ifndef SONNP_RATIONAL_H
#define SONNP_RATIONAL_H

#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace sonnp {

// Exact rational scalar. mpq_class keeps values canonical (lowest terms,
// positive denominator), which is exactly the invariant we need.
using Rational = mpq_class;

struct Error : std::runtime_error {
  std::string code;
  Error(std::string c, const std::string &msg)
      : std::runtime_error(c + ": " + msg), code(std::move(c)) {}
};

[[noreturn]] inline void fail(const std::string &code, const std::string &msg) {
  throw Error(code, msg);
}

inline Rational rat(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline std::string to_string(const Rational &r) { return r.get_str(); }

// Element of the quadratic extension Q[sqrt(2)]: a + b*sqrt(2).
struct Sqrt2 {
  Rational a;  // rational part
  Rational b;  // sqrt(2) coefficient

  Sqrt2() : a(0), b(0) {}
  Sqrt2(long v) : a(v), b(0) {}  // NOLINT(google-explicit-constructor)
  Sqrt2(Rational v) : a(std::move(v)), b(0) {}  // NOLINT
  Sqrt2(Rational ra, Rational rb) : a(std::move(ra)), b(std::move(rb)) {}

  static Sqrt2 sqrt2() { return {Rational(0), Rational(1)}; }
  static Sqrt2 inv_sqrt2() { return {Rational(0), rat(1, 2)}; }

  bool is_zero() const { return a == 0 && b == 0; }

  Sqrt2 operator-() const { return {-a, -b}; }
  Sqrt2 operator+(const Sqrt2 &o) const { return {a + o.a, b + o.b}; }
  Sqrt2 operator-(const Sqrt2 &o) const { return {a - o.a, b - o.b}; }
  Sqrt2 operator*(const Sqrt2 &o) const {
    return {a * o.a + 2 * b * o.b, a * o.b + b * o.a};
  }
  Sqrt2 operator/(const Sqrt2 &o) const {
    Rational norm = o.a * o.a - 2 * o.b * o.b;
    if (norm == 0) fail("DivisionByZero", "zero divisor in Q[sqrt2]");
    return *this * Sqrt2{o.a / norm, -o.b / norm};
  }
  Sqrt2 &operator+=(const Sqrt2 &o) { a += o.a; b += o.b; return *this; }
  Sqrt2 &operator-=(const Sqrt2 &o) { a -= o.a; b -= o.b; return *this; }
  Sqrt2 &operator*=(const Sqrt2 &o) { *this = *this * o; return *this; }
  bool operator==(const Sqrt2 &o) const { return a == o.a && b == o.b; }
  bool operator!=(const Sqrt2 &o) const { return !(*this == o); }
};

inline std::string to_string(const Sqrt2 &s) {
  if (s.b == 0) return s.a.get_str();
  return s.a.get_str() + "+" + s.b.get_str() + "*sqrt2";
}

template <class T>
inline bool scalar_is_zero(const T &v) { return v == T(0); }
inline bool scalar_is_zero(const Sqrt2 &v) { return v.is_zero(); }

// Deterministic RNG (splitmix64). All sampling in tests and the CLI flows
// through this so identical seeds give identical reports.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // uniform in [lo, hi]
  long next_long(long lo, long hi) {
    return lo + static_cast<long>(next_u64() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  // rational with |numerator| <= bound, 1 <= denominator <= bound
  Rational next_rational(long bound = 100) {
    return rat(next_long(-bound, bound), next_long(1, bound));
  }

  // strictly positive rational, numerator/denominator in [1, bound]
  Rational next_positive_rational(long bound = 100) {
    return rat(next_long(1, bound), next_long(1, bound));
  }

  Rational next_nonzero_rational(long bound = 100) {
    Rational r = next_rational(bound);
    while (r == 0) r = next_rational(bound);
    return r;
  }

 private:
  std::uint64_t state_;
};

}  // namespace sonnp

#endif  // SONNP_RATIONAL_H
