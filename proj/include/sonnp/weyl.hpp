#ifndef SONNP_WEYL_H
#define SONNP_WEYL_H

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <map>
#include <set>
#include <vector>

#include "sonnp/lie.hpp"

namespace sonnp {

// Element of a Weyl group of type B/D acting on torus coordinates x_1..x_r:
// x_i |-> sign(images[i-1]) * x_{|images[i-1]|}.
struct SignedPermutation {
  std::vector<long> images;

  static SignedPermutation identity(std::size_t r) {
    SignedPermutation p;
    p.images.resize(r);
    for (std::size_t i = 0; i < r; ++i) p.images[i] = static_cast<long>(i + 1);
    return p;
  }

  std::size_t rank() const { return images.size(); }

  // Composition: (a*b) acts as a after b.
  SignedPermutation operator*(const SignedPermutation &b) const {
    SignedPermutation p;
    p.images.resize(images.size());
    for (std::size_t i = 0; i < images.size(); ++i) {
      long bi = b.images[i];
      long ai = images[std::labs(bi) - 1];
      p.images[i] = bi > 0 ? ai : -ai;
    }
    return p;
  }

  bool operator==(const SignedPermutation &o) const { return images == o.images; }
  bool operator<(const SignedPermutation &o) const { return images < o.images; }

  bool is_identity() const {
    for (std::size_t i = 0; i < images.size(); ++i)
      if (images[i] != static_cast<long>(i + 1)) return false;
    return true;
  }

  // Image of the root/weight vector c (coefficients on x_1..x_r).
  std::vector<long> act(const std::vector<long> &c) const {
    std::vector<long> out(c.size(), 0);
    for (std::size_t i = 0; i < c.size(); ++i) {
      long im = images[i];
      out[std::labs(im) - 1] += (im > 0 ? c[i] : -c[i]);
    }
    return out;
  }
};

struct WeylWord {
  std::vector<std::size_t> gens;  // 1-based simple-generator indices
};

// Ambient Weyl group type: B_r for the odd-dimensional groups, D_n for SO(n,n).
inline bool is_type_d(GroupKind k) { return k.family == Family::SO_n_n; }

// Simple reflection on torus coordinates for the listed simple roots.
inline SignedPermutation reflect(GroupKind k, std::size_t idx) {
  const std::size_t r = torus_rank(k);
  SignedPermutation p = SignedPermutation::identity(r);
  const std::size_t last = r;
  if (idx < 1 || idx > (is_type_d(k) ? r : r)) fail("DimensionMismatch", "bad generator index");
  if (is_type_d(k) && idx == last) {
    // delta_n = x_{n-1} + x_n: x_{n-1} <-> -x_n.
    p.images[r - 2] = -static_cast<long>(r);
    p.images[r - 1] = -static_cast<long>(r - 1);
  } else if (!is_type_d(k) && idx == last) {
    // short root x_r: flip the last coordinate.
    p.images[r - 1] = -static_cast<long>(r);
  } else {
    p.images[idx - 1] = static_cast<long>(idx + 1);
    p.images[idx] = static_cast<long>(idx);
  }
  return p;
}

// Positive roots as coefficient vectors: type B_r adds the short roots x_i.
inline std::vector<std::vector<long>> positive_roots_b(std::size_t r) {
  std::vector<std::vector<long>> roots;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i + 1; j < r; ++j) {
      std::vector<long> a(r, 0), b(r, 0);
      a[i] = 1; a[j] = -1;
      b[i] = 1; b[j] = 1;
      roots.push_back(a);
      roots.push_back(b);
    }
  for (std::size_t i = 0; i < r; ++i) {
    std::vector<long> a(r, 0);
    a[i] = 1;
    roots.push_back(a);
  }
  return roots;
}

inline std::vector<std::vector<long>> positive_roots_d(std::size_t r) {
  std::vector<std::vector<long>> roots;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i + 1; j < r; ++j) {
      std::vector<long> a(r, 0), b(r, 0);
      a[i] = 1; a[j] = -1;
      b[i] = 1; b[j] = 1;
      roots.push_back(a);
      roots.push_back(b);
    }
  return roots;
}

inline bool root_is_positive(const std::vector<long> &c) {
  for (long v : c) {
    if (v > 0) return true;
    if (v < 0) return false;
  }
  return false;
}

// Coxeter length = number of positive roots sent to negative roots.
inline std::size_t coxeter_length(const SignedPermutation &w,
                                  const std::vector<std::vector<long>> &pos) {
  std::size_t len = 0;
  for (const auto &a : pos)
    if (!root_is_positive(w.act(a))) ++len;
  return len;
}

inline SignedPermutation word_product(GroupKind k, const WeylWord &w) {
  SignedPermutation p = SignedPermutation::identity(torus_rank(k));
  for (std::size_t g : w.gens) p = p * reflect(k, g);
  return p;
}

struct LongestReport {
  bool is_reduced = false;
  bool is_longest = false;
  std::size_t word_length = 0;
  std::size_t element_length = 0;
  std::size_t target_length = 0;  // number of positive roots
};

inline LongestReport verify_report(const SignedPermutation &w, std::size_t word_length,
                                   const std::vector<std::vector<long>> &pos) {
  LongestReport rep;
  rep.word_length = word_length;
  rep.element_length = coxeter_length(w, pos);
  rep.target_length = pos.size();
  rep.is_reduced = rep.word_length == rep.element_length;
  rep.is_longest = rep.element_length == rep.target_length;
  return rep;
}

// Verify a word over the ambient simple generators of SO(n,n-1) or SO(n,n).
inline LongestReport verify_longest(GroupKind k, const WeylWord &w) {
  const std::size_t r = torus_rank(k);
  auto pos = is_type_d(k) ? positive_roots_d(r) : positive_roots_b(r);
  return verify_report(word_product(k, w), w.gens.size(), pos);
}

// Printed longest-word schedules.
//
// SO(n,n-1): b_j = s_{beta_{n-j}} ... s_{beta_{n-2}} s_{beta_{n-1}}
//            s_{beta_{n-2}} ... s_{beta_{n-j}},  word = b_1 ... b_{n-1}.
// SO(n,n):   d_1 = s_{delta_n}, d_2 = s_{delta_{n-1}},
//            d_j = s_{delta_{n+1-j}} ... s_{delta_{n-2}} s_{delta_{n-1}}
//                  s_{delta_n} s_{delta_{n-2}} ... s_{delta_{n+1-j}} (j >= 3);
//            the ellipsis endpoints of the printed d_j are ambiguous, this is
//            the repair with total length n(n-1) (see the verification report).
inline std::vector<WeylWord> longest_word_blocks(GroupKind k) {
  const long n = k.n;
  std::vector<WeylWord> blocks;
  switch (k.family) {
    case Family::SO_n_nminus1:
      for (long j = 1; j <= n - 1; ++j) {
        WeylWord b;
        for (long i = n - j; i <= n - 1; ++i) b.gens.push_back(i);
        for (long i = n - 2; i >= n - j; --i) b.gens.push_back(i);
        blocks.push_back(b);
      }
      break;
    case Family::SO_n_n:
      blocks.push_back({{static_cast<std::size_t>(n)}});
      blocks.push_back({{static_cast<std::size_t>(n - 1)}});
      for (long j = 3; j <= n; ++j) {
        WeylWord b;
        for (long i = n + 1 - j; i <= n - 2; ++i) b.gens.push_back(i);
        b.gens.push_back(n - 1);
        b.gens.push_back(n);
        for (long i = n - 2; i >= n + 1 - j; --i) b.gens.push_back(i);
        blocks.push_back(b);
      }
      break;
    case Family::SO_n_nplus1:
      // Blocks over the W(Theta) generators sigma_1..sigma_{n-1}: the same
      // B-type schedule, with sigma_{n-1} in the short-root slot.
      for (long j = 1; j <= n - 1; ++j) {
        WeylWord b;
        for (long i = n - j; i <= n - 1; ++i) b.gens.push_back(i);
        for (long i = n - 2; i >= n - j; --i) b.gens.push_back(i);
        blocks.push_back(b);
      }
      break;
  }
  return blocks;
}

inline WeylWord paper_longest_word(GroupKind k) {
  WeylWord w;
  for (const auto &b : longest_word_blocks(k))
    w.gens.insert(w.gens.end(), b.gens.begin(), b.gens.end());
  return w;
}

// W(Theta) for (SO(n,n+1), Theta = {beta_1..beta_{n-1}}): sigma_j = s_{beta_j}
// for j <= n-2, sigma_{n-1} = longest word of the rank-2 {beta_{n-1}, beta_n}
// subsystem, all returned as ambient signed permutations on x_1..x_n.
inline std::vector<SignedPermutation> w_theta(int n) {
  GroupKind k{Family::SO_n_nplus1, n};
  std::vector<SignedPermutation> gens;
  for (int j = 1; j <= n - 2; ++j) gens.push_back(reflect(k, j));
  SignedPermutation a = reflect(k, n - 1), b = reflect(k, n);
  gens.push_back(a * b * a * b);  // (s_{n-1} s_n)^2, the B_2 longest word
  return gens;
}

// Expansion of sigma_j into ambient generator indices.
inline WeylWord w_theta_expansion(int n, std::size_t sigma_idx) {
  if (sigma_idx + 1 < static_cast<std::size_t>(n))
    return {{sigma_idx}};
  return {{static_cast<std::size_t>(n - 1), static_cast<std::size_t>(n),
           static_cast<std::size_t>(n - 1), static_cast<std::size_t>(n)}};
}

// Project an ambient W(Theta) element to its B_{n-1} action on x_1..x_{n-1}.
inline SignedPermutation project_theta(const SignedPermutation &w) {
  SignedPermutation p;
  p.images.assign(w.images.begin(), w.images.end() - 1);
  for (long v : p.images)
    if (std::labs(v) >= static_cast<long>(w.images.size()))
      fail("DimensionMismatch", "element does not preserve the W(Theta) projection");
  return p;
}

// Verify a word over sigma-generators in W(Theta) ~= W(B_{n-1}).
inline LongestReport verify_longest_theta(int n, const WeylWord &w) {
  auto gens = w_theta(n);
  SignedPermutation p = SignedPermutation::identity(n);
  for (std::size_t g : w.gens) p = p * gens[g - 1];
  return verify_report(project_theta(p), w.gens.size(), positive_roots_b(n - 1));
}

inline LongestReport verify_paper_longest(GroupKind k) {
  if (k.family == Family::SO_n_nplus1)
    return verify_longest_theta(k.n, paper_longest_word(k));
  return verify_longest(k, paper_longest_word(k));
}

// Brute-force group generation (orders are small for the tested ranks).
inline std::size_t group_order(const std::vector<SignedPermutation> &gens) {
  std::set<SignedPermutation> seen;
  std::vector<SignedPermutation> frontier{SignedPermutation::identity(gens.at(0).rank())};
  seen.insert(frontier[0]);
  while (!frontier.empty()) {
    std::vector<SignedPermutation> next;
    for (const auto &w : frontier)
      for (const auto &g : gens) {
        SignedPermutation x = w * g;
        if (seen.insert(x).second) next.push_back(x);
      }
    frontier = std::move(next);
  }
  return seen.size();
}

}  // namespace sonnp

#endif  // SONNP_WEYL_H
