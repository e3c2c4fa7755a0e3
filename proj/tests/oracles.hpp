#pragma once

// Independent oracles for differential testing: implementations deliberately
// avoid the code paths they are used to check.

#include <functional>
#include <random>
#include <set>
#include <stdexcept>
#include <utility>

#include "padiq/local.hpp"

namespace padiq::oracle {

// Square-class pair (order mod 2, unit representative): the image of a
// nonzero element in Q_p^* / (Q_p^*)^2 up to sign.
inline std::pair<int, int> class_pair(const Rat& a, long p) {
  SignedClass c = qp_square_class(a, p);
  return {static_cast<int>(((c.cls.order % 2) + 2) % 2), c.cls.unit_rep};
}

// Hilbert symbol via the norm group of Q_p(sqrt(a)): (a, b)_p = 1 iff b is a
// norm, i.e. b = x^2 - a y^2 up to squares. The norm classes are collected
// from a small integer box; since they form an index-2 subgroup (a nonsquare)
// the collection is complete once it reaches half of all classes, which is
// asserted.
inline int hilbert_by_norms(const Rat& a, const Rat& b, long p) {
  if (qp_is_square(a, p)) return 1;
  std::set<std::pair<int, int>> norms;
  size_t half = p == 2 ? 4 : 2;
  for (long x = 0; x <= 60; ++x)
    for (long y = 0; y <= 60; ++y) {
      Rat n = Rat(x) * x - a * y * y;
      if (n != 0) norms.insert(class_pair(n, p));
    }
  if (norms.size() != half) throw std::logic_error("norm box too small");
  return norms.count(class_pair(b, p)) ? 1 : -1;
}

// Naive residue search: does q(v) = a mod p^K admit a (primitive) solution?
// Recursive enumeration with exact big-integer evaluation.
inline bool naive_residue(const FormMatrix& L, long p, const Int& a, long K,
                          bool primitive) {
  int n = L.rank();
  Int M = pow_int(p, K);
  std::vector<Int> v(n, 0);
  std::function<bool(int)> rec = [&](int i) -> bool {
    if (i == n) {
      if (primitive) {
        bool unit = false;
        for (const Int& x : v)
          if (x % p != 0) unit = true;
        if (!unit) return false;
      }
      Rat q = L.value(v);
      Rat diff = q - Rat(a);
      if (diff.get_den() != 1) return false;
      return diff.get_num() % M == 0;
    }
    for (Int x = 0; x < M; ++x) {
      v[i] = x;
      if (rec(i + 1)) return true;
    }
    v[i] = 0;
    return false;
  };
  return rec(0);
}

// Random plain lattice: diagonal p-power times unit, conjugated by a few
// unimodular shears.
inline FormMatrix random_lattice(std::mt19937_64& rng, long p, int n,
                                 int e_max) {
  std::uniform_int_distribution<int> ed(0, e_max);
  std::uniform_int_distribution<int> un(1, p == 2 ? 7 : static_cast<int>(p) - 1);
  std::vector<std::vector<Int>> g(n, std::vector<Int>(n, 0));
  for (int i = 0; i < n; ++i) {
    long u = un(rng);
    if (p == 2 && u % 2 == 0) ++u;
    g[i][i] = 2 * pow_int(p, ed(rng)) * u;
  }
  std::uniform_int_distribution<int> idx(0, n - 1);
  std::uniform_int_distribution<int> sgn(0, 1);
  for (int step = 0; step < 4; ++step) {
    int i = idx(rng), j = idx(rng);
    if (i == j) continue;
    int c = sgn(rng) ? 1 : -1;
    for (int t = 0; t < n; ++t) g[i][t] += c * g[j][t];
    for (int t = 0; t < n; ++t) g[t][i] += c * g[t][j];
  }
  return FormMatrix::from_gram2(std::move(g));
}

// Random unimodular basis change applied to a form.
inline FormMatrix conjugate(std::mt19937_64& rng, const FormMatrix& L,
                            int steps = 6) {
  int n = L.rank();
  std::vector<std::vector<Int>> g(n, std::vector<Int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g[i][j] = L.g2(i, j);
  std::uniform_int_distribution<int> idx(0, n - 1);
  std::uniform_int_distribution<int> sgn(0, 1);
  for (int step = 0; step < steps; ++step) {
    int i = idx(rng), j = idx(rng);
    if (i == j) continue;
    int c = sgn(rng) ? 1 : -1;
    for (int t = 0; t < n; ++t) g[i][t] += c * g[j][t];
    for (int t = 0; t < n; ++t) g[t][i] += c * g[t][j];
  }
  return FormMatrix::from_gram2(std::move(g), L.half());
}

}  // namespace padiq::oracle
