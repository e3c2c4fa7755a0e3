#pragma once

#include <span>
#include <vector>

#include "padiq/padic.hpp"

namespace padiq {

/// An integral (or half-scaled) quadratic lattice, stored as the doubled
/// Gram matrix G2 = 2*Gram. With half = false the diagonal of G2 is even
/// and q(v) = v^T G2 v / 2 takes integer values; with half = true the true
/// Gram is G2/4, so q(v) = v^T G2 v / 4 and q may take half-integer values.
class FormMatrix {
 public:
  static FormMatrix from_gram2(std::vector<std::vector<Int>> g2, bool half = false);
  static FormMatrix diagonal(const std::vector<Int>& entries);

  // Binary building blocks: hyperbolic plane H, the plane A with Gram
  // (2 1 / 1 2), and their half-scalings Hhat, Ahat.
  static FormMatrix hyperbolic();
  static FormMatrix a_plane();
  static FormMatrix hyperbolic_half();
  static FormMatrix a_plane_half();

  FormMatrix direct_sum(const FormMatrix& other) const;

  /// Scaled lattice L^(c): every Gram entry multiplied by c. Throws if the
  /// result is not representable as a (possibly half-scaled) form matrix.
  FormMatrix scaled(const Rat& c) const;

  int rank() const { return n_; }
  bool half() const { return half_; }
  const Int& g2(int i, int j) const { return g2_[i * n_ + j]; }
  Rat gram(int i, int j) const;
  std::vector<std::vector<Rat>> gram_matrix() const;

  /// Quadratic value q(v).
  Rat value(std::span<const Int> v) const;

  Rat det_gram() const;

  /// Exponent of the norm ideal n(L) at p (min ord over q-generators).
  long norm_exponent(long p) const;
  /// Exponent of the scale ideal s(L) at p (min ord over Gram entries).
  long scale_exponent(long p) const;

  bool operator==(const FormMatrix& other) const = default;

 private:
  FormMatrix(int n, std::vector<Int> g2, bool half)
      : n_(n), g2_(std::move(g2)), half_(half) {}
  int n_;
  std::vector<Int> g2_;  // row-major n x n
  bool half_;
};

Rat det_rational(const std::vector<std::vector<Rat>>& m);

}  // namespace padiq
