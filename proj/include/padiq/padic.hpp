#pragma once

#include <gmpxx.h>
#include <compare>
#include <stdexcept>
#include <string>
#include <vector>

namespace padiq {

using Int = mpz_class;
using Rat = mpq_class;

/// ord_p of a nonzero rational (negative for denominator powers).
/// Throws std::domain_error for a = 0.
long valuation(const Int& a, long p);
long valuation(const Rat& a, long p);

/// Residue of a p-integral rational modulo m (denominator must be coprime
/// to m); result is in [0, m).
Int mod_reduce(const Rat& a, const Int& m);

/// Legendre symbol of a rational p-unit modulo an odd prime.
int legendre_unit(const Rat& a, long p);

/// Smallest positive quadratic non-residue mod an odd prime.
int nonresidue(long p);

/// Canonical unit representatives of the square classes of Z_p^x:
/// {1, Delta} for odd p, {1, 3, 5, 7} for p = 2.
std::vector<int> unit_class_reps(long p);

/// A square class of a nonzero p-adic integer: p^order * unit_rep * (Z_p^x)^2.
struct SquareClass {
  long prime = 0;
  long order = 0;
  int unit_rep = 1;

  friend auto operator<=>(const SquareClass&, const SquareClass&) = default;

  Int representative() const;
  std::string str() const;
};

/// Square class of a nonzero element of Z_p (valuation must be >= 0).
SquareClass square_class(const Rat& a, long p);

/// True iff a is a square in Z_p. Requires a != 0 and ord_p(a) >= 0.
bool is_square(const Rat& a, long p);

/// Square class of a nonzero element of Q_p (any valuation), with the
/// rational sign kept alongside.
struct SignedClass {
  bool negative = false;
  SquareClass cls;
  std::string str() const;
};

SignedClass qp_square_class(const Rat& a, long p);

/// True iff a is a square in Q_p (any valuation).
bool qp_is_square(const Rat& a, long p);

/// Hilbert symbol (a, b)_p over Q_p: +1 iff z^2 = a x^2 + b y^2 has a
/// nontrivial solution. Requires a, b != 0.
int hilbert_symbol(const Rat& a, const Rat& b, long p);

inline Int pow_int(long p, long e) {
  Int r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p),
                static_cast<unsigned long>(e));
  return r;
}

bool is_prime(long p);

}  // namespace padiq
