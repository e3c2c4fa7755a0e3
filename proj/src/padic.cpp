#include "padiq/padic.hpp"


namespace padiq {

namespace {

long valuation_mpz(const mpz_class& a, long p) {
  if (a == 0) throw std::domain_error("valuation of zero undefined");
  mpz_class rest;
  return static_cast<long>(
      mpz_remove(rest.get_mpz_t(), a.get_mpz_t(), mpz_class(p).get_mpz_t()));
}

}  // namespace

long valuation(const Int& a, long p) { return valuation_mpz(a, p); }

long valuation(const Rat& a, long p) {
  if (a == 0) throw std::domain_error("valuation of zero undefined");
  return valuation_mpz(a.get_num(), p) - valuation_mpz(a.get_den(), p);
}

Int mod_reduce(const Rat& a, const Int& m) {
  Int num = a.get_num() % m;
  if (num < 0) num += m;
  Int inv;
  if (mpz_invert(inv.get_mpz_t(), a.get_den().get_mpz_t(), m.get_mpz_t()) == 0)
    throw std::domain_error("denominator not invertible modulo " + m.get_str());
  return Int(num * inv % m);
}

int legendre_unit(const Rat& a, long p) {
  Int r = mod_reduce(a, Int(p));
  if (r == 0) throw std::domain_error("legendre of non-unit");
  return mpz_legendre(r.get_mpz_t(), Int(p).get_mpz_t());
}

int nonresidue(long p) {
  for (int d = 2;; ++d) {
    if (mpz_legendre(Int(d).get_mpz_t(), Int(p).get_mpz_t()) == -1) return d;
  }
}

std::vector<int> unit_class_reps(long p) {
  if (p == 2) return {1, 3, 5, 7};
  return {1, nonresidue(p)};
}

Int SquareClass::representative() const {
  return Int(pow_int(prime, order) * unit_rep);
}

std::string SquareClass::str() const {
  if (order == 0) return std::to_string(unit_rep);
  std::string s = std::to_string(prime);
  if (order != 1) s += "^" + std::to_string(order);
  if (unit_rep != 1) s += "*" + std::to_string(unit_rep);
  return s;
}

SquareClass square_class(const Rat& a, long p) {
  if (a == 0) throw std::domain_error("square class of zero undefined");
  long e = valuation(a, p);
  if (e < 0) throw std::domain_error("square class needs valuation >= 0");
  Rat unit = a / Rat(pow_int(p, e));
  SquareClass c{p, e, 1};
  if (p == 2) {
    c.unit_rep = static_cast<int>(mod_reduce(unit, Int(8)).get_si());
  } else {
    c.unit_rep = legendre_unit(unit, p) == 1 ? 1 : nonresidue(p);
  }
  return c;
}

bool is_square(const Rat& a, long p) {
  SquareClass c = square_class(a, p);
  return c.order % 2 == 0 && c.unit_rep == 1;
}

std::string SignedClass::str() const {
  return (negative ? "-" : "") + cls.str();
}

SignedClass qp_square_class(const Rat& a, long p) {
  if (a == 0) throw std::domain_error("square class of zero undefined");
  long e = valuation(a, p);
  Rat shifted = a * Rat(pow_int(p, e < 0 ? -e : 0));
  SignedClass out;
  out.negative = a < 0;
  out.cls = square_class(e < 0 ? shifted : a, p);
  out.cls.order = e;
  return out;
}

bool qp_is_square(const Rat& a, long p) {
  SignedClass c = qp_square_class(a, p);
  return c.cls.order % 2 == 0 && c.cls.unit_rep == 1;
}

int hilbert_symbol(const Rat& a, const Rat& b, long p) {
  if (a == 0 || b == 0) throw std::domain_error("hilbert symbol of zero undefined");
  long alpha = valuation(a, p);
  long beta = valuation(b, p);
  Rat u = a / Rat(pow_int(p, alpha >= 0 ? alpha : 0));
  if (alpha < 0) u = a * Rat(pow_int(p, -alpha));
  Rat w = b / Rat(pow_int(p, beta >= 0 ? beta : 0));
  if (beta < 0) w = b * Rat(pow_int(p, -beta));

  if (p != 2) {
    int sign = 1;
    if ((alpha % 2 != 0) && (beta % 2 != 0) && (p % 4 == 3)) sign = -sign;
    if (beta % 2 != 0 && legendre_unit(u, p) == -1) sign = -sign;
    if (alpha % 2 != 0 && legendre_unit(w, p) == -1) sign = -sign;
    return sign;
  }

  int u8 = static_cast<int>(mod_reduce(u, Int(8)).get_si());
  int w8 = static_cast<int>(mod_reduce(w, Int(8)).get_si());
  auto eps = [](int x) { return (x % 4 == 3) ? 1 : 0; };   // (x-1)/2 mod 2
  auto omg = [](int x) { return (x == 3 || x == 5) ? 1 : 0; };  // (x^2-1)/8 mod 2
  long expo = eps(u8) * eps(w8) + (alpha % 2 != 0 ? omg(w8) : 0) +
              (beta % 2 != 0 ? omg(u8) : 0);
  return expo % 2 == 0 ? 1 : -1;
}

bool is_prime(long p) {
  if (p < 2) return false;
  return mpz_probab_prime_p(Int(p).get_mpz_t(), 30) != 0;
}

}  // namespace padiq
