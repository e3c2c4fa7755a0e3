#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "padiq/padic.hpp"

using namespace padiq;

namespace {

std::vector<Rat> class_samples(long p, long e_top) {
  std::vector<Rat> out;
  for (long e = 0; e <= e_top; ++e)
    for (int u : unit_class_reps(p)) out.push_back(Rat(pow_int(p, e) * u));
  return out;
}

}  // namespace

TEST_CASE("valuation and mod_reduce basics") {
  CHECK(valuation(Int(12), 2) == 2);
  CHECK(valuation(Int(12), 3) == 1);
  CHECK(valuation(Rat(3, 8), 2) == -3);
  CHECK(valuation(Rat(3, 8), 3) == 1);
  CHECK_THROWS_AS(valuation(Int(0), 5), std::domain_error);
  CHECK(mod_reduce(Rat(1, 3), Int(8)) == 3);  // 3 * 3 = 9 = 1 mod 8
  CHECK_THROWS_AS(mod_reduce(Rat(1, 2), Int(8)), std::domain_error);
}

TEST_CASE("square_class idempotence under squares") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> pick(1, 50000);
  for (long p : {2L, 3L, 5L, 7L}) {
    for (int trial = 0; trial < 300; ++trial) {
      Rat a(pick(rng));
      long s = pick(rng) % 300 + 1;
      SquareClass c = square_class(a, p);
      CHECK(square_class(a * s * s, p).unit_rep == c.unit_rep);
      CHECK((square_class(a * s * s, p).order - c.order) % 2 == 0);
      // The class of the canonical representative is the class itself.
      SquareClass d = square_class(Rat(c.representative()), p);
      CHECK(d.order == c.order);
      CHECK(d.unit_rep == c.unit_rep);
      CHECK(is_square(a * a, p));
    }
  }
}

TEST_CASE("local square theorem: units congruent mod 4p share a class") {
  std::mt19937_64 rng(12);
  std::uniform_int_distribution<long> pick(1, 100000);
  for (long p : {2L, 3L, 5L}) {
    int done = 0;
    while (done < 1000) {
      long u = pick(rng);
      if (u % p == 0) continue;
      long w = u + 4 * p * (pick(rng) % 1000 + 1);
      CHECK(square_class(Rat(u), p).unit_rep == square_class(Rat(w), p).unit_rep);
      CHECK(is_square(Rat(w, u), p) == is_square(Rat(1), p));
      ++done;
    }
  }
}

TEST_CASE("hilbert symbol laws, exhaustive over class representatives") {
  for (long p : {2L, 3L, 5L, 7L}) {
    std::vector<Rat> xs = class_samples(p, 3);
    for (const Rat& a : xs) {
      CHECK(hilbert_symbol(a, -a, p) == 1);
      CHECK(hilbert_symbol(a, Rat(1), p) == 1);
      if (a != 1) CHECK(hilbert_symbol(a, 1 - a, p) == 1);
      for (const Rat& b : xs) {
        int ab = hilbert_symbol(a, b, p);
        CHECK(ab == hilbert_symbol(b, a, p));                    // symmetry
        CHECK(hilbert_symbol(a * 49, b, p) == ab);               // square shift
        CHECK(hilbert_symbol(a, b * b * a, p) == hilbert_symbol(a, a, p));
        for (const Rat& c : xs)                                   // bilinearity
          CHECK(hilbert_symbol(a, b * c, p) ==
                hilbert_symbol(a, b, p) * hilbert_symbol(a, c, p));
      }
    }
  }
}

TEST_CASE("hilbert symbol vs norm-group oracle") {
  for (long p : {2L, 3L, 5L}) {
    std::vector<Rat> xs = class_samples(p, 1);
    for (const Rat& a : xs)
      for (const Rat& b : xs)
        CHECK(hilbert_symbol(a, b, p) == oracle::hilbert_by_norms(a, b, p));
  }
}

TEST_CASE("qp square classes with negative valuation") {
  CHECK(qp_square_class(Rat(3, 4), 2).cls.order == -2);
  CHECK(qp_is_square(Rat(1, 4), 2));
  CHECK(qp_is_square(Rat(9, 25), 5));
  CHECK(!qp_is_square(Rat(1, 2), 2));
  CHECK(qp_square_class(Rat(-8), 2).negative);
}

TEST_CASE("unit class representatives") {
  CHECK(unit_class_reps(2) == std::vector<int>{1, 3, 5, 7});
  CHECK(unit_class_reps(3) == std::vector<int>{1, 2});
  CHECK(unit_class_reps(7).size() == 2);
  CHECK(is_prime(2));
  CHECK(is_prime(101));
  CHECK(!is_prime(1));
  CHECK(!is_prime(91));
}
