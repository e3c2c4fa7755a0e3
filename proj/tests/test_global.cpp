#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "padiq/global.hpp"

using namespace padiq;

namespace {

FormMatrix diag(std::vector<long> entries) {
  std::vector<Int> v(entries.begin(), entries.end());
  return FormMatrix::diagonal(v);
}

std::vector<long> relevant_primes(const FormMatrix& L) {
  return almost_universality_verdict(L).relevant_primes;
}

}  // namespace

TEST_CASE("positive definiteness certificate") {
  CHECK(is_positive_definite(diag({1, 2, 3})));
  CHECK(is_positive_definite(FormMatrix::a_plane()));
  CHECK(!is_positive_definite(FormMatrix::hyperbolic()));
  CHECK(!is_positive_definite(diag({1, -1})));
}

TEST_CASE("scan witnesses evaluate back to their values") {
  FormMatrix L = diag({1, 1, 1, 9});
  ScanReport r = enumerate_values(L, 200);
  CHECK(r.excluded == std::set<long>{7});
  for (const auto& [val, vec] : r.witnesses) {
    std::vector<Int> v(vec.begin(), vec.end());
    CHECK(L.value(v) == val);
  }
  for (long a : r.primitively_represented) CHECK(r.represented.count(a) == 1);
  for (long a : r.excluded) CHECK(r.primitive_excluded.count(a) == 1);
}

TEST_CASE("threaded scans are identical to sequential scans") {
  FormMatrix L = diag({1, 2, 5, 5});
  ScanReport a = enumerate_values(L, 400, 1);
  ScanReport b = enumerate_values(L, 400, 4);
  CHECK(a.represented == b.represented);
  CHECK(a.primitively_represented == b.primitively_represented);
  CHECK(a.excluded == b.excluded);
  CHECK(a.primitive_excluded == b.primitive_excluded);
  CHECK(a.witnesses == b.witnesses);
}

TEST_CASE("local-global soundness at desk scale") {
  for (auto entries : {std::vector<long>{1, 1, 1, 9},
                       std::vector<long>{1, 2, 3, 4},
                       std::vector<long>{1, 1, 2, 14}}) {
    FormMatrix L = diag(entries);
    ScanReport s = enumerate_values(L, 500, 4);
    std::vector<long> ps = relevant_primes(L);
    for (long a : s.represented)
      for (long p : ps)
        CHECK(decide_representation(L, p, Rat(a), false).represented);
    for (long a : s.primitively_represented)
      for (long p : ps)
        CHECK(decide_representation(L, p, Rat(a), true).represented);
  }
}

TEST_CASE("progression witnesses certify excluded progressions") {
  FormMatrix L = diag({1, 1, 1, 9});
  ProgressionWitness w = progression_witness(L, 2, Rat(8), true);
  CHECK(w.p == 2);
  CHECK(w.modulus == pow_int(2, w.exponent));
  CHECK(w.residue == 8 % w.modulus);
  ScanReport s = enumerate_values(L, 2000);
  for (Int a = w.residue; a <= 2000; a += w.modulus)
    if (a >= 1) CHECK(s.primitive_excluded.count(a.get_si()) == 1);
  CHECK_THROWS_AS(progression_witness(L, 2, Rat(1), true), std::invalid_argument);
}

TEST_CASE("relevant prime selection") {
  std::vector<long> ps = relevant_primes(diag({1, 1, 1, 9}));
  CHECK(ps == std::vector<long>{2, 3});
  std::vector<long> qs = relevant_primes(diag({1, 1, 25, 25}));
  CHECK(qs == std::vector<long>{2, 5});
}

TEST_CASE("almost-universality verdict fixtures") {
  GlobalVerdict a = almost_universality_verdict(diag({1, 1, 1, 2}));
  CHECK(a.almost_primitively_universal == GlobalTri::YES);
  CHECK(a.almost_universal == GlobalTri::YES);

  GlobalVerdict b = almost_universality_verdict(diag({1, 1, 1, 1, 1}));
  CHECK(b.almost_primitively_universal == GlobalTri::YES);
  CHECK(b.almost_universal == GlobalTri::YES);

  GlobalVerdict c = almost_universality_verdict(diag({1, 1, 25, 25}));
  CHECK(c.almost_primitively_universal == GlobalTri::NO);
  REQUIRE(!c.progression_witnesses.empty());
  CHECK(c.progression_witnesses.front().p == 2);

  // A YES verdict forces isotropy at every relevant prime.
  for (long p : a.relevant_primes) CHECK(is_isotropic(diag({1, 1, 1, 2}), p));
  for (long p : b.relevant_primes)
    CHECK(is_isotropic(diag({1, 1, 1, 1, 1}), p));

  CHECK_THROWS_AS(almost_universality_verdict(diag({1, 1, 1})),
                  std::invalid_argument);
  CHECK_THROWS_AS(almost_universality_verdict(diag({1, 1, 1, -1})),
                  std::invalid_argument);
}

TEST_CASE("rank >= 5: locally universal everywhere implies primitive verdicts") {
  for (auto entries : {std::vector<long>{1, 1, 1, 1, 1},
                       std::vector<long>{1, 1, 2, 3, 6},
                       std::vector<long>{1, 2, 3, 4, 5}}) {
    FormMatrix L = diag(entries);
    GlobalVerdict g = almost_universality_verdict(L);
    bool all_universal = true;
    for (const auto& [p, rep] : g.local_reports)
      all_universal = all_universal && rep.universal.universal;
    if (all_universal) {
      for (const auto& [p, rep] : g.local_reports)
        CHECK(rep.primitively_universal == Verdict::YES);
      CHECK(g.almost_primitively_universal == GlobalTri::YES);
    }
  }
}

TEST_CASE("discriminant criterion rejects bad input") {
  CHECK_THROWS_AS(theorem3_check(FormMatrix::a_plane_half()),
                  std::invalid_argument);
  CHECK_THROWS_AS(theorem3_check(FormMatrix::hyperbolic()),
                  std::invalid_argument);
}

TEST_CASE("scan input validation") {
  CHECK_THROWS_AS(enumerate_values(FormMatrix::hyperbolic(), 10),
                  std::invalid_argument);
  CHECK_THROWS_AS(enumerate_values(diag({1, 1}), 0), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_values(FormMatrix::from_gram2({{Int(2)}}, true), 10),
                  std::invalid_argument);
}
