#pragma once

#include <map>

#include "padiq/local.hpp"

namespace padiq {

bool is_positive_definite(const FormMatrix& L);

struct ScanReport {
  long bound = 0;
  std::set<long> represented;
  std::set<long> primitively_represented;
  std::set<long> excluded;            // [1, bound] minus represented
  std::set<long> primitive_excluded;  // [1, bound] minus primitively repr.
  std::map<long, std::vector<long>> witnesses;  // value -> first vector found
};

/// Exact sets of (primitively) represented integers in [1, B], by bounded
/// enumeration over a completed-squares decomposition of the Gram matrix.
/// threads > 1 partitions the outermost coordinate; output is identical to
/// the sequential run.
ScanReport enumerate_values(const FormMatrix& L, long B, int threads = 1);

struct ProgressionWitness {
  long p = 0;
  long exponent = 0;  // K
  Int residue;        // no integer = residue mod p^K is represented
  Int modulus;        // p^K
  bool primitive = false;
};

/// Certified excluded arithmetic progression from a local non-representation.
ProgressionWitness progression_witness(const FormMatrix& L, long p,
                                       const Rat& a, bool primitive);

enum class GlobalTri { YES, NO, UNDETERMINED };
std::string to_string(GlobalTri v);

struct GlobalVerdict {
  std::vector<long> relevant_primes;  // {2} and odd divisors of det
  std::map<long, UniversalityReport> local_reports;
  GlobalTri almost_universal = GlobalTri::UNDETERMINED;
  GlobalTri almost_primitively_universal = GlobalTri::UNDETERMINED;
  std::vector<ProgressionWitness> progression_witnesses;
  std::vector<std::string> notes;
};

GlobalVerdict almost_universality_verdict(const FormMatrix& L);

enum class HypState { HOLDS, FAILS, UNVERIFIED };

struct Theorem3Report {
  struct Hypothesis {
    std::string name;
    HypState state = HypState::FAILS;
    std::string detail;
  };
  std::vector<Hypothesis> hypotheses;
  bool applicable = false;
  std::string verdict;
  bool cross_checked = false;  // all local reports YES (when applicable)
};

/// Executable form of the discriminant criterion: rank >= 4, an odd integer
/// represented, p^{n-2} never divides det, and rank >= 5 or even det.
Theorem3Report theorem3_check(const FormMatrix& L, long odd_scan_bound = 200);

}  // namespace padiq
