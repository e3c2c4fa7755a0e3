#pragma once

#include <map>
#include <optional>
#include <set>

#include "padiq/jordan.hpp"

namespace padiq {

/// Outcome of the exact representation decision for one target.
struct RepVerdict {
  Rat target;
  bool primitive = false;
  bool represented = false;
  std::vector<Int> witness;   // residues mod p^exhaustion_level
  long exhaustion_level = 0;  // K* = 2*ord_p(2a) + 1
  long hensel_d = -1;         // min gradient valuation at the witness; -1 if
                              // the witness survived to full depth instead
  bool rescaled = false;      // analysis ran on a unit-square scaling of L
};

/// Exact decision of a ->* L (primitive = true) or a -> L over Z_p.
/// Enumerates residues to depth K* = 2*ord_p(2a)+1 with early Newton-lift
/// acceptance; complete because any residue solution v satisfies
/// min_i ord_p((G2 v)_i) <= ord_p(2a) by Euler's identity.
RepVerdict decide_representation(const FormMatrix& L, long p, const Rat& a,
                                 bool primitive);

/// Residue-level search: a primitive (or arbitrary) v mod p^K with
/// q(v) = target mod p^K, no lifting certificate. L must not be half-scaled.
std::optional<std::vector<Int>> find_residue_solution(const FormMatrix& L,
                                                      long p,
                                                      const Rat& target,
                                                      long K, bool primitive);

/// Square classes with order <= e_max whose representatives are
/// (primitively) represented.
std::set<SquareClass> spectrum(const FormMatrix& L, long p, long e_max,
                               bool primitive);

struct UniversalityCheck {
  bool universal = false;
  std::map<SquareClass, bool> classes;  // representatives with e in {0,1}
  std::optional<SquareClass> missing;   // first unrepresented class
};

/// Z_p-universality; checking classes of order 0 and 1 suffices since q(L)
/// is closed under multiplication by squares.
UniversalityCheck is_universal_local(const FormMatrix& L, long p);

enum class Verdict { YES, NO, BOUNDED };
std::string to_string(Verdict v);

struct UniversalityReport {
  long p = 0;
  UniversalityCheck universal;
  Verdict primitively_universal = Verdict::BOUNDED;
  long e_max = 0;  // horizon used for BOUNDED / necessary checks
  std::vector<std::string> trace;
  std::set<SquareClass> spectrum_found;    // primitive, order <= e_max
  std::set<SquareClass> spectrum_missing;  // only populated when computed
  std::optional<SquareClass> failure_class;
};

/// Primitive Z_p-universality decision tree. e_max < 0 selects the default
/// horizon t + 4 (t = top Jordan exponent).
UniversalityReport is_primitively_universal_local(const FormMatrix& L, long p,
                                                  long e_max = -1);

struct GapReport {
  long bound = 0;          // t + 3 in scaled units
  long empirical_min = 0;  // least l >= 1 with no primitive residue solution
  long top_exponent = 0;   // t after scaling to scale Z_p
  long scale_shift = 0;    // exponent removed by the normalization
};

/// For anisotropic L: the exponent l with q*(L) disjoint from p^l Z_p,
/// reported in the units of the scaling that makes the scale ideal Z_p.
GapReport anisotropic_gap(const FormMatrix& L, long p);

}  // namespace padiq
