#pragma once

#include "padiq/form.hpp"

namespace padiq {

/// One p^s-modular Jordan component. Proper components carry the unit
/// representatives of an orthogonal basis <p^s e1, ..., p^s ek>; improper
/// components (p = 2 only, even rank) are a stack of scaled H-planes with a
/// tail plane tagged 'H' or 'A'.
struct JordanComponent {
  long scale_exp = 0;
  int rank = 0;
  bool proper = true;
  std::vector<int> unit_reps;  // proper content
  int binary_blocks = 0;       // improper content: number of planes
  char tail = 'H';             // tag of the last plane
  long norm_exp = 0;
};

struct JordanSplitting {
  long p = 0;
  std::vector<JordanComponent> components;  // strictly increasing scale_exp

  int rank() const;
  long top_exponent() const;  // t
  long scale_exponent() const;
  long norm_exponent() const;
  long volume_exponent() const;  // ord_p of the determinant ideal
  /// Rebuild a form matrix p-adically isometric to the splitting.
  FormMatrix assemble() const;
};

JordanSplitting jordan_decompose(const FormMatrix& L, long p);

/// Discriminant dL as a signed square class of Q_p.
SignedClass det_square_class(const FormMatrix& L, long p);

/// Hasse invariant S_p = prod_{i<j} (a_i, a_j)_p over a diagonalization of
/// the underlying rational quadratic space (product over i < j fixed
/// project-wide).
int hasse_invariant(const FormMatrix& L, long p);

/// True iff the underlying Q_p-space represents zero nontrivially.
bool is_isotropic(const FormMatrix& L, long p);

/// Diagonalization of the underlying rational space (entries a_1..a_n).
std::vector<Rat> diagonalize_space(const FormMatrix& L);

}  // namespace padiq
