#include "padiq/jordan.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <optional>
#include <stdexcept>

namespace padiq {

namespace {

using Matrix = std::vector<std::vector<Rat>>;

long val_or_max(const Rat& x, long p) {
  return x == 0 ? std::numeric_limits<long>::max() : valuation(x, p);
}

// Basis change v_i += c * v_j on a Gram matrix.
void add_row(Matrix& w, int i, int j, int c) {
  int n = static_cast<int>(w.size());
  for (int k = 0; k < n; ++k) {
    if (k == i) continue;
    w[i][k] += c * w[j][k];
    w[k][i] = w[i][k];
  }
  w[i][i] += 2 * c * w[j][i] + c * c * w[j][j];
}

// Split off the rank-1 sublattice spanned by v_i; returns the reduced matrix.
Matrix eliminate_rank1(const Matrix& w, int i) {
  int n = static_cast<int>(w.size());
  Matrix out(n - 1, std::vector<Rat>(n - 1));
  Rat d = w[i][i];
  int r = 0;
  for (int k = 0; k < n; ++k) {
    if (k == i) continue;
    int c = 0;
    for (int l = 0; l < n; ++l) {
      if (l == i) continue;
      out[r][c] = w[k][l] - w[i][k] * w[i][l] / d;
      ++c;
    }
    ++r;
  }
  return out;
}

// Split off the binary sublattice spanned by v_i, v_j (its 2x2 Gram block
// must be invertible); returns the reduced matrix.
Matrix eliminate_binary(const Matrix& w, int i, int j) {
  int n = static_cast<int>(w.size());
  Rat det2 = w[i][i] * w[j][j] - w[i][j] * w[i][j];
  Matrix out(n - 2, std::vector<Rat>(n - 2));
  std::vector<Rat> a(n), b(n);
  for (int k = 0; k < n; ++k) {
    a[k] = (w[j][j] * w[i][k] - w[i][j] * w[j][k]) / det2;
    b[k] = (w[i][i] * w[j][k] - w[i][j] * w[i][k]) / det2;
  }
  int r = 0;
  for (int k = 0; k < n; ++k) {
    if (k == i || k == j) continue;
    int c = 0;
    for (int l = 0; l < n; ++l) {
      if (l == i || l == j) continue;
      out[r][c] = w[k][l] - a[k] * w[i][l] - b[k] * w[j][l];
      ++c;
    }
    ++r;
  }
  return out;
}

int unit_rep_of(const Rat& x, long p, long s) {
  Rat u = x / Rat(pow_int(p, s >= 0 ? s : 0));
  if (s < 0) u = x * Rat(pow_int(p, -s));
  if (p == 2) return static_cast<int>(mod_reduce(u, Int(8)).get_si());
  return legendre_unit(u, p) == 1 ? 1 : nonresidue(p);
}

struct Rank1Block {
  long s;
  int rep;
};
struct BinaryBlock {
  long s;
  char tag;  // 'H' or 'A'
};

char classify_binary(const Rat& det2, long p, long s) {
  int rep = unit_rep_of(det2, p, 2 * s);
  if (rep == 7) return 'H';
  if (rep == 3) return 'A';
  throw std::logic_error("improper binary block with unexpected determinant class");
}

// Rewrite <eps*2^s> _|_ P (P an improper plane at scale s over Z_2) as three
// diagonal entries of scale s; returns their unit representatives.
std::array<int, 3> absorb_binary(int eps, long s, char tag) {
  Rat sc = s >= 0 ? Rat(pow_int(2, s)) : Rat(1, 2);
  Matrix blk = tag == 'H' ? Matrix{{0, 1}, {1, 0}} : Matrix{{2, 1}, {1, 2}};
  // Basis (e + f, f, g) for <eps*2^s> _|_ P.
  Matrix w(3, std::vector<Rat>(3));
  w[1][1] = blk[0][0] * sc;
  w[2][2] = blk[1][1] * sc;
  w[1][2] = w[2][1] = blk[0][1] * sc;
  w[0][0] = Rat(eps) * sc + w[1][1];
  w[0][1] = w[1][0] = w[1][1];
  w[0][2] = w[2][0] = w[1][2];
  std::array<int, 3> reps;
  reps[0] = unit_rep_of(w[0][0], 2, s);
  Matrix w2 = eliminate_rank1(w, 0);
  // The complement has exactly one diagonal entry of scale s; pivot it.
  int i = val_or_max(w2[0][0], 2) == s ? 0 : 1;
  if (val_or_max(w2[i][i], 2) != s)
    throw std::logic_error("absorb_binary: no unit-scale pivot in complement");
  reps[1] = unit_rep_of(w2[i][i], 2, s);
  Matrix w3 = eliminate_rank1(w2, i);
  if (val_or_max(w3[0][0], 2) != s)
    throw std::logic_error("absorb_binary: residual entry off scale");
  reps[2] = unit_rep_of(w3[0][0], 2, s);
  return reps;
}

}  // namespace

JordanSplitting jordan_decompose(const FormMatrix& L, long p) {
  if (!is_prime(p)) throw std::invalid_argument("p must be prime");
  if (L.det_gram() == 0) throw std::invalid_argument("singular form");
  Matrix w = L.gram_matrix();

  std::vector<Rank1Block> rank1;
  std::vector<BinaryBlock> binary;

  while (!w.empty()) {
    int n = static_cast<int>(w.size());
    long m = std::numeric_limits<long>::max();
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) m = std::min(m, val_or_max(w[i][j], p));

    int diag = -1;
    for (int i = 0; i < n; ++i)
      if (val_or_max(w[i][i], p) == m) { diag = i; break; }

    if (diag < 0 && p != 2) {
      // Odd p: move a minimal off-diagonal entry onto the diagonal.
      int bi = -1, bj = -1;
      for (int i = 0; i < n && bi < 0; ++i)
        for (int j = i + 1; j < n; ++j)
          if (val_or_max(w[i][j], p) == m) { bi = i; bj = j; break; }
      Rat plus = w[bi][bi] + 2 * w[bi][bj] + w[bj][bj];
      add_row(w, bi, bj, val_or_max(plus, p) == m ? 1 : -1);
      if (val_or_max(w[bi][bi], p) != m)
        throw std::logic_error("jordan: failed to surface diagonal pivot");
      diag = bi;
    }

    if (diag >= 0) {
      rank1.push_back({m, unit_rep_of(w[diag][diag], p, m)});
      w = eliminate_rank1(w, diag);
      continue;
    }

    // p = 2, minimal valuation only off-diagonal: improper binary block.
    int bi = -1, bj = -1;
    for (int i = 0; i < n && bi < 0; ++i)
      for (int j = i + 1; j < n; ++j)
        if (val_or_max(w[i][j], p) == m) { bi = i; bj = j; break; }
    Rat det2 = w[bi][bi] * w[bj][bj] - w[bi][bj] * w[bi][bj];
    binary.push_back({m, classify_binary(det2, p, m)});
    w = eliminate_binary(w, bi, bj);
  }

  if (p != 2 && !binary.empty())
    throw std::logic_error("improper block at odd prime");

  std::vector<long> scales;
  for (const auto& b : rank1) scales.push_back(b.s);
  for (const auto& b : binary) scales.push_back(b.s);
  std::sort(scales.begin(), scales.end());
  scales.erase(std::unique(scales.begin(), scales.end()), scales.end());

  JordanSplitting out;
  out.p = p;
  for (long s : scales) {
    std::vector<int> reps;
    for (const auto& b : rank1)
      if (b.s == s) reps.push_back(b.rep);
    std::vector<char> tags;
    for (const auto& b : binary)
      if (b.s == s) tags.push_back(b.tag);

    if (!reps.empty()) {
      // A scale group with a unit-scale diagonal entry is proper; absorb any
      // improper planes into diagonal form.
      size_t next = 0;
      for (char tag : tags) {
        int eps = reps[next];
        auto three = absorb_binary(eps, s, tag);
        reps[next] = three[0];
        reps.push_back(three[1]);
        reps.push_back(three[2]);
        ++next;
      }
      JordanComponent c;
      c.scale_exp = s;
      c.rank = static_cast<int>(reps.size());
      c.proper = true;
      c.unit_reps = std::move(reps);
      c.norm_exp = s;
      out.components.push_back(std::move(c));
    } else {
      int count = static_cast<int>(tags.size());
      int n_a = static_cast<int>(std::count(tags.begin(), tags.end(), 'A'));
      JordanComponent c;
      c.scale_exp = s;
      c.rank = 2 * count;
      c.proper = false;
      c.binary_blocks = count;
      c.tail = (n_a % 2 == 1) ? 'A' : 'H';
      c.norm_exp = s + 1;
      out.components.push_back(std::move(c));
    }
  }
  return out;
}

int JordanSplitting::rank() const {
  int r = 0;
  for (const auto& c : components) r += c.rank;
  return r;
}

long JordanSplitting::top_exponent() const {
  return components.back().scale_exp;
}

long JordanSplitting::scale_exponent() const {
  return components.front().scale_exp;
}

long JordanSplitting::norm_exponent() const {
  long best = components.front().norm_exp;
  for (const auto& c : components) best = std::min(best, c.norm_exp);
  return best;
}

long JordanSplitting::volume_exponent() const {
  long v = 0;
  for (const auto& c : components) v += c.rank * c.scale_exp;
  return v;
}

FormMatrix JordanSplitting::assemble() const {
  std::optional<FormMatrix> acc;
  auto add = [&](const FormMatrix& f) {
    acc = acc ? acc->direct_sum(f) : f;
  };
  for (const auto& c : components) {
    Rat sc = c.scale_exp >= 0 ? Rat(pow_int(p, c.scale_exp))
                              : Rat(1, pow_int(p, -c.scale_exp));
    if (c.proper) {
      std::vector<Int> diag;
      for (int r : c.unit_reps) diag.push_back(r);
      add(FormMatrix::diagonal(diag).scaled(sc));
    } else {
      for (int i = 0; i < c.binary_blocks; ++i) {
        bool last = (i == c.binary_blocks - 1);
        FormMatrix blk = (last && c.tail == 'A') ? FormMatrix::a_plane()
                                                 : FormMatrix::hyperbolic();
        add(blk.scaled(sc));
      }
    }
  }
  if (!acc) throw std::logic_error("empty splitting");
  return *acc;
}

SignedClass det_square_class(const FormMatrix& L, long p) {
  Rat d = L.det_gram();
  if (d == 0) throw std::invalid_argument("singular form");
  return qp_square_class(d, p);
}

std::vector<Rat> diagonalize_space(const FormMatrix& L) {
  Matrix w = L.gram_matrix();
  std::vector<Rat> diag;
  while (!w.empty()) {
    int n = static_cast<int>(w.size());
    if (w[0][0] == 0) {
      int j = -1;
      for (int k = 1; k < n; ++k)
        if (w[0][k] != 0) { j = k; break; }
      if (j < 0) throw std::invalid_argument("singular form");
      add_row(w, 0, j, 1);
      if (w[0][0] == 0) add_row(w, 0, j, -2);  // undo and flip sign
      if (w[0][0] == 0) throw std::logic_error("diagonalize: pivot vanished");
    }
    diag.push_back(w[0][0]);
    w = eliminate_rank1(w, 0);
  }
  return diag;
}

int hasse_invariant(const FormMatrix& L, long p) {
  std::vector<Rat> a = diagonalize_space(L);
  int s = 1;
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = i + 1; j < a.size(); ++j) s *= hilbert_symbol(a[i], a[j], p);
  return s;
}

bool is_isotropic(const FormMatrix& L, long p) {
  int n = L.rank();
  Rat d = L.det_gram();
  if (d == 0) throw std::invalid_argument("singular form");
  if (n == 1) return false;
  if (n == 2) return qp_is_square(-d, p);
  if (n == 3) return hasse_invariant(L, p) == hilbert_symbol(-1, -d, p);
  if (n == 4)
    return !(qp_is_square(d, p) &&
             hasse_invariant(L, p) != hilbert_symbol(-1, -1, p));
  return true;
}

}  // namespace padiq
