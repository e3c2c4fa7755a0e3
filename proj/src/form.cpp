#include "padiq/form.hpp"

#include <stdexcept>

namespace padiq {

FormMatrix FormMatrix::from_gram2(std::vector<std::vector<Int>> g2, bool half) {
  int n = static_cast<int>(g2.size());
  if (n == 0) throw std::invalid_argument("empty form");
  std::vector<Int> flat;
  flat.reserve(n * n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(g2[i].size()) != n)
      throw std::invalid_argument("gram2 matrix not square");
    for (int j = 0; j < n; ++j) {
      if (g2[i][j] != g2[j][i])
        throw std::invalid_argument("gram2 matrix not symmetric");
      flat.push_back(g2[i][j]);
    }
    if (g2[i][i] % 2 != 0)
      throw std::invalid_argument("gram2 diagonal must be even");
  }
  FormMatrix f(n, std::move(flat), half);
  if (f.det_gram() == 0) throw std::invalid_argument("singular form");
  return f;
}

FormMatrix FormMatrix::diagonal(const std::vector<Int>& entries) {
  int n = static_cast<int>(entries.size());
  std::vector<std::vector<Int>> g2(n, std::vector<Int>(n, 0));
  for (int i = 0; i < n; ++i) g2[i][i] = 2 * entries[i];
  return from_gram2(std::move(g2));
}

FormMatrix FormMatrix::hyperbolic() {
  return from_gram2({{0, 2}, {2, 0}});
}

FormMatrix FormMatrix::a_plane() {
  return from_gram2({{4, 2}, {2, 4}});
}

FormMatrix FormMatrix::hyperbolic_half() {
  return from_gram2({{0, 1}, {1, 0}});
}

FormMatrix FormMatrix::a_plane_half() {
  return from_gram2({{2, 1}, {1, 2}});
}

FormMatrix FormMatrix::direct_sum(const FormMatrix& other) const {
  // Align the half flags by doubling G2 entries of the non-half summand.
  bool half = half_ || other.half_;
  auto lift = [half](const FormMatrix& f) {
    Int factor = (half && !f.half_) ? 2 : 1;
    return factor;
  };
  Int fa = lift(*this), fb = lift(other);
  int n = n_ + other.n_;
  std::vector<Int> flat(n * n, 0);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) flat[i * n + j] = g2(i, j) * fa;
  for (int i = 0; i < other.n_; ++i)
    for (int j = 0; j < other.n_; ++j)
      flat[(n_ + i) * n + (n_ + j)] = other.g2(i, j) * fb;
  return FormMatrix(n, std::move(flat), half);
}

FormMatrix FormMatrix::scaled(const Rat& c) const {
  if (c == 0) throw std::invalid_argument("scale by zero");
  int n = n_;
  std::vector<Rat> q2(n * n);  // doubled Gram of the scaled lattice
  Rat den = half_ ? 2 : 1;
  for (int i = 0; i < n * n; ++i) {
    q2[i] = Rat(g2_[i]) * c / den;
    q2[i].canonicalize();
  }
  auto integral = [&](const Rat& x) { return x.get_den() == 1; };
  bool plain = true;
  for (int i = 0; i < n && plain; ++i) {
    for (int j = 0; j < n; ++j)
      if (!integral(q2[i * n + j])) { plain = false; break; }
    if (plain && mpz_odd_p(q2[i * n + i].get_num().get_mpz_t())) plain = false;
  }
  std::vector<Int> flat(n * n);
  if (plain) {
    for (int i = 0; i < n * n; ++i) flat[i] = q2[i].get_num();
    return FormMatrix(n, std::move(flat), false);
  }
  for (int i = 0; i < n * n; ++i) {
    Rat d = q2[i] * 2;
    d.canonicalize();
    if (d.get_den() != 1)
      throw std::invalid_argument("scaled form not representable");
    flat[i] = d.get_num();
  }
  for (int i = 0; i < n; ++i)
    if (flat[i * n + i] % 2 != 0)
      throw std::invalid_argument("scaled form not representable");
  return FormMatrix(n, std::move(flat), true);
}

Rat FormMatrix::gram(int i, int j) const {
  Rat r(g2(i, j), half_ ? 4 : 2);
  r.canonicalize();
  return r;
}

std::vector<std::vector<Rat>> FormMatrix::gram_matrix() const {
  std::vector<std::vector<Rat>> m(n_, std::vector<Rat>(n_));
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) m[i][j] = gram(i, j);
  return m;
}

Rat FormMatrix::value(std::span<const Int> v) const {
  if (static_cast<int>(v.size()) != n_)
    throw std::invalid_argument("vector length mismatch");
  Int acc = 0;
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) acc += g2(i, j) * v[i] * v[j];
  Rat r(acc, half_ ? 4 : 2);
  r.canonicalize();
  return r;
}

Rat det_rational(const std::vector<std::vector<Rat>>& m) {
  int n = static_cast<int>(m.size());
  std::vector<std::vector<Rat>> a = m;
  Rat det = 1;
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int row = col; row < n; ++row)
      if (a[row][col] != 0) { pivot = row; break; }
    if (pivot < 0) return 0;
    if (pivot != col) {
      std::swap(a[pivot], a[col]);
      det = -det;
    }
    det *= a[col][col];
    for (int row = col + 1; row < n; ++row) {
      if (a[row][col] == 0) continue;
      Rat f = a[row][col] / a[col][col];
      for (int k = col; k < n; ++k) a[row][k] -= f * a[col][k];
    }
  }
  return det;
}

Rat FormMatrix::det_gram() const { return det_rational(gram_matrix()); }

long FormMatrix::norm_exponent(long p) const {
  bool any = false;
  long best = 0;
  auto consider = [&](const Rat& x) {
    if (x == 0) return;
    long v = valuation(x, p);
    if (!any || v < best) best = v;
    any = true;
  };
  for (int i = 0; i < n_; ++i) consider(gram(i, i));
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j) consider(Rat(2) * gram(i, j));
  if (!any) throw std::domain_error("zero form");
  return best;
}

long FormMatrix::scale_exponent(long p) const {
  bool any = false;
  long best = 0;
  for (int i = 0; i < n_; ++i)
    for (int j = i; j < n_; ++j) {
      Rat x = gram(i, j);
      if (x == 0) continue;
      long v = valuation(x, p);
      if (!any || v < best) best = v;
      any = true;
    }
  if (!any) throw std::domain_error("zero form");
  return best;
}

}  // namespace padiq
