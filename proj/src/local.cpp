#include "padiq/local.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>

namespace padiq {

namespace {

using u64 = std::uint64_t;

// A representation-equivalent form with even doubled-Gram diagonal, so that
// q takes integer values. For genuinely half-integral lattices this is only
// possible away from p = 2 (scaling by the unit square 4).
FormMatrix to_plain(const FormMatrix& L, long p) {
  if (!L.half()) return L;
  FormMatrix r = L.scaled(1);  // renormalizes a spuriously half-flagged form
  if (!r.half()) return r;
  if (p == 2) throw std::domain_error("non-integral lattice");
  return L.scaled(4);
}

u64 pow_checked(long p, long k) {
  u64 m = 1;
  for (long i = 0; i < k; ++i) {
    if (m > (u64(1) << 62) / static_cast<u64>(p))
      throw std::overflow_error("residue modulus exceeds the arithmetic budget");
    m *= static_cast<u64>(p);
  }
  return m;
}

u64 reduce_mod(const Int& x, u64 m) {
  Int r;
  Int mm(static_cast<unsigned long>(m));
  mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), mm.get_mpz_t());
  return static_cast<u64>(r.get_ui());
}

// Depth-first residue enumeration: digits of each coordinate in base p are
// chosen level by level; a level-k state satisfies q(v) = target mod p^k.
// With hensel = true a state whose gradient w = G2*v has exact minimal
// valuation d < k is accepted once k >= 2d+1 (Newton lifting gives an exact
// solution congruent to v mod p^{d+1}).
//
// A coordinate whose row of G2 (and q(e_i)) is divisible by p^s only touches
// q mod p^{k+1} through its digits at positions <= k - s, so its digit m is
// chosen at level m + s ("activation level" s[i]). This keeps the level-k
// congruence binding on every newly chosen digit; enumerating such digits at
// level m instead lets whole blind subtrees grow for s levels before the
// first constraint can cut them. Coordinates with s >= K never influence the
// congruence and are left at 0; they can still carry primitivity (free_unit).
struct Engine {
  int n = 0;
  u64 p = 0;
  long K = 0;
  u64 M = 0;
  u64 target = 0;
  bool primitive = false;
  bool hensel = false;
  std::vector<u64> g2;  // n*n, doubled Gram mod M
  std::vector<u64> qd;  // q(e_i) = G2_ii/2 mod M
  std::vector<u64> pk;  // p^0 .. p^K
  std::vector<long> s;  // per-coordinate activation level, capped at K
  long s_max = -1;      // last level at which some coordinate activates
  bool free_unit = false;
  std::vector<u64> v, w;
  u64 q = 0;
  std::vector<Int> witness;
  long witness_d = -1;

  u64 mulm(u64 a, u64 b) const {
    return static_cast<u64>(static_cast<unsigned __int128>(a) * b % M);
  }
  u64 addm(u64 a, u64 b) const {
    u64 s = a + b;
    return s >= M ? s - M : s;
  }
  long ordp(u64 x) const {
    if (x == 0) return K;
    long e = 0;
    while (x % p == 0) {
      x /= p;
      ++e;
    }
    return e;
  }

  void shift(int i, u64 delta) {
    q = addm(q, addm(mulm(delta, w[i]), mulm(mulm(delta, delta), qd[i])));
    for (int j = 0; j < n; ++j) w[j] = addm(w[j], mulm(delta, g2[j * n + i]));
    v[i] = addm(v[i], delta);
  }

  bool has_unit() const {
    for (int j = 0; j < n; ++j)
      if (v[j] % p != 0) return true;
    return false;
  }

  // When the accepted state owes primitivity to a not-yet-activated
  // coordinate, set that coordinate to 1 in the witness: its row is divisible
  // by p^{s_j} with s_j >= k, so q mod p^k and the exact order of every
  // sub-p^k gradient component are unchanged.
  void record(long d, long k, bool unit) {
    witness.assign(v.begin(), v.end());
    if (primitive && !unit)
      for (int j = 0; j < n; ++j)
        if (s[j] >= k) {
          witness[j] += 1;
          break;
        }
    witness_d = d;
  }

  bool level(long k) {
    bool unit = primitive && has_unit();
    // A coordinate activating at level >= k still has an unchosen 0-digit
    // that can supply primitivity without disturbing the congruence.
    bool prim_ok = !primitive || unit || free_unit || s_max >= k;
    if (prim_ok) {
      if (k == K) {
        record(-1, k, unit);
        return true;
      }
      if (hensel) {
        long d = K;
        for (int i = 0; i < n; ++i) d = std::min(d, ordp(w[i]));
        if (d < k && k >= 2 * d + 1) {
          record(d, k, unit);
          return true;
        }
      }
    }
    if (k == K) return false;
    return digits(k, 0);
  }

  bool digits(long k, int i) {
    if (i == n) {
      u64 m = pk[k + 1];
      if (q % m != target % m) return false;
      // All 0-digits are fixed once level s_max is filled in.
      if (primitive && k == s_max && !free_unit && !has_unit()) return false;
      return level(k + 1);
    }
    if (s[i] > k) return digits(k, i + 1);
    u64 step = pk[k - s[i]];
    for (u64 c = 0; c < p; ++c) {
      if (c != 0) shift(i, step);
      if (digits(k, i + 1)) return true;
    }
    shift(i, (M - mulm(p - 1, step)) % M);  // undo the p-1 increments
    return false;
  }

  bool run() {
    v.assign(n, 0);
    w.assign(n, 0);
    q = 0;
    return level(0);
  }
};

Engine make_engine(const FormMatrix& F, long p, long K, const Rat& target,
                   bool primitive, bool hensel) {
  Engine e;
  e.n = F.rank();
  e.p = static_cast<u64>(p);
  e.K = K;
  e.M = pow_checked(p, K);
  e.primitive = primitive;
  e.hensel = hensel;
  e.target = static_cast<u64>(
      mod_reduce(target, Int(static_cast<unsigned long>(e.M))).get_ui());
  e.g2.resize(e.n * e.n);
  e.qd.resize(e.n);
  e.s.assign(e.n, K);
  for (int i = 0; i < e.n; ++i) {
    for (int j = 0; j < e.n; ++j) e.g2[i * e.n + j] = reduce_mod(F.g2(i, j), e.M);
    e.qd[i] = reduce_mod(Int(F.g2(i, i) / 2), e.M);
    Int half_diag = F.g2(i, i) / 2;
    if (half_diag != 0) e.s[i] = std::min(e.s[i], valuation(half_diag, p));
    for (int j = 0; j < e.n; ++j)
      if (j != i && F.g2(i, j) != 0)
        e.s[i] = std::min(e.s[i], valuation(F.g2(i, j), p));
  }
  for (int i = 0; i < e.n; ++i) {
    if (e.s[i] >= K)
      e.free_unit = true;
    else
      e.s_max = std::max(e.s_max, e.s[i]);
  }
  e.pk.resize(K + 1);
  e.pk[0] = 1;
  for (long k = 1; k <= K; ++k) e.pk[k] = e.pk[k - 1] * e.p;
  return e;
}

}  // namespace

RepVerdict decide_representation(const FormMatrix& L, long p, const Rat& a,
                                 bool primitive) {
  if (!is_prime(p)) throw std::invalid_argument("p must be prime");
  if (a == 0) throw std::domain_error("use isotropy test");
  if (valuation(a, p) < 0)
    throw std::domain_error("target must have valuation >= 0");
  FormMatrix F = to_plain(L, p);
  // to_plain falls back to the 4-scaling exactly when scaled(1) stays half
  bool quadrupled = L.half() && L.scaled(1).half();
  Rat t = quadrupled ? a * 4 : a;

  long K = 2 * valuation(2 * t, p) + 1;
  Engine e = make_engine(F, p, K, t, primitive, true);
  bool found = e.run();

  RepVerdict out;
  out.target = a;
  out.primitive = primitive;
  out.represented = found;
  out.exhaustion_level = K;
  out.rescaled = quadrupled;
  if (found) {
    out.witness = std::move(e.witness);
    out.hensel_d = e.witness_d;
  }
  return out;
}

std::optional<std::vector<Int>> find_residue_solution(const FormMatrix& L,
                                                      long p,
                                                      const Rat& target,
                                                      long K, bool primitive) {
  if (!is_prime(p)) throw std::invalid_argument("p must be prime");
  if (K < 1) throw std::invalid_argument("depth must be positive");
  if (L.half()) throw std::invalid_argument("half-scaled form not supported here");
  Engine e = make_engine(L, p, K, target, primitive, false);
  if (!e.run()) return std::nullopt;
  return e.witness;
}

std::set<SquareClass> spectrum(const FormMatrix& L, long p, long e_max,
                               bool primitive) {
  if (e_max < 0) throw std::invalid_argument("e_max must be >= 0");
  std::set<SquareClass> out;
  for (long e = 0; e <= e_max; ++e)
    for (int u : unit_class_reps(p)) {
      Rat a(pow_int(p, e) * u);
      if (decide_representation(L, p, a, primitive).represented)
        out.insert(SquareClass{p, e, u});
    }
  return out;
}

UniversalityCheck is_universal_local(const FormMatrix& L, long p) {
  UniversalityCheck out;
  out.universal = true;
  for (long e = 0; e <= 1; ++e)
    for (int u : unit_class_reps(p)) {
      Rat a(pow_int(p, e) * u);
      bool rep = decide_representation(L, p, a, false).represented;
      SquareClass c{p, e, u};
      out.classes[c] = rep;
      if (!rep && !out.missing) out.missing = c;
      out.universal = out.universal && rep;
    }
  return out;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::YES: return "YES";
    case Verdict::NO: return "NO";
    default: return "BOUNDED";
  }
}

namespace {

FormMatrix assemble_subset(const JordanSplitting& J, unsigned mask) {
  JordanSplitting part;
  part.p = J.p;
  for (size_t i = 0; i < J.components.size(); ++i)
    if (mask & (1u << i)) part.components.push_back(J.components[i]);
  return part.assemble();
}

std::string scales_of(const JordanSplitting& J, unsigned mask) {
  std::string s;
  for (size_t i = 0; i < J.components.size(); ++i)
    if (mask & (1u << i)) {
      if (!s.empty()) s += ",";
      s += std::to_string(J.components[i].scale_exp);
    }
  return s;
}

}  // namespace

UniversalityReport is_primitively_universal_local(const FormMatrix& L, long p,
                                                  long e_max) {
  if (!is_prime(p)) throw std::invalid_argument("p must be prime");
  UniversalityReport r;
  r.p = p;

  long norm_e = L.norm_exponent(p);
  if (norm_e != 0) {
    r.primitively_universal = Verdict::NO;
    r.failure_class = SquareClass{p, 0, 1};
    r.trace.push_back("norm ideal is p^" + std::to_string(norm_e) +
                      " Z_p, not Z_p; the unit 1 is not represented");
    if (norm_e > 0) r.universal = is_universal_local(L, p);
    return r;
  }

  FormMatrix F = to_plain(L, p);
  r.universal = is_universal_local(F, p);

  if (!is_isotropic(F, p)) {
    r.primitively_universal = Verdict::NO;
    r.trace.push_back(
        "Cor 3.10: anisotropic lattice is not primitively Z_p-universal");
    return r;
  }

  JordanSplitting J = jordan_decompose(F, p);
  int n = J.rank();
  r.e_max = e_max >= 0 ? e_max : J.top_exponent() + 4;

  if (n >= 5) {
    if (r.universal.universal) {
      r.primitively_universal = Verdict::YES;
      r.trace.push_back(p == 2 ? "Prop 5.12: rank >= 5 and Z_2-universal"
                               : "Prop 4.2: rank >= 5 and Z_p-universal");
    } else {
      r.primitively_universal = Verdict::NO;
      r.failure_class = r.universal.missing;
      r.trace.push_back("not Z_p-universal: class " +
                        r.universal.missing->str() + " is not represented");
    }
    return r;
  }

  if (J.components.size() == 1) {
    const JordanComponent& c0 = J.components.front();
    if (p != 2) {
      r.primitively_universal = Verdict::YES;
      r.trace.push_back(n >= 3 ? "Lemma 4.1(ii): unimodular of rank >= 3"
                               : "Lemma 4.1(ii): isotropic unimodular binary");
      return r;
    }
    if (!c0.proper) {
      r.primitively_universal = Verdict::YES;
      r.trace.push_back(
          n > 2 ? "Prop 5.1(i): improper (1/2)-modular of rank > 2"
                : "Prop 5.1(ii): isotropic improper (1/2)-modular binary");
      return r;
    }
    const std::vector<int>& eps = c0.unit_reps;
    if (n == 2) {
      r.primitively_universal = Verdict::NO;
      r.failure_class = r.universal.missing;
      r.trace.push_back(
          "Prop 5.2: proper unimodular binary is not Z_2-universal");
      return r;
    }
    bool crit = false;
    for (int i = 0; i < n && !crit; ++i)
      for (int j = i + 1; j < n; ++j)
        if ((eps[i] + eps[j]) % 4 == 0) {
          crit = true;
          break;
        }
    if (crit) {
      r.primitively_universal = Verdict::YES;
      r.trace.push_back(n == 3
                            ? "Prop 5.4(iii): eps_i = -eps_j mod 4"
                            : "Prop 5.5(ii): {4,8} in q*(L) (eps_i = -eps_j mod 4)");
      return r;
    }
    if (n == 3) {
      r.primitively_universal = Verdict::NO;
      r.failure_class = r.universal.missing;
      r.trace.push_back(
          "Prop 5.4(iii): no pair with eps_i = -eps_j mod 4; at most three "
          "unit classes represented");
      return r;
    }
    int sum = (eps[0] + eps[1] + eps[2] + eps[3]) % 8;
    int missed = sum == 4 ? 8 : 4;
    r.primitively_universal = Verdict::NO;
    r.failure_class = SquareClass{2, missed == 8 ? 3 : 2, 1};
    r.trace.push_back("Prop 5.5(ii): " + std::to_string(missed) +
                      " not primitively represented (all eps_i congruent mod "
                      "4, eps-sum = " +
                      std::to_string(sum) + " mod 8)");
    return r;
  }

  // Non-modular of rank <= 4, isotropic: structural sufficient rules first.
  size_t m = J.components.size();
  for (unsigned mask = 1; mask + 1 < (1u << m); ++mask) {
    FormMatrix sub = assemble_subset(J, mask);
    if (is_universal_local(sub, p).universal) {
      r.primitively_universal = Verdict::YES;
      r.trace.push_back("Lemma 3.6: the Jordan summand at scale(s) {" +
                        scales_of(J, mask) + "} is Z_p-universal");
      return r;
    }
  }

  const JordanComponent& c0 = J.components.front();
  if (c0.proper && c0.scale_exp == 0) {
    std::vector<int> tried;
    for (size_t drop = 0; drop < c0.unit_reps.size(); ++drop) {
      int eps = c0.unit_reps[drop];
      if (std::find(tried.begin(), tried.end(), eps) != tried.end()) continue;
      tried.push_back(eps);
      std::vector<Int> diag;
      for (size_t j = 0; j < c0.unit_reps.size(); ++j)
        if (j != drop) diag.emplace_back(c0.unit_reps[j]);
      JordanSplitting rest;
      rest.p = p;
      rest.components.assign(J.components.begin() + 1, J.components.end());
      FormMatrix K = rest.assemble();
      if (!diag.empty()) K = FormMatrix::diagonal(diag).direct_sum(K);
      bool all_units = true;
      for (int u : unit_class_reps(p))
        if (!decide_representation(K, p, Rat(u), false).represented) {
          all_units = false;
          break;
        }
      if (all_units) {
        r.primitively_universal = Verdict::YES;
        r.trace.push_back("Lemma 3.7: <" + std::to_string(eps) +
                          "> _|_ K with Z_p^x represented by K");
        return r;
      }
    }
  }

  // Necessary sweep: every class up to the horizon must be primitively
  // represented.
  for (long e = 0; e <= r.e_max; ++e)
    for (int u : unit_class_reps(p)) {
      Rat a(pow_int(p, e) * u);
      SquareClass c{p, e, u};
      if (decide_representation(F, p, a, true).represented) {
        r.spectrum_found.insert(c);
      } else {
        r.spectrum_missing.insert(c);
        r.primitively_universal = Verdict::NO;
        r.failure_class = c;
        r.trace.push_back("class " + c.str() +
                          " not primitively represented");
        return r;
      }
    }
  r.primitively_universal = Verdict::BOUNDED;
  r.trace.push_back(
      "no structural criterion applies; all classes with order <= " +
      std::to_string(r.e_max) + " are primitively represented");
  return r;
}

GapReport anisotropic_gap(const FormMatrix& L, long p) {
  if (!is_prime(p)) throw std::invalid_argument("p must be prime");
  FormMatrix F = L;
  if (L.half()) {
    F = L.scaled(1);
    // Genuinely half-integral: the 4-scaling is absorbed by the scale
    // normalization below (odd p: unit square; p = 2: shifts s0 by 2).
    if (F.half()) F = L.scaled(4);
  }
  if (is_isotropic(F, p))
    throw std::domain_error("gap undefined: lattice is isotropic");
  long s0 = F.scale_exponent(p);
  JordanSplitting J = jordan_decompose(F, p);
  GapReport g;
  g.top_exponent = J.top_exponent() - s0;
  g.scale_shift = s0;
  g.bound = g.top_exponent + 3;
  for (long l = 1; l <= g.bound; ++l) {
    long mexp = l + s0;
    if (mexp <= 0) continue;  // q = 0 mod p^(l+s0) holds for every vector
    if (!find_residue_solution(F, p, Rat(0), mexp, true)) {
      g.empirical_min = l;
      return g;
    }
  }
  throw std::logic_error("anisotropic gap exceeds the certified bound");
}

}  // namespace padiq
