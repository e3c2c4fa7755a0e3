#include "padiq/paper_checks.hpp"

#include <atomic>
#include <chrono>
#include <cstdint>
#include <functional>
#include <random>
#include <sstream>
#include <thread>

#include "padiq/global.hpp"

namespace padiq {

namespace {

using u64 = std::uint64_t;

constexpr int kUnits2[4] = {1, 3, 5, 7};

std::set<SquareClass> full_spectrum(long p, long e_max) {
  std::set<SquareClass> out;
  for (long e = 0; e <= e_max; ++e)
    for (int u : unit_class_reps(p)) out.insert(SquareClass{p, e, u});
  return out;
}

std::set<SquareClass> spectrum_up_to_order(long p, long e_cut, long e_max) {
  std::set<SquareClass> out;
  for (long e = 0; e <= e_max; ++e)
    if (e <= e_cut)
      for (int u : unit_class_reps(p)) out.insert(SquareClass{p, e, u});
  return out;
}

bool represents(const FormMatrix& L, long p, long a, bool primitive) {
  return decide_representation(L, p, Rat(a), primitive).represented;
}

bool trace_mentions(const UniversalityReport& r, const std::string& needle) {
  for (const auto& line : r.trace)
    if (line.find(needle) != std::string::npos) return true;
  return false;
}

FormMatrix diag(std::vector<long> entries) {
  std::vector<Int> v(entries.begin(), entries.end());
  return FormMatrix::diagonal(v);
}

// ---- fixtures 1-7, 12 ----------------------------------------------------

CheckResult check_hhat_spectrum() {
  CheckResult r{"Example 3.1: Hhat primitive spectrum is full (p = 2, 3, 5)"};
  FormMatrix H = FormMatrix::hyperbolic_half();
  r.pass = true;
  for (long p : {2L, 3L, 5L})
    if (spectrum(H, p, 4, true) != full_spectrum(p, 4)) {
      r.pass = false;
      r.detail = "spectrum mismatch at p = " + std::to_string(p);
    }
  if (r.pass) r.detail = "all classes with e <= 4 primitively represented";
  return r;
}

CheckResult check_ahat_spectrum() {
  CheckResult r{"Example 3.2: Ahat primitive spectrum = units; 2 missed"};
  FormMatrix A = FormMatrix::a_plane_half();
  bool spec_ok = spectrum(A, 2, 3, true) == spectrum_up_to_order(2, 0, 3);
  bool two_missed = !represents(A, 2, 2, true);
  r.pass = spec_ok && two_missed;
  r.detail = std::string("spectrum ") + (spec_ok ? "ok" : "WRONG") +
             "; decide(2, primitive) " +
             (two_missed ? "NOT_REPRESENTED" : "REPRESENTED");
  return r;
}

CheckResult check_example_3_4() {
  CheckResult r{"Example 3.4: <1,1,3,3> over Z_3"};
  FormMatrix L = diag({1, 1, 3, 3});
  bool uni = is_universal_local(L, 3).universal;
  UniversalityReport rep = is_primitively_universal_local(L, 3);
  bool no = rep.primitively_universal == Verdict::NO;
  bool cite = trace_mentions(rep, "Cor 3.10");
  bool spec_ok = spectrum(L, 3, 4, true) == spectrum_up_to_order(3, 1, 4);
  r.pass = uni && no && cite && spec_ok;
  std::ostringstream os;
  os << "universal=" << uni << " primitively=" << to_string(rep.primitively_universal)
     << " trace_cites_Cor_3.10=" << cite << " spectrum_e<=1=" << spec_ok;
  r.detail = os.str();
  return r;
}

CheckResult check_example_3_5() {
  CheckResult r{"Example 3.5: Ahat _|_ A over Z_2"};
  FormMatrix L = FormMatrix::a_plane_half().direct_sum(FormMatrix::a_plane());
  bool uni = is_universal_local(L, 2).universal;
  UniversalityReport rep = is_primitively_universal_local(L, 2);
  bool no = rep.primitively_universal == Verdict::NO;
  bool spec_ok = spectrum(L, 2, 4, true) == spectrum_up_to_order(2, 1, 4);
  r.pass = uni && no && spec_ok;
  std::ostringstream os;
  os << "universal=" << uni << " primitively=" << to_string(rep.primitively_universal)
     << " spectrum_e<=1=" << spec_ok;
  r.detail = os.str();
  return r;
}

CheckResult check_gaps() {
  CheckResult r{"Prop 3.9: A _|_ A^(2^t) isotropy and gap bounds"};
  r.pass = true;
  std::ostringstream os;
  for (long t = 0; t <= 3; ++t) {
    FormMatrix L =
        FormMatrix::a_plane().direct_sum(FormMatrix::a_plane().scaled(Rat(pow_int(2, t))));
    bool iso = is_isotropic(L, 2);
    bool want_iso = (t % 2 == 0);
    if (iso != want_iso) {
      r.pass = false;
      os << "t=" << t << " isotropy wrong; ";
      continue;
    }
    if (want_iso) continue;
    GapReport g = anisotropic_gap(L, 2);
    bool ok = g.bound == t + 3 && g.empirical_min >= 1 && g.empirical_min <= t + 3;
    if (!ok) r.pass = false;
    os << "t=" << t << " bound=" << g.bound << " min=" << g.empirical_min << "; ";
  }
  r.detail = os.str();
  return r;
}

CheckResult check_ramanujan(int threads) {
  CheckResult r{"Ramanujan: x^2+y^2+z^2+9t^2 excludes {7}; 8+64k gaps"};
  FormMatrix L = diag({1, 1, 1, 9});
  ScanReport s = enumerate_values(L, 2000, threads);
  bool excl = s.excluded == std::set<long>{7};
  bool prim_ok = true;
  for (long a = 8; a <= 2000; a += 64)
    if (!s.primitive_excluded.count(a)) prim_ok = false;
  bool local_ok = !represents(L, 2, 8, true);
  r.pass = excl && prim_ok && local_ok;
  std::ostringstream os;
  os << "excluded={7}:" << excl << " 8+64k_primitive_gaps:" << prim_ok
     << " 8_not_primitively_represented_in_Z_2:" << local_ok;
  r.detail = os.str();
  return r;
}

CheckResult check_bochnak_oh(int threads) {
  CheckResult r{"Bochnak-Oh: x^2+y^2+25z^2+25t^2 misses 3*4^k"};
  FormMatrix L = diag({1, 1, 25, 25});
  bool uni2 = is_universal_local(L, 2).universal;
  bool uni5 = is_universal_local(L, 5).universal;
  bool aniso = !is_isotropic(L, 2);
  ScanReport s = enumerate_values(L, 1000, threads);
  bool miss = true;
  for (long a : {3L, 12L, 48L, 192L, 768L})
    if (!s.excluded.count(a)) miss = false;
  GlobalVerdict g = almost_universality_verdict(L);
  bool apu_no = g.almost_primitively_universal == GlobalTri::NO;
  r.pass = uni2 && uni5 && aniso && miss && apu_no;
  std::ostringstream os;
  os << "universal@2:" << uni2 << " universal@5:" << uni5 << " anisotropic@2:"
     << aniso << " 3*4^k_excluded:" << miss << " verdict_NO:" << apu_no;
  r.detail = os.str();
  return r;
}

CheckResult check_theorem3_fixtures() {
  CheckResult r{"Theorem 3 fixtures"};
  Theorem3Report t1 = theorem3_check(diag({1, 1, 1, 1, 1}));
  Theorem3Report t2 = theorem3_check(diag({1, 1, 1, 2}));
  Theorem3Report t3 = theorem3_check(diag({1, 1, 1, 9}));
  Theorem3Report t4 = theorem3_check(diag({1, 1, 2, 4}));
  bool ok1 = t1.applicable && t1.verdict == "almost primitively universal" &&
             t1.cross_checked;
  bool ok2 = t2.applicable && t2.verdict == "almost primitively universal" &&
             t2.cross_checked;
  bool ok3 = !t3.applicable &&
             t3.verdict.find("rank >= 5, or rank = 4 with even det") !=
                 std::string::npos;
  bool ok4 = !t4.applicable &&
             t4.verdict.find("p^(n-2) does not divide det") != std::string::npos &&
             t4.verdict.find("p = 2") != std::string::npos;
  r.pass = ok1 && ok2 && ok3 && ok4;
  std::ostringstream os;
  os << "<1,1,1,1,1>:" << ok1 << " <1,1,1,2>:" << ok2 << " <1,1,1,9>:" << ok3
     << " <1,1,2,4>:" << ok4;
  r.detail = os.str();
  return r;
}

// ---- fixture 8: quaternary unit forms ------------------------------------

CheckResult check_quaternary_criterion() {
  CheckResult r{"Prop 5.5(ii): quaternary unit forms vs the {4,8} test"};
  int mismatches = 0, yes = 0;
  for (int e1 : kUnits2)
    for (int e2 : kUnits2)
      for (int e3 : kUnits2)
        for (int e4 : kUnits2) {
          FormMatrix L = diag({e1, e2, e3, e4});
          UniversalityReport rep = is_primitively_universal_local(L, 2);
          if (rep.primitively_universal == Verdict::BOUNDED) {
            ++mismatches;
            continue;
          }
          bool decided = rep.primitively_universal == Verdict::YES;
          bool crit = represents(L, 2, 4, true) && represents(L, 2, 8, true);
          if (decided != crit) ++mismatches;
          if (decided) ++yes;
        }
  r.pass = mismatches == 0;
  r.detail = "256 tuples, " + std::to_string(yes) + " primitively universal, " +
             std::to_string(mismatches) + " mismatches";
  return r;
}

// ---- fixture 9: diagonal shape inventories --------------------------------

bool all_targets(const FormMatrix& L, const std::vector<long>& targets) {
  for (long a : targets)
    if (!represents(L, 2, a, false)) return false;
  return true;
}

bool some_target_missed(const FormMatrix& L, const std::vector<long>& targets) {
  for (long a : targets)
    if (!represents(L, 2, a, false)) return true;
  return false;
}

CheckResult check_inventories() {
  CheckResult r{"Lemmas 5.7-5.10: diagonal shape inventories over Z_2"};
  const std::vector<long> units = {1, 3, 5, 7};
  const std::vector<long> twice = {2, 6, 10, 14};
  int failures = 0, cases = 0;
  auto expect = [&](bool ok) {
    ++cases;
    if (!ok) ++failures;
  };

  for (int e1 : kUnits2)
    for (int e2 : kUnits2)
      for (int e3 : kUnits2) {
        // Lemma 5.7(i) and 5.8(ii): <e1, 2e2, lambda*e3>.
        for (long lam : {1L, 4L})
          expect(all_targets(diag({e1, 2 * e2, lam * e3}), units));
        for (long lam : {2L, 8L})
          expect(all_targets(diag({e1, 2 * e2, lam * e3}), twice));
        // Lemma 5.8(i): <e1, e2, e3> represents 2*units.
        expect(all_targets(diag({e1, e2, e3}), twice));
        // Lemma 5.10 negatives.
        expect(some_target_missed(diag({e1, 2 * e2, 2 * e3}), units));
        expect(some_target_missed(diag({e1, 2 * e2, 4 * e3}), twice));
        for (int e4 : kUnits2) {
          // Lemma 5.7(ii)(iii).
          for (long lam : {1L, 4L})
            expect(all_targets(diag({e1, e2, e3, lam * e4}), units));
          expect(all_targets(diag({e1, 2 * e2, 2 * e3, 2 * e4}), units));
          // Lemma 5.8(iii).
          for (long lam : {1L, 4L})
            expect(all_targets(diag({e1, 2 * e2, 4 * e3, lam * e4}), twice));
          // Lemma 5.9 universal shapes.
          for (long lam : {1L, 2L, 4L})
            expect(is_universal_local(diag({e1, e2, e3, lam * e4}), 2).universal);
          for (long lam : {2L, 4L, 8L})
            expect(is_universal_local(diag({e1, e2, 2 * e3, lam * e4}), 2).universal);
          for (long lam : {2L, 4L})
            expect(is_universal_local(diag({e1, 2 * e2, 2 * e3, lam * e4}), 2).universal);
          for (long lam : {4L, 8L})
            expect(is_universal_local(diag({e1, 2 * e2, 4 * e3, lam * e4}), 2).universal);
        }
      }
  FormMatrix ahat = FormMatrix::a_plane_half();
  for (int e1 : kUnits2) {
    // Lemma 5.9(v) and 5.10 third shape.
    expect(is_universal_local(ahat.direct_sum(diag({e1})), 2).universal);
    expect(some_target_missed(ahat.direct_sum(diag({2 * e1})), twice));
    for (int e2 : kUnits2) {
      // Lemma 5.8(iv) and 5.9(vi).
      for (long lam : {2L, 4L, 8L}) {
        FormMatrix L = ahat.direct_sum(diag({2 * e1, lam * e2}));
        expect(all_targets(L, twice));
        expect(is_universal_local(L, 2).universal);
      }
    }
  }
  r.pass = failures == 0;
  r.detail = std::to_string(cases) + " shape instances, " +
             std::to_string(failures) + " failures";
  return r;
}

// ---- random lattice generator ---------------------------------------------

FormMatrix random_lattice(std::mt19937_64& rng, long p, int n, int e_max) {
  std::uniform_int_distribution<int> ed(0, e_max);
  std::uniform_int_distribution<int> u2(0, 3);
  std::uniform_int_distribution<int> uodd(1, static_cast<int>(p) - 1);
  std::vector<std::vector<Int>> g(n, std::vector<Int>(n, 0));
  for (int i = 0; i < n; ++i) {
    long u = p == 2 ? kUnits2[u2(rng)] : uodd(rng);
    g[i][i] = 2 * pow_int(p, ed(rng)) * u;
  }
  std::uniform_int_distribution<int> idx(0, n - 1);
  std::uniform_int_distribution<int> sgn(0, 1);
  for (int step = 0; step < 4; ++step) {
    int i = idx(rng), j = idx(rng);
    if (i == j) continue;
    int c = sgn(rng) ? 1 : -1;
    for (int t = 0; t < n; ++t) g[i][t] += c * g[j][t];
    for (int t = 0; t < n; ++t) g[t][i] += c * g[t][j];
  }
  return FormMatrix::from_gram2(std::move(g));
}

// ---- fixture 10: universal rank-5 lattices --------------------------------

CheckResult check_rank5_property(int threads) {
  CheckResult r{"Prop 4.2/5.12: universal rank-5 lattices, e <= 6 classes"};
  const long primes[3] = {2, 3, 5};
  // Lattices are drawn up front so the sample is independent of the thread
  // count; workers then process trials from a shared counter.
  std::mt19937_64 rng(0x5d1ce5);
  std::vector<FormMatrix> lattices;
  lattices.reserve(1500);
  for (long p : primes)
    for (int trial = 0; trial < 500; ++trial)
      lattices.push_back(random_lattice(rng, p, 5, 3));
  std::vector<char> universal(1500, 0);
  std::atomic<int> next{0}, failures{0};
  auto worker = [&] {
    for (int i = next.fetch_add(1); i < 1500; i = next.fetch_add(1)) {
      long p = primes[i / 500];
      const FormMatrix& L = lattices[i];
      if (!is_universal_local(L, p).universal) continue;
      universal[i] = 1;
      bool missed = false;
      for (long e = 0; e <= 6 && !missed; ++e)
        for (int u : unit_class_reps(p))
          if (!decide_representation(L, p, Rat(pow_int(p, e) * u), true)
                   .represented) {
            missed = true;
            break;
          }
      if (missed) ++failures;
    }
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  std::ostringstream os;
  for (int pi = 0; pi < 3; ++pi) {
    int uni_p = 0;
    for (int trial = 0; trial < 500; ++trial) uni_p += universal[pi * 500 + trial];
    os << "p=" << primes[pi] << ":" << uni_p << "/500 universal; ";
  }
  r.pass = failures == 0;
  os << failures.load() << " primitive failures";
  r.detail = os.str();
  return r;
}

// ---- fixture 11: exhaustive residue tables ---------------------------------

struct ResidueTable {
  long p = 0;
  u64 M = 0;
  std::vector<char> reach, reach_prim;
};

struct TableFiller {
  int n;
  u64 p, M, M2;
  const std::vector<u64>* g;
  ResidueTable* out;

  void fill(int i, u64 S, std::vector<u64> w, bool prim) {
    const std::vector<u64>& G = *g;
    if (i == n - 1) {
      u64 D = (2 * w[i] + G[i * n + i]) % M2;
      u64 step = (2 * G[i * n + i]) % M2;
      for (u64 x = 0; x < M; ++x) {
        u64 q = S / 2;
        if (prim || x % p != 0) out->reach_prim[q] = 1;
        out->reach[q] = 1;
        S += D;
        if (S >= M2) S -= M2;
        D += step;
        if (D >= M2) D -= M2;
      }
      return;
    }
    for (u64 x = 0; x < M; ++x) {
      fill(i + 1, S, w, prim || x % p != 0);
      S = (S + 2 * w[i] + G[i * n + i]) % M2;
      for (int j = 0; j < n; ++j) {
        w[j] += G[j * n + i];
        if (w[j] >= M2) w[j] -= M2;
      }
    }
  }
};

ResidueTable build_table(const FormMatrix& L, long p, long k_max) {
  int n = L.rank();
  ResidueTable t;
  t.p = p;
  t.M = 1;
  for (long i = 0; i < k_max; ++i) t.M *= static_cast<u64>(p);
  t.reach.assign(t.M, 0);
  t.reach_prim.assign(t.M, 0);
  u64 M2 = 2 * t.M;
  std::vector<u64> g(n * n);
  Int mod(static_cast<unsigned long>(M2));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Int red;
      mpz_fdiv_r(red.get_mpz_t(), L.g2(i, j).get_mpz_t(), mod.get_mpz_t());
      g[i * n + j] = static_cast<u64>(red.get_ui());
    }
  TableFiller f{n, static_cast<u64>(p), t.M, M2, &g, &t};
  f.fill(0, 0, std::vector<u64>(n, 0), false);
  return t;
}

bool table_query(const ResidueTable& t, long a, long k, bool primitive) {
  u64 pk = 1;
  for (long i = 0; i < k; ++i) pk *= static_cast<u64>(t.p);
  u64 res = static_cast<u64>(a) % pk;
  const std::vector<char>& tab = primitive ? t.reach_prim : t.reach;
  for (u64 m = res; m < t.M; m += pk)
    if (tab[m]) return true;
  return false;
}

CheckResult check_oracle_equivalence() {
  CheckResult r{"Oracle equivalence: decision procedure vs residue tables"};
  std::mt19937_64 rng(0x0bac1e);
  int mismatches = 0, checks = 0;
  for (long p : {2L, 3L}) {
    long k_max = p == 2 ? 6 : 4;  // covers K*+1 for every order <= 1 target
    std::uniform_int_distribution<int> rank(1, 4);
    for (int trial = 0; trial < 300; ++trial) {
      FormMatrix L = random_lattice(rng, p, rank(rng), 3);
      ResidueTable t = build_table(L, p, k_max);
      for (long e = 0; e <= 1; ++e)
        for (int u : unit_class_reps(p)) {
          long a = pow_int(p, e).get_si() * u;
          long k = 2 * (e + (p == 2 ? 1 : 0)) + 2;  // K* + 1
          for (bool prim : {false, true}) {
            bool naive = table_query(t, a, k, prim);
            bool exact = represents(L, p, a, prim);
            ++checks;
            if (naive != exact) ++mismatches;
          }
        }
    }
  }
  r.pass = mismatches == 0;
  r.detail = std::to_string(checks) + " comparisons, " +
             std::to_string(mismatches) + " mismatches";
  return r;
}

CheckResult timed(const std::function<CheckResult()>& f) {
  auto start = std::chrono::steady_clock::now();
  CheckResult r;
  try {
    r = f();
  } catch (const std::exception& e) {
    r.name = "(fixture threw)";
    r.pass = false;
    r.detail = std::string("exception: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                            start)
                  .count();
  return r;
}

}  // namespace

std::vector<CheckResult> run_acceptance_checks(
    int threads, const std::function<void(const CheckResult&)>& progress) {
  std::vector<std::function<CheckResult()>> fixtures = {
      check_hhat_spectrum,
      check_ahat_spectrum,
      check_example_3_4,
      check_example_3_5,
      check_gaps,
      [threads] { return check_ramanujan(threads); },
      [threads] { return check_bochnak_oh(threads); },
      check_quaternary_criterion,
      check_inventories,
      [threads] { return check_rank5_property(threads); },
      check_oracle_equivalence,
      check_theorem3_fixtures,
  };
  std::vector<CheckResult> out;
  for (size_t i = 0; i < fixtures.size(); ++i) {
    CheckResult r = timed(fixtures[i]);
    r.name = std::to_string(i + 1) + ". " + (r.name.empty() ? "?" : r.name);
    if (progress) progress(r);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace padiq
