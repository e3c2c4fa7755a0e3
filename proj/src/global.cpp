#include "padiq/global.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace padiq {

namespace {

// q(v) = sum_i d[i] * (v_i + sum_{j>i} u[i][j] v_j)^2 with all d[i] > 0.
struct Squares {
  int n = 0;
  std::vector<Rat> d;
  std::vector<std::vector<Rat>> u;
};

std::optional<Squares> complete_squares(const FormMatrix& L) {
  int n = L.rank();
  std::vector<std::vector<Rat>> a = L.gram_matrix();
  Squares s;
  s.n = n;
  s.d.resize(n);
  s.u.assign(n, std::vector<Rat>(n, 0));
  for (int i = 0; i < n; ++i) {
    if (a[i][i] <= 0) return std::nullopt;
    s.d[i] = a[i][i];
    for (int j = i + 1; j < n; ++j) s.u[i][j] = a[i][j] / a[i][i];
    for (int k = i + 1; k < n; ++k)
      for (int l = i + 1; l < n; ++l)
        a[k][l] -= s.d[i] * s.u[i][k] * s.u[i][l];
  }
  return s;
}

long floor_rat(const Rat& x) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
  return q.get_si();
}

struct ScanSink {
  long bound;
  std::vector<char> seen, seen_prim;
  std::map<long, std::vector<long>> witnesses;

  explicit ScanSink(long b) : bound(b), seen(b + 1, 0), seen_prim(b + 1, 0) {}

  void record(long value, const std::vector<long>& v) {
    if (value < 1 || value > bound) return;
    long g = 0;
    for (long x : v) g = std::gcd(g, x < 0 ? -x : x);
    if (!seen[value]) {
      seen[value] = 1;
      witnesses[value] = v;
    }
    if (g == 1 && !seen_prim[value]) {
      seen_prim[value] = 1;
      if (witnesses.find(value) == witnesses.end()) witnesses[value] = v;
    }
  }

  void merge(const ScanSink& other) {
    for (long a = 1; a <= bound; ++a) {
      seen[a] |= other.seen[a];
      seen_prim[a] |= other.seen_prim[a];
    }
    for (const auto& [val, vec] : other.witnesses)
      witnesses.emplace(val, vec);  // keeps the earlier task's witness
  }
};

void scan_level(const Squares& s, int i, const Rat& budget,
                std::vector<long>& v, ScanSink& sink, long total_bound) {
  if (i < 0) {
    Rat q = Rat(total_bound) - budget;
    if (q.get_den() != 1) return;  // non-integer value, outside the report
    if (!q.get_num().fits_slong_p()) return;
    sink.record(q.get_num().get_si(), v);
    return;
  }
  Rat sft = 0;
  for (int j = i + 1; j < s.n; ++j)
    if (v[j] != 0) sft += s.u[i][j] * v[j];
  long base = floor_rat(-sft);
  for (long x = base;; --x) {
    Rat term = s.d[i] * (x + sft) * (x + sft);
    if (term > budget) break;
    v[i] = x;
    scan_level(s, i - 1, budget - term, v, sink, total_bound);
  }
  for (long x = base + 1;; ++x) {
    Rat term = s.d[i] * (x + sft) * (x + sft);
    if (term > budget) break;
    v[i] = x;
    scan_level(s, i - 1, budget - term, v, sink, total_bound);
  }
  v[i] = 0;
}

std::vector<long> primes_of(Int d, long cap_check = 0) {
  if (d < 0) d = -d;
  std::vector<long> out;
  for (long p = 2; Int(p) * p <= d; ++p) {
    if (d % p == 0) {
      out.push_back(p);
      while (d % p == 0) d /= p;
    }
  }
  if (d > 1) {
    if (!d.fits_slong_p()) throw std::overflow_error("determinant too large");
    out.push_back(d.get_si());
  }
  (void)cap_check;
  return out;
}

Int integer_det(const FormMatrix& L) {
  Rat d = L.det_gram();
  Rat dd = d;
  dd.canonicalize();
  if (dd.get_den() != 1)
    throw std::invalid_argument("form is not classically integral");
  return dd.get_num();
}

SquareClass first_primitive_failure(const FormMatrix& L, long p, long e_max) {
  for (long e = 0; e <= e_max; ++e)
    for (int u : unit_class_reps(p)) {
      Rat a(pow_int(p, e) * u);
      if (!decide_representation(L, p, a, true).represented)
        return SquareClass{p, e, u};
    }
  throw std::logic_error("no primitive failure found below the horizon");
}

}  // namespace

bool is_positive_definite(const FormMatrix& L) {
  return complete_squares(L).has_value();
}

ScanReport enumerate_values(const FormMatrix& L, long B, int threads) {
  if (B < 1) throw std::invalid_argument("bound must be >= 1");
  if (L.half()) throw std::invalid_argument("form takes non-integer values");
  auto sq = complete_squares(L);
  if (!sq) throw std::invalid_argument("form is not positive definite");
  const Squares& s = *sq;
  int n = s.n;

  // Candidates for the outermost coordinate, in sequential scan order.
  std::vector<long> outer;
  {
    long base = 0;  // the outermost shift is always 0
    for (long x = base;; --x) {
      if (s.d[n - 1] * x * x > B) break;
      outer.push_back(x);
    }
    for (long x = base + 1;; ++x) {
      if (s.d[n - 1] * x * x > B) break;
      outer.push_back(x);
    }
  }

  int nt = std::max(1, threads);
  nt = std::min<int>(nt, static_cast<int>(outer.size()));
  std::vector<ScanSink> sinks(outer.size(), ScanSink(B));
  auto run_task = [&](size_t idx) {
    std::vector<long> v(n, 0);
    long x = outer[idx];
    Rat term = s.d[n - 1] * x * x;
    v[n - 1] = x;
    scan_level(s, n - 2, Rat(B) - term, v, sinks[idx], B);
  };
  if (nt <= 1) {
    for (size_t i = 0; i < outer.size(); ++i) run_task(i);
  } else {
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    for (int t = 0; t < nt; ++t)
      pool.emplace_back([&] {
        for (size_t i = next.fetch_add(1); i < outer.size();
             i = next.fetch_add(1))
          run_task(i);
      });
    for (auto& th : pool) th.join();
  }
  ScanSink all(B);
  for (const auto& snk : sinks) all.merge(snk);  // fixed order: deterministic

  ScanReport r;
  r.bound = B;
  for (long a = 1; a <= B; ++a) {
    if (all.seen[a])
      r.represented.insert(a);
    else
      r.excluded.insert(a);
    if (all.seen_prim[a])
      r.primitively_represented.insert(a);
    else
      r.primitive_excluded.insert(a);
  }
  r.witnesses = std::move(all.witnesses);
  return r;
}

ProgressionWitness progression_witness(const FormMatrix& L, long p,
                                       const Rat& a, bool primitive) {
  RepVerdict v = decide_representation(L, p, a, primitive);
  if (v.represented)
    throw std::invalid_argument("target is represented; no progression");
  ProgressionWitness w;
  w.p = p;
  w.exponent = v.exhaustion_level;
  w.modulus = pow_int(p, v.exhaustion_level);
  w.residue = mod_reduce(a, w.modulus);
  w.primitive = primitive;
  return w;
}

std::string to_string(GlobalTri v) {
  switch (v) {
    case GlobalTri::YES: return "YES";
    case GlobalTri::NO: return "NO";
    default: return "UNDETERMINED";
  }
}

GlobalVerdict almost_universality_verdict(const FormMatrix& L) {
  int n = L.rank();
  if (n <= 3) throw std::invalid_argument("out of scope: rank must be >= 4");
  if (!is_positive_definite(L))
    throw std::invalid_argument("form is not positive definite");

  GlobalVerdict g;
  Rat det = L.det_gram();
  Int num = det.get_num() * det.get_den();  // odd prime support of det
  if (num > Int("1000000000000"))
    throw std::overflow_error("determinant too large for trial division");
  std::vector<long> ps = primes_of(num);
  g.relevant_primes.push_back(2);
  for (long p : ps)
    if (p != 2) g.relevant_primes.push_back(p);
  std::sort(g.relevant_primes.begin(), g.relevant_primes.end());
  g.notes.push_back(
      "primes outside the relevant set give unimodular completions of rank >= "
      "3, which are primitively universal; skipped");

  bool all_yes = true, any_no = false, any_bounded = false;
  bool all_universal = true, any_not_universal = false;
  for (long p : g.relevant_primes) {
    UniversalityReport rep = is_primitively_universal_local(L, p);
    if (rep.primitively_universal != Verdict::YES) all_yes = false;
    if (rep.primitively_universal == Verdict::NO) any_no = true;
    if (rep.primitively_universal == Verdict::BOUNDED) any_bounded = true;
    if (!rep.universal.universal) {
      all_universal = false;
      any_not_universal = true;
    }
    g.local_reports.emplace(p, std::move(rep));
  }

  if (all_yes) {
    g.almost_primitively_universal = GlobalTri::YES;
  } else if (any_no) {
    g.almost_primitively_universal = GlobalTri::NO;
    for (const auto& [p, rep] : g.local_reports) {
      if (rep.primitively_universal != Verdict::NO) continue;
      SquareClass c = rep.failure_class
                          ? *rep.failure_class
                          : first_primitive_failure(
                                L, p, jordan_decompose(L, p).top_exponent() + 4);
      Rat a(c.representative());
      if (decide_representation(L, p, a, true).represented)
        c = first_primitive_failure(
            L, p, jordan_decompose(L, p).top_exponent() + 4);
      g.progression_witnesses.push_back(
          progression_witness(L, p, Rat(c.representative()), true));
      break;
    }
  } else {
    g.almost_primitively_universal = GlobalTri::UNDETERMINED;
    (void)any_bounded;
  }

  if (any_not_universal) {
    g.almost_universal = GlobalTri::NO;
  } else if (n >= 5 && all_universal) {
    g.almost_universal = GlobalTri::YES;
  } else if (g.almost_primitively_universal == GlobalTri::YES) {
    g.almost_universal = GlobalTri::YES;
  } else {
    g.almost_universal = GlobalTri::UNDETERMINED;
    g.notes.push_back(
        "quaternary almost-universality beyond the primitive criterion is "
        "out of scope");
  }
  return g;
}

Theorem3Report theorem3_check(const FormMatrix& L, long odd_scan_bound) {
  if (L.half()) throw std::invalid_argument("form is not classically integral");
  int n = L.rank();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (L.g2(i, j) % 2 != 0)
        throw std::invalid_argument("form is not classically integral");
  if (!is_positive_definite(L))
    throw std::invalid_argument("form is not positive definite");

  Theorem3Report r;
  Int det = integer_det(L);

  {
    Theorem3Report::Hypothesis h;
    h.name = "rank >= 4";
    h.state = n >= 4 ? HypState::HOLDS : HypState::FAILS;
    h.detail = "rank = " + std::to_string(n);
    r.hypotheses.push_back(h);
  }
  {
    Theorem3Report::Hypothesis h;
    h.name = "represents an odd integer";
    ScanReport scan = enumerate_values(L, odd_scan_bound);
    long odd_found = 0;
    for (long a : scan.represented)
      if (a % 2 != 0) {
        odd_found = a;
        break;
      }
    if (odd_found) {
      h.state = HypState::HOLDS;
      h.detail = "odd value " + std::to_string(odd_found) +
                 " found; norm ideal at 2 is Z_2";
    } else {
      h.state = HypState::UNVERIFIED;
      h.detail = "no odd value up to " + std::to_string(odd_scan_bound) +
                 "; hypothesis unverified at bound";
    }
    r.hypotheses.push_back(h);
  }
  {
    Theorem3Report::Hypothesis h;
    h.name = "p^(n-2) does not divide det, for all p";
    h.state = HypState::HOLDS;
    if (det > Int("1000000000000"))
      throw std::overflow_error("determinant too large for trial division");
    for (long p : primes_of(det)) {
      Int pw = pow_int(p, n - 2);
      if (det % pw == 0) {
        h.state = HypState::FAILS;
        h.detail = "p = " + std::to_string(p) + ", p^" +
                   std::to_string(n - 2) + " divides det = " + det.get_str();
        break;
      }
    }
    if (h.state == HypState::HOLDS) h.detail = "det = " + det.get_str();
    r.hypotheses.push_back(h);
  }
  {
    Theorem3Report::Hypothesis h;
    h.name = "rank >= 5, or rank = 4 with even det";
    bool ok = n >= 5 || (n == 4 && det % 2 == 0);
    h.state = ok ? HypState::HOLDS : HypState::FAILS;
    h.detail = "rank = " + std::to_string(n) + ", det = " + det.get_str();
    r.hypotheses.push_back(h);
  }

  r.applicable = true;
  for (const auto& h : r.hypotheses)
    if (h.state != HypState::HOLDS) r.applicable = false;

  if (r.applicable) {
    r.verdict = "almost primitively universal";
    GlobalVerdict g = almost_universality_verdict(L);
    r.cross_checked = true;
    for (const auto& [p, rep] : g.local_reports)
      if (rep.primitively_universal != Verdict::YES) r.cross_checked = false;
  } else {
    r.verdict = "not applicable:";
    for (const auto& h : r.hypotheses)
      if (h.state != HypState::HOLDS)
        r.verdict += " [" + h.name + ": " + h.detail + "]";
  }
  return r;
}

}  // namespace padiq
