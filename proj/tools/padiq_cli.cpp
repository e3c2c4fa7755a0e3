#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "padiq/json_io.hpp"
#include "padiq/paper_checks.hpp"

namespace {

using namespace padiq;

FormMatrix load_form(const std::string& src) {
  std::string text = src;
  if (text.empty()) throw std::invalid_argument("form: empty description");
  if (text[0] != '{') {
    std::ifstream in(src);
    if (!in) throw std::invalid_argument("form: cannot read file '" + src + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  }
  return parse_form_string(text);
}

// Target syntax: a plain integer or "p^e*u" (e.g. "2^3*5", "3^2").
Rat parse_target(const std::string& s) {
  auto caret = s.find('^');
  if (caret == std::string::npos) {
    try {
      Rat r(s);
      r.canonicalize();
      return r;
    } catch (const std::invalid_argument&) {
      throw std::invalid_argument("target: expected an integer or p^e*u");
    }
  }
  auto star = s.find('*', caret);
  long base = std::stol(s.substr(0, caret));
  long e = std::stol(s.substr(caret + 1, star == std::string::npos
                                             ? std::string::npos
                                             : star - caret - 1));
  Int u = star == std::string::npos ? Int(1) : Int(s.substr(star + 1));
  if (e < 0) throw std::invalid_argument("target: exponent must be >= 0");
  return Rat(pow_int(base, e) * u);
}

int thread_count(int flag_value) {
  if (flag_value > 0) return flag_value;
  if (const char* env = std::getenv("PADIQ_THREADS")) {
    int n = std::atoi(env);
    if (n > 0) return n;
  }
  return 1;
}

void emit(const nlohmann::json& j, bool as_json, const std::string& text) {
  if (as_json)
    std::cout << j.dump(2) << "\n";
  else
    std::cout << text;
}

std::string render_jordan(const JordanSplitting& s) {
  std::ostringstream os;
  os << "Jordan splitting at p = " << s.p << " (rank " << s.rank() << ")\n";
  for (const auto& c : s.components) {
    os << "  scale exponent " << c.scale_exp << ": ";
    if (c.proper) {
      os << "proper rank " << c.rank << ", units";
      for (int u : c.unit_reps) os << " " << u;
    } else {
      os << "improper, " << c.binary_blocks << " plane(s), tail " << c.tail;
    }
    os << ", norm exponent " << c.norm_exp << "\n";
  }
  os << "scale exponent " << s.scale_exponent() << ", norm exponent "
     << s.norm_exponent() << ", volume exponent " << s.volume_exponent()
     << ", top exponent " << s.top_exponent() << "\n";
  return os.str();
}

std::string render_report(const UniversalityReport& r) {
  std::ostringstream os;
  os << "p = " << r.p << "\n";
  os << "universal: " << (r.universal.universal ? "YES" : "NO");
  if (r.universal.missing) os << " (missing class " << r.universal.missing->str() << ")";
  os << "\n";
  os << "primitively universal: " << to_string(r.primitively_universal) << "\n";
  for (const auto& line : r.trace) os << "  " << line << "\n";
  if (r.failure_class)
    os << "failure class: " << r.failure_class->str() << "\n";
  return os.str();
}

int cmd_analyze(const std::string& form, long p, bool as_json) {
  FormMatrix L = load_form(form);
  JordanSplitting J = jordan_decompose(L, p);
  SignedClass det = det_square_class(L, p);
  int hasse = hasse_invariant(L, p);
  bool iso = is_isotropic(L, p);
  UniversalityReport rep = is_primitively_universal_local(L, p);
  nlohmann::json j{{"form", form_json(L)},
                   {"p", p},
                   {"jordan", jordan_json(J)},
                   {"det_class", det.str()},
                   {"hasse", hasse},
                   {"isotropic", iso},
                   {"report", report_json(rep)}};
  std::ostringstream os;
  os << render_jordan(J);
  os << "det class " << det.str() << ", Hasse invariant " << (hasse > 0 ? "+1" : "-1")
     << ", " << (iso ? "isotropic" : "anisotropic") << "\n";
  if (!iso) {
    GapReport g = anisotropic_gap(L, p);
    j["gap"] = gap_json(g);
    os << "anisotropic gap: bound " << g.bound << ", empirical min "
       << g.empirical_min << "\n";
  }
  os << render_report(rep);
  emit(j, as_json, os.str());
  return 0;
}

int cmd_jordan(const std::string& form, long p, bool as_json) {
  JordanSplitting J = jordan_decompose(load_form(form), p);
  emit(jordan_json(J), as_json, render_jordan(J));
  return 0;
}

int cmd_rep(const std::string& form, long p, const std::string& target,
            bool primitive, bool as_json) {
  RepVerdict v =
      decide_representation(load_form(form), p, parse_target(target), primitive);
  std::ostringstream os;
  os << (v.represented ? "REPRESENTED" : "NOT_REPRESENTED") << "\n";
  if (v.represented) {
    os << "witness mod " << p << "^" << v.exhaustion_level << ":";
    for (const auto& x : v.witness) os << " " << x.get_str();
    os << "\n";
    if (v.hensel_d >= 0)
      os << "lifted from gradient valuation " << v.hensel_d << "\n";
  }
  emit(rep_json(v), as_json, os.str());
  return 0;
}

int cmd_spectrum(const std::string& form, long p, long e_max, bool primitive,
                 bool as_json) {
  std::set<SquareClass> s = spectrum(load_form(form), p, e_max, primitive);
  std::ostringstream os;
  os << (primitive ? "primitive " : "") << "spectrum up to order " << e_max
     << ":";
  for (const auto& c : s) os << " " << c.str();
  os << "\n";
  emit(spectrum_json(s), as_json, os.str());
  return 0;
}

int cmd_universal(const std::string& form, long p, bool as_json) {
  FormMatrix L = load_form(form);
  UniversalityReport rep = is_primitively_universal_local(L, p);
  emit(report_json(rep), as_json, render_report(rep));
  return 0;
}

int cmd_scan(const std::string& form, long bound, int threads, bool as_json) {
  ScanReport r = enumerate_values(load_form(form), bound, threads);
  std::ostringstream os;
  os << "scanned [1, " << r.bound << "]: " << r.represented.size()
     << " represented, " << r.primitively_represented.size()
     << " primitively\n";
  os << "excluded:";
  for (long a : r.excluded) os << " " << a;
  os << "\nprimitive excluded:";
  for (long a : r.primitive_excluded) os << " " << a;
  os << "\n";
  emit(scan_json(r), as_json, os.str());
  return 0;
}

int cmd_verdict(const std::string& form, bool as_json) {
  FormMatrix L = load_form(form);
  GlobalVerdict g = almost_universality_verdict(L);
  std::ostringstream os;
  os << "relevant primes:";
  for (long p : g.relevant_primes) os << " " << p;
  os << "\n";
  for (const auto& [p, rep] : g.local_reports) os << render_report(rep);
  os << "almost universal: " << to_string(g.almost_universal) << "\n";
  os << "almost primitively universal: "
     << to_string(g.almost_primitively_universal) << "\n";
  for (const auto& w : g.progression_witnesses)
    os << "excluded progression: " << w.residue.get_str() << " mod "
       << w.modulus.get_str() << (w.primitive ? " (primitive)" : "") << "\n";
  for (const auto& n : g.notes) os << "note: " << n << "\n";
  emit(verdict_json(g, L), as_json, os.str());
  return 0;
}

int cmd_theorem3(const std::string& form, bool as_json) {
  Theorem3Report r = theorem3_check(load_form(form));
  std::ostringstream os;
  for (const auto& h : r.hypotheses) {
    const char* state = h.state == HypState::HOLDS
                            ? "holds"
                            : (h.state == HypState::FAILS ? "fails" : "unverified");
    os << h.name << ": " << state << " (" << h.detail << ")\n";
  }
  os << "verdict: " << r.verdict << "\n";
  if (r.applicable)
    os << "local cross-check: " << (r.cross_checked ? "consistent" : "INCONSISTENT")
       << "\n";
  emit(theorem3_json(r), as_json, os.str());
  return 0;
}

int cmd_verify_paper(int threads) {
  bool all = true;
  run_acceptance_checks(threads, [&](const CheckResult& r) {
    std::cout << (r.pass ? "PASS" : "FAIL") << " " << r.name << " [" << r.detail
              << "] (" << r.seconds << " s)" << std::endl;
    all = all && r.pass;
  });
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"p-adic representation analysis for integral quadratic forms"};
  app.require_subcommand(1);

  std::string form, target;
  long p = 2, e_max = 4, bound = 100;
  int threads = 0;
  bool primitive = false, as_json = false;

  auto add_form = [&](CLI::App* sub) {
    sub->add_option("--form", form, "form description: inline JSON or a file path")
        ->required();
  };
  auto add_common = [&](CLI::App* sub) {
    sub->add_flag("--json", as_json, "emit machine-readable JSON");
  };

  CLI::App* analyze = app.add_subcommand("analyze", "full local analysis at one prime");
  add_form(analyze);
  analyze->add_option("-p", p, "prime")->required();
  add_common(analyze);

  CLI::App* jordan = app.add_subcommand("jordan", "Jordan splitting at one prime");
  add_form(jordan);
  jordan->add_option("-p", p, "prime")->required();
  add_common(jordan);

  CLI::App* rep = app.add_subcommand("rep", "decide representation of one target");
  add_form(rep);
  rep->add_option("-p", p, "prime")->required();
  rep->add_option("-a", target, "target: integer or p^e*u")->required();
  rep->add_flag("--primitive", primitive, "require a primitive vector");
  add_common(rep);

  CLI::App* spec = app.add_subcommand("spectrum", "represented square classes");
  add_form(spec);
  spec->add_option("-p", p, "prime")->required();
  spec->add_option("--emax", e_max, "largest order to test");
  spec->add_flag("--primitive", primitive, "require primitive vectors");
  add_common(spec);

  CLI::App* uni = app.add_subcommand("universal", "local universality verdicts");
  add_form(uni);
  uni->add_option("-p", p, "prime")->required();
  add_common(uni);

  CLI::App* scan = app.add_subcommand("scan", "enumerate represented integers");
  add_form(scan);
  scan->add_option("-B", bound, "scan bound")->required();
  scan->add_option("--threads", threads, "worker threads (or PADIQ_THREADS)");
  add_common(scan);

  CLI::App* verdict = app.add_subcommand("verdict", "almost-universality verdict");
  add_form(verdict);
  add_common(verdict);

  CLI::App* thm3 = app.add_subcommand("theorem3", "discriminant criterion check");
  add_form(thm3);
  add_common(thm3);

  CLI::App* verify = app.add_subcommand("verify-paper", "run the fixture corpus");
  verify->add_option("--threads", threads, "worker threads (or PADIQ_THREADS)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(analyze)) return cmd_analyze(form, p, as_json);
    if (app.got_subcommand(jordan)) return cmd_jordan(form, p, as_json);
    if (app.got_subcommand(rep)) return cmd_rep(form, p, target, primitive, as_json);
    if (app.got_subcommand(spec))
      return cmd_spectrum(form, p, e_max, primitive, as_json);
    if (app.got_subcommand(uni)) return cmd_universal(form, p, as_json);
    if (app.got_subcommand(scan))
      return cmd_scan(form, bound, thread_count(threads), as_json);
    if (app.got_subcommand(verdict)) return cmd_verdict(form, as_json);
    if (app.got_subcommand(thm3)) return cmd_theorem3(form, as_json);
    if (app.got_subcommand(verify)) return cmd_verify_paper(thread_count(threads));
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
