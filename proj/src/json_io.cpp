#include "padiq/json_io.hpp"

#include <stdexcept>

namespace padiq {

using nlohmann::json;

namespace {

Int to_int(const json& j, const std::string& field) {
  if (j.is_number_integer()) return Int(static_cast<long>(j.get<long long>()));
  if (j.is_string()) {
    try {
      return Int(j.get<std::string>());
    } catch (const std::invalid_argument&) {
    }
  }
  throw std::invalid_argument("field '" + field + "': expected an integer");
}

Rat to_rat(const json& j, const std::string& field) {
  if (j.is_number_integer()) return Rat(static_cast<long>(j.get<long long>()));
  if (j.is_string()) {
    try {
      Rat r(j.get<std::string>());
      r.canonicalize();
      return r;
    } catch (const std::invalid_argument&) {
    }
  }
  throw std::invalid_argument("field '" + field +
                              "': expected an integer or rational string");
}

FormMatrix parse_diag(const json& j) {
  if (!j.is_array() || j.empty())
    throw std::invalid_argument("field 'diag': expected a nonempty array");
  std::vector<Int> entries;
  for (const auto& e : j) entries.push_back(to_int(e, "diag"));
  return FormMatrix::diagonal(entries);
}

FormMatrix parse_block(const json& j) {
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    if (s == "H") return FormMatrix::hyperbolic();
    if (s == "A") return FormMatrix::a_plane();
    if (s == "Hhat") return FormMatrix::hyperbolic_half();
    if (s == "Ahat") return FormMatrix::a_plane_half();
    throw std::invalid_argument("field 'blocks': unknown block '" + s + "'");
  }
  if (j.is_object()) {
    if (j.contains("diag")) return parse_diag(j.at("diag"));
    if (j.contains("scale")) {
      if (!j.contains("of"))
        throw std::invalid_argument("field 'scale': missing companion 'of'");
      return parse_block(j.at("of")).scaled(to_rat(j.at("scale"), "scale"));
    }
  }
  throw std::invalid_argument("field 'blocks': unrecognized block entry");
}

}  // namespace

FormMatrix parse_form(const json& j) {
  if (!j.is_object())
    throw std::invalid_argument("form: expected a JSON object");
  if (j.contains("diag")) return parse_diag(j.at("diag"));
  if (j.contains("gram2")) {
    const json& g = j.at("gram2");
    if (!g.is_array() || g.empty())
      throw std::invalid_argument("field 'gram2': expected a nonempty matrix");
    std::vector<std::vector<Int>> rows;
    for (const auto& row : g) {
      if (!row.is_array())
        throw std::invalid_argument("field 'gram2': expected a matrix");
      std::vector<Int> r;
      for (const auto& e : row) r.push_back(to_int(e, "gram2"));
      rows.push_back(std::move(r));
    }
    bool half = j.value("half", false);
    try {
      return FormMatrix::from_gram2(std::move(rows), half);
    } catch (const std::invalid_argument& err) {
      throw std::invalid_argument(std::string("field 'gram2': ") + err.what());
    }
  }
  if (j.contains("blocks")) {
    const json& b = j.at("blocks");
    if (!b.is_array() || b.empty())
      throw std::invalid_argument("field 'blocks': expected a nonempty array");
    std::optional<FormMatrix> acc;
    for (const auto& e : b) {
      FormMatrix f = parse_block(e);
      acc = acc ? acc->direct_sum(f) : f;
    }
    return *acc;
  }
  throw std::invalid_argument(
      "form: expected one of the fields 'diag', 'gram2', 'blocks'");
}

FormMatrix parse_form_string(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("form: invalid JSON: ") + e.what());
  }
  return parse_form(j);
}

json form_json(const FormMatrix& f) {
  json g2 = json::array();
  for (int i = 0; i < f.rank(); ++i) {
    json row = json::array();
    for (int j2 = 0; j2 < f.rank(); ++j2) row.push_back(f.g2(i, j2).get_str());
    g2.push_back(row);
  }
  return json{{"gram2", g2}, {"half", f.half()}};
}

json class_json(const SquareClass& c) {
  return json{{"p", c.prime}, {"e", c.order}, {"unit", c.unit_rep},
              {"str", c.str()}};
}

json jordan_json(const JordanSplitting& s) {
  json comps = json::array();
  for (const auto& c : s.components) {
    json j{{"scale_exp", c.scale_exp},
           {"rank", c.rank},
           {"proper", c.proper},
           {"norm_exp", c.norm_exp}};
    if (c.proper)
      j["unit_reps"] = c.unit_reps;
    else {
      j["binary_blocks"] = c.binary_blocks;
      j["tail"] = std::string(1, c.tail);
    }
    comps.push_back(j);
  }
  return json{{"p", s.p},
              {"components", comps},
              {"rank", s.rank()},
              {"top_exp", s.top_exponent()},
              {"scale_exp", s.scale_exponent()},
              {"norm_exp", s.norm_exponent()}};
}

json rep_json(const RepVerdict& v) {
  json j{{"target", v.target.get_str()},
         {"primitive", v.primitive},
         {"decided", v.represented ? "REPRESENTED" : "NOT_REPRESENTED"},
         {"exhaustion_level", v.exhaustion_level},
         {"rescaled", v.rescaled}};
  if (v.represented) {
    json w = json::array();
    for (const auto& x : v.witness) w.push_back(x.get_str());
    j["witness"] = w;
    j["hensel_d"] = v.hensel_d;
  }
  return j;
}

json spectrum_json(const std::set<SquareClass>& s) {
  json arr = json::array();
  for (const auto& c : s) arr.push_back(class_json(c));
  return arr;
}

json universal_json(const UniversalityCheck& c) {
  json classes = json::array();
  for (const auto& [cls, rep] : c.classes)
    classes.push_back(json{{"class", cls.str()}, {"represented", rep}});
  json j{{"universal", c.universal}, {"classes", classes}};
  if (c.missing) j["missing"] = c.missing->str();
  return j;
}

json report_json(const UniversalityReport& r) {
  json j{{"p", r.p},
         {"universal", universal_json(r.universal)},
         {"primitively_universal", to_string(r.primitively_universal)},
         {"e_max", r.e_max},
         {"trace", r.trace}};
  if (r.failure_class) j["failure_class"] = r.failure_class->str();
  if (!r.spectrum_found.empty() || !r.spectrum_missing.empty()) {
    j["spectrum_found"] = spectrum_json(r.spectrum_found);
    j["spectrum_missing"] = spectrum_json(r.spectrum_missing);
  }
  return j;
}

json gap_json(const GapReport& g) {
  return json{{"bound", g.bound},
              {"empirical_min", g.empirical_min},
              {"top_exponent", g.top_exponent},
              {"scale_shift", g.scale_shift}};
}

json scan_json(const ScanReport& r) {
  json j{{"bound", r.bound},
         {"represented_count", r.represented.size()},
         {"primitively_represented_count", r.primitively_represented.size()},
         {"excluded", r.excluded},
         {"primitive_excluded", r.primitive_excluded}};
  json w = json::object();
  for (const auto& [val, vec] : r.witnesses) w[std::to_string(val)] = vec;
  j["witnesses"] = w;
  return j;
}

json verdict_json(const GlobalVerdict& g, const FormMatrix& form) {
  json per_prime = json::object();
  for (const auto& [p, rep] : g.local_reports)
    per_prime[std::to_string(p)] = report_json(rep);
  json witnesses = json::array();
  for (const auto& w : g.progression_witnesses)
    witnesses.push_back(json{{"p", w.p},
                             {"residue", w.residue.get_str()},
                             {"modulus", w.modulus.get_str()},
                             {"primitive", w.primitive}});
  return json{{"form", form_json(form)},
              {"relevant_primes", g.relevant_primes},
              {"per_prime", per_prime},
              {"verdicts",
               {{"almost_universal", to_string(g.almost_universal)},
                {"almost_primitively_universal",
                 to_string(g.almost_primitively_universal)}}},
              {"progression_witnesses", witnesses},
              {"notes", g.notes}};
}

json theorem3_json(const Theorem3Report& r) {
  json hyps = json::array();
  for (const auto& h : r.hypotheses) {
    std::string state = h.state == HypState::HOLDS
                            ? "holds"
                            : (h.state == HypState::FAILS ? "fails"
                                                          : "unverified");
    hyps.push_back(json{{"name", h.name}, {"state", state},
                        {"detail", h.detail}});
  }
  return json{{"hypotheses", hyps},
              {"applicable", r.applicable},
              {"verdict", r.verdict},
              {"cross_checked", r.cross_checked}};
}

}  // namespace padiq
