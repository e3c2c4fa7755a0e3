#pragma once

#include <json.hpp>

#include "padiq/global.hpp"

namespace padiq {

/// Parse a form description: {"diag":[...]}, {"gram2":[[...]]}, or
/// {"blocks":[...]} with tokens "H", "A", "Hhat", "Ahat", {"diag":[...]},
/// {"scale": c, "of": block}. Throws std::invalid_argument naming the
/// offending field.
FormMatrix parse_form(const nlohmann::json& j);
FormMatrix parse_form_string(const std::string& text);

nlohmann::json form_json(const FormMatrix& f);
nlohmann::json class_json(const SquareClass& c);
nlohmann::json jordan_json(const JordanSplitting& s);
nlohmann::json rep_json(const RepVerdict& v);
nlohmann::json spectrum_json(const std::set<SquareClass>& s);
nlohmann::json universal_json(const UniversalityCheck& c);
nlohmann::json report_json(const UniversalityReport& r);
nlohmann::json gap_json(const GapReport& g);
nlohmann::json scan_json(const ScanReport& r);
nlohmann::json verdict_json(const GlobalVerdict& g, const FormMatrix& form);
nlohmann::json theorem3_json(const Theorem3Report& r);

}  // namespace padiq
