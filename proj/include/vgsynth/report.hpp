#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "vgsynth/experiment.hpp"

namespace vgsynth {

// Deterministic part of the report: AUCs, mixing scores, row counts, seed and
// the producing configuration. Wall-clock totals are kept in a separate
// document (runtime_to_json) so that reruns compare byte-equal.
nlohmann::ordered_json report_to_json(const EvalReport& report);
nlohmann::ordered_json runtime_to_json(const std::map<std::string, RuntimeTotal>& totals);

// Checks a parsed report against the documented schema; returns the problems
// found (empty when valid).
std::vector<std::string> validate_report(const nlohmann::json& j);

// `x,y,origin` rows.
void write_embedding_csv(std::ostream& out, const kernels::Matrix& coords,
                         std::span<const Origin> origins);

}  // namespace vgsynth
