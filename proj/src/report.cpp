#include "vgsynth/report.hpp"

#include <cmath>
#include <ostream>

namespace vgsynth {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {
// NaN (undefined validation AUC) becomes null.
ordered_json number_or_null(double v) { return std::isfinite(v) ? ordered_json(v) : ordered_json(); }
}  // namespace

ordered_json report_to_json(const EvalReport& report) {
  ordered_json methods = ordered_json::array();
  for (const auto& m : report.methods) {
    ordered_json e;
    e["method"] = m.method;
    e["skipped"] = m.skipped;
    if (!m.note.empty()) e["note"] = m.note;
    e["auc_real"] = m.auc_real;
    e["auc_synthetic"] = m.auc_synthetic;
    e["auc_mixed"] = m.auc_mixed;
    e["validation"] = {{"auc_real", number_or_null(m.val_auc_real)},
                       {"auc_synthetic", number_or_null(m.val_auc_synthetic)},
                       {"auc_mixed", number_or_null(m.val_auc_mixed)}};
    e["real_train_rows"] = m.real_train_rows;
    e["synthetic_train_rows"] = m.synthetic_train_rows;
    e["mixing_score"] = m.mixing_score ? ordered_json(*m.mixing_score) : ordered_json();
    methods.push_back(std::move(e));
  }
  ordered_json j;
  j["schema"] = "vgsynth.report/1";
  j["seed"] = report.seed;
  j["test_rows"] = report.test_rows;
  j["validation_rows"] = report.validation_rows;
  j["methods"] = std::move(methods);
  j["config"] = report.config_snapshot.empty() ? ordered_json::object()
                                               : ordered_json::parse(report.config_snapshot);
  return j;
}

ordered_json runtime_to_json(const std::map<std::string, RuntimeTotal>& totals) {
  ordered_json j = ordered_json::object();
  for (const auto& [method, t] : totals) {
    j[method] = {{"unit_kind", to_string(t.unit_kind)},
                 {"units", t.units},
                 {"total_ms", t.total_ms},
                 {"total", format_duration(t.total_ms)}};
  }
  return j;
}

std::vector<std::string> validate_report(const json& j) {
  std::vector<std::string> problems;
  auto need = [&](const json& obj, const char* key, auto pred, const char* what, const std::string& where) {
    if (!obj.contains(key)) {
      problems.push_back(where + ": missing '" + key + "'");
      return false;
    }
    if (!pred(obj.at(key))) {
      problems.push_back(where + ": '" + key + "' must be " + what);
      return false;
    }
    return true;
  };
  const auto is_unsigned = [](const json& v) { return v.is_number_unsigned(); };
  const auto is_auc = [](const json& v) {
    return v.is_number() && v.get<double>() >= 0.0 && v.get<double>() <= 1.0;
  };
  if (!j.is_object()) return {"report must be an object"};
  need(j, "schema", [](const json& v) { return v == "vgsynth.report/1"; }, "\"vgsynth.report/1\"", "report");
  need(j, "seed", is_unsigned, "an unsigned integer", "report");
  need(j, "test_rows", is_unsigned, "an unsigned integer", "report");
  need(j, "validation_rows", is_unsigned, "an unsigned integer", "report");
  need(j, "config", [](const json& v) { return v.is_object(); }, "an object", "report");
  if (need(j, "methods", [](const json& v) { return v.is_array(); }, "an array", "report")) {
    for (std::size_t i = 0; i < j["methods"].size(); ++i) {
      const auto& m = j["methods"][i];
      const auto where = "methods[" + std::to_string(i) + "]";
      if (!m.is_object()) {
        problems.push_back(where + " must be an object");
        continue;
      }
      need(m, "method", [](const json& v) { return v.is_string(); }, "a string", where);
      need(m, "skipped", [](const json& v) { return v.is_boolean(); }, "a boolean", where);
      for (const char* k : {"auc_real", "auc_synthetic", "auc_mixed"}) need(m, k, is_auc, "in [0, 1]", where);
      need(m, "real_train_rows", is_unsigned, "an unsigned integer", where);
      need(m, "synthetic_train_rows", is_unsigned, "an unsigned integer", where);
      need(m, "mixing_score", [](const json& v) { return v.is_null() || (v.is_number() && v.get<double>() >= 0); },
           "null or a non-negative number", where);
      if (need(m, "validation", [](const json& v) { return v.is_object(); }, "an object", where)) {
        for (const char* k : {"auc_real", "auc_synthetic", "auc_mixed"})
          need(m["validation"], k, [&](const json& v) { return v.is_null() || is_auc(v); }, "null or in [0, 1]",
               where + ".validation");
      }
    }
  }
  return problems;
}

void write_embedding_csv(std::ostream& out, const kernels::Matrix& coords, std::span<const Origin> origins) {
  out << "x,y,origin\n";
  char buf[96];
  for (std::size_t i = 0; i < coords.rows; ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%s\n", coords(i, 0), coords(i, 1), to_string(origins[i]));
    out << buf;
  }
}

}  // namespace vgsynth
