#include "vgsynth/runtime.hpp"

#include <algorithm>
#include <cstdio>
#include <istream>
#include <ostream>
#include <tuple>

#include "json.hpp"
#include "vgsynth/error.hpp"

namespace vgsynth {

const char* to_string(UnitKind k) { return k == UnitKind::ticker ? "ticker" : "segment"; }

UnitKind parse_unit_kind(std::string_view s) {
  if (s == "ticker") return UnitKind::ticker;
  if (s == "segment") return UnitKind::segment;
  throw InvalidInput("unknown unit kind '" + std::string(s) + "'");
}

void RuntimeLog::append(RuntimeRecord record) {
  std::lock_guard lock(mutex_);
  records_.push_back(std::move(record));
}

std::vector<RuntimeRecord> RuntimeLog::records() const {
  std::vector<RuntimeRecord> out;
  {
    std::lock_guard lock(mutex_);
    out = records_;
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return std::tie(a.method, a.unit_id) < std::tie(b.method, b.unit_id);
  });
  return out;
}

RuntimeRecord time_unit(std::string unit_id, UnitKind kind, std::string method,
                        const std::function<void()>& work, RuntimeLog* log) {
  RuntimeRecord rec{std::move(unit_id), kind, std::move(method), 0, true};
  const auto start = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() -
                                                                 start)
        .count();
  };
  try {
    work();
  } catch (...) {
    rec.elapsed_ms = elapsed();
    rec.valid = false;
    if (log) log->append(rec);
    throw;
  }
  rec.elapsed_ms = elapsed();
  if (log) log->append(rec);
  return rec;
}

std::map<std::string, RuntimeTotal> aggregate(std::span<const RuntimeRecord> records) {
  std::map<std::string, RuntimeTotal> out;
  for (const auto& r : records) {
    auto& t = out[r.method];
    t.total_ms += r.elapsed_ms;
    t.unit_kind = r.unit_kind;
    ++t.units;
  }
  return out;
}

std::string format_duration(std::int64_t ms) {
  const std::int64_t total_s = std::max<std::int64_t>(ms, 0) / 1000;
  const std::int64_t days = total_s / 86400;
  const std::int64_t rem = total_s % 86400;
  char buf[48];
  std::snprintf(buf, sizeof buf, "%lld %02lld:%02lld:%02lld", static_cast<long long>(days),
                static_cast<long long>(rem / 3600), static_cast<long long>((rem % 3600) / 60),
                static_cast<long long>(rem % 60));
  return buf;
}

void write_runtime_jsonl(std::ostream& out, std::span<const RuntimeRecord> records) {
  for (const auto& r : records) {
    nlohmann::ordered_json j;
    j["unit_id"] = r.unit_id;
    j["unit_kind"] = to_string(r.unit_kind);
    j["method"] = r.method;
    j["elapsed_ms"] = r.elapsed_ms;
    if (!r.valid) j["valid"] = false;
    out << j.dump() << '\n';
  }
}

std::vector<RuntimeRecord> read_runtime_jsonl(std::istream& in) {
  std::vector<RuntimeRecord> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto j = nlohmann::json::parse(line);
    out.push_back({j.at("unit_id").get<std::string>(),
                   parse_unit_kind(j.at("unit_kind").get<std::string>()),
                   j.at("method").get<std::string>(), j.at("elapsed_ms").get<std::int64_t>(),
                   j.value("valid", true)});
  }
  return out;
}

}  // namespace vgsynth
