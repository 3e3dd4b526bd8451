#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <mutex>
#include <span>
#include <string>
#include <vector>

namespace vgsynth {

enum class UnitKind { ticker, segment };
const char* to_string(UnitKind k);
UnitKind parse_unit_kind(std::string_view s);

struct RuntimeRecord {
  std::string unit_id;
  UnitKind unit_kind = UnitKind::ticker;
  std::string method;
  std::int64_t elapsed_ms = 0;
  bool valid = true;  // false when the timed task threw
};

// Append-only, thread-safe collector.
class RuntimeLog {
 public:
  void append(RuntimeRecord record);
  std::vector<RuntimeRecord> records() const;  // sorted by (method, unit_id)

 private:
  mutable std::mutex mutex_;
  std::vector<RuntimeRecord> records_;
};

// Wall-clock (steady clock) duration of `work`. If `work` throws, a record
// flagged invalid with the partial duration is appended to `log` (when given)
// and the exception propagates.
RuntimeRecord time_unit(std::string unit_id, UnitKind kind, std::string method,
                        const std::function<void()>& work, RuntimeLog* log = nullptr);

struct RuntimeTotal {
  std::int64_t total_ms = 0;
  UnitKind unit_kind = UnitKind::ticker;
  std::size_t units = 0;
};

// Per-method sums. Invalid records are included: they still cost time.
std::map<std::string, RuntimeTotal> aggregate(std::span<const RuntimeRecord> records);

// "days hh:mm:ss", seconds floored.
std::string format_duration(std::int64_t ms);

void write_runtime_jsonl(std::ostream& out, std::span<const RuntimeRecord> records);
std::vector<RuntimeRecord> read_runtime_jsonl(std::istream& in);

}  // namespace vgsynth
