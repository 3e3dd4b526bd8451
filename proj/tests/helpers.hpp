#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "vgsynth/ingest.hpp"
#include "vgsynth/rng.hpp"

namespace testing {

inline vgsynth::Window scaled_window(std::vector<double> raw, std::string ticker = "X",
                                     std::int64_t start = 0) {
  vgsynth::Window w;
  w.ticker = std::move(ticker);
  w.start_index = start;
  w.length = raw.size();
  w.raw_values = std::move(raw);
  return vgsynth::minmax_scale(std::move(w));
}

// Window whose scaled values are given directly (raw = scaled, scale [0, 1]).
inline vgsynth::Window prescaled(std::vector<double> scaled, std::string ticker = "X",
                                 std::int64_t start = 0) {
  vgsynth::Window w;
  w.ticker = std::move(ticker);
  w.start_index = start;
  w.length = scaled.size();
  w.raw_values = scaled;
  w.scaled_values = std::move(scaled);
  w.scale_min = 0.0;
  w.scale_max = 1.0;
  return w;
}

inline std::vector<double> random_values(vgsynth::Rng& rng, std::size_t n, double lo = 0.0,
                                         double hi = 1.0) {
  std::vector<double> v(n);
  for (auto& x : v) x = lo + (hi - lo) * vgsynth::uniform01(rng);
  return v;
}

struct TempDir {
  std::filesystem::path path;
  explicit TempDir(const std::string& tag) {
    path = std::filesystem::temp_directory_path() /
           ("vgsynth_" + tag + "_" + std::to_string(vgsynth::splitmix64(
                                         reinterpret_cast<std::uintptr_t>(this))));
    std::filesystem::remove_all(path);
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

}  // namespace testing
