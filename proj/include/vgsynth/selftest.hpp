#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "vgsynth/graphs.hpp"

namespace vgsynth {

struct SelftestCheck {
  std::string name;
  bool passed = true;
  std::size_t cases = 0;
  std::string detail;  // first mismatch, if any
};

struct SelftestOptions {
  // Implementations under test; replaceable so a broken builder can be fed in.
  EdgeBuilder nvg = nvg_edges;
  EdgeBuilder hvg = hvg_edges;
  std::uint64_t seed = 20240601;
  std::size_t graph_windows = 200;  // per length (20 and 60)
  std::size_t dtw_pairs = 500;
  std::size_t auc_inputs = 1000;
};

std::vector<SelftestCheck> run_selftest(const SelftestOptions& options = {});
bool all_passed(const std::vector<SelftestCheck>& checks);
void print_selftest(std::ostream& out, const std::vector<SelftestCheck>& checks);

}  // namespace vgsynth
