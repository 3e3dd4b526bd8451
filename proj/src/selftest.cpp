#include "vgsynth/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "vgsynth/generate.hpp"
#include "vgsynth/metrics.hpp"
#include "vgsynth/oracles.hpp"
#include "vgsynth/rng.hpp"

namespace vgsynth {

namespace {

std::string describe_pair_diff(const std::vector<std::pair<NodeId, NodeId>>& got,
                               const std::vector<std::pair<NodeId, NodeId>>& want) {
  for (const auto& p : want)
    if (std::find(got.begin(), got.end(), p) == got.end())
      return "missing edge (" + std::to_string(p.first) + "," + std::to_string(p.second) + ")";
  for (const auto& p : got)
    if (std::find(want.begin(), want.end(), p) == want.end())
      return "spurious edge (" + std::to_string(p.first) + "," + std::to_string(p.second) + ")";
  return "edge lists differ in order";
}

SelftestCheck graph_check(const char* name, const EdgeBuilder& build, const EdgeBuilder& oracle,
                          const SelftestOptions& opt, std::uint64_t salt) {
  SelftestCheck check{name, true, 0, {}};
  Rng rng(mix_seed(opt.seed, salt));
  for (std::size_t length : {20u, 60u}) {
    for (std::size_t w = 0; w < opt.graph_windows; ++w) {
      std::vector<double> v(length);
      for (auto& x : v) x = uniform01(rng);
      auto got = build(v);
      auto want = oracle(v);
      std::sort(got.begin(), got.end());
      std::sort(want.begin(), want.end());
      ++check.cases;
      if (got != want && check.passed) {
        check.passed = false;
        check.detail = "length " + std::to_string(length) + " window " + std::to_string(w) + ": " +
                       describe_pair_diff(got, want);
      }
    }
  }
  return check;
}

}  // namespace

std::vector<SelftestCheck> run_selftest(const SelftestOptions& opt) {
  std::vector<SelftestCheck> checks;
  checks.push_back(graph_check("nvg == brute force", opt.nvg, nvg_edges_bruteforce, opt, 1));
  checks.push_back(graph_check("hvg == brute force", opt.hvg, hvg_edges_bruteforce, opt, 2));

  {
    SelftestCheck check{"dtw == brute force", true, 0, {}};
    Rng rng(mix_seed(opt.seed, 3));
    for (std::size_t i = 0; i < opt.dtw_pairs; ++i) {
      std::vector<double> a(1 + uniform_index(rng, 8)), b(1 + uniform_index(rng, 8));
      for (auto& x : a) x = 10.0 * uniform01(rng) - 5.0;
      for (auto& x : b) x = 10.0 * uniform01(rng) - 5.0;
      const double fast = dtw_distance(a, b);
      const double slow = oracles::dtw_bruteforce(a, b);
      ++check.cases;
      if (std::abs(fast - slow) > 1e-9 && check.passed) {
        check.passed = false;
        char buf[128];
        std::snprintf(buf, sizeof buf, "pair %zu: dp %.17g vs brute %.17g", i, fast, slow);
        check.detail = buf;
      }
    }
    checks.push_back(check);
  }

  {
    SelftestCheck check{"roc_auc == pair count", true, 0, {}};
    Rng rng(mix_seed(opt.seed, 4));
    while (check.cases < opt.auc_inputs) {
      const auto n = 2 + uniform_index(rng, 49);
      std::vector<double> scores(n);
      std::vector<int> labels(n);
      // Coarse scores so ties are common.
      for (auto& s : scores) s = static_cast<double>(uniform_index(rng, 10)) / 10.0;
      for (auto& l : labels) l = static_cast<int>(uniform_index(rng, 2));
      const auto pos = std::count(labels.begin(), labels.end(), 1);
      if (pos == 0 || pos == static_cast<long>(n)) continue;
      const double fast = roc_auc(scores, labels);
      const double slow = oracles::auc_pairwise(scores, labels).auc();
      ++check.cases;
      if (std::abs(fast - slow) > 1e-12 && check.passed) {
        check.passed = false;
        char buf[128];
        std::snprintf(buf, sizeof buf, "input %zu: ranks %.17g vs pairs %.17g", check.cases, fast, slow);
        check.detail = buf;
      }
    }
    checks.push_back(check);
  }
  return checks;
}

bool all_passed(const std::vector<SelftestCheck>& checks) {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

void print_selftest(std::ostream& out, const std::vector<SelftestCheck>& checks) {
  for (const auto& c : checks) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%-4s %-24s %6zu cases", c.passed ? "PASS" : "FAIL", c.name.c_str(),
                  c.cases);
    out << buf;
    if (!c.detail.empty()) out << "  " << c.detail;
    out << '\n';
  }
}

}  // namespace vgsynth
