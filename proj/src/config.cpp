#include "vgsynth/config.hpp"

#include <fstream>
#include <set>

#include "vgsynth/error.hpp"

namespace vgsynth {

using nlohmann::json;
using nlohmann::ordered_json;

void RunConfig::validate() const {
  if (generate.window_length < 3) throw ConfigError("window_length must be >= 3");
  if (generate.stride < 1) throw ConfigError("stride must be >= 1");
  if (generate.methods.empty()) throw ConfigError("methods must not be empty");
  if (generate.sequences_per_window < 1) throw ConfigError("sequences_per_window must be >= 1");
  if (generate.downsample_k < 1) throw ConfigError("downsample.k must be >= 1");
  if (!(generate.similar_value_epsilon >= 0)) throw ConfigError("similar_value_epsilon must be >= 0");
  WalkConfig probe = generate.walk;
  if (probe.target_length == 0) probe.target_length = generate.window_length;
  probe.validate();
  split.validate();
  if (classifier.max_iterations < 0 || !(classifier.l2 >= 0)) throw ConfigError("bad classifier settings");
  if (!(embedding.perplexity > 0) || embedding.iterations < 1)
    throw ConfigError("bad embedding settings");
  if (mixing_k < 1) throw ConfigError("mixing_k must be >= 1");
  if (workers < 0) throw ConfigError("workers must be >= 0");
}

ordered_json to_json(const RunConfig& c) {
  const auto& g = c.generate;
  ordered_json methods = ordered_json::array();
  for (auto m : g.methods) methods.push_back(to_string(m));
  ordered_json j;
  j["input"] = c.input;
  j["output_dir"] = c.output_dir;
  j["window_length"] = g.window_length;
  j["stride"] = g.stride;
  j["methods"] = methods;
  j["walk"] = {{"node_strategy", to_string(g.walk.node_strategy)},
               {"restart_prob", g.walk.restart_prob},
               {"restart_base", to_string(g.walk.restart_base)},
               {"switch_prob", g.walk.switch_prob},
               {"value_policy", to_string(g.walk.value_policy)},
               {"target_length", g.walk.target_length}};
  j["sequences_per_window"] = g.sequences_per_window;
  j["downsample"] = {{"mode", to_string(g.downsample_mode)}, {"k", g.downsample_k}};
  j["similar_value_epsilon"] = g.similar_value_epsilon;
  j["emit_scaled"] = c.emit_scaled;
  j["evaluation"] = {
      {"split", {{"train", c.split.train}, {"validation", c.split.validation}, {"test", c.split.test}}},
      {"classifier",
       {{"l2", c.classifier.l2},
        {"gradient_tolerance", c.classifier.gradient_tolerance},
        {"max_iterations", c.classifier.max_iterations}}},
      {"embedding",
       {{"perplexity", c.embedding.perplexity},
        {"iterations", c.embedding.iterations},
        {"learning_rate", c.embedding.learning_rate},
        {"sample_per_origin", c.embedding_sample_per_origin}}},
      {"mixing_k", c.mixing_k}};
  j["seed"] = g.master_seed;
  j["workers"] = c.workers;
  return j;
}

namespace {

void reject_unknown(const json& j, std::initializer_list<const char*> known, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + " must be an object");
  const std::set<std::string> allowed(known.begin(), known.end());
  for (const auto& [key, _] : j.items())
    if (!allowed.count(key)) throw ConfigError("unknown key '" + key + "' in " + where);
}

template <class T>
void read(const json& j, const char* key, T& into) {
  if (!j.contains(key)) return;
  try {
    into = j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad value for '") + key + "': " + e.what());
  }
}

}  // namespace

RunConfig config_from_json(const json& j) {
  RunConfig c;
  reject_unknown(j,
                 {"input", "output_dir", "window_length", "stride", "methods", "walk",
                  "sequences_per_window", "downsample", "similar_value_epsilon", "emit_scaled",
                  "evaluation", "seed", "workers"},
                 "config");
  auto& g = c.generate;
  read(j, "input", c.input);
  read(j, "output_dir", c.output_dir);
  read(j, "window_length", g.window_length);
  g.stride = g.window_length;
  read(j, "stride", g.stride);
  if (j.contains("methods")) {
    g.methods.clear();
    for (const auto& m : j.at("methods")) {
      const auto method = parse_method(m.get<std::string>());
      if (std::find(g.methods.begin(), g.methods.end(), method) == g.methods.end())
        g.methods.push_back(method);
    }
  }
  if (j.contains("walk")) {
    const auto& w = j.at("walk");
    reject_unknown(w, {"node_strategy", "restart_prob", "restart_base", "switch_prob", "value_policy", "target_length"},
                   "walk");
    if (w.contains("node_strategy")) g.walk.node_strategy = parse_node_strategy(w.at("node_strategy").get<std::string>());
    if (w.contains("value_policy")) g.walk.value_policy = parse_value_policy(w.at("value_policy").get<std::string>());
    if (w.contains("restart_base")) g.walk.restart_base = parse_restart_base(w.at("restart_base").get<std::string>());
    read(w, "restart_prob", g.walk.restart_prob);
    read(w, "switch_prob", g.walk.switch_prob);
    read(w, "target_length", g.walk.target_length);
  }
  read(j, "sequences_per_window", g.sequences_per_window);
  if (j.contains("downsample")) {
    const auto& d = j.at("downsample");
    reject_unknown(d, {"mode", "k"}, "downsample");
    if (d.contains("mode")) g.downsample_mode = parse_downsample_mode(d.at("mode").get<std::string>());
    read(d, "k", g.downsample_k);
  }
  read(j, "similar_value_epsilon", g.similar_value_epsilon);
  read(j, "emit_scaled", c.emit_scaled);
  if (j.contains("evaluation")) {
    const auto& e = j.at("evaluation");
    reject_unknown(e, {"split", "classifier", "embedding", "mixing_k"}, "evaluation");
    if (e.contains("split")) {
      const auto& s = e.at("split");
      reject_unknown(s, {"train", "validation", "test"}, "evaluation.split");
      read(s, "train", c.split.train);
      read(s, "validation", c.split.validation);
      read(s, "test", c.split.test);
    }
    if (e.contains("classifier")) {
      const auto& k = e.at("classifier");
      reject_unknown(k, {"l2", "gradient_tolerance", "max_iterations"}, "evaluation.classifier");
      read(k, "l2", c.classifier.l2);
      read(k, "gradient_tolerance", c.classifier.gradient_tolerance);
      read(k, "max_iterations", c.classifier.max_iterations);
    }
    if (e.contains("embedding")) {
      const auto& m = e.at("embedding");
      reject_unknown(m, {"perplexity", "iterations", "learning_rate", "sample_per_origin"}, "evaluation.embedding");
      read(m, "perplexity", c.embedding.perplexity);
      read(m, "iterations", c.embedding.iterations);
      read(m, "learning_rate", c.embedding.learning_rate);
      read(m, "sample_per_origin", c.embedding_sample_per_origin);
    }
    read(e, "mixing_k", c.mixing_k);
  }
  read(j, "seed", g.master_seed);
  read(j, "workers", c.workers);
  c.embedding.seed = g.master_seed;
  c.validate();
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError("config '" + path + "' is not valid JSON: " + e.what());
  }
  return config_from_json(j);
}

}  // namespace vgsynth
