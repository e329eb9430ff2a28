#include "larsson/run_config.hpp"

#include <nlohmann/json.hpp>

#include "larsson/errors.hpp"

namespace larsson {

Params RunConfig::params() const {
  if (!a) throw ParseError("config is missing 'a'");
  if (!b) throw ParseError("config is missing 'b'");
  return validate(*a, *b);
}

RunConfig config_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("config parse error: ") + e.what());
  }
  RunConfig cfg;
  try {
    if (j.contains("a")) cfg.a = j.at("a").get<double>();
    if (j.contains("b")) cfg.b = j.at("b").get<double>();
    if (j.contains("epsilon")) cfg.epsilon = j.at("epsilon").get<double>();
    if (j.contains("grid_step")) cfg.grid_step = j.at("grid_step").get<double>();
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("trials")) cfg.trials = j.at("trials").get<int>();
    if (j.contains("depth")) cfg.depth = j.at("depth").get<int>();
    if (j.contains("K")) cfg.K = j.at("K").get<double>();
    if (j.contains("delta")) cfg.delta = j.at("delta").get<double>();
    if (j.contains("N")) cfg.N = j.at("N").get<int>();
    if (j.contains("nspan")) cfg.nspan = j.at("nspan").get<int>();
    if (j.contains("x")) cfg.x = j.at("x").get<double>();
    if (j.contains("q")) cfg.q = j.at("q").get<double>();
    if (j.contains("rho")) cfg.rho = j.at("rho").get<double>();
    if (j.contains("kmax")) cfg.kmax = j.at("kmax").get<int>();
    if (j.contains("workers")) cfg.workers = j.at("workers").get<int>();
    if (j.contains("mode")) cfg.mode = j.at("mode").get<std::string>();
    if (j.contains("out")) cfg.out_dir = j.at("out").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("config field error: ") + e.what());
  }
  if (cfg.mode != "shared" && cfg.mode != "iid")
    throw ParseError("mode must be 'shared' or 'iid'");
  return cfg;
}

std::string config_to_json(const RunConfig& cfg) {
  nlohmann::json j;
  if (cfg.a) j["a"] = *cfg.a;
  if (cfg.b) j["b"] = *cfg.b;
  if (cfg.epsilon) j["epsilon"] = *cfg.epsilon;
  j["grid_step"] = cfg.grid_step;
  j["seed"] = cfg.seed;
  j["trials"] = cfg.trials;
  j["depth"] = cfg.depth;
  if (cfg.K) j["K"] = *cfg.K;
  j["delta"] = cfg.delta;
  j["N"] = cfg.N;
  j["nspan"] = cfg.nspan;
  j["x"] = cfg.x;
  j["q"] = cfg.q;
  j["rho"] = cfg.rho;
  j["kmax"] = cfg.kmax;
  j["workers"] = cfg.workers;
  j["mode"] = cfg.mode;
  j["out"] = cfg.out_dir;
  return j.dump(2);
}

}  // namespace larsson
