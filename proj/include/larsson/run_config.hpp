#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "larsson/params.hpp"

namespace larsson {

// Shared configuration for all CLI commands. Flags override file values;
// every run echoes the resolved configuration next to its outputs.
struct RunConfig {
  std::optional<double> a;
  std::optional<double> b;
  std::optional<double> epsilon;    // default: default_epsilon(params)
  double grid_step = 0.0;           // 0 -> t / 10
  std::uint64_t seed = 1;
  int trials = 1000;
  int depth = 8;
  std::optional<double> K;          // default: default_K(T)
  double delta = 0.02;
  int N = 16;
  int nspan = 4;                    // main-lemma generations N .. N+nspan-1
  double x = 0.0;
  double q = 0.05;                  // bound evaluator input
  double rho = 1.02;                // bound evaluator input
  int kmax = 64;
  int workers = 0;                  // 0 -> all cores
  std::string mode = "shared";      // or "iid"
  std::string out_dir = "out";

  Params params() const;  // throws ParseError when a or b is missing
};

RunConfig config_from_json(const std::string& text);  // throws ParseError
std::string config_to_json(const RunConfig& cfg);

}  // namespace larsson
