#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "strobo/params.hpp"

namespace strobo::cli {

enum class Backend { automatic, branch, grid };

/// Every knob of one CLI invocation. Unset optionals fall back to
/// per-subcommand defaults.
struct RunConfig {
  std::string subcommand;

  double ratio = 0.106;
  double kick = 2.0;
  Complex z0{0.70710678118654752, 0.70710678118654752};
  std::optional<double> larmor_period;
  std::optional<int> steps;
  std::optional<std::uint64_t> seed;
  std::optional<double> delta_ratio;
  std::optional<std::string> outcomes;
  int s0 = 1;
  std::optional<std::string> q_grid;  ///< "min:max:step"
  std::optional<std::string> p_grid;
  std::optional<int> n_max;
  std::optional<std::string> output;
  bool hold_v = false;
  double prune = 0.0;
  int max_steps = kDefaultMaxSteps;
  int energy_cap = 14;
  bool energy = true;
  Backend backend = Backend::automatic;
  std::string husimi_mode = "ensemble";
  std::optional<int> fold;

  SystemParams params() const;
  /// Throws Error(config) naming the offending field.
  void validate() const;
};

/// Loads keys from a JSON object into `cfg`, leaving absent keys untouched.
void apply_json(RunConfig& cfg, const std::string& json_text);

Complex parse_complex(const std::string& text);

struct GridAxis {
  double min = 0.0;
  double max = 0.0;
  double step = 0.0;
};

GridAxis parse_axis(const std::string& text, const char* field);

}  // namespace strobo::cli
