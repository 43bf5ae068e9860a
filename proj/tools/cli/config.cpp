#include "cli/config.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <sstream>
#include <vector>

#include "strobo/csv.hpp"
#include "strobo/errors.hpp"
#include "strobo/outcomes.hpp"

namespace strobo::cli {

namespace {

[[noreturn]] void bad(const std::string& field, const std::string& reason) {
  raise(ErrorCategory::config, field + ": " + reason);
}

void require_finite(double x, const char* field) {
  if (!std::isfinite(x)) bad(field, "must be finite");
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(item);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

double number_field(const std::string& text, const char* field) {
  try {
    return parse_number(text);
  } catch (const Error&) {
    bad(field, "not a number: '" + text + "'");
  }
}

Backend parse_backend(const std::string& s) {
  if (s == "auto") return Backend::automatic;
  if (s == "branch") return Backend::branch;
  if (s == "grid") return Backend::grid;
  bad("backend", "expected auto, branch or grid");
}

}  // namespace

Complex parse_complex(const std::string& text) {
  const auto parts = split(text, ',');
  if (parts.size() != 2) bad("z0", "expected 're,im'");
  return {number_field(parts[0], "z0"), number_field(parts[1], "z0")};
}

GridAxis parse_axis(const std::string& text, const char* field) {
  const auto parts = split(text, ':');
  if (parts.size() != 3) bad(field, "expected 'min:max:step'");
  GridAxis a{number_field(parts[0], field), number_field(parts[1], field),
             number_field(parts[2], field)};
  if (!std::isfinite(a.min) || !std::isfinite(a.max) || !std::isfinite(a.step)) {
    bad(field, "must be finite");
  }
  if (!(a.step > 0.0)) bad(field, "step must be > 0");
  if (!(a.min < a.max)) bad(field, "min must be < max");
  return a;
}

SystemParams RunConfig::params() const {
  SystemParams p;
  p.ratio = ratio;
  p.kick = kick;
  p.z0 = z0;
  p.larmor_period = larmor_period;
  p.max_steps = max_steps;
  p.prune_exponent = prune;
  return p;
}

void RunConfig::validate() const {
  require_finite(ratio, "R");
  if (!(ratio > 0.0)) bad("R", "must be > 0");
  require_finite(kick, "v");
  require_finite(z0.real(), "z0");
  require_finite(z0.imag(), "z0");
  if (larmor_period && !(std::isfinite(*larmor_period) && *larmor_period > 0.0)) {
    bad("larmor_period", "must be a positive number");
  }
  if (steps && *steps < 0) bad("steps", "must be >= 0");
  if (delta_ratio) require_finite(*delta_ratio, "delta_R");
  if (s0 != 1 && s0 != -1) bad("s0", "must be +1 or -1");
  if (outcomes) {
    OutcomeSequence::parse(*outcomes, s0);
    if (steps && *steps != static_cast<int>(outcomes->size())) {
      bad("outcomes", "length " + std::to_string(outcomes->size()) + " differs from steps = " +
                          std::to_string(*steps));
    }
  }
  if (q_grid) parse_axis(*q_grid, "q_grid");
  if (p_grid) parse_axis(*p_grid, "p_grid");
  if (n_max && *n_max < 1) bad("n_max", "must be >= 1");
  require_finite(prune, "prune");
  if (prune > 0.0) bad("prune", "must be 0 (off) or negative");
  if (max_steps < 1 || max_steps > 62) bad("max_steps", "must lie in [1, 62]");
  if (energy_cap < 0) bad("energy_cap", "must be >= 0");
  if (husimi_mode != "ensemble" && husimi_mode != "trajectory") {
    bad("mode", "expected ensemble or trajectory");
  }
  if (fold && *fold < 1) bad("fold", "must be >= 1");
}

void apply_json(RunConfig& cfg, const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    bad("config", std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) bad("config", "top level must be an object");

  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& key = it.key();
    const auto& val = it.value();
    try {
      if (key == "subcommand") cfg.subcommand = val.get<std::string>();
      else if (key == "r") cfg.ratio = val.get<double>();
      else if (key == "v") cfg.kick = val.get<double>();
      else if (key == "z0") {
        if (val.is_string()) {
          cfg.z0 = parse_complex(val.get<std::string>());
        } else {
          const auto pair = val.get<std::vector<double>>();
          if (pair.size() != 2) bad("z0", "expected [re, im]");
          cfg.z0 = {pair[0], pair[1]};
        }
      }
      else if (key == "larmor_period") cfg.larmor_period = val.get<double>();
      else if (key == "steps") cfg.steps = val.get<int>();
      else if (key == "seed") cfg.seed = val.get<std::uint64_t>();
      else if (key == "delta_r") cfg.delta_ratio = val.get<double>();
      else if (key == "outcomes") cfg.outcomes = val.get<std::string>();
      else if (key == "s0") cfg.s0 = val.get<int>();
      else if (key == "q_grid") cfg.q_grid = val.get<std::string>();
      else if (key == "p_grid") cfg.p_grid = val.get<std::string>();
      else if (key == "n_max") cfg.n_max = val.get<int>();
      else if (key == "output") cfg.output = val.get<std::string>();
      else if (key == "hold_v") cfg.hold_v = val.get<bool>();
      else if (key == "prune") cfg.prune = val.get<double>();
      else if (key == "max_steps") cfg.max_steps = val.get<int>();
      else if (key == "energy_cap") cfg.energy_cap = val.get<int>();
      else if (key == "energy") cfg.energy = val.get<bool>();
      else if (key == "backend") cfg.backend = parse_backend(val.get<std::string>());
      else if (key == "mode") cfg.husimi_mode = val.get<std::string>();
      else if (key == "fold") cfg.fold = val.get<int>();
      else bad(key, "unknown configuration key");
    } catch (const nlohmann::json::exception& e) {
      bad(key, std::string("wrong type: ") + e.what());
    }
  }
}

}  // namespace strobo::cli
