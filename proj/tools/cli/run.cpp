#include "cli/run.hpp"

#include <CLI/CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>

#include "strobo/csv.hpp"
#include "strobo/echo.hpp"
#include "strobo/ensemble.hpp"
#include "strobo/errors.hpp"
#include "strobo/fock.hpp"
#include "strobo/maps.hpp"
#include "strobo/numerics.hpp"
#include "strobo/trajectory.hpp"
#include "strobo/wave_grid.hpp"

#ifndef STROBO_VERSION
#define STROBO_VERSION "0.0.0"
#endif

namespace strobo::cli {

namespace {

constexpr int kBranchBackendLimit = 14;

using Command = std::function<void(const RunConfig&, std::ostream&, std::ostream&)>;

std::string fmt(double x) { return format_number(x); }
std::string fmt(int x) { return format_number(x); }

std::string output_path(const RunConfig& cfg, const char* fallback) {
  return cfg.output.value_or(fallback);
}

void emit(const CsvTable& table, const std::string& path, std::ostream& out) {
  write_file_atomically(path, table.str());
  out << "wrote " << path << " (" << table.rows.size() << " rows)\n";
}

std::uint64_t seed_of(const RunConfig& cfg, std::ostream& err) {
  if (!cfg.seed) {
    err << "warning: no --seed given; using the deterministic default seed 0\n";
    return 0;
  }
  return *cfg.seed;
}

bool use_grid(const RunConfig& cfg, int steps) {
  switch (cfg.backend) {
    case Backend::branch: return false;
    case Backend::grid: return true;
    case Backend::automatic: break;
  }
  return steps > kBranchBackendLimit;
}

std::string record_string(const OutcomeSequence& seq) {
  return std::string("s0=") + (seq.initial > 0 ? "+1" : "-1") + " outcomes=" + seq.record();
}

CsvTable trajectory_table(const std::vector<StepRecord>& rows) {
  CsvTable t;
  t.header = {"step", "outcome", "cond_prob", "cum_prob", "energy"};
  for (const StepRecord& r : rows) {
    t.add_row({fmt(r.step), fmt(r.outcome), fmt(r.cond_prob), fmt(r.cum_prob), fmt(r.energy)});
  }
  return t;
}

// Samples a record of `steps` outcomes, or parses the one given.
OutcomeSequence obtain_record(const RunConfig& cfg, const SystemParams& params, int steps,
                              std::ostream& err) {
  if (cfg.outcomes) return OutcomeSequence::parse(*cfg.outcomes, cfg.s0);
  UniformSource rng(seed_of(cfg, err));
  OutcomeSequence seq;
  if (use_grid(cfg, steps)) {
    grid_sample_records(params, cfg.s0, steps, rng, false, &seq);
  } else {
    TrajectoryState last;
    sample_records(params, cfg.s0, steps, rng, false, kDefaultEnergyStepCap, &last);
    seq = last.record;
  }
  return seq;
}

void cmd_trajectory(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const SystemParams params = cfg.params();
  const int steps = cfg.steps.value_or(12);
  UniformSource rng(seed_of(cfg, err));
  std::vector<StepRecord> rows;
  OutcomeSequence seq;
  if (use_grid(cfg, steps)) {
    rows = grid_sample_records(params, cfg.s0, steps, rng, cfg.energy, &seq);
  } else {
    TrajectoryState last;
    rows = sample_records(params, cfg.s0, steps, rng, cfg.energy, cfg.energy_cap, &last);
    seq = last.record;
  }
  out << "record: " << record_string(seq) << "\n";
  out << "probability: " << fmt(rows.back().cum_prob) << "\n";
  emit(trajectory_table(rows), output_path(cfg, "trajectory.csv"), out);
}

void cmd_replay(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  if (!cfg.outcomes) raise(ErrorCategory::config, "outcomes: required for replay");
  const SystemParams params = cfg.params();
  const OutcomeSequence seq = OutcomeSequence::parse(*cfg.outcomes, cfg.s0);
  const auto rows = use_grid(cfg, seq.length())
                        ? grid_replay_records(params, seq, cfg.energy)
                        : replay_records(params, seq, cfg.energy, cfg.energy_cap);
  out << "probability: " << fmt(rows.back().cum_prob) << "\n";
  emit(trajectory_table(rows), output_path(cfg, "trajectory.csv"), out);
}

void cmd_ensemble(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  const SystemParams params = cfg.params();
  const int steps = cfg.steps.value_or(12);
  if (steps > params.max_steps) {
    raise(ErrorCategory::capacity, "steps = " + std::to_string(steps) +
                                       " exceeds max_steps = " + std::to_string(params.max_steps));
  }
  CsvTable t;
  t.header = {"N",     "E_closed",    "E_enum",      "q_mean",      "p_mean",
              "varx_closed", "varx_enum", "varp_closed", "varp_enum"};
  double worst = 0.0;
  auto rel = [](double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(a)); };
  for (int n = 0; n <= steps; ++n) {
    const MomentReport c = closed_form_moments(params, n);
    const MomentReport e = enumerated_moments(enumerate_ensemble(params, n));
    worst = std::max({worst, rel(c.mean_energy, e.mean_energy), rel(c.var_x, e.var_x),
                      rel(c.var_p, e.var_p)});
    t.add_row({fmt(n), fmt(c.mean_energy), fmt(e.mean_energy), fmt(c.mean_q), fmt(c.mean_p),
               fmt(c.var_x), fmt(e.var_x), fmt(c.var_p), fmt(e.var_p)});
  }
  const double slope = 4.0 * params.kick * params.kick *
                       std::pow(std::sin(std::numbers::pi * params.ratio), 2);
  out << "energy slope per step: " << fmt(slope) << "\n";
  out << "max relative closed/enumerated difference: " << fmt(worst) << "\n";
  if (params.larmor_period) {
    out << "mean power: " << fmt(mean_power(params, PowerMode::averaged)) << " hbar/T_L^2\n";
  }
  out << "continuous power: " << fmt(mean_power(params, PowerMode::continuous))
      << " hbar*omega0^2\n";
  emit(t, output_path(cfg, "moments.csv"), out);
}

HusimiGrid husimi_grid_for(const RunConfig& cfg, const SystemParams& params, int steps) {
  const double reach = std::abs(params.z0) + 2.0 * std::abs(params.kick) * steps *
                                                 std::abs(std::sin(std::numbers::pi * params.ratio));
  const GridAxis fallback{-reach - 5.0, reach + 5.0, 0.1};
  const GridAxis q = cfg.q_grid ? parse_axis(*cfg.q_grid, "q_grid") : fallback;
  const GridAxis p = cfg.p_grid ? parse_axis(*cfg.p_grid, "p_grid") : fallback;
  return HusimiGrid::from_steps(q.min, q.max, q.step, p.min, p.max, p.step);
}

CsvTable husimi_table(const HusimiGrid& g) {
  CsvTable t;
  t.header = {"q", "p", "h"};
  for (int iq = 0; iq < g.nq(); ++iq) {
    for (int ip = 0; ip < g.np(); ++ip) t.add_row({fmt(g.q(iq)), fmt(g.p(ip)), fmt(g.value(iq, ip))});
  }
  return t;
}

void cmd_husimi(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const SystemParams params = cfg.params();
  HusimiGrid field(0.0, 1.0, 2, 0.0, 1.0, 2);
  if (cfg.husimi_mode == "ensemble") {
    const int steps = cfg.steps.value_or(6);
    field = ensemble_husimi(enumerate_ensemble(params, steps), husimi_grid_for(cfg, params, steps));
  } else {
    const int steps = cfg.outcomes ? static_cast<int>(cfg.outcomes->size()) : cfg.steps.value_or(6);
    const OutcomeSequence seq = obtain_record(cfg, params, steps, err);
    out << "record: " << record_string(seq) << "\n";
    const HusimiGrid grid = husimi_grid_for(cfg, params, steps);
    if (use_grid(cfg, steps)) {
      WavefunctionTrajectory t(params, seq.initial, GridLayout::for_steps(params, steps));
      for (int s : seq.outcomes) t.advance(s);
      field = t.husimi(grid);
    } else {
      field = trajectory_husimi(replay(params, seq), grid);
    }
  }
  out << "integral: " << fmt(field.riemann_integral()) << "\n";
  emit(husimi_table(field), output_path(cfg, "husimi.csv"), out);
}

void cmd_echo(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (!cfg.delta_ratio) raise(ErrorCategory::config, "delta_R: required for echo");
  const SystemParams params = cfg.params();
  const int steps = cfg.outcomes ? static_cast<int>(cfg.outcomes->size()) : cfg.steps.value_or(25);
  const OutcomeSequence seq = obtain_record(cfg, params, steps, err);
  out << "record: " << record_string(seq) << "\n";
  const std::vector<double> echo =
      use_grid(cfg, seq.length()) ? grid_loschmidt_echo(params, *cfg.delta_ratio, seq, cfg.hold_v)
                                  : loschmidt_echo(params, *cfg.delta_ratio, seq, cfg.hold_v);
  CsvTable t;
  t.header = {"step", "L"};
  t.add_row({"0", fmt(1.0)});
  double lowest = 1.0;
  for (std::size_t n = 0; n < echo.size(); ++n) {
    t.add_row({fmt(static_cast<int>(n + 1)), fmt(echo[n])});
    lowest = std::min(lowest, echo[n]);
  }
  out << "min L: " << fmt(lowest) << "\n";
  emit(t, output_path(cfg, "echo.csv"), out);
}

void cmd_resonance(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  const double r = resonance_ratio();
  SystemParams at = cfg.params();
  at.ratio = r;
  const double s = std::sin(std::numbers::pi * r);
  out << "R*=" << fmt(r) << "\n";
  out << "residual=" << fmt(std::tan(std::numbers::pi * r) - 2.0 * std::numbers::pi * r) << "\n";
  out << "P_avg(R*)=" << fmt(2.0 * std::numbers::pi * s * s / r) << " hbar/T_L^2\n";
  out << "P_cont(R*)=" << fmt(mean_power(at, PowerMode::continuous)) << " hbar*omega0^2 at v="
      << fmt(at.kick) << "\n";
}

void cmd_crystal(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  const SystemParams params = cfg.params();
  const int steps = cfg.steps.value_or(8);
  const EnsembleState ens = enumerate_ensemble(params, steps);
  const CrystalReport report = crystal_lattice_check(ens, params);
  CsvTable t;
  t.header = {"center_re", "center_im", "lattice_residual"};
  for (std::size_t i = 0; i < ens.centers.size(); ++i) {
    const double d = report.lattice_distances ? (*report.lattice_distances)[i] : std::nan("");
    t.add_row({fmt(ens.centers[i].real()), fmt(ens.centers[i].imag()), fmt(d)});
  }
  out << "distinct centers: " << report.distinct_centers << "\n";
  if (report.max_lattice_residual) {
    out << "max lattice residual: " << fmt(*report.max_lattice_residual) << "\n";
  } else {
    out << "max lattice residual: n/a (square lattice only for R = 1/4)\n";
  }
  if (cfg.fold) {
    out << "rotation closure (fold " << *cfg.fold << "): residuals "
        << fmt(rotation_closure_residual(report.residuals, *cfg.fold)) << ", increments "
        << fmt(rotation_closure_residual(increment_set(params, steps), *cfg.fold)) << "\n";
  }
  emit(t, output_path(cfg, "crystal.csv"), out);
}

struct ValidateTolerances {
  double probability = 1e-8;
  double state = 1e-6;
  double map = 1e-8;
  double energy = 1e-6;
};

void cmd_validate(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  const SystemParams params = cfg.params();
  const int steps = cfg.steps.value_or(3);
  const int n_max = cfg.n_max.value_or(recommended_n_max(params, std::max(steps, 1)));
  const ValidateTolerances tol;
  CsvTable t;
  t.header = {"case", "quantity", "engine", "oracle", "abs_diff"};
  int failures = 0;
  auto check = [&](const std::string& name, const char* quantity, double engine, double oracle,
                   double limit) {
    const double diff = std::abs(engine - oracle);
    if (!(diff <= limit)) ++failures;
    t.add_row({name, quantity, fmt(engine), fmt(oracle), fmt(diff)});
  };

  const auto [h_plus, h_minus] = build_hpm(params.kick, n_max);
  const auto start = coherent_in_fock(params.z0, n_max);
  for (int sign : {1, -1}) {
    const auto evolved = propagate(sign > 0 ? h_plus : h_minus, params.rotation_angle(),
                                   start.amplitudes);
    const auto predicted = coherent_in_fock(map_apply(params.z0, sign, params), n_max);
    check(sign > 0 ? "U+|z0>" : "U-|z0>", "fidelity", 1.0,
          fidelity(evolved, predicted.amplitudes), tol.map);
  }

  for_each_trajectory(params, cfg.s0, steps, [&](const TrajectoryState& st) {
    const std::string name = st.record.record();
    const OracleResult o = oracle_replay(params, st.record, n_max);
    const auto engine_vec = expand_in_fock(st.branches, n_max);
    check(name, "probability", st.probability(), o.probability, tol.probability);
    check(name, "fidelity", 1.0, fidelity(engine_vec, o.orbital), tol.state);
    CompensatedSum e;
    for (std::size_t n = 0; n < o.orbital.size(); ++n) {
      e.add((static_cast<double>(n) + 0.5) * std::norm(o.orbital[n]));
    }
    const double engine_e = trajectory_energy(st, std::max(cfg.energy_cap, steps));
    check(name, "energy", engine_e, e.value(), tol.energy * std::max(1.0, engine_e));
  });

  out << "n_max: " << n_max << "\n";
  out << "checks: " << t.rows.size() << ", failures: " << failures << "\n";
  emit(t, output_path(cfg, "validate.csv"), out);
  if (failures > 0) {
    raise(ErrorCategory::numerical, std::to_string(failures) + " oracle checks out of tolerance");
  }
}

const std::map<std::string, Command>& commands() {
  static const std::map<std::string, Command> table{
      {"trajectory", cmd_trajectory}, {"replay", cmd_replay},       {"ensemble", cmd_ensemble},
      {"husimi", cmd_husimi},         {"echo", cmd_echo},           {"resonance", cmd_resonance},
      {"crystal", cmd_crystal},       {"validate", cmd_validate},
  };
  return table;
}

int report(const Error& e, std::ostream& err) {
  err << "error[" << category_name(e.category()) << "]: " << e.what() << "\n";
  return exit_code(e.category());
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    cfg.validate();
    const auto it = commands().find(cfg.subcommand);
    if (it == commands().end()) {
      raise(ErrorCategory::config, "subcommand: unknown '" + cfg.subcommand + "'");
    }
    it->second(cfg, out, err);
    return 0;
  } catch (const Error& e) {
    return report(e, err);
  } catch (const std::bad_alloc&) {
    return report(Error(ErrorCategory::capacity, "out of memory"), err);
  }
}

int run_command_line(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Stroboscopically measured spin-oscillator simulator", "strobo"};
  app.set_version_flag("--version", std::string("strobo ") + STROBO_VERSION);
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::optional<double> ratio, kick, larmor, delta, prune;
  std::optional<int> steps, n_max, max_steps, energy_cap, fold;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> z0, outcomes, s0, q_grid, p_grid, output, backend, mode;
  bool hold_v = false;
  bool no_energy = false;

  app.add_option("--config", config_path, "JSON file with snake_case keys; flags override it");
  app.add_option("--R", ratio, "frequency ratio omega0/omega");
  app.add_option("--v", kick, "kick strength alpha/(hbar omega0)");
  app.add_option("--z0", z0, "initial coherent label 're,im'");
  app.add_option("--larmor-period,--T-L", larmor, "Larmor period (power unit only)");
  app.add_option("--steps,-N", steps, "number of measurement periods");
  app.add_option("--seed", seed, "unsigned 64-bit seed");
  app.add_option("--delta-R", delta, "echo perturbation of R");
  app.add_option("--outcomes", outcomes, "forced record, e.g. +-+-");
  app.add_option("--s0", s0, "initial sigma_x eigenvalue (+1 or -1)");
  app.add_option("--q-grid", q_grid, "min:max:step in q'");
  app.add_option("--p-grid", p_grid, "min:max:step in p'");
  app.add_option("--n-max", n_max, "Fock truncation for validate");
  app.add_option("--output,-o", output, "output CSV path");
  app.add_flag("--hold-v", hold_v, "keep v fixed under the echo perturbation");
  app.add_option("--prune", prune, "Gram-sum overlap exponent cutoff (negative; 0 = off)");
  app.add_option("--max-steps", max_steps, "enumeration step cap");
  app.add_option("--energy-cap", energy_cap, "largest N for the O(4^N) energy column");
  app.add_flag("--no-energy", no_energy, "omit the energy column (written as nan)");
  app.add_option("--backend", backend, "auto, branch or grid");
  app.add_option("--mode", mode, "husimi: ensemble or trajectory");
  app.add_option("--fold", fold, "crystal: rotation order to test for closure");

  for (const auto& [name, _] : commands()) app.add_subcommand(name);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << "strobo " << STROBO_VERSION << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error[config]: " << e.what() << "\n";
    return 2;
  }

  RunConfig cfg;
  try {
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) raise(ErrorCategory::config, "config: cannot read " + config_path);
      std::stringstream ss;
      ss << in.rdbuf();
      apply_json(cfg, ss.str());
    }
    cfg.subcommand = app.get_subcommands().front()->get_name();
    if (ratio) cfg.ratio = *ratio;
    if (kick) cfg.kick = *kick;
    if (z0) cfg.z0 = parse_complex(*z0);
    if (larmor) cfg.larmor_period = larmor;
    if (steps) cfg.steps = steps;
    if (seed) cfg.seed = seed;
    if (delta) cfg.delta_ratio = delta;
    if (outcomes) cfg.outcomes = outcomes;
    if (s0) {
      if (*s0 == "+1" || *s0 == "1" || *s0 == "+") cfg.s0 = 1;
      else if (*s0 == "-1" || *s0 == "-") cfg.s0 = -1;
      else raise(ErrorCategory::config, "s0: expected +1 or -1");
    }
    if (q_grid) cfg.q_grid = q_grid;
    if (p_grid) cfg.p_grid = p_grid;
    if (n_max) cfg.n_max = n_max;
    if (output) cfg.output = output;
    if (hold_v) cfg.hold_v = true;
    if (prune) cfg.prune = *prune;
    if (max_steps) cfg.max_steps = *max_steps;
    if (energy_cap) cfg.energy_cap = *energy_cap;
    if (no_energy) cfg.energy = false;
    if (backend) {
      RunConfig probe;
      apply_json(probe, "{\"backend\": \"" + *backend + "\"}");
      cfg.backend = probe.backend;
    }
    if (mode) cfg.husimi_mode = *mode;
    if (fold) cfg.fold = fold;
  } catch (const Error& e) {
    return report(e, err);
  }
  return run(cfg, out, err);
}

}  // namespace strobo::cli
