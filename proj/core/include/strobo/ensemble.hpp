#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "strobo/husimi_grid.hpp"
#include "strobo/maps.hpp"
#include "strobo/params.hpp"

namespace strobo {

/// Equal-weight mixture of the 2^N coherent centers Z_I, canonical order.
struct EnsembleState {
  int n_steps = 0;
  std::vector<Complex> centers;

  double weight() const { return std::ldexp(1.0, -n_steps); }
};

/// Ensemble moments. Variances are in the dimensionless units where a
/// coherent state has var_x = var_p = 1/4.
struct MomentReport {
  int n_steps = 0;
  double mean_energy = 0.0;
  double mean_q = 0.0;
  double mean_p = 0.0;
  double var_x = 0.25;
  double var_p = 0.25;
};

/// Throws Error(capacity) for N > params.max_steps.
EnsembleState enumerate_ensemble(const SystemParams& params, int n_steps);

MomentReport closed_form_moments(const SystemParams& params, int n_steps);

/// Moments from the center list alone.
MomentReport enumerated_moments(const EnsembleState& ens);

enum class PowerMode {
  /// 2 pi sin^2(pi R) / R, in units of hbar / T_L^2. Needs T_L.
  averaged,
  /// Energy gain per period over the period, (2/pi) v^2 sin^2(pi R) / R in
  /// units of hbar * omega0^2.
  continuous,
};

/// Throws Error(config) in averaged mode without a Larmor period.
double mean_power(const SystemParams& params, PowerMode mode = PowerMode::averaged);

/// Root of tan(pi R) = 2 pi R in (1/4, 1/2).
double resonance_ratio();

/// h(z) = 2^{-N} sum_I exp(-|z - Z_I|^2) at every node.
HusimiGrid ensemble_husimi(const EnsembleState& ens, HusimiGrid grid);

/// (q', p') of branch `idx` built term by term from the kick history:
/// q' = Re(z0 e^{-iN wT}) + v sum_j i_j [cos((N-j) wT) - cos((N-j+1) wT)],
/// p' = Im(z0 e^{-iN wT}) + v sum_j i_j [sin((N-j+1) wT) - sin((N-j) wT)].
std::pair<double, double> husimi_centers(const SystemParams& params, const BranchIndex& idx);

inline constexpr double kLatticeTolerance = 1e-9;

struct CrystalReport {
  std::size_t distinct_centers = 0;
  /// e^{+iN wT} Z_I - z0 per center, canonical order.
  std::vector<Complex> residuals;
  /// Distance of each residual to v(1+i)(Z + iZ); set only when R = 1/4 mod 1.
  std::optional<std::vector<double>> lattice_distances;
  std::optional<double> max_lattice_residual;
};

CrystalReport crystal_lattice_check(const EnsembleState& ens, const SystemParams& params);

/// Number of points left after merging any two closer than `tol`.
std::size_t count_distinct(std::span<const Complex> points, double tol = kLatticeTolerance);

/// max over p of the distance from p e^{2 pi i / fold} to the nearest point of
/// the set; zero when the set is closed under that rotation.
double rotation_closure_residual(std::span<const Complex> points, int fold);

/// The per-step translations v i (e^{i j wT} - e^{i (j-1) wT}), j = 1..N, i = ±1.
std::vector<Complex> increment_set(const SystemParams& params, int n_steps);

}  // namespace strobo
