#include "strobo/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "strobo/errors.hpp"
#include "strobo/numerics.hpp"

namespace strobo {

namespace {

constexpr double kPi = std::numbers::pi;

double sin_sq(double x) {
  const double s = std::sin(x);
  return s * s;
}

bool less_by_real(Complex a, Complex b) {
  return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
}

// Nearest distance from q to a set sorted by real part.
double nearest_distance(const std::vector<Complex>& sorted, Complex q) {
  double best = std::numeric_limits<double>::infinity();
  const auto mid = std::lower_bound(sorted.begin(), sorted.end(), q, less_by_real);
  for (auto it = mid; it != sorted.end() && it->real() - q.real() < best; ++it) {
    best = std::min(best, std::abs(*it - q));
  }
  for (auto it = mid; it != sorted.begin();) {
    --it;
    if (q.real() - it->real() >= best) break;
    best = std::min(best, std::abs(*it - q));
  }
  return best;
}

bool is_quarter_ratio(double r) {
  const double frac = r - std::floor(r);
  return std::abs(frac - 0.25) < 1e-12;
}

}  // namespace

EnsembleState enumerate_ensemble(const SystemParams& params, int n_steps) {
  params.validate();
  if (n_steps < 0) raise(ErrorCategory::config, "number of steps must be >= 0");
  if (n_steps > params.max_steps) {
    raise(ErrorCategory::capacity, "ensemble of " + std::to_string(n_steps) +
                                       " steps exceeds max_steps = " +
                                       std::to_string(params.max_steps));
  }
  EnsembleState ens;
  ens.n_steps = n_steps;
  ens.centers.resize(std::size_t{1} << n_steps);
  parallel_for(ens.centers.size(), [&](std::size_t k) {
    ens.centers[k] = compose_closed_form(params, BranchIndex(k, n_steps));
  });
  return ens;
}

MomentReport closed_form_moments(const SystemParams& params, int n_steps) {
  if (n_steps < 0) raise(ErrorCategory::config, "number of steps must be >= 0");
  const double r = params.ratio;
  const double kick_sq = 4.0 * params.kick * params.kick * sin_sq(kPi * r);
  MomentReport m;
  m.n_steps = n_steps;
  m.mean_energy = std::norm(params.z0) + 0.5 + kick_sq * n_steps;
  const Complex mean = params.z0 * std::polar(1.0, -params.rotation_angle() * n_steps);
  m.mean_q = mean.real();
  m.mean_p = mean.imag();
  CompensatedSum sx, sp;
  for (int l = 1; l <= 2 * n_steps - 1; l += 2) {
    const double s = std::sin(l * kPi * r);
    const double c = std::cos(l * kPi * r);
    sx.add(s * s);
    sp.add(c * c);
  }
  m.var_x = kick_sq * sx.value() + 0.25;
  m.var_p = kick_sq * sp.value() + 0.25;
  return m;
}

MomentReport enumerated_moments(const EnsembleState& ens) {
  CompensatedSum e, q, p, qq, pp;
  for (const Complex& z : ens.centers) {
    e.add(std::norm(z));
    q.add(z.real());
    p.add(z.imag());
    qq.add(z.real() * z.real());
    pp.add(z.imag() * z.imag());
  }
  const double w = 1.0 / static_cast<double>(ens.centers.size());
  MomentReport m;
  m.n_steps = ens.n_steps;
  m.mean_energy = w * e.value() + 0.5;
  m.mean_q = w * q.value();
  m.mean_p = w * p.value();
  m.var_x = w * qq.value() - m.mean_q * m.mean_q + 0.25;
  m.var_p = w * pp.value() - m.mean_p * m.mean_p + 0.25;
  return m;
}

double mean_power(const SystemParams& params, PowerMode mode) {
  const double r = params.ratio;
  if (!(r > 0.0)) raise(ErrorCategory::config, "R must be positive");
  if (mode == PowerMode::continuous) {
    return 2.0 / kPi * params.kick * params.kick * sin_sq(kPi * r) / r;
  }
  if (!params.larmor_period) {
    raise(ErrorCategory::config, "mean power needs larmor_period");
  }
  return 2.0 * kPi * sin_sq(kPi * r) / r;
}

double resonance_ratio() {
  auto g = [](double r) { return std::sin(kPi * r) - 2.0 * kPi * r * std::cos(kPi * r); };
  double lo = 0.25;
  double hi = 0.4999;
  // g(lo) < 0 < g(hi).
  for (int i = 0; i < 200 && hi - lo > 0.0; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    const double gm = g(mid);
    if (gm == 0.0) return mid;
    (gm < 0.0 ? lo : hi) = mid;
  }
  return std::abs(g(lo)) <= std::abs(g(hi)) ? lo : hi;
}

HusimiGrid ensemble_husimi(const EnsembleState& ens, HusimiGrid grid) {
  const int np = grid.np();
  const double w = ens.weight();
  auto values = grid.values();
  parallel_for(grid.size(), [&](std::size_t k) {
    const Complex z = grid.node(static_cast<int>(k / static_cast<std::size_t>(np)),
                                static_cast<int>(k % static_cast<std::size_t>(np)));
    CompensatedSum acc;
    for (const Complex& c : ens.centers) acc.add(std::exp(-std::norm(z - c)));
    values[k] = w * acc.value();
  });
  return grid;
}

std::pair<double, double> husimi_centers(const SystemParams& params, const BranchIndex& idx) {
  const int n = idx.length();
  const double wt = params.rotation_angle();
  const Complex rotated = params.z0 * std::polar(1.0, -wt * n);
  double q = rotated.real();
  double p = rotated.imag();
  for (int j = 1; j <= n; ++j) {
    const double i = idx.kick(j) * params.kick;
    q += i * (std::cos((n - j) * wt) - std::cos((n - j + 1) * wt));
    p += i * (std::sin((n - j + 1) * wt) - std::sin((n - j) * wt));
  }
  return {q, p};
}

std::size_t count_distinct(std::span<const Complex> points, double tol) {
  std::vector<Complex> sorted(points.begin(), points.end());
  std::sort(sorted.begin(), sorted.end(), less_by_real);
  std::vector<Complex> kept;
  for (const Complex& z : sorted) {
    bool seen = false;
    for (auto it = kept.rbegin(); it != kept.rend() && z.real() - it->real() <= tol; ++it) {
      if (std::abs(z - *it) <= tol) {
        seen = true;
        break;
      }
    }
    if (!seen) kept.push_back(z);
  }
  return kept.size();
}

double rotation_closure_residual(std::span<const Complex> points, int fold) {
  if (fold < 1) raise(ErrorCategory::invalid_argument, "fold must be >= 1");
  if (points.empty()) return 0.0;
  std::vector<Complex> sorted(points.begin(), points.end());
  std::sort(sorted.begin(), sorted.end(), less_by_real);
  const Complex turn = std::polar(1.0, 2.0 * kPi / fold);
  double worst = 0.0;
  for (const Complex& z : sorted) worst = std::max(worst, nearest_distance(sorted, z * turn));
  return worst;
}

std::vector<Complex> increment_set(const SystemParams& params, int n_steps) {
  const double wt = params.rotation_angle();
  std::vector<Complex> out;
  for (int j = 1; j <= n_steps; ++j) {
    const Complex step = params.kick * (std::polar(1.0, j * wt) - std::polar(1.0, (j - 1) * wt));
    out.push_back(step);
    out.push_back(-step);
  }
  return out;
}

CrystalReport crystal_lattice_check(const EnsembleState& ens, const SystemParams& params) {
  CrystalReport report;
  report.distinct_centers = count_distinct(ens.centers);
  const Complex back = std::polar(1.0, params.rotation_angle() * ens.n_steps);
  report.residuals.reserve(ens.centers.size());
  for (const Complex& z : ens.centers) report.residuals.push_back(z * back - params.z0);

  if (is_quarter_ratio(params.ratio)) {
    const Complex cell = params.kick * Complex(1.0, 1.0);
    std::vector<double> dist;
    dist.reserve(report.residuals.size());
    double worst = 0.0;
    for (const Complex& r : report.residuals) {
      double d = std::abs(r);
      if (std::abs(cell) > 0.0) {
        const Complex k = r / cell;
        const Complex nearest(std::round(k.real()), std::round(k.imag()));
        d = std::abs(r - nearest * cell);
      }
      dist.push_back(d);
      worst = std::max(worst, d);
    }
    report.lattice_distances = std::move(dist);
    report.max_lattice_residual = worst;
  }
  return report;
}

}  // namespace strobo
