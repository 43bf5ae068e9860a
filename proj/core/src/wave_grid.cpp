#include "strobo/wave_grid.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>
#include <string>

#include "strobo/echo.hpp"
#include "strobo/errors.hpp"
#include "strobo/numerics.hpp"

namespace strobo {

namespace {

constexpr double kPi = std::numbers::pi;
// Gaussian tails beyond this many widths are below 1e-31 in amplitude.
constexpr double kTailWidths = 12.0;
constexpr std::size_t kMaxGridPoints = std::size_t{1} << 24;

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

std::size_t next_pow2(double x) {
  std::size_t n = 256;
  while (static_cast<double>(n) < x) n <<= 1;
  return n;
}

}  // namespace

GridLayout GridLayout::with_points(std::size_t points) {
  if (points < 16 || (points & (points - 1)) != 0) {
    raise(ErrorCategory::config, "grid size must be a power of two >= 16");
  }
  return {points, std::sqrt(2.0 * kPi / static_cast<double>(points))};
}

GridLayout GridLayout::for_steps(const SystemParams& params, int steps) {
  return for_steps(std::span<const SystemParams>(&params, 1), steps);
}

GridLayout GridLayout::for_steps(std::span<const SystemParams> params, int steps) {
  double half = 0.0;
  for (const SystemParams& p : params) {
    const double reach = std::abs(p.z0) +
                         2.0 * std::abs(p.kick) * steps * std::abs(std::sin(kPi * p.ratio));
    const double radius = std::numbers::sqrt2 * (reach + std::abs(p.kick));
    half = std::max(half, 1.5 * radius + kTailWidths);
  }
  const double needed = 2.0 * half * half / kPi;
  if (needed > static_cast<double>(kMaxGridPoints)) {
    raise(ErrorCategory::capacity, "wavefunction grid for " + std::to_string(steps) +
                                       " steps would exceed " + std::to_string(kMaxGridPoints) +
                                       " points");
  }
  return with_points(next_pow2(needed));
}

namespace detail {

class GridKernel {
 public:
  GridKernel(const SystemParams& params, GridLayout layout) : m_(layout.points), dx_(layout.spacing) {
    const double dp = 2.0 * kPi / (static_cast<double>(m_) * dx_);
    const double inv_m = 1.0 / static_cast<double>(m_);
    x_.resize(m_);
    p_.resize(m_);
    for (std::size_t j = 0; j < m_; ++j) {
      x_[j] = (static_cast<double>(j) - 0.5 * static_cast<double>(m_)) * dx_;
      const double k = j < m_ / 2 ? static_cast<double>(j) : static_cast<double>(j) - static_cast<double>(m_);
      p_[j] = k * dp;
    }

    // D(±v) translates x by ±sqrt(2) v.
    const double a = std::numbers::sqrt2 * params.kick;
    for (int idx = 0; idx < 2; ++idx) {
      const double shift = idx == 0 ? a : -a;
      into_frame_[idx].resize(m_);
      out_of_frame_[idx].resize(m_);
      for (std::size_t j = 0; j < m_; ++j) {
        into_frame_[idx][j] = std::polar(inv_m, p_[j] * shift);
        out_of_frame_[idx][j] = std::polar(inv_m, -p_[j] * shift);
      }
    }

    // e^{-i phi (x^2 + p^2)/2} = X(t) P(s) X(t), t = tan(phi/2), s = sin(phi),
    // up to a sign shared by both branches.
    const double theta = std::remainder(params.rotation_angle(), 2.0 * kPi);
    substeps_ = static_cast<int>(std::ceil(std::abs(theta) / (0.25 * kPi) - 1e-12));
    if (substeps_ > 0) {
      const double phi = theta / substeps_;
      const double t = std::tan(0.5 * phi);
      const double s = std::sin(phi);
      x_chirp_.resize(m_);
      p_chirp_.resize(m_);
      for (std::size_t j = 0; j < m_; ++j) {
        x_chirp_[j] = std::polar(1.0, -0.5 * t * x_[j] * x_[j]);
        p_chirp_[j] = std::polar(inv_m, -0.5 * s * p_[j] * p_[j]);
      }
    }

    std::lock_guard<std::mutex> lock(planner_mutex());
    auto* buf = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * m_));
    const int n = static_cast<int>(m_);
    forward_ = fftw_plan_dft_1d(n, buf, buf, FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
    backward_ = fftw_plan_dft_1d(n, buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(buf);
    if (!forward_ || !backward_) raise(ErrorCategory::numerical, "FFTW planning failed");
  }

  ~GridKernel() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(forward_);
    fftw_destroy_plan(backward_);
  }

  GridKernel(const GridKernel&) = delete;
  GridKernel& operator=(const GridKernel&) = delete;

  std::size_t size() const noexcept { return m_; }
  double dx() const noexcept { return dx_; }
  const std::vector<double>& x() const noexcept { return x_; }
  const std::vector<double>& p() const noexcept { return p_; }

  void forward(std::vector<Complex>& v) const {
    fftw_execute_dft(forward_, reinterpret_cast<fftw_complex*>(v.data()),
                     reinterpret_cast<fftw_complex*>(v.data()));
  }
  void backward(std::vector<Complex>& v) const {
    fftw_execute_dft(backward_, reinterpret_cast<fftw_complex*>(v.data()),
                     reinterpret_cast<fftw_complex*>(v.data()));
  }

  /// psi <- U_sign psi.
  void propagate(int sign, std::vector<Complex>& psi) const {
    const int idx = sign > 0 ? 0 : 1;
    in_momentum(psi, into_frame_[idx]);
    for (int k = 0; k < substeps_; ++k) {
      multiply(psi, x_chirp_);
      in_momentum(psi, p_chirp_);
      multiply(psi, x_chirp_);
    }
    in_momentum(psi, out_of_frame_[idx]);
  }

 private:
  static void multiply(std::vector<Complex>& v, const std::vector<Complex>& f) {
    for (std::size_t j = 0; j < v.size(); ++j) v[j] *= f[j];
  }
  void in_momentum(std::vector<Complex>& v, const std::vector<Complex>& f) const {
    forward(v);
    multiply(v, f);
    backward(v);
  }

  std::size_t m_;
  double dx_;
  std::vector<double> x_;
  std::vector<double> p_;
  std::vector<Complex> into_frame_[2];
  std::vector<Complex> out_of_frame_[2];
  std::vector<Complex> x_chirp_;
  std::vector<Complex> p_chirp_;
  int substeps_ = 0;
  fftw_plan forward_ = nullptr;
  fftw_plan backward_ = nullptr;
};

}  // namespace detail

namespace {

// pi^{-1/4} e^{-i q p} e^{i sqrt2 p x} e^{-(x - sqrt2 q)^2 / 2}, i.e. D(z)|0>.
Complex coherent_wavefunction(Complex z, double x) {
  const double x0 = std::numbers::sqrt2 * z.real();
  const double p0 = std::numbers::sqrt2 * z.imag();
  const double d = x - x0;
  return std::polar(std::pow(kPi, -0.25) * std::exp(-0.5 * d * d),
                    p0 * x - z.real() * z.imag());
}

double norm_sq(const std::vector<Complex>& v, double dx) {
  CompensatedSum acc;
  for (const Complex& c : v) acc.add(std::norm(c));
  return acc.value() * dx;
}

}  // namespace

WavefunctionTrajectory::WavefunctionTrajectory(const SystemParams& params, int s0,
                                               GridLayout layout)
    : params_(params), layout_(layout), spin_(s0) {
  params.validate();
  if (params.phases == PhaseConvention::dropped) {
    raise(ErrorCategory::config, "the grid backend always evolves exact phases");
  }
  if (s0 != 1 && s0 != -1) raise(ErrorCategory::invalid_argument, "s0 must be +1 or -1");
  kernel_ = std::make_shared<const detail::GridKernel>(params, layout);
  record_.initial = s0;
  psi_.resize(layout.points);
  const auto& x = kernel_->x();
  for (std::size_t j = 0; j < psi_.size(); ++j) psi_[j] = coherent_wavefunction(params.z0, x[j]);
  const double n = norm_sq(psi_, kernel_->dx());
  if (std::abs(n - 1.0) > 1e-9) {
    raise(ErrorCategory::truncation, "grid too small for the initial coherent state");
  }
}

double WavefunctionTrajectory::probability() const { return std::exp(log_prob_); }

void WavefunctionTrajectory::evolve_components() const {
  if (evolved_) return;
  plus_ = psi_;
  minus_ = psi_;
  kernel_->propagate(1, plus_);
  kernel_->propagate(-1, minus_);
  evolved_ = true;
}

OutcomeProbabilities WavefunctionTrajectory::outcome_probabilities() const {
  evolve_components();
  // p(s) = ||(U_+ + s s_N U_-) psi||^2 / 4.
  CompensatedSum cross;
  for (std::size_t j = 0; j < psi_.size(); ++j) cross.add((std::conj(plus_[j]) * minus_[j]).real());
  const double dx = kernel_->dx();
  const double base = norm_sq(plus_, dx) + norm_sq(minus_, dx);
  const double c = 2.0 * spin_ * cross.value() * dx;
  OutcomeProbabilities probs;
  probs.plus = std::max(0.0, (base + c) / 4.0);
  probs.minus = std::max(0.0, (base - c) / 4.0);
  probs.norm_plus = probs.plus;
  probs.norm_minus = probs.minus;
  return probs;
}

void WavefunctionTrajectory::advance(int outcome) {
  if (outcome != 1 && outcome != -1) raise(ErrorCategory::invalid_argument, "outcome must be +1 or -1");
  const OutcomeProbabilities probs = outcome_probabilities();
  const double p = probs.of(outcome);
  if (!(p >= kImpossibleOutcomeThreshold)) {
    raise(ErrorCategory::impossible_outcome,
          "outcome at step " + std::to_string(step_ + 1) + " has conditional probability " +
              std::to_string(p));
  }
  const double sigma = static_cast<double>(outcome * spin_);
  const double scale = 0.5 / std::sqrt(p);
  for (std::size_t j = 0; j < psi_.size(); ++j) psi_[j] = scale * (plus_[j] + sigma * minus_[j]);
  evolved_ = false;
  ++step_;
  spin_ = outcome;
  log_prob_ += std::log(p);
  record_.outcomes.push_back(outcome);
}

double WavefunctionTrajectory::energy() const {
  const auto& x = kernel_->x();
  const auto& p = kernel_->p();
  CompensatedSum xs, xn;
  for (std::size_t j = 0; j < psi_.size(); ++j) {
    const double w = std::norm(psi_[j]);
    xs.add(w * x[j] * x[j]);
    xn.add(w);
  }
  std::vector<Complex> spectrum = psi_;
  kernel_->forward(spectrum);
  CompensatedSum ps, pn;
  for (std::size_t j = 0; j < spectrum.size(); ++j) {
    const double w = std::norm(spectrum[j]);
    ps.add(w * p[j] * p[j]);
    pn.add(w);
  }
  return 0.5 * (xs.value() / xn.value() + ps.value() / pn.value());
}

Complex WavefunctionTrajectory::amplitude_at(Complex z) const {
  const auto& x = kernel_->x();
  const double dx = kernel_->dx();
  const double x0 = std::numbers::sqrt2 * z.real();
  const double first = x.front();
  const auto lo = static_cast<std::ptrdiff_t>(std::floor((x0 - kTailWidths - first) / dx));
  const auto hi = static_cast<std::ptrdiff_t>(std::ceil((x0 + kTailWidths - first) / dx));
  const auto n = static_cast<std::ptrdiff_t>(x.size());
  CompensatedComplexSum acc;
  for (std::ptrdiff_t j = std::max<std::ptrdiff_t>(lo, 0); j <= std::min(hi, n - 1); ++j) {
    const auto k = static_cast<std::size_t>(j);
    acc.add(std::conj(coherent_wavefunction(z, x[k])) * psi_[k]);
  }
  return acc.value() * dx;
}

HusimiGrid WavefunctionTrajectory::husimi(HusimiGrid grid) const {
  const int np = grid.np();
  auto values = grid.values();
  parallel_for(grid.size(), [&](std::size_t k) {
    const int iq = static_cast<int>(k / static_cast<std::size_t>(np));
    const int ip = static_cast<int>(k % static_cast<std::size_t>(np));
    values[k] = std::min(1.0, std::norm(amplitude_at(grid.node(iq, ip))));
  });
  return grid;
}

Complex WavefunctionTrajectory::overlap(const WavefunctionTrajectory& other) const {
  if (!(layout_ == other.layout_)) {
    raise(ErrorCategory::invalid_argument, "overlap needs both states on the same grid");
  }
  CompensatedComplexSum acc;
  for (std::size_t j = 0; j < psi_.size(); ++j) acc.add(std::conj(psi_[j]) * other.psi_[j]);
  return acc.value() * kernel_->dx();
}

namespace {

StepRecord grid_record(const WavefunctionTrajectory& t, double cond, bool with_energy) {
  StepRecord r;
  r.step = t.step();
  r.outcome = t.spin();
  r.cond_prob = cond;
  r.cum_prob = t.probability();
  r.energy = with_energy ? t.energy() : std::numeric_limits<double>::quiet_NaN();
  return r;
}

}  // namespace

std::vector<StepRecord> grid_sample_records(const SystemParams& params, int s0, int steps,
                                            UniformSource& rng, bool with_energy,
                                            OutcomeSequence* record) {
  if (steps < 0) raise(ErrorCategory::config, "steps must be >= 0");
  WavefunctionTrajectory t(params, s0, GridLayout::for_steps(params, steps));
  std::vector<StepRecord> rows{grid_record(t, 1.0, with_energy)};
  for (int n = 0; n < steps; ++n) {
    const OutcomeProbabilities probs = t.outcome_probabilities();
    const int s = rng.next() < probs.plus ? 1 : -1;
    t.advance(s);
    rows.push_back(grid_record(t, probs.of(s), with_energy));
  }
  if (record) *record = t.record();
  return rows;
}

std::vector<StepRecord> grid_replay_records(const SystemParams& params, const OutcomeSequence& seq,
                                            bool with_energy) {
  seq.validate();
  WavefunctionTrajectory t(params, seq.initial, GridLayout::for_steps(params, seq.length()));
  std::vector<StepRecord> rows{grid_record(t, 1.0, with_energy)};
  for (int s : seq.outcomes) {
    const double p = t.outcome_probabilities().of(s);
    t.advance(s);
    rows.push_back(grid_record(t, p, with_energy));
  }
  return rows;
}

std::vector<double> grid_loschmidt_echo(const SystemParams& params, double delta_R,
                                        const OutcomeSequence& seq, bool hold_kick) {
  seq.validate();
  const SystemParams both[2] = {params, perturbed_params(params, delta_R, hold_kick)};
  const GridLayout layout = GridLayout::for_steps(both, seq.length());
  WavefunctionTrajectory a(both[0], seq.initial, layout);
  WavefunctionTrajectory b(both[1], seq.initial, layout);
  std::vector<double> echo;
  for (int s : seq.outcomes) {
    a.advance(s);
    b.advance(s);
    echo.push_back(std::clamp(std::norm(a.overlap(b)), 0.0, 1.0));
  }
  return echo;
}

}  // namespace strobo
