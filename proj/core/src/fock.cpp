#include "strobo/fock.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <string>

#include "strobo/errors.hpp"
#include "strobo/numerics.hpp"
#include "strobo/trajectory.hpp"

namespace strobo {

namespace {

struct Eigensystem {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;
};

using SpectrumKey = std::pair<std::vector<double>, std::vector<double>>;

constexpr std::size_t kCacheLimit = 64;

std::shared_ptr<const Eigensystem> eigensystem(const TridiagonalHamiltonian& h) {
  static std::mutex mutex;
  static std::map<SpectrumKey, std::shared_ptr<const Eigensystem>> cache;

  SpectrumKey key{h.diagonal, h.off_diagonal};
  {
    std::lock_guard<std::mutex> lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }

  const auto n = static_cast<Eigen::Index>(h.diagonal.size());
  const Eigen::VectorXd diag = Eigen::Map<const Eigen::VectorXd>(h.diagonal.data(), n);
  const Eigen::VectorXd sub = Eigen::Map<const Eigen::VectorXd>(h.off_diagonal.data(), n - 1);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    raise(ErrorCategory::numerical, "tridiagonal eigensolver did not converge");
  }
  auto sys = std::make_shared<const Eigensystem>(
      Eigensystem{solver.eigenvalues(), solver.eigenvectors()});

  std::lock_guard<std::mutex> lock(mutex);
  if (cache.size() >= kCacheLimit) cache.clear();
  return cache.emplace(std::move(key), sys).first->second;
}

void check_hamiltonian(const TridiagonalHamiltonian& h) {
  if (h.diagonal.size() < 2 || h.off_diagonal.size() + 1 != h.diagonal.size()) {
    raise(ErrorCategory::invalid_argument, "malformed tridiagonal Hamiltonian");
  }
}

double boundary_occupation(std::span<const Complex> v) {
  double s = 0.0;
  const std::size_t from = v.size() > 10 ? v.size() - 10 : 0;
  for (std::size_t n = from; n < v.size(); ++n) s += std::norm(v[n]);
  return s;
}

std::vector<Complex> coherent_amplitudes(Complex z, int n_max, double& deficit) {
  std::vector<Complex> a(static_cast<std::size_t>(n_max) + 1, Complex{0.0, 0.0});
  const double r = std::abs(z);
  CompensatedSum total;
  if (r == 0.0) {
    a[0] = 1.0;
    total.add(1.0);
  } else {
    const double log_r = std::log(r);
    const double arg = std::arg(z);
    const double base = -0.5 * r * r;
    double log_fact = 0.0;
    for (int n = 0; n <= n_max; ++n) {
      if (n > 0) log_fact += std::log(static_cast<double>(n));
      const double log_mag = base + n * log_r - 0.5 * log_fact;
      const auto k = static_cast<std::size_t>(n);
      a[k] = log_mag < -745.0 ? Complex{0.0, 0.0} : std::polar(std::exp(log_mag), n * arg);
      total.add(std::norm(a[k]));
    }
  }
  deficit = 1.0 - total.value();
  return a;
}

}  // namespace

CoherentFock coherent_in_fock(Complex z, int n_max) {
  if (n_max < 1) raise(ErrorCategory::invalid_argument, "n_max must be >= 1");
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    raise(ErrorCategory::invalid_argument, "coherent label must be finite");
  }
  CoherentFock out;
  out.amplitudes = coherent_amplitudes(z, n_max, out.deficit);
  if (out.deficit > kMaxFockDeficit) {
    raise(ErrorCategory::truncation, "n_max = " + std::to_string(n_max) +
                                         " truncates |z| = " + std::to_string(std::abs(z)) +
                                         " (deficit " + std::to_string(out.deficit) + ")");
  }
  return out;
}

std::pair<TridiagonalHamiltonian, TridiagonalHamiltonian> build_hpm(double v, int n_max) {
  if (n_max < 1) raise(ErrorCategory::invalid_argument, "n_max must be >= 1");
  TridiagonalHamiltonian plus, minus;
  const auto size = static_cast<std::size_t>(n_max) + 1;
  plus.diagonal.resize(size);
  plus.off_diagonal.resize(size - 1);
  for (std::size_t n = 0; n < size; ++n) plus.diagonal[n] = static_cast<double>(n) + 0.5;
  minus = plus;
  for (std::size_t n = 0; n + 1 < size; ++n) {
    const double c = v * std::sqrt(static_cast<double>(n + 1));
    plus.off_diagonal[n] = -c;
    minus.off_diagonal[n] = c;
  }
  return {std::move(plus), std::move(minus)};
}

std::vector<double> spectrum(const TridiagonalHamiltonian& h) {
  check_hamiltonian(h);
  const auto sys = eigensystem(h);
  return {sys->values.data(), sys->values.data() + sys->values.size()};
}

std::vector<Complex> propagate(const TridiagonalHamiltonian& h, double phase,
                               std::span<const Complex> vec) {
  check_hamiltonian(h);
  if (vec.size() != h.diagonal.size()) {
    raise(ErrorCategory::invalid_argument, "vector length does not match the Hamiltonian");
  }
  const auto sys = eigensystem(h);
  const auto n = static_cast<Eigen::Index>(vec.size());
  Eigen::VectorXd re(n), im(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    re[k] = vec[static_cast<std::size_t>(k)].real();
    im[k] = vec[static_cast<std::size_t>(k)].imag();
  }
  Eigen::VectorXd cr = sys->vectors.transpose() * re;
  Eigen::VectorXd ci = sys->vectors.transpose() * im;
  for (Eigen::Index k = 0; k < n; ++k) {
    const Complex c = Complex(cr[k], ci[k]) * std::polar(1.0, -phase * sys->values[k]);
    cr[k] = c.real();
    ci[k] = c.imag();
  }
  const Eigen::VectorXd outr = sys->vectors * cr;
  const Eigen::VectorXd outi = sys->vectors * ci;
  std::vector<Complex> out(vec.size());
  for (Eigen::Index k = 0; k < n; ++k) out[static_cast<std::size_t>(k)] = {outr[k], outi[k]};
  return out;
}

FockCompositeVector FockCompositeVector::product(std::span<const Complex> orbital, int s) {
  if (orbital.size() < 2) raise(ErrorCategory::invalid_argument, "orbital vector too short");
  FockCompositeVector out;
  out.n_max = static_cast<int>(orbital.size()) - 1;
  out.amplitudes.resize(2 * orbital.size());
  const double h = std::sqrt(0.5);
  for (std::size_t n = 0; n < orbital.size(); ++n) {
    out.amplitudes[n] = h * orbital[n];
    out.amplitudes[n + orbital.size()] = static_cast<double>(s) * h * orbital[n];
  }
  return out;
}

double FockCompositeVector::norm_sq() const {
  CompensatedSum acc;
  for (const Complex& c : amplitudes) acc.add(std::norm(c));
  return acc.value();
}

OracleResult oracle_replay(const SystemParams& params, const OutcomeSequence& seq, int n_max) {
  params.validate();
  seq.validate();
  const CoherentFock start = coherent_in_fock(params.z0, n_max);
  const auto [h_plus, h_minus] = build_hpm(params.kick, n_max);
  const double phase = params.rotation_angle();

  OracleResult result;
  result.orbital = start.amplitudes;
  int spin = seq.initial;
  FockCompositeVector state = FockCompositeVector::product(result.orbital, spin);
  const double h = std::sqrt(0.5);
  for (int j = 1; j <= seq.length(); ++j) {
    const auto plus = propagate(h_plus, phase, state.plus_block());
    const auto minus = propagate(h_minus, phase, state.minus_block());
    if (boundary_occupation(plus) > kMaxBoundaryOccupation ||
        boundary_occupation(minus) > kMaxBoundaryOccupation) {
      raise(ErrorCategory::truncation, "Fock basis with n_max = " + std::to_string(n_max) +
                                           " is too small at step " + std::to_string(j));
    }
    const int s = seq.at(j);
    std::vector<Complex> projected(plus.size());
    CompensatedSum norm;
    for (std::size_t n = 0; n < plus.size(); ++n) {
      projected[n] = h * (plus[n] + static_cast<double>(s) * minus[n]);
      norm.add(std::norm(projected[n]));
    }
    const double p = norm.value() / state.norm_sq();
    if (!(p >= kImpossibleOutcomeThreshold)) {
      raise(ErrorCategory::impossible_outcome,
            "oracle: outcome at step " + std::to_string(j) + " has probability " +
                std::to_string(p));
    }
    const double scale = 1.0 / std::sqrt(norm.value());
    for (Complex& c : projected) c *= scale;
    result.conditional.push_back(p);
    result.probability *= p;
    result.orbital = std::move(projected);
    spin = s;
    state = FockCompositeVector::product(result.orbital, spin);
  }
  return result;
}

int recommended_n_max(const SystemParams& params, int n_steps) {
  const double r = std::abs(params.z0) + 2.0 * std::abs(params.kick) * n_steps;
  return static_cast<int>(std::ceil(r * r + 10.0 * r + 20.0));
}

std::vector<Complex> expand_in_fock(const SignedCoherentSum& sum, int n_max) {
  std::vector<Complex> out(static_cast<std::size_t>(n_max) + 1, Complex{0.0, 0.0});
  for (std::size_t i = 0; i < sum.size(); ++i) {
    double deficit = 0.0;
    const auto a = coherent_amplitudes(sum.center(i), n_max, deficit);
    const Complex w = sum.weight(i);
    for (std::size_t n = 0; n < out.size(); ++n) out[n] += w * a[n];
  }
  return out;
}

double fidelity(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() != b.size()) raise(ErrorCategory::invalid_argument, "fidelity of mismatched vectors");
  CompensatedComplexSum overlap;
  CompensatedSum na, nb;
  for (std::size_t n = 0; n < a.size(); ++n) {
    overlap.add(std::conj(a[n]) * b[n]);
    na.add(std::norm(a[n]));
    nb.add(std::norm(b[n]));
  }
  if (na.value() <= 0.0 || nb.value() <= 0.0) {
    raise(ErrorCategory::degenerate_state, "fidelity of a zero vector");
  }
  return std::norm(overlap.value()) / (na.value() * nb.value());
}

}  // namespace strobo
