#pragma once

// Reference computations that share no code path with the library.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "strobo/params.hpp"

namespace oracle {

using strobo::Complex;
using strobo::SystemParams;

inline constexpr double kPi = std::numbers::pi;

/// i_1..i_N from a canonical code.
inline std::vector<int> kicks_of(std::uint64_t code, int n) {
  std::vector<int> k(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) k[static_cast<std::size_t>(j)] = ((code >> j) & 1U) ? -1 : 1;
  return k;
}

/// Applies the kicks one period at a time: z -> (z - s v) e^{-2 pi i R} + s v.
inline Complex iterate(const SystemParams& p, const std::vector<int>& kicks) {
  const Complex turn(std::cos(2.0 * kPi * p.ratio), -std::sin(2.0 * kPi * p.ratio));
  Complex z = p.z0;
  for (int s : kicks) {
    const double shift = s * p.kick;
    z = (z - shift) * turn + shift;
  }
  return z;
}

struct Moments {
  double energy = 0.0, q = 0.0, p = 0.0, var_x = 0.0, var_p = 0.0;
};

/// Ensemble moments by brute iteration over every kick sequence.
inline Moments brute_moments(const SystemParams& p, int n) {
  const std::uint64_t count = std::uint64_t{1} << n;
  long double e = 0, q = 0, pp = 0, qq = 0, p2 = 0;
  for (std::uint64_t c = 0; c < count; ++c) {
    const Complex z = iterate(p, kicks_of(c, n));
    e += std::norm(z);
    q += z.real();
    pp += z.imag();
    qq += z.real() * z.real();
    p2 += z.imag() * z.imag();
  }
  const long double w = 1.0L / static_cast<long double>(count);
  Moments m;
  m.energy = static_cast<double>(w * e + 0.5L);
  m.q = static_cast<double>(w * q);
  m.p = static_cast<double>(w * pp);
  m.var_x = static_cast<double>(w * qq - (w * q) * (w * q) + 0.25L);
  m.var_p = static_cast<double>(w * p2 - (w * pp) * (w * pp) + 0.25L);
  return m;
}

/// e^{-|z|^2/2} z^n / sqrt(n!) by direct multiplication (no logs).
inline std::vector<Complex> fock_coherent(Complex z, int n_max) {
  std::vector<Complex> a(static_cast<std::size_t>(n_max) + 1);
  a[0] = std::exp(-0.5 * std::norm(z));
  for (int n = 1; n <= n_max; ++n) {
    a[static_cast<std::size_t>(n)] = a[static_cast<std::size_t>(n - 1)] * z / std::sqrt(double(n));
  }
  return a;
}

inline Complex fock_inner(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  Complex s{0.0, 0.0};
  for (std::size_t n = 0; n < a.size(); ++n) s += std::conj(a[n]) * b[n];
  return s;
}

/// sum_k a_k |z_k> in the number basis.
inline std::vector<Complex> fock_superposition(const std::vector<Complex>& amps,
                                               const std::vector<Complex>& centers, int n_max) {
  std::vector<Complex> out(static_cast<std::size_t>(n_max) + 1, Complex{0.0, 0.0});
  for (std::size_t k = 0; k < centers.size(); ++k) {
    const auto c = fock_coherent(centers[k], n_max);
    for (std::size_t n = 0; n < out.size(); ++n) out[n] += amps[k] * c[n];
  }
  return out;
}

/// Random parameter draw in the ranges the tests sweep.
struct Draws {
  explicit Draws(std::uint64_t seed) : gen(seed) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen); }
  SystemParams params(double r_lo = 0.01, double r_hi = 0.99, double v_max = 2.0,
                      double z_max = 2.0) {
    SystemParams p;
    p.ratio = uniform(r_lo, r_hi);
    p.kick = uniform(-v_max, v_max);
    const double r = uniform(0.0, z_max);
    const double a = uniform(0.0, 2.0 * kPi);
    p.z0 = std::polar(r, a);
    return p;
  }
  std::mt19937_64 gen;
};

}  // namespace oracle
