#include "strobo/coherent_sum.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "strobo/maps.hpp"
#include "strobo/numerics.hpp"
#include "pair_kernel.hpp"

namespace strobo {

namespace {

double wrap_phase(double phi) { return std::remainder(phi, 2.0 * std::numbers::pi); }

// Sum over j >= j0 of scale * Re(conj(w_a) w_j <a|b_j>) for unit weights w = c e^{i phi}.
template <class Centers, class Signs, class Phases>
double pair_row(Complex a, int sa, double pa, const Centers& b, const Signs& sb, const Phases& pb,
                std::size_t j0, double cutoff, double scale) {
  thread_local std::vector<double> expo;
  thread_local std::vector<double> arg;
  thread_local std::vector<double> val;
  const std::size_t n = b.size() > j0 ? b.size() - j0 : 0;
  expo.resize(n);
  arg.resize(n);
  val.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const Complex z = b[j0 + k];
    const double dr = a.real() - z.real();
    const double di = a.imag() - z.imag();
    expo[k] = -0.5 * (dr * dr + di * di);
    arg[k] = pb[j0 + k] - pa + (a.real() * z.imag() - a.imag() * z.real());
  }
  detail::exp_cos(n, expo.data(), arg.data(), val.data());
  CompensatedSum row;
  for (std::size_t k = 0; k < n; ++k) {
    if (expo[k] < cutoff) continue;
    row.add(scale * static_cast<double>(sa * sb[j0 + k]) * val[k]);
  }
  return row.value();
}

}  // namespace

SignedCoherentSum SignedCoherentSum::single(Complex z) {
  SignedCoherentSum s;
  s.push_back(1, 0.0, z);
  return s;
}

void SignedCoherentSum::reserve(std::size_t n) {
  centers_.reserve(n);
  signs_.reserve(n);
  phases_.reserve(n);
}

void SignedCoherentSum::push_back(int sign, double phase, Complex center) {
  centers_.push_back(center);
  signs_.push_back(sign);
  phases_.push_back(phase);
}

Complex SignedCoherentSum::weight(std::size_t i) const {
  return static_cast<double>(signs_[i]) * std::polar(1.0, phases_[i]);
}

SignedCoherentSum SignedCoherentSum::negated() const {
  SignedCoherentSum out = *this;
  for (int& s : out.signs_) s = -s;
  return out;
}

double gram_cutoff(double prune_exponent) noexcept {
  return prune_exponent < 0.0 ? std::max(prune_exponent, kUnderflowExponent)
                              : kUnderflowExponent;
}

double sum_norm_sq(const SignedCoherentSum& sum, double prune_exponent) {
  const double cutoff = gram_cutoff(prune_exponent);
  const auto z = sum.centers();
  const auto c = sum.signs();
  const auto phi = sum.phases();
  const std::size_t n = sum.size();
  const double total = ordered_row_sum(n, [&](std::size_t i) {
    return 1.0 + pair_row(z[i], c[i], phi[i], z, c, phi, i + 1, cutoff, 2.0);
  });
  return total < 0.0 ? 0.0 : total;
}

Complex sum_overlap(const SignedCoherentSum& bra, const SignedCoherentSum& ket,
                    double prune_exponent) {
  const double cutoff = gram_cutoff(prune_exponent);
  const std::size_t nb = bra.size();
  const std::size_t nk = ket.size();
  return ordered_complex_row_sum(nb, [&](std::size_t i) -> Complex {
    const Complex a = bra.center(i);
    const double pa = bra.phase(i);
    const int sa = bra.sign(i);
    CompensatedComplexSum row;
    for (std::size_t j = 0; j < nk; ++j) {
      const Complex e = log_coherent_overlap(a, ket.center(j));
      if (e.real() < cutoff) continue;
      const double arg = ket.phase(j) - pa + e.imag();
      row.add(static_cast<double>(sa * ket.sign(j)) * std::polar(std::exp(e.real()), arg));
    }
    return row.value();
  });
}

double sum_number_expectation(const SignedCoherentSum& sum, double prune_exponent) {
  const double cutoff = gram_cutoff(prune_exponent);
  const std::size_t n = sum.size();
  return ordered_row_sum(n, [&](std::size_t i) {
    const Complex a = sum.center(i);
    CompensatedSum row;
    row.add(std::norm(a) + 0.5);
    for (std::size_t j = i + 1; j < n; ++j) {
      const Complex b = sum.center(j);
      const Complex e = log_coherent_overlap(a, b);
      if (e.real() < cutoff) continue;
      const double arg = sum.phase(j) - sum.phase(i) + e.imag();
      const Complex w = std::polar(std::exp(e.real()), arg);
      const double term = (w * (std::conj(a) * b + 0.5)).real();
      row.add(2.0 * static_cast<double>(sum.sign(i) * sum.sign(j)) * term);
    }
    return row.value();
  });
}

Complex sum_amplitude_at(const SignedCoherentSum& sum, Complex z) {
  CompensatedComplexSum acc;
  for (std::size_t i = 0; i < sum.size(); ++i) {
    const Complex e = log_coherent_overlap(z, sum.center(i));
    if (e.real() < kUnderflowExponent) continue;
    acc.add(static_cast<double>(sum.sign(i)) *
            std::polar(std::exp(e.real()), e.imag() + sum.phase(i)));
  }
  return acc.value();
}

SignedCoherentSum apply_kick(const SignedCoherentSum& sum, int sign, const SystemParams& params) {
  SignedCoherentSum out;
  out.reserve(sum.size());
  for (std::size_t i = 0; i < sum.size(); ++i) {
    const Complex z = sum.center(i);
    out.push_back(sum.sign(i), wrap_phase(sum.phase(i) + kick_phase(z, sign, params)),
                  map_apply(z, sign, params));
  }
  return out;
}

SignedCoherentSum kick_and_project(const SignedCoherentSum& sum, int sigma,
                                   const SystemParams& params) {
  SignedCoherentSum out;
  out.reserve(2 * sum.size());
  for (std::size_t i = 0; i < sum.size(); ++i) {
    const Complex z = sum.center(i);
    out.push_back(sum.sign(i), wrap_phase(sum.phase(i) + kick_phase(z, 1, params)),
                  map_apply(z, 1, params));
  }
  for (std::size_t i = 0; i < sum.size(); ++i) {
    const Complex z = sum.center(i);
    out.push_back(sum.sign(i) * sigma, wrap_phase(sum.phase(i) + kick_phase(z, -1, params)),
                  map_apply(z, -1, params));
  }
  return out;
}

double kick_cross_term(const SignedCoherentSum& sum, const SystemParams& params) {
  const SignedCoherentSum plus = apply_kick(sum, 1, params);
  const SignedCoherentSum minus = apply_kick(sum, -1, params);
  const double cutoff = gram_cutoff(params.prune_exponent);
  const auto zp = plus.centers();
  const auto zm = minus.centers();
  const auto c = sum.signs();
  const auto pp = plus.phases();
  const auto pm = minus.phases();
  const std::size_t n = sum.size();
  return ordered_row_sum(n, [&](std::size_t i) {
    return pair_row(zp[i], c[i], pp[i], zm, c, pm, 0, cutoff, 1.0);
  });
}

}  // namespace strobo
