#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "strobo/params.hpp"

namespace strobo {

/// Rectangular grid of nodes z = q' + i p' in dimensionless phase space,
/// with a field stored row-major by q (value(iq, ip) at iq * np + ip).
class HusimiGrid {
 public:
  HusimiGrid(double q_min, double q_max, int nq, double p_min, double p_max, int np);

  /// Nodes at q_min, q_min + step, ... not exceeding q_max (likewise p).
  static HusimiGrid from_steps(double q_min, double q_max, double q_step, double p_min,
                               double p_max, double p_step);

  int nq() const noexcept { return nq_; }
  int np() const noexcept { return np_; }
  std::size_t size() const noexcept { return values_.size(); }

  double q(int iq) const noexcept { return q_min_ + iq * dq(); }
  double p(int ip) const noexcept { return p_min_ + ip * dp(); }
  Complex node(int iq, int ip) const noexcept { return {q(iq), p(ip)}; }
  double dq() const noexcept { return (q_max_ - q_min_) / (nq_ - 1); }
  double dp() const noexcept { return (p_max_ - p_min_) / (np_ - 1); }

  double& value(int iq, int ip) { return values_[index(iq, ip)]; }
  double value(int iq, int ip) const { return values_[index(iq, ip)]; }
  std::span<const double> values() const noexcept { return values_; }
  std::span<double> values() noexcept { return values_; }

  /// sum of values times dq * dp.
  double riemann_integral() const;

 private:
  std::size_t index(int iq, int ip) const noexcept {
    return static_cast<std::size_t>(iq) * static_cast<std::size_t>(np_) +
           static_cast<std::size_t>(ip);
  }

  double q_min_, q_max_, p_min_, p_max_;
  int nq_, np_;
  std::vector<double> values_;
};

}  // namespace strobo
