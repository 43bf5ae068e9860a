#include "strobo/husimi_grid.hpp"

#include <cmath>

#include "strobo/errors.hpp"
#include "strobo/numerics.hpp"

namespace strobo {

namespace {

void check_axis(double lo, double hi, int n, const char* name) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
    raise(ErrorCategory::config, std::string("grid ") + name + ": bounds must be finite with min < max");
  }
  if (n < 2) raise(ErrorCategory::config, std::string("grid ") + name + ": need at least 2 nodes");
}

int nodes_for(double lo, double hi, double step, const char* name) {
  if (!std::isfinite(step) || step <= 0.0) {
    raise(ErrorCategory::config, std::string("grid ") + name + ": step must be > 0");
  }
  check_axis(lo, hi, 2, name);
  const double count = std::floor((hi - lo) / step + 1e-9) + 1.0;
  if (count > 1e7) raise(ErrorCategory::config, std::string("grid ") + name + ": too many nodes");
  return static_cast<int>(count);
}

}  // namespace

HusimiGrid::HusimiGrid(double q_min, double q_max, int nq, double p_min, double p_max, int np)
    : q_min_(q_min), q_max_(q_max), p_min_(p_min), p_max_(p_max), nq_(nq), np_(np) {
  check_axis(q_min, q_max, nq, "q");
  check_axis(p_min, p_max, np, "p");
  values_.assign(static_cast<std::size_t>(nq) * static_cast<std::size_t>(np), 0.0);
}

HusimiGrid HusimiGrid::from_steps(double q_min, double q_max, double q_step, double p_min,
                                  double p_max, double p_step) {
  const int nq = nodes_for(q_min, q_max, q_step, "q");
  const int np = nodes_for(p_min, p_max, p_step, "p");
  return HusimiGrid(q_min, q_min + (nq - 1) * q_step, nq, p_min, p_min + (np - 1) * p_step, np);
}

double HusimiGrid::riemann_integral() const {
  CompensatedSum acc;
  for (double h : values_) acc.add(h);
  return acc.value() * dq() * dp();
}

}  // namespace strobo
