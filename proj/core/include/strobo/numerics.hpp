#pragma once

#include <complex>
#include <cstddef>
#include <functional>

namespace strobo {

/// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

class CompensatedComplexSum {
 public:
  void add(std::complex<double> z) noexcept {
    re_.add(z.real());
    im_.add(z.imag());
  }
  std::complex<double> value() const noexcept { return {re_.value(), im_.value()}; }

 private:
  CompensatedSum re_;
  CompensatedSum im_;
};

/// Evaluates row(i) for i in [0, rows) in parallel and reduces the row
/// results sequentially in index order, so the result is bit-identical for
/// any thread count.
double ordered_row_sum(std::size_t rows, const std::function<double(std::size_t)>& row);

std::complex<double> ordered_complex_row_sum(
    std::size_t rows, const std::function<std::complex<double>(std::size_t)>& row);

/// Parallel loop over [0, count); body must only touch index-local data.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace strobo
