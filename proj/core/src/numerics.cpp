#include "strobo/numerics.hpp"

#include <vector>

namespace strobo {

double ordered_row_sum(std::size_t rows, const std::function<double(std::size_t)>& row) {
  std::vector<double> partial(rows);
  const auto n = static_cast<std::ptrdiff_t>(rows);
#pragma omp parallel for schedule(dynamic, 16)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    partial[static_cast<std::size_t>(i)] = row(static_cast<std::size_t>(i));
  }
  CompensatedSum total;
  for (double x : partial) total.add(x);
  return total.value();
}

std::complex<double> ordered_complex_row_sum(
    std::size_t rows, const std::function<std::complex<double>(std::size_t)>& row) {
  std::vector<std::complex<double>> partial(rows);
  const auto n = static_cast<std::ptrdiff_t>(rows);
#pragma omp parallel for schedule(dynamic, 16)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    partial[static_cast<std::size_t>(i)] = row(static_cast<std::size_t>(i));
  }
  CompensatedComplexSum total;
  for (auto z : partial) total.add(z);
  return total.value();
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
  const auto n = static_cast<std::ptrdiff_t>(count);
#pragma omp parallel for schedule(dynamic, 8)
  for (std::ptrdiff_t i = 0; i < n; ++i) body(static_cast<std::size_t>(i));
}

}  // namespace strobo
