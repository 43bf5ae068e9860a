#include "pair_kernel.hpp"

#include <cmath>

namespace strobo::detail {

void exp_cos(std::size_t n, const double* expo, const double* arg, double* out) {
#pragma omp simd
  for (std::size_t j = 0; j < n; ++j) out[j] = std::exp(expo[j]) * std::cos(arg[j]);
}

}  // namespace strobo::detail
