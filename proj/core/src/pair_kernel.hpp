#pragma once

#include <cstddef>

namespace strobo::detail {

// out[j] = exp(expo[j]) * cos(arg[j]); built with vector math, so a few ulp off libm.
void exp_cos(std::size_t n, const double* expo, const double* arg, double* out);

}  // namespace strobo::detail
