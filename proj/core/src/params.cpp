#include "strobo/params.hpp"

#include <cmath>
#include <string>

#include "strobo/errors.hpp"

namespace strobo {

void SystemParams::validate() const {
  if (!std::isfinite(ratio) || ratio <= 0.0) {
    raise(ErrorCategory::config, "R must be finite and > 0, got " + std::to_string(ratio));
  }
  if (!std::isfinite(kick)) raise(ErrorCategory::config, "v must be finite");
  if (!std::isfinite(z0.real()) || !std::isfinite(z0.imag())) {
    raise(ErrorCategory::config, "z0 must be finite");
  }
  if (larmor_period && (!std::isfinite(*larmor_period) || *larmor_period <= 0.0)) {
    raise(ErrorCategory::config, "larmor_period must be finite and > 0");
  }
  if (max_steps < 1 || max_steps > 62) {
    raise(ErrorCategory::config, "max_steps must lie in [1, 62]");
  }
  if (!std::isfinite(prune_exponent) || prune_exponent > 0.0) {
    raise(ErrorCategory::config, "prune threshold must be 0 (off) or negative");
  }
}

}  // namespace strobo
