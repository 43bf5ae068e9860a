#pragma once

#include <cstdint>
#include <random>

namespace strobo {

/// Seeded uniform source on [0, 1). Stream k of a batch is seeded with
/// master ^ k, so a batch is reproducible under any parallel schedule.
class UniformSource {
 public:
  explicit UniformSource(std::uint64_t seed) : engine_(seed) {}

  static UniformSource for_stream(std::uint64_t master_seed, std::uint64_t k) {
    return UniformSource(master_seed ^ k);
  }

  /// 53 random mantissa bits; identical on every platform.
  double next() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace strobo
