#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "rrbf/numerics.hpp"

namespace rrbf {

/// Identifies one reproducible random substream: a root seed plus a path of
/// labels such as {"point", 3, "frame", 17}.
struct StreamSeed {
  using Label = std::variant<std::string, std::uint64_t>;

  std::uint64_t root = 0;
  std::vector<Label> path;

  StreamSeed child(Label label) const;
};

/// Single-owner generator handle. Variates are produced from raw 64-bit engine
/// output with fixed transforms, so sequences do not depend on the standard
/// library's distribution implementations.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t state_seed) : engine_(state_seed) {}

  std::uint64_t next_u64() { return engine_(); }
  /// Uniform on [0, 1) with 53 bits of resolution.
  double uniform();
  /// Uniform integer on [0, n).
  std::uint64_t uniform_index(std::uint64_t n);
  std::uint8_t bit() { return static_cast<std::uint8_t>(engine_() >> 63); }
  /// Standard real normal N(0, 1).
  double gaussian();
  /// Circularly symmetric CN(0, 1): unit total variance, 1/2 per component.
  cplx complex_gaussian();

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// Mixes (root, path) into an engine seed and returns a fresh handle.
RandomStream derive_stream(const StreamSeed& seed);

}  // namespace rrbf
