#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>

namespace nowcast {

/// Seedable draw stream. The engine is std::mt19937_64, whose output sequence
/// is fixed by the standard; the distributions are implemented here because
/// the standard library ones are not reproducible across implementations.
class RngStream {
public:
  RngStream(std::uint64_t seed, std::string_view label);

  std::uint64_t seed() const { return seed_; }
  const std::string& label() const { return label_; }

  /// Independent stream keyed by (seed, label + "/" + child).
  RngStream substream(std::string_view child) const;

  std::uint64_t next_u64() { return engine_(); }
  double uniform();                     // [0, 1), 53-bit resolution
  double normal();                      // standard normal, Box-Muller
  std::size_t uniform_index(std::size_t n);  // [0, n), unbiased

private:
  std::uint64_t seed_;
  std::string label_;
  std::mt19937_64 engine_;
  std::optional<double> spare_normal_;
};

}  // namespace nowcast
