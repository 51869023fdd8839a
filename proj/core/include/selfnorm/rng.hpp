#pragma once

#include <cstdint>
#include <span>

namespace selfnorm {

/// Inverse standard-normal CDF (Wichura's AS 241, double precision branch).
/// Domain (0, 1); accurate to about 1e-15 relative.
double inverse_normal_cdf(double p);

/// SplitMix64: a counter-based 64-bit generator. The state advances by the
/// constant 0x9E3779B97F4A7C15 and each output is a finalizing hash
/// (xor-shift-multiply with 0xBF58476D1CE4E5B9 and 0x94D049BB133111EB) of the
/// counter, so the stream for a given seed is identical in any language that
/// implements the same three constants. Gaussians come from the inverse CDF
/// applied to 53-bit uniforms.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  std::uint64_t next_u64() noexcept {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// 53-bit uniform on [0, 1).
  double next_uniform() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// 53-bit uniform on the open interval (0, 1): midpoints of the dyadic grid.
  double next_open_uniform() noexcept {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  double next_gaussian() noexcept { return inverse_normal_cdf(next_open_uniform()); }

  /// |C| for C standard Cauchy: |tan(pi (u - 1/2))| on an open uniform u.
  double next_cauchy_abs() noexcept;

  /// Rademacher sign, +1 or -1.
  double next_sign() noexcept { return (next_u64() >> 63) ? 1.0 : -1.0; }

  /// Uniform direction on the unit sphere in R^d (d independent Gaussians,
  /// normalized; redrawn in the measure-zero all-zero case).
  void next_unit_vector(std::span<double> out) noexcept;

  /// Uniform point in the closed unit ball in R^d.
  void next_ball_point(std::span<double> out) noexcept;

 private:
  std::uint64_t state_;
};

}  // namespace selfnorm
