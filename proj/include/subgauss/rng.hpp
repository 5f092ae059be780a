#pragma once

#include <cstdint>
#include <string_view>

namespace subgauss {

/// Algorithm identifier written into every Monte Carlo report.
inline constexpr std::string_view kRngAlgorithm = "xoshiro256**+splitmix64";

/// SplitMix64 step; used for seeding and for deriving sub-stream seeds.
std::uint64_t splitmix64(std::uint64_t& state);

/// Seed of sub-stream `index` under master `seed`. Independent of how the
/// sub-streams are later scheduled across threads.
std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t index);

/// xoshiro256** (Blackman & Vigna) with hand-written variate generators so
/// that draws are bit-reproducible across standard libraries.
class Xoshiro256 {
 public:
  explicit Xoshiro256(std::uint64_t seed);

  std::uint64_t next();

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Uniform on (0, 1]; safe as a log argument.
  double uniform_positive();
  /// +1 or -1 with probability 1/2 each.
  double sign();
  double normal();
  /// Gamma(shape, 1) via Marsaglia-Tsang, with the U^{1/shape} boost below 1.
  double gamma(double shape);
  /// Beta(a, b) as a ratio of gammas.
  double beta(double a, double b);

 private:
  std::uint64_t s_[4];
};

}  // namespace subgauss
