#pragma once

#include <complex>
#include <cstdint>
#include <limits>
#include <random>

namespace fblfas {

/// Counter-based random stream keyed by (seed, stream id).
///
/// Output k of a stream is splitmix64(key + k * golden), so any stream can
/// be reconstructed from its key alone. Monte-Carlo trials each own a
/// stream keyed by their trial index, which keeps results identical for any
/// number of workers.
class RngStream {
 public:
  using result_type = std::uint64_t;

  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept;

  /// Child stream; disjoint from the parent and from siblings with other ids.
  RngStream substream(std::uint64_t id) const { return RngStream(key_, id); }

  std::uint64_t key() const noexcept { return key_; }

  /// Standard normal draw.
  double normal() { return normal_(*this); }

  /// Circularly-symmetric complex Gaussian with E|z|^2 = variance.
  std::complex<double> complex_normal(double variance);

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;

}  // namespace fblfas
