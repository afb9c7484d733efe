#include "fblfas/rng.hpp"

#include <cmath>

namespace fblfas {

namespace {
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
}

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += kGolden;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
    : key_(splitmix64(seed ^ splitmix64(stream_id * kGolden + 0x632BE59BD9B4E019ULL))) {}

RngStream::result_type RngStream::operator()() noexcept {
  ++counter_;
  return splitmix64(key_ + counter_ * kGolden);
}

std::complex<double> RngStream::complex_normal(double variance) {
  const double s = std::sqrt(0.5 * variance);
  const double re = normal();
  const double im = normal();
  return {s * re, s * im};
}

}  // namespace fblfas
