#ifndef EEP_RNG_HPP
#define EEP_RNG_HPP

#include <cmath>
#include <cstdint>

namespace eep {

/// Philox2x64-10 counter-based generator (Salmon et al., "Parallel random
/// numbers: as easy as 1, 2, 3").  The key is the seed and the high counter
/// word is the stream id, so any (seed, stream_id) pair names a
/// reproducible, statistically independent stream of 2^64 blocks; there is
/// no shared state between instances.
class Philox2x64 {
 public:
  Philox2x64(std::uint64_t seed, std::uint64_t stream_id = 0)
      : key0_(seed), ctr_hi_(stream_id) {}

  std::uint64_t next_u64() {
    if (idx_ == 2) {
      fill();
      idx_ = 0;
    }
    return out_[idx_++];
  }

  /// Uniform double strictly inside (0, 1): 53-bit draw offset by half an
  /// ulp, so inverse-transform samplers never see 0 or 1 exactly.
  double next_open01() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1p-53;
  }

 private:
  static constexpr std::uint64_t kMul = 0xD2B74407B1CE6E93ULL;
  static constexpr std::uint64_t kWeyl = 0x9E3779B97F4A7C15ULL;

  void fill() {
    std::uint64_t x0 = ctr_lo_;
    std::uint64_t x1 = ctr_hi_;
    std::uint64_t k = key0_;
    for (int round = 0; round < 10; ++round) {
      const unsigned __int128 prod =
          static_cast<unsigned __int128>(kMul) * x0;
      const auto lo = static_cast<std::uint64_t>(prod);
      const auto hi = static_cast<std::uint64_t>(prod >> 64);
      x0 = hi ^ k ^ x1;
      x1 = lo;
      k += kWeyl;
    }
    out_[0] = x0;
    out_[1] = x1;
    ++ctr_lo_;
  }

  std::uint64_t key0_;
  std::uint64_t ctr_hi_;
  std::uint64_t ctr_lo_ = 0;
  std::uint64_t out_[2] = {0, 0};
  int idx_ = 2;
};

/// Exponential variate with the given rate via inversion.
inline double sample_exponential(Philox2x64& rng, double rate) {
  return -std::log(rng.next_open01()) / rate;
}

}  // namespace eep

#endif
