#pragma once

#include <cmath>
#include <cstdint>

namespace fockweyl {

/// Identifies one reproducible random stream: identical (master_seed,
/// stream_id) pairs replay identical samples, distinct ids are independent.
struct RngStream {
  std::uint64_t master_seed = 0;
  std::uint64_t stream_id = 0;
};

/// Philox-4x32-10 counter-based generator.  State is (counter, key); the key
/// mixes the master seed with the stream id, so streams split without shared
/// mutable state.
class Philox {
 public:
  explicit Philox(RngStream s) {
    key_[0] = static_cast<std::uint32_t>(s.master_seed);
    key_[1] = static_cast<std::uint32_t>(s.master_seed >> 32);
    ctr_[0] = 0;
    ctr_[1] = 0;
    ctr_[2] = static_cast<std::uint32_t>(s.stream_id);
    ctr_[3] = static_cast<std::uint32_t>(s.stream_id >> 32);
  }

  std::uint64_t next_u64() {
    if (avail_ == 0) refill();
    std::uint64_t hi = out_[--avail_];
    std::uint64_t lo = out_[--avail_];
    return (hi << 32) | lo;
  }

  /// Uniform in the open interval (0, 1).
  double next_uniform() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Standard normal via Box-Muller.
  double next_normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = next_uniform(), u2 = next_uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 2.0 * M_PI * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

 private:
  static std::uint32_t mulhi(std::uint32_t a, std::uint32_t b) {
    return static_cast<std::uint32_t>(
        (static_cast<std::uint64_t>(a) * b) >> 32);
  }
  static std::uint32_t mullo(std::uint32_t a, std::uint32_t b) {
    return a * b;
  }

  void refill() {
    constexpr std::uint32_t kM0 = 0xD2511F53u, kM1 = 0xCD9E8D57u;
    constexpr std::uint32_t kW0 = 0x9E3779B9u, kW1 = 0xBB67AE85u;
    std::uint32_t c0 = ctr_[0], c1 = ctr_[1], c2 = ctr_[2], c3 = ctr_[3];
    std::uint32_t k0 = key_[0], k1 = key_[1];
    for (int round = 0; round < 10; ++round) {
      std::uint32_t hi0 = mulhi(kM0, c0), lo0 = mullo(kM0, c0);
      std::uint32_t hi1 = mulhi(kM1, c2), lo1 = mullo(kM1, c2);
      std::uint32_t n0 = hi1 ^ c1 ^ k0, n1 = lo1;
      std::uint32_t n2 = hi0 ^ c3 ^ k1, n3 = lo0;
      c0 = n0;
      c1 = n1;
      c2 = n2;
      c3 = n3;
      k0 += kW0;
      k1 += kW1;
    }
    out_[0] = c0;
    out_[1] = c1;
    out_[2] = c2;
    out_[3] = c3;
    avail_ = 4;
    if (++ctr_[0] == 0) ++ctr_[1];  // 64-bit block counter in words 0..1
  }

  std::uint32_t key_[2];
  std::uint32_t ctr_[4];
  std::uint32_t out_[4] = {0, 0, 0, 0};
  int avail_ = 0;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace fockweyl
