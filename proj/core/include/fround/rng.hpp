#pragma once

#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <unordered_map>

namespace fround::rng {

/// SplitMix64 finalizer, used only to derive child seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
  return splitmix64(splitmix64(a) ^ b);
}

/// mt19937_64 plus hand-rolled draw helpers. The engine's output sequence is
/// fully specified by the standard, and the helpers below avoid the std
/// distributions, whose output is implementation-defined; integer and uniform
/// draws therefore reproduce bit-for-bit across toolchains.
class Stream {
 public:
  explicit Stream(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next_u64() { return eng_(); }

  /// Uniform in [0, 1) with 53-bit resolution.
  double next_unit() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  bool next_bernoulli(double p) { return next_unit() < p; }

  /// Uniform in [0, bound), unbiased via rejection.
  std::uint64_t next_below(std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;  // 2^64 mod bound
    std::uint64_t x = eng_();
    while (x < threshold) x = eng_();
    return x % bound;
  }

  /// Box-Muller, cosine branch. Two engine draws per value.
  double next_normal(double mean, double sigma) {
    const double u1 = 1.0 - next_unit();  // (0, 1]
    const double u2 = next_unit();
    const double r = std::sqrt(-2.0 * std::log(u1));
    return mean + sigma * r * std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  std::mt19937_64 eng_;
};

enum class Purpose : std::uint64_t {
  spawn_state = 1,   // initial position and lane
  speed_noise = 2,   // per-step speed perturbation
  rogue_select = 3,  // which vehicles misbehave
  channel_loss = 4,  // per-receiver delivery draws
};

/// Child streams derived from one master seed, keyed by (purpose, id).
/// Streams for existing ids are unchanged when vehicles are added.
class StreamSet {
 public:
  explicit StreamSet(std::uint64_t master) : master_(master) {}

  Stream& get(Purpose p, std::uint64_t id = 0) {
    const std::uint64_t key = (static_cast<std::uint64_t>(p) << 56) ^ id;
    auto it = streams_.find(key);
    if (it == streams_.end()) {
      const std::uint64_t seed = mix(mix(master_, static_cast<std::uint64_t>(p)), id);
      it = streams_.emplace(key, Stream(seed)).first;
    }
    return it->second;
  }

  std::uint64_t master_seed() const { return master_; }

 private:
  std::uint64_t master_;
  std::unordered_map<std::uint64_t, Stream> streams_;
};

}  // namespace fround::rng
