#ifndef GRIDLAB_RNG_H_
#define GRIDLAB_RNG_H_

#include <array>
#include <cstdint>
#include <span>
#include <utility>

namespace gridlab {

// SplitMix64 step. Advances `state` and returns the next output.
inline std::uint64_t SplitMix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Derives an independent child seed, e.g. per episode or per worker.
inline std::uint64_t DeriveSeed(std::uint64_t root, std::uint64_t index) {
  std::uint64_t s = root ^ (0xD1B54A32D192ED03ULL * (index + 1));
  SplitMix64(s);
  return SplitMix64(s);
}

// xoshiro256** seeded through SplitMix64.
//
// Every derived quantity uses integer arithmetic or exact 53-bit doubles so
// the stream is identical on every platform and standard library:
//   Below(n)     Lemire's multiply-shift with rejection.
//   Uniform01()  (Next() >> 11) * 2^-53.
//   Bernoulli(p) Uniform01() < p, except p <= 0 and p >= 1 draw nothing.
//   Shuffle(xs)  Fisher-Yates from the back, j = Below(i + 1).
__extension__ using Uint128 = unsigned __int128;

class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) { Seed(seed); }

  void Seed(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& word : s_) word = SplitMix64(sm);
  }

  std::uint64_t Next() {
    const std::uint64_t result = Rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = Rotl(s_[3], 45);
    return result;
  }

  // Uniform integer in [0, bound). bound must be > 0.
  std::uint64_t Below(std::uint64_t bound) {
    Uint128 m = static_cast<Uint128>(Next()) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        m = static_cast<Uint128>(Next()) * bound;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  double Uniform01() { return static_cast<double>(Next() >> 11) * 0x1.0p-53; }

  bool Bernoulli(double p) {
    if (p <= 0.0) return false;
    if (p >= 1.0) return true;
    return Uniform01() < p;
  }

  template <class T>
  void Shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(Below(i));
      using std::swap;
      swap(items[i - 1], items[j]);
    }
  }

  const std::array<std::uint64_t, 4>& state() const { return s_; }

  friend bool operator==(const Rng&, const Rng&) = default;

 private:
  static std::uint64_t Rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::array<std::uint64_t, 4> s_{};
};

}  // namespace gridlab

#endif  // GRIDLAB_RNG_H_
