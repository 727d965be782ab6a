#ifndef GRIDLAB_HASH_H_
#define GRIDLAB_HASH_H_

#include <bit>
#include <cstdint>
#include <cstring>
#include <span>
#include <string_view>

namespace gridlab {

// 64-bit FNV-1a. Integers are fed little-endian so hashes are portable.
class Fnv1a {
 public:
  static constexpr std::uint64_t kOffset = 0xCBF29CE484222325ULL;
  static constexpr std::uint64_t kPrime = 0x100000001B3ULL;

  Fnv1a& Bytes(std::span<const std::uint8_t> bytes) {
    for (std::uint8_t b : bytes) {
      h_ ^= b;
      h_ *= kPrime;
    }
    return *this;
  }

  Fnv1a& Str(std::string_view s) {
    Bytes({reinterpret_cast<const std::uint8_t*>(s.data()), s.size()});
    return U64(s.size());
  }

  Fnv1a& U64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      h_ ^= static_cast<std::uint8_t>(v >> (8 * i));
      h_ *= kPrime;
    }
    return *this;
  }

  Fnv1a& I64(std::int64_t v) { return U64(static_cast<std::uint64_t>(v)); }

  Fnv1a& F64(double v) { return U64(std::bit_cast<std::uint64_t>(v)); }

  std::uint64_t value() const { return h_; }

 private:
  std::uint64_t h_ = kOffset;
};

}  // namespace gridlab

#endif  // GRIDLAB_HASH_H_
