#ifndef GRIDLAB_TYPES_H_
#define GRIDLAB_TYPES_H_

#include <compare>
#include <cstdint>
#include <functional>
#include <limits>
#include <string_view>

namespace gridlab {

// Integer handle tagged with its domain so layer, state and piece indices
// cannot be mixed up.
template <class Tag>
struct Handle {
  static constexpr std::uint32_t kInvalid =
      std::numeric_limits<std::uint32_t>::max();

  std::uint32_t value = kInvalid;

  constexpr Handle() = default;
  constexpr explicit Handle(std::uint32_t v) : value(v) {}

  constexpr bool valid() const { return value != kInvalid; }
  constexpr auto operator<=>(const Handle&) const = default;
};

using PieceId = Handle<struct PieceTag>;
using LayerIndex = Handle<struct LayerTag>;
using StateIndex = Handle<struct StateTag>;
using GroupIndex = Handle<struct GroupTag>;

struct Vec2 {
  int x = 0;
  int y = 0;

  constexpr Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  constexpr Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  constexpr Vec2 operator*(int k) const { return {x * k, y * k}; }
  constexpr auto operator<=>(const Vec2&) const = default;
};

struct GridPosition {
  int x = 0;
  int y = 0;
  LayerIndex layer;

  constexpr Vec2 cell() const { return {x, y}; }
  constexpr auto operator<=>(const GridPosition&) const = default;
};

// x grows east, y grows south; North is -y.
enum class Orientation : std::uint8_t { kNorth = 0, kEast = 1, kSouth = 2, kWest = 3 };

constexpr Orientation RotateRight(Orientation o) {
  return static_cast<Orientation>((static_cast<int>(o) + 1) & 3);
}
constexpr Orientation RotateLeft(Orientation o) {
  return static_cast<Orientation>((static_cast<int>(o) + 3) & 3);
}
constexpr Orientation Reverse(Orientation o) {
  return static_cast<Orientation>((static_cast<int>(o) + 2) & 3);
}

// Number of clockwise quarter turns taking `from` to `to`.
constexpr int QuarterTurns(Orientation from, Orientation to) {
  return (static_cast<int>(to) - static_cast<int>(from) + 4) & 3;
}

// Unit step in the facing direction.
constexpr Vec2 ForwardOf(Orientation o) {
  switch (o) {
    case Orientation::kNorth: return {0, -1};
    case Orientation::kEast: return {1, 0};
    case Orientation::kSouth: return {0, 1};
    case Orientation::kWest: return {-1, 0};
  }
  return {};
}

constexpr Vec2 RightOf(Orientation o) { return ForwardOf(RotateRight(o)); }

constexpr std::string_view ToString(Orientation o) {
  switch (o) {
    case Orientation::kNorth: return "N";
    case Orientation::kEast: return "E";
    case Orientation::kSouth: return "S";
    case Orientation::kWest: return "W";
  }
  return "?";
}

}  // namespace gridlab

template <class Tag>
struct std::hash<gridlab::Handle<Tag>> {
  std::size_t operator()(gridlab::Handle<Tag> h) const noexcept {
    return std::hash<std::uint32_t>{}(h.value);
  }
};

#endif  // GRIDLAB_TYPES_H_
