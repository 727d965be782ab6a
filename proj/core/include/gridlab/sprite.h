#ifndef GRIDLAB_SPRITE_H_
#define GRIDLAB_SPRITE_H_

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "gridlab/types.h"

namespace gridlab {

struct Rgb {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;

  bool operator==(const Rgb&) const = default;
};

// tile_size x tile_size pixels for one facing. `mask` holds 1 for opaque
// pixels and 0 for transparent ones.
struct Bitmap {
  std::vector<std::uint8_t> rgb;   // row-major, 3 bytes per pixel
  std::vector<std::uint8_t> mask;  // row-major, 1 byte per pixel
  bool opaque = true;              // every mask entry is 1
};

// Four bitmaps indexed by Orientation: how the sprite looks when its piece
// faces that way in screen space.
struct Sprite {
  std::array<Bitmap, 4> facing;
};

// Named sprites sharing one tile size.
//
// Text format, line oriented, '#' starts a comment line:
//
//   tile 16                    tile edge in pixels, must come first
//   color <ch> <r> <g> <b>     palette entry, components 0-255
//   color <ch> transparent     palette entry that lets lower layers show
//   sprite <name>              base bitmap (facing North), followed by
//                              exactly tile rows of tile palette chars
//   sprite <name> <N|E|S|W>    explicit bitmap for one facing
//
// Facings without an explicit bitmap are the North bitmap rotated clockwise
// by the facing's quarter turns.
class SpriteSet {
 public:
  explicit SpriteSet(int tile_size = 16);

  // Throws ConfigError on malformed input; messages carry the line number.
  static SpriteSet Parse(std::string_view text);

  int tile_size() const { return tile_; }

  // `facings[o]` may be empty, meaning derive it from North by rotation.
  // North must be present. Throws ConfigError on size mismatch.
  void Add(const std::string& name, std::array<Bitmap, 4> facings);
  void AddSolid(const std::string& name, Rgb color);

  const Sprite* Find(std::string_view name) const;
  bool contains(std::string_view name) const { return Find(name) != nullptr; }
  std::size_t size() const { return sprites_.size(); }

 private:
  int tile_;
  std::map<std::string, Sprite, std::less<>> sprites_;
};

// Rotates a square bitmap clockwise by `quarter_turns` quarter turns.
Bitmap RotateBitmap(const Bitmap& src, int tile, int quarter_turns);

}  // namespace gridlab

#endif  // GRIDLAB_SPRITE_H_
