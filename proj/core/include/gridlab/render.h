#ifndef GRIDLAB_RENDER_H_
#define GRIDLAB_RENDER_H_

#include <cstdint>
#include <vector>

#include "gridlab/sprite.h"
#include "gridlab/world.h"

namespace gridlab {

// Egocentric window extents in cells around the viewer.
struct WindowSpec {
  int forward = 0;
  int backward = 0;
  int left = 0;
  int right = 0;

  int width_cells() const { return left + right + 1; }
  int height_cells() const { return forward + backward + 1; }
  bool operator==(const WindowSpec&) const = default;
};

// Row-major RGB pixels; pixels.size() == width * height * 3.
struct Frame {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;
  std::int64_t step = 0;

  void Resize(int w, int h) {
    width = w;
    height = h;
    pixels.resize(static_cast<std::size_t>(w) * h * 3);
  }
};

// Draws a world with one sprite set. Bound to the world's state registry at
// construction; sprite lookups happen once there, never per cell. Layers are
// composited in registration order over a black background. Transparent
// sprite pixels leave what is underneath.
class Renderer {
 public:
  Renderer(const World& world, const SpriteSet& sprites);

  int tile_size() const { return tile_; }

  // Whole-world view, world.width*tile x world.height*tile pixels.
  void RenderGlobal(const World& world, Frame& out) const;
  Frame RenderGlobal(const World& world) const;

  // View cropped around `viewer` and rotated so its facing points up. The
  // viewer sits at window cell (spec.left, spec.forward); cells outside the
  // grid are background. Throws InvalidPiece for an off-board viewer.
  void RenderWindow(const World& world, PieceId viewer, const WindowSpec& spec,
                    Frame& out) const;
  Frame RenderWindow(const World& world, PieceId viewer, const WindowSpec& spec) const;

 private:
  // Draws the piece stack of world cell `cell` into the tile whose top-left
  // pixel is (px, py), with each sprite turned by -`view_turns` quarter turns.
  void DrawCell(const World& world, Vec2 cell, int view_turns, Frame& out, int px,
                int py) const;
  void Blit(const Bitmap& bitmap, Frame& out, int px, int py) const;
  const Sprite* SpriteOf(const World& world, StateIndex state) const;

  int tile_;
  std::vector<const Sprite*> by_state_;     // nullptr = invisible or missing
  std::vector<std::string> missing_;        // per state, sprite name if missing
};

}  // namespace gridlab

#endif  // GRIDLAB_RENDER_H_
