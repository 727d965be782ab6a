#include "gridlab/render.h"

#include <cstring>

#include "gridlab/errors.h"

namespace gridlab {

Renderer::Renderer(const World& world, const SpriteSet& sprites)
    : tile_(sprites.tile_size()) {
  by_state_.resize(world.num_states(), nullptr);
  missing_.resize(world.num_states());
  for (std::uint32_t s = 0; s < world.num_states(); ++s) {
    const std::string& name = world.state(StateIndex(s)).sprite;
    if (name.empty()) continue;
    if (const Sprite* sprite = sprites.Find(name)) {
      by_state_[s] = sprite;
    } else {
      missing_[s] = name;
    }
  }
}

const Sprite* Renderer::SpriteOf(const World& world, StateIndex state) const {
  const Sprite* sprite = by_state_[state.value];
  if (sprite == nullptr && !missing_[state.value].empty()) {
    throw RenderError("missing sprite '" + missing_[state.value] + "' for state '" +
                      world.state(state).name + "'");
  }
  return sprite;
}

void Renderer::Blit(const Bitmap& bitmap, Frame& out, int px, int py) const {
  const std::size_t row_bytes = static_cast<std::size_t>(tile_) * 3;
  const std::size_t stride = static_cast<std::size_t>(out.width) * 3;
  std::uint8_t* dst = out.pixels.data() + static_cast<std::size_t>(py) * stride +
                      static_cast<std::size_t>(px) * 3;
  const std::uint8_t* src = bitmap.rgb.data();
  if (bitmap.opaque) {
    for (int y = 0; y < tile_; ++y, dst += stride, src += row_bytes) {
      std::memcpy(dst, src, row_bytes);
    }
    return;
  }
  const std::uint8_t* mask = bitmap.mask.data();
  for (int y = 0; y < tile_; ++y, dst += stride, src += row_bytes) {
    for (int x = 0; x < tile_; ++x, ++mask) {
      if (*mask) std::memcpy(dst + x * 3, src + x * 3, 3);
    }
  }
}

void Renderer::DrawCell(const World& world, Vec2 cell, int view_turns, Frame& out, int px,
                        int py) const {
  for (std::uint32_t l = 0; l < world.num_layers(); ++l) {
    const PieceId id = world.PieceAt(cell, LayerIndex(l));
    if (!id.valid()) continue;
    const Piece& p = world.pieces()[id.value];
    const Sprite* sprite = SpriteOf(world, p.state);
    if (sprite == nullptr) continue;
    const int facing = (static_cast<int>(p.orientation) - view_turns + 4) & 3;
    Blit(sprite->facing[facing], out, px, py);
  }
}

void Renderer::RenderGlobal(const World& world, Frame& out) const {
  out.Resize(world.width() * tile_, world.height() * tile_);
  std::memset(out.pixels.data(), 0, out.pixels.size());
  out.step = world.tick();
  for (int y = 0; y < world.height(); ++y) {
    for (int x = 0; x < world.width(); ++x) {
      DrawCell(world, {x, y}, 0, out, x * tile_, y * tile_);
    }
  }
}

Frame Renderer::RenderGlobal(const World& world) const {
  Frame f;
  RenderGlobal(world, f);
  return f;
}

void Renderer::RenderWindow(const World& world, PieceId viewer, const WindowSpec& spec,
                            Frame& out) const {
  const Piece& v = world.piece(viewer);
  if (!v.position) {
    throw InvalidPiece("viewer " + std::to_string(viewer.value) + " is off the board");
  }
  out.Resize(spec.width_cells() * tile_, spec.height_cells() * tile_);
  std::memset(out.pixels.data(), 0, out.pixels.size());
  out.step = world.tick();

  const Vec2 origin = v.position->cell();
  const Vec2 fwd = ForwardOf(v.orientation);
  const Vec2 right = RightOf(v.orientation);
  const int turns = static_cast<int>(v.orientation);
  for (int r = 0; r < spec.height_cells(); ++r) {
    const Vec2 row_base = origin + fwd * (spec.forward - r);
    for (int c = 0; c < spec.width_cells(); ++c) {
      const Vec2 cell = row_base + right * (c - spec.left);
      if (!world.InBounds(cell)) continue;
      DrawCell(world, cell, turns, out, c * tile_, r * tile_);
    }
  }
}

Frame Renderer::RenderWindow(const World& world, PieceId viewer,
                             const WindowSpec& spec) const {
  Frame f;
  RenderWindow(world, viewer, spec, f);
  return f;
}

}  // namespace gridlab
