#include "gridlab/spatial.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

#include "gridlab/errors.h"

namespace gridlab {

namespace {

// Largest integer d2 with d2 <= radius^2; membership is then dx^2+dy^2 <= d2.
std::int64_t SquaredLimit(double radius) {
  const double r2 = std::floor(radius * radius);
  if (r2 >= 9.0e18) return INT64_MAX;
  return static_cast<std::int64_t>(r2);
}

// Offsets of the shape's bounding box around the anchor. Radii are capped at
// `cap`, which must cover the whole grid.
void Bounds(const AreaShape& shape, int cap, Vec2& lo, Vec2& hi) {
  if (const auto* d = std::get_if<Disc>(&shape)) {
    const int r = d->radius >= cap ? cap : static_cast<int>(std::floor(d->radius));
    lo = {-r, -r};
    hi = {r, r};
  } else if (const auto* m = std::get_if<Diamond>(&shape)) {
    const int r = std::min(m->radius, cap);
    lo = {-r, -r};
    hi = {r, r};
  } else {
    const auto& r = std::get<Rectangle>(shape);
    lo = r.min_offset;
    hi = r.max_offset;
  }
}

void ValidateShape(const AreaShape& shape) {
  if (const auto* d = std::get_if<Disc>(&shape)) {
    if (!(d->radius >= 0) || !std::isfinite(d->radius)) {
      throw ConfigError("disc radius must be a finite non-negative number");
    }
  } else if (const auto* m = std::get_if<Diamond>(&shape)) {
    if (m->radius < 0) throw ConfigError("diamond radius must be non-negative");
  } else {
    const auto& r = std::get<Rectangle>(shape);
    if (r.min_offset.x > r.max_offset.x || r.min_offset.y > r.max_offset.y) {
      throw ConfigError("rectangle min corner exceeds max corner");
    }
  }
}

}  // namespace

RayResult Raycast(const World& world, const GridPosition& start, Vec2 offset) {
  if (offset == Vec2{}) throw ConfigError("raycast offset must be nonzero");
  if (!world.InBounds(start.cell())) throw ConfigError("raycast start outside the grid");
  RayResult result;
  TraceLine(offset, [&](int step, Vec2 d) {
    const Vec2 cell = start.cell() + d;
    if (!world.InBounds(cell)) {
      result = {RayResult::Kind::kOutOfBounds, PieceId{}, cell, step};
      return false;
    }
    const PieceId hit = world.PieceAt(cell, start.layer);
    if (hit.valid()) {
      result = {RayResult::Kind::kHit, hit, cell, step};
      return false;
    }
    return true;
  });
  return result;
}

bool ShapeContains(const AreaShape& shape, Vec2 o) {
  if (const auto* d = std::get_if<Disc>(&shape)) {
    const std::int64_t d2 = static_cast<std::int64_t>(o.x) * o.x +
                            static_cast<std::int64_t>(o.y) * o.y;
    return d2 <= SquaredLimit(d->radius);
  }
  if (const auto* m = std::get_if<Diamond>(&shape)) {
    return std::abs(o.x) + std::abs(o.y) <= m->radius;
  }
  const auto& r = std::get<Rectangle>(shape);
  return o.x >= r.min_offset.x && o.x <= r.max_offset.x && o.y >= r.min_offset.y &&
         o.y <= r.max_offset.y;
}

std::vector<QueryHit> QueryArea(const World& world, LayerIndex layer, const AreaSpec& area) {
  if (!layer.valid() || layer.value >= world.num_layers()) {
    throw ConfigError("unknown layer index");
  }
  if (!world.InBounds(area.anchor)) throw ConfigError("query anchor outside the grid");
  ValidateShape(area.shape);

  Vec2 lo;
  Vec2 hi;
  Bounds(area.shape, world.width() + world.height(), lo, hi);
  auto clamp = [](std::int64_t v, int lo_v, int hi_v) {
    return static_cast<int>(std::clamp<std::int64_t>(v, lo_v, hi_v));
  };
  const int x0 = clamp(std::int64_t{area.anchor.x} + lo.x, 0, world.width());
  const int x1 = clamp(std::int64_t{area.anchor.x} + hi.x, -1, world.width() - 1);
  const int y0 = clamp(std::int64_t{area.anchor.y} + lo.y, 0, world.height());
  const int y1 = clamp(std::int64_t{area.anchor.y} + hi.y, -1, world.height() - 1);

  std::vector<QueryHit> hits;
  for (int y = y0; y <= y1; ++y) {
    for (int x = x0; x <= x1; ++x) {
      const PieceId id = world.PieceAt(Vec2{x, y}, layer);
      if (!id.valid()) continue;
      if (!ShapeContains(area.shape, Vec2{x, y} - area.anchor)) continue;
      hits.push_back({id, GridPosition{x, y, layer}});
    }
  }
  return hits;
}

std::vector<QueryHit> QueryArea(const World& world, std::string_view layer,
                                const AreaSpec& area) {
  return QueryArea(world, world.Layer(layer), area);
}

}  // namespace gridlab
