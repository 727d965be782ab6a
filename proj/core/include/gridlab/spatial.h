#ifndef GRIDLAB_SPATIAL_H_
#define GRIDLAB_SPATIAL_H_

#include <cstdlib>
#include <string_view>
#include <variant>
#include <vector>

#include "gridlab/types.h"
#include "gridlab/world.h"

namespace gridlab {

// Visits the cells of the discretized segment from the origin to `offset`,
// nearest first, excluding the origin. Along the major axis the walk takes
// one cell per step; the minor coordinate at step i is i*d_minor/n rounded
// half away from zero, kept incrementally with an integer error term so the
// walk is mirror-symmetric in every octant. `visit(step, cell_offset)` returns
// false to stop early.
template <class Visit>
void TraceLine(Vec2 offset, Visit&& visit) {
  const int adx = std::abs(offset.x);
  const int ady = std::abs(offset.y);
  const int sx = offset.x < 0 ? -1 : 1;
  const int sy = offset.y < 0 ? -1 : 1;
  const bool x_major = adx >= ady;
  const int n = x_major ? adx : ady;
  const int minor = x_major ? ady : adx;
  // err tracks (2*i*minor + n) - 2*n*m, where m is the current minor offset.
  int err = n;
  int m = 0;
  for (int i = 1; i <= n; ++i) {
    err += 2 * minor;
    if (err >= 2 * n) {
      err -= 2 * n;
      ++m;
    }
    const Vec2 cell = x_major ? Vec2{sx * i, sy * m} : Vec2{sx * m, sy * i};
    if (!visit(i, cell)) return;
  }
}

struct RayResult {
  enum class Kind { kHit, kOutOfBounds, kClear };

  Kind kind = Kind::kClear;
  PieceId piece;         // set on kHit
  Vec2 cell;             // hit cell, or first cell outside the grid
  int distance = 0;      // steps from the start cell to `cell`
};

// First piece on `start.layer` along the ray from `start` toward
// start + offset. Throws ConfigError for a zero offset or a start outside the
// grid.
RayResult Raycast(const World& world, const GridPosition& start, Vec2 offset);

struct Disc {
  double radius = 0;  // inclusive Euclidean
};
struct Diamond {
  int radius = 0;  // inclusive L1
};
struct Rectangle {
  Vec2 min_offset;  // inclusive corner offsets from the anchor
  Vec2 max_offset;
};
using AreaShape = std::variant<Disc, Diamond, Rectangle>;

struct AreaSpec {
  AreaShape shape;
  Vec2 anchor;
};

struct QueryHit {
  PieceId piece;
  GridPosition position;

  bool operator==(const QueryHit&) const = default;
};

// True when `offset` from the anchor lies inside the shape.
bool ShapeContains(const AreaShape& shape, Vec2 offset);

// Every piece on `layer` inside the area, ordered by (y, x). Cells outside the
// grid are skipped. Throws ConfigError for an anchor outside the grid or a
// negative radius.
std::vector<QueryHit> QueryArea(const World& world, LayerIndex layer, const AreaSpec& area);
std::vector<QueryHit> QueryArea(const World& world, std::string_view layer,
                                const AreaSpec& area);

}  // namespace gridlab

#endif  // GRIDLAB_SPATIAL_H_
