#ifndef GRIDLAB_TESTS_SUPPORT_ORACLES_H_
#define GRIDLAB_TESTS_SUPPORT_ORACLES_H_

#include <cstdint>
#include <string>
#include <vector>

#include "gridlab/render.h"
#include "gridlab/rng.h"
#include "gridlab/spatial.h"
#include "gridlab/world.h"

// Brute-force reference implementations shared by unit and acceptance
// tests. None of these touch the engine's occupancy index: they scan the
// piece table.
namespace gridlab::testing {

// i-th cell (1-based) of the discretized segment toward `offset`, from the
// closed form m = floor((2*i*minor + n) / (2n)).
Vec2 RayCell(Vec2 offset, int i);

// The piece on `layer` at `cell`, found by scanning every piece.
PieceId ScanPieceAt(const World& world, Vec2 cell, LayerIndex layer);

RayResult BruteRaycast(const World& world, const GridPosition& start, Vec2 offset);

bool BruteContains(const AreaShape& shape, Vec2 offset);
std::vector<QueryHit> BruteQuery(const World& world, LayerIndex layer, const AreaSpec& area);

// A world of at most max_side x max_side cells with 1-3 layers and random
// occupancy. States are named "s<layer><k>".
World RandomWorld(Rng& rng, int max_side, double density);

AreaShape RandomShape(Rng& rng);

// Outcome of one randomized operation sequence checked against an
// independent occupancy model.
struct OpSequenceResult {
  std::uint64_t digest = 0;  // final world hash plus every drained event
  int operations = 0;
  std::vector<std::string> violations;
};

OpSequenceResult RunOpSequence(std::uint64_t seed, int operations);

// Seed of the i-th sequence in the frozen property suite.
std::uint64_t OpSequenceSeed(int index);

// Same layers, states and pieces (ids preserved), with the grid turned
// counter-clockwise `quarter_turns` times. Piece orientations turn with it.
// Callbacks are not copied.
World RotateWorldCcw(const World& world, int quarter_turns);

// A world with the structure of `world` (layers and states) and no pieces.
World EmptyLike(const World& world, int width, int height);

std::uint64_t FrameHash(const Frame& frame);

}  // namespace gridlab::testing

#endif  // GRIDLAB_TESTS_SUPPORT_ORACLES_H_
