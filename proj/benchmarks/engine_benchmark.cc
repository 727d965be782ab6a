#include <benchmark/benchmark.h>

#include "gridlab/env.h"
#include "gridlab/render.h"
#include "gridlab/rws.h"
#include "gridlab/spatial.h"

namespace gridlab {
namespace {

// A started RWS episode world, reused by the spatial and render benchmarks.
struct Fixture {
  Fixture() : env(MakeEnv("rws", 2, 1)) { env.Reset(); }
  Env env;
};

Fixture& Shared() {
  static Fixture f;
  return f;
}

void BM_Raycast(benchmark::State& state) {
  const World& w = Shared().env.world();
  const LayerIndex layer = w.Layer("upperPhysical");
  int i = 0;
  for (auto _ : state) {
    const GridPosition start{1 + i % 22, 1 + (i / 22) % 14, layer};
    benchmark::DoNotOptimize(Raycast(w, start, Vec2{5, -3}));
    ++i;
  }
}
BENCHMARK(BM_Raycast);

void BM_QueryDisc(benchmark::State& state) {
  const World& w = Shared().env.world();
  const LayerIndex layer = w.Layer("lowerPhysical");
  const double radius = static_cast<double>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(QueryArea(w, layer, AreaSpec{Disc{radius}, Vec2{12, 8}}));
  }
}
BENCHMARK(BM_QueryDisc)->Arg(2)->Arg(5)->Arg(12);

void BM_MoveAndTick(benchmark::State& state) {
  Env env = MakeEnv("rws", 2, 3);
  env.Reset();
  World world = env.world();
  const auto& def = static_cast<const rws::RunningWithScissors&>(env.definition());
  const PieceId avatar = def.avatar(0);
  const UpdateOrder order = def.update_order();
  int i = 0;
  for (auto _ : state) {
    world.MovePiece(avatar, (i & 1) ? RelativeMove::kForward : RelativeMove::kBackward);
    Tick(world, order);
    ++i;
  }
}
BENCHMARK(BM_MoveAndTick);

void BM_RenderWindow(benchmark::State& state) {
  const World& w = Shared().env.world();
  const auto& def = static_cast<const rws::RunningWithScissors&>(Shared().env.definition());
  const Renderer r(w, def.sprites());
  Frame frame;
  for (auto _ : state) {
    r.RenderWindow(w, def.avatar(0), def.config().window, frame);
    benchmark::DoNotOptimize(frame.pixels.data());
  }
}
BENCHMARK(BM_RenderWindow);

void BM_RenderGlobal(benchmark::State& state) {
  const World& w = Shared().env.world();
  const auto& def = static_cast<const rws::RunningWithScissors&>(Shared().env.definition());
  const Renderer r(w, def.sprites());
  Frame frame;
  for (auto _ : state) {
    r.RenderGlobal(w, frame);
    benchmark::DoNotOptimize(frame.pixels.data());
  }
}
BENCHMARK(BM_RenderGlobal);

}  // namespace
}  // namespace gridlab
