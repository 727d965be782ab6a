#include "gridlab/scheduler.h"

#include <set>

#include <gtest/gtest.h>

#include "gridlab/errors.h"

namespace gridlab {
namespace {

World Walkers(int count) {
  const std::vector<std::string> layers = {"ground", "top"};
  const std::vector<StateDescriptor> states = {
      {"walker", "top", "", {"walkers", "all"}, ""},
      {"rock", "top", "", {"all"}, ""},
  };
  World w(count, 10, layers, states, 3);
  CallbackTable t;
  t.on_update.push_back({"walkers", [](World& world, PieceId self) {
                           world.MovePiece(self, RelativeMove::kForward);
                         }});
  w.RegisterCallbacks("walker", std::move(t));
  for (int x = 0; x < count; ++x) w.AddPiece("walker", Vec2{x, 5});
  w.Start();
  return w;
}

TEST(SchedulerTest, EmptyWorldTickAdvancesCounter) {
  const std::vector<std::string> layers = {"ground"};
  World w(3, 3, layers, {}, 0);
  w.Start();
  EXPECT_TRUE(Tick(w, UpdateOrder{}).empty());
  EXPECT_EQ(w.tick(), 1);
}

TEST(SchedulerTest, TickBeforeStartThrows) {
  const std::vector<std::string> layers = {"ground"};
  World w(3, 3, layers, {}, 0);
  EXPECT_THROW(Tick(w, UpdateOrder{}), StateError);
}

TEST(SchedulerTest, UpdaterAdvancesEveryMember) {
  World w = Walkers(4);
  Tick(w, UpdateOrder{{"walkers", 1.0}});
  for (const Piece& p : w.pieces()) EXPECT_EQ(p.position->y, 4);
}

TEST(SchedulerTest, BlockedMoversStayPut) {
  World w = Walkers(2);
  w.AddPiece("rock", Vec2{0, 4});
  Tick(w, UpdateOrder{{"walkers", 1.0}});
  EXPECT_EQ(w.piece(PieceId(0)).position->y, 5);
  EXPECT_EQ(w.piece(PieceId(1)).position->y, 4);
}

TEST(SchedulerTest, ZeroProbabilitySkipsGroup) {
  World w = Walkers(3);
  const auto rng_before = w.rng().state();
  Tick(w, UpdateOrder{{"walkers", 0.0}});
  for (const Piece& p : w.pieces()) EXPECT_EQ(p.position->y, 5);
  // p = 0 and p = 1 draw nothing.
  EXPECT_EQ(w.rng().state(), rng_before);
}

TEST(SchedulerTest, GroupGatingFrequencyTracksProbability) {
  World w = Walkers(1);
  int updates = 0;
  const std::int64_t ticks = 4000;
  for (std::int64_t t = 0; t < ticks; ++t) {
    const int before = w.piece(PieceId(0)).position->y;
    Tick(w, UpdateOrder{{"walkers", 0.25}});
    const int after = w.piece(PieceId(0)).position->y;
    if (after != before) {
      ++updates;
      w.MovePiece(PieceId(0), Vec2{0, before - after});
    }
  }
  EXPECT_NEAR(static_cast<double>(updates) / ticks, 0.25, 0.03);
}

TEST(SchedulerTest, OnlyTheNamedGroupIsUpdated) {
  World w = Walkers(2);
  Tick(w, UpdateOrder{{"all", 1.0}});  // walker has no onUpdate("all")
  for (const Piece& p : w.pieces()) EXPECT_EQ(p.position->y, 5);
}

TEST(SchedulerTest, RemovedPiecesAreSkipped) {
  const std::vector<std::string> layers = {"ground"};
  const std::vector<StateDescriptor> states = {{"p", "ground", "", {"g"}, ""}};
  World w(4, 1, layers, states, 9);
  std::vector<std::uint32_t> updated;
  CallbackTable t;
  t.on_update.push_back({"g", [&](World& world, PieceId self) {
                           updated.push_back(self.value);
                           // Every piece removes all the others.
                           for (const Piece& p : world.pieces()) {
                             if (p.id != self && p.position) world.RemovePiece(p.id);
                           }
                         }});
  w.RegisterCallbacks("p", std::move(t));
  for (int x = 0; x < 4; ++x) w.AddPiece("p", Vec2{x, 0});
  w.Start();
  Tick(w, UpdateOrder{{"g", 1.0}});
  EXPECT_EQ(updated.size(), 1u);
}

TEST(SchedulerTest, OrderIsShuffledBySeed) {
  const std::vector<std::string> layers = {"ground"};
  const std::vector<StateDescriptor> states = {{"p", "ground", "", {"g"}, ""}};
  std::set<std::vector<std::uint32_t>> orders;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    World w(5, 1, layers, states, seed);
    std::vector<std::uint32_t> order;
    CallbackTable t;
    t.on_update.push_back({"g", [&](World&, PieceId self) { order.push_back(self.value); }});
    w.RegisterCallbacks("p", std::move(t));
    for (int x = 0; x < 5; ++x) w.AddPiece("p", Vec2{x, 0});
    w.Start();
    Tick(w, UpdateOrder{{"g", 1.0}});
    orders.insert(order);
  }
  EXPECT_GT(orders.size(), 5u);
}

TEST(SchedulerTest, BadOrderEntries) {
  EXPECT_THROW(UpdateOrder{}.Add("g", 1.5), ConfigError);
  EXPECT_THROW(UpdateOrder{}.Add("g", -0.1), ConfigError);
  World w = Walkers(1);
  EXPECT_THROW(Tick(w, UpdateOrder{{"nobody", 1.0}}), ConfigError);
}

}  // namespace
}  // namespace gridlab
