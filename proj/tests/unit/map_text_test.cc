#include "gridlab/map_text.h"

#include <gtest/gtest.h>

#include "gridlab/errors.h"
#include "gridlab/rws.h"

namespace gridlab {
namespace {

constexpr std::string_view kSmall = R"(# comment
legend .
legend # wall
legend P spawn avatar
map
####
#P.#
####
end
)";

World SmallWorld() {
  const std::vector<std::string> layers = {"logic", "top"};
  const std::vector<StateDescriptor> states = {
      {"wall", "top", "", {}, ""}, {"spawn", "logic", "", {}, ""}, {"avatar", "top", "", {}, ""}};
  return World(4, 3, layers, states, 0);
}

TEST(MapTextTest, ParsesLegendAndRows) {
  const MapText m = ParseMapText(kSmall);
  EXPECT_EQ(m.width(), 4);
  EXPECT_EQ(m.height(), 3);
  EXPECT_EQ(m.at(1, 1), 'P');
  EXPECT_TRUE(m.legend.at('.').empty());
  EXPECT_EQ(m.legend.at('P'), (std::vector<std::string>{"spawn", "avatar"}));
}

TEST(MapTextTest, FormatRoundTrips) {
  const MapText m = ParseMapText(kSmall);
  const MapText again = ParseMapText(FormatMapText(m));
  EXPECT_EQ(again.rows, m.rows);
  EXPECT_EQ(again.legend, m.legend);
}

TEST(MapTextTest, SpawnsOnePiecePerListedState) {
  World w = SmallWorld();
  SpawnMap(w, ParseMapText(kSmall));
  EXPECT_EQ(w.num_pieces(), 10u + 2u);
  EXPECT_TRUE(w.PieceAt(Vec2{1, 1}, w.Layer("logic")).valid());
  EXPECT_TRUE(w.PieceAt(Vec2{1, 1}, w.Layer("top")).valid());
  EXPECT_FALSE(w.PieceAt(Vec2{2, 1}, w.Layer("top")).valid());
}

TEST(MapTextTest, Errors) {
  EXPECT_THROW(ParseMapText("legend .\n"), ConfigError);
  EXPECT_THROW(ParseMapText("legend .\nmap\nend\n"), ConfigError);
  EXPECT_THROW(ParseMapText("legend .\nmap\n..\n.\nend\n"), ConfigError);
  EXPECT_THROW(ParseMapText("legend .\nmap\n.x\nend\n"), ConfigError);
  EXPECT_THROW(ParseMapText("legend .\nlegend .\nmap\n.\nend\n"), ConfigError);
  EXPECT_THROW(ParseMapText("legend ab wall\nmap\n.\nend\n"), ConfigError);
  EXPECT_THROW(ParseMapText("colour .\nmap\n.\nend\n"), ConfigError);
  World w = SmallWorld();
  EXPECT_THROW(SpawnMap(w, ParseMapText("legend .\nmap\n..\nend\n")), ConfigError);
}

TEST(MapTextTest, ShippedRwsMap) {
  const MapText m = rws::DefaultConfig().map;
  EXPECT_EQ(m.width(), 24);
  EXPECT_EQ(m.height(), 16);
  int spawns = 0;
  for (int y = 0; y < m.height(); ++y) {
    for (int x = 0; x < m.width(); ++x) {
      spawns += m.at(x, y) == 'P';
      // Point symmetric, so neither player's start is favoured.
      EXPECT_EQ(m.at(x, y), m.at(23 - x, 15 - y)) << x << "," << y;
    }
  }
  EXPECT_EQ(spawns, 2);
}

}  // namespace
}  // namespace gridlab
