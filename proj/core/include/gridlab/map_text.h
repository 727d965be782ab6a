#ifndef GRIDLAB_MAP_TEXT_H_
#define GRIDLAB_MAP_TEXT_H_

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "gridlab/world.h"

namespace gridlab {

// A world layout as text.
//
//   # comment
//   legend <ch> [state ...]   what to spawn at cells drawn with <ch>: one
//                             piece per listed state, each on its own layer
//   map                       every following line up to 'end' (or EOF) is
//   <row>                     one grid row, north first; rows must be equal
//   ...                       length and use only legend characters
//   end
//
// A legend entry with no states marks empty floor.
struct MapText {
  std::vector<std::string> rows;
  std::map<char, std::vector<std::string>> legend;

  int width() const { return rows.empty() ? 0 : static_cast<int>(rows[0].size()); }
  int height() const { return static_cast<int>(rows.size()); }
  char at(int x, int y) const { return rows[y][x]; }
};

// Throws ConfigError on malformed text (with the line number).
MapText ParseMapText(std::string_view text);
std::string FormatMapText(const MapText& map);

// Adds every legend piece to `world`, row-major from the top-left, facing
// North. Throws ConfigError when dimensions differ or a state is unknown.
void SpawnMap(World& world, const MapText& map);

}  // namespace gridlab

#endif  // GRIDLAB_MAP_TEXT_H_
