#include "gridlab/map_text.h"

#include <sstream>

#include "gridlab/errors.h"

namespace gridlab {

namespace {

std::vector<std::string_view> SplitLines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = end + 1;
  }
  return lines;
}

std::vector<std::string> Words(std::string_view line) {
  std::vector<std::string> out;
  std::istringstream in{std::string(line)};
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

[[noreturn]] void Fail(std::size_t line, const std::string& msg) {
  throw ConfigError("map text line " + std::to_string(line + 1) + ": " + msg);
}

}  // namespace

MapText ParseMapText(std::string_view text) {
  const auto lines = SplitLines(text);
  MapText map;
  std::size_t i = 0;
  bool in_map = false;
  for (; i < lines.size(); ++i) {
    const std::string_view line = lines[i];
    if (in_map) {
      if (line == "end") break;
      map.rows.emplace_back(line);
      continue;
    }
    const auto words = Words(line);
    if (words.empty() || words[0][0] == '#') continue;
    if (words[0] == "legend") {
      // The glyph is the first non-blank character after the keyword, so
      // '#' and '.' are usable glyphs.
      const std::size_t kw = line.find("legend") + 6;
      const std::size_t g = line.find_first_not_of(" \t", kw);
      if (g == std::string_view::npos) Fail(i, "expected 'legend <ch> [state ...]'");
      const char glyph = line[g];
      if (g + 1 < line.size() && line[g + 1] != ' ' && line[g + 1] != '\t') {
        Fail(i, "legend glyphs are single characters");
      }
      if (map.legend.count(glyph)) Fail(i, std::string("duplicate legend glyph '") + glyph + "'");
      map.legend[glyph] = Words(line.substr(g + 1));
    } else if (words[0] == "map") {
      in_map = true;
    } else {
      Fail(i, "unknown directive '" + words[0] + "'");
    }
  }
  if (!in_map) throw ConfigError("map text has no 'map' section");
  while (!map.rows.empty() && map.rows.back().empty()) map.rows.pop_back();
  if (map.rows.empty()) throw ConfigError("map text has no rows");
  const std::size_t width = map.rows[0].size();
  for (std::size_t y = 0; y < map.rows.size(); ++y) {
    if (map.rows[y].size() != width) {
      throw ConfigError("map row " + std::to_string(y) + " has length " +
                        std::to_string(map.rows[y].size()) + ", expected " +
                        std::to_string(width));
    }
    for (char c : map.rows[y]) {
      if (!map.legend.count(c)) {
        throw ConfigError("map row " + std::to_string(y) + " uses glyph '" + std::string(1, c) +
                          "' missing from the legend");
      }
    }
  }
  if (width == 0) throw ConfigError("map rows are empty");
  return map;
}

std::string FormatMapText(const MapText& map) {
  std::string out;
  for (const auto& [glyph, states] : map.legend) {
    out += "legend ";
    out += glyph;
    for (const auto& s : states) out += " " + s;
    out += '\n';
  }
  out += "map\n";
  for (const auto& row : map.rows) out += row + '\n';
  out += "end\n";
  return out;
}

void SpawnMap(World& world, const MapText& map) {
  if (map.width() != world.width() || map.height() != world.height()) {
    throw ConfigError("map is " + std::to_string(map.width()) + "x" +
                      std::to_string(map.height()) + " but the world is " +
                      std::to_string(world.width()) + "x" + std::to_string(world.height()));
  }
  for (int y = 0; y < map.height(); ++y) {
    for (int x = 0; x < map.width(); ++x) {
      for (const auto& state : map.legend.at(map.at(x, y))) {
        world.AddPiece(state, Vec2{x, y});
      }
    }
  }
}

}  // namespace gridlab
