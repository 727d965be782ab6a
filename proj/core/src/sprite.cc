#include "gridlab/sprite.h"

#include <algorithm>
#include <charconv>
#include <optional>

#include "gridlab/errors.h"

namespace gridlab {

namespace {

struct PaletteEntry {
  bool transparent = false;
  Rgb color;
};

std::vector<std::string_view> Words(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

std::optional<int> ParseInt(std::string_view s) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

[[noreturn]] void Fail(int line, const std::string& msg) {
  throw ConfigError("sprite text line " + std::to_string(line) + ": " + msg);
}

std::optional<Orientation> ParseFacing(std::string_view s) {
  if (s == "N") return Orientation::kNorth;
  if (s == "E") return Orientation::kEast;
  if (s == "S") return Orientation::kSouth;
  if (s == "W") return Orientation::kWest;
  return std::nullopt;
}

Bitmap MakeBitmap(int tile) {
  Bitmap b;
  b.rgb.assign(static_cast<std::size_t>(tile) * tile * 3, 0);
  b.mask.assign(static_cast<std::size_t>(tile) * tile, 1);
  return b;
}

void CheckBitmap(const Bitmap& b, int tile, const std::string& name) {
  const auto n = static_cast<std::size_t>(tile) * tile;
  if (b.rgb.size() != n * 3 || b.mask.size() != n) {
    throw ConfigError("sprite '" + name + "' does not match tile size " +
                      std::to_string(tile));
  }
}

}  // namespace

Bitmap RotateBitmap(const Bitmap& src, int tile, int quarter_turns) {
  quarter_turns &= 3;
  Bitmap out = src;
  if (quarter_turns == 0) return out;
  for (int y = 0; y < tile; ++y) {
    for (int x = 0; x < tile; ++x) {
      // Destination (x, y) samples the source pixel that lands there after
      // rotating clockwise.
      int sx = x;
      int sy = y;
      switch (quarter_turns) {
        case 1: sx = y; sy = tile - 1 - x; break;
        case 2: sx = tile - 1 - x; sy = tile - 1 - y; break;
        case 3: sx = tile - 1 - y; sy = x; break;
      }
      const std::size_t d = static_cast<std::size_t>(y) * tile + x;
      const std::size_t s = static_cast<std::size_t>(sy) * tile + sx;
      out.mask[d] = src.mask[s];
      std::copy_n(&src.rgb[s * 3], 3, &out.rgb[d * 3]);
    }
  }
  return out;
}

SpriteSet::SpriteSet(int tile_size) : tile_(tile_size) {
  if (tile_size < 1) throw ConfigError("tile size must be positive");
}

void SpriteSet::Add(const std::string& name, std::array<Bitmap, 4> facings) {
  if (name.empty()) throw ConfigError("sprite names must be non-empty");
  const Bitmap north = facings[static_cast<int>(Orientation::kNorth)];
  if (north.rgb.empty()) throw ConfigError("sprite '" + name + "' has no North bitmap");
  CheckBitmap(north, tile_, name);
  Sprite sprite;
  for (int o = 0; o < 4; ++o) {
    Bitmap& b = facings[o];
    if (b.rgb.empty()) {
      b = RotateBitmap(north, tile_, o);
    } else {
      CheckBitmap(b, tile_, name);
    }
    b.opaque = std::all_of(b.mask.begin(), b.mask.end(), [](std::uint8_t m) { return m != 0; });
    sprite.facing[o] = std::move(b);
  }
  sprites_[name] = std::move(sprite);
}

void SpriteSet::AddSolid(const std::string& name, Rgb color) {
  Bitmap b = MakeBitmap(tile_);
  for (std::size_t i = 0; i < b.mask.size(); ++i) {
    b.rgb[i * 3] = color.r;
    b.rgb[i * 3 + 1] = color.g;
    b.rgb[i * 3 + 2] = color.b;
  }
  std::array<Bitmap, 4> facings;
  facings[0] = std::move(b);
  Add(name, std::move(facings));
}

const Sprite* SpriteSet::Find(std::string_view name) const {
  auto it = sprites_.find(name);
  return it == sprites_.end() ? nullptr : &it->second;
}

SpriteSet SpriteSet::Parse(std::string_view text) {
  std::vector<std::string_view> lines;
  {
    std::size_t start = 0;
    while (start <= text.size()) {
      std::size_t end = text.find('\n', start);
      if (end == std::string_view::npos) end = text.size();
      std::string_view line = text.substr(start, end - start);
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      lines.push_back(line);
      start = end + 1;
    }
  }

  std::optional<SpriteSet> set;
  std::map<char, PaletteEntry> palette;
  std::map<std::string, std::array<Bitmap, 4>> pending;
  std::vector<std::string> order;

  std::size_t i = 0;
  while (i < lines.size()) {
    const int line_no = static_cast<int>(i) + 1;
    const std::string_view line = lines[i++];
    const auto words = Words(line);
    if (words.empty() || words[0].front() == '#') continue;

    if (words[0] == "tile") {
      if (set) Fail(line_no, "duplicate tile directive");
      if (words.size() != 2) Fail(line_no, "expected 'tile <pixels>'");
      auto t = ParseInt(words[1]);
      if (!t || *t < 1) Fail(line_no, "tile size must be a positive integer");
      set.emplace(*t);
      continue;
    }
    if (!set) Fail(line_no, "'tile' must come before other directives");

    if (words[0] == "color") {
      if (words.size() < 3) Fail(line_no, "expected 'color <ch> ...'");
      if (words[1].size() != 1) Fail(line_no, "palette keys are single characters");
      const char key = words[1][0];
      if (palette.count(key)) Fail(line_no, std::string("duplicate palette key '") + key + "'");
      PaletteEntry entry;
      if (words.size() == 3 && words[2] == "transparent") {
        entry.transparent = true;
      } else if (words.size() == 5) {
        int c[3];
        for (int k = 0; k < 3; ++k) {
          auto v = ParseInt(words[2 + k]);
          if (!v || *v < 0 || *v > 255) Fail(line_no, "color components must be 0-255");
          c[k] = *v;
        }
        entry.color = {static_cast<std::uint8_t>(c[0]), static_cast<std::uint8_t>(c[1]),
                       static_cast<std::uint8_t>(c[2])};
      } else {
        Fail(line_no, "expected 'color <ch> <r> <g> <b>' or 'color <ch> transparent'");
      }
      palette[key] = entry;
      continue;
    }

    if (words[0] == "sprite") {
      if (words.size() < 2 || words.size() > 3) Fail(line_no, "expected 'sprite <name> [N|E|S|W]'");
      const std::string name(words[1]);
      Orientation facing = Orientation::kNorth;
      if (words.size() == 3) {
        auto f = ParseFacing(words[2]);
        if (!f) Fail(line_no, "facing must be one of N, E, S, W");
        facing = *f;
      }
      const int tile = set->tile_size();
      Bitmap b = MakeBitmap(tile);
      for (int row = 0; row < tile; ++row) {
        if (i >= lines.size()) Fail(line_no, "sprite '" + name + "' ends early");
        const std::string_view r = lines[i++];
        if (static_cast<int>(r.size()) != tile) {
          Fail(static_cast<int>(i), "sprite rows must be exactly " + std::to_string(tile) +
                                        " characters");
        }
        for (int x = 0; x < tile; ++x) {
          auto it = palette.find(r[x]);
          if (it == palette.end()) {
            Fail(static_cast<int>(i), std::string("unknown palette key '") + r[x] + "'");
          }
          const std::size_t p = static_cast<std::size_t>(row) * tile + x;
          if (it->second.transparent) {
            b.mask[p] = 0;
          } else {
            b.rgb[p * 3] = it->second.color.r;
            b.rgb[p * 3 + 1] = it->second.color.g;
            b.rgb[p * 3 + 2] = it->second.color.b;
          }
        }
      }
      auto [it, fresh] = pending.try_emplace(name);
      if (fresh) order.push_back(name);
      auto& slot = it->second[static_cast<int>(facing)];
      if (!slot.rgb.empty()) Fail(line_no, "duplicate bitmap for sprite '" + name + "'");
      slot = std::move(b);
      continue;
    }
    Fail(line_no, "unknown directive '" + std::string(words[0]) + "'");
  }

  if (!set) throw ConfigError("sprite text has no 'tile' directive");
  for (const auto& name : order) set->Add(name, std::move(pending[name]));
  return std::move(*set);
}

}  // namespace gridlab
