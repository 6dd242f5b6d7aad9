#pragma once

// Cell library and rule deck input, plus library profiling.
//
// The library format is a small LEF subset:
//
//   VERSION 5.8 ;
//   SITE core  CLASS CORE ; SIZE 0.05 BY 0.576 ;  END core
//   MACRO INV
//     CLASS CORE ;
//     SIZE 0.2 BY 0.576 ;
//     PIN A  DIRECTION INPUT ;  PORT  LAYER M1 ;  RECT 0.05 0.1 0.08 0.4 ;  END  END A
//     OBS  LAYER M1_E1 ;  RECT 0.01 0.1 0.04 0.4 ;  END
//   END INV
//   END LIBRARY
//
// A `_E1` / `_E2` suffix on a layer name assigns Mask1 / Mask2; the suffix is
// stripped from the stored layer name. Coordinates are microns with at most
// three decimals and convert exactly to DBU.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "seamcheck/geometry.hpp"

namespace seamcheck {

struct ColoredRect {
  std::string layer;
  Mask mask = Mask::None;
  Rect rect;

  auto operator<=>(const ColoredRect&) const = default;
};

struct PinDef {
  std::string name;
  std::vector<ColoredRect> rects;
};

struct CellProfile {
  std::string name;
  Dbu width = 0;
  Dbu height = 0;
  int height_rows = 1;
  std::vector<PinDef> pins;
  // Geometry seen by the checkers.
  std::vector<ColoredRect> shapes;

  bool single_height() const { return height_rows == 1; }
};

class CellLibrary {
 public:
  CellLibrary() = default;
  // Validates every invariant (row height, unique names, height multiples,
  // shape bounds) and throws Error on the first violation.
  CellLibrary(std::string name, Dbu row_height, std::vector<CellProfile> cells);

  const std::string& name() const { return name_; }
  Dbu row_height() const { return row_height_; }
  const std::vector<CellProfile>& cells() const { return cells_; }
  std::size_t size() const { return cells_.size(); }

  const CellProfile* find(std::string_view cell) const;
  const CellProfile& at(std::string_view cell) const;
  std::optional<std::size_t> index_of(std::string_view cell) const;

 private:
  std::string name_;
  Dbu row_height_ = 0;
  std::vector<CellProfile> cells_;
  std::unordered_map<std::string, std::size_t> index_;
};

// Converts a decimal micron literal ("0.576", "-1.2", "3") to DBU exactly.
// More than three fractional digits is a Precision error.
Dbu parse_microns(std::string_view literal);

// `row_height` is used when the file declares no SITE; when both are present
// they must agree.
CellLibrary parse_library(std::string_view text, std::string name = "lib",
                          std::optional<Dbu> row_height = std::nullopt);

struct LayerRule {
  Dbu min_width = 0;
  Dbu spacing_any = 0;   // minimum spacing regardless of mask
  Dbu spacing_same = 0;  // minimum spacing between same-mask shapes
  bool dpt = false;
};

// A hotspot is `masks.size()` parallel tracks on one layer, consecutive gaps
// at most `max_gap` and a common run of at least `min_run_length`.
struct HotspotPattern {
  std::string name;
  std::string layer;
  std::vector<Mask> masks;
  Dbu max_gap = 0;
  Dbu min_run_length = 0;

  std::size_t track_count() const { return masks.size(); }
};

struct RuleDeck {
  Dbu row_height = 0;
  Dbu site_width = 0;
  Dbu interaction_distance = 0;
  std::map<std::string, LayerRule, std::less<>> layers;
  std::vector<HotspotPattern> hotspot_patterns;

  const LayerRule* rule(std::string_view layer) const;
};

// Parses a YAML rule deck. All distances are DBU:
//
//   row_height: 576
//   site_width: 50
//   interaction_distance: 128     # optional, defaults to the largest rule reach
//   layers:
//     M1: { min_width: 32, spacing_any: 32, spacing_same: 64, dpt: true }
//   hotspot_patterns:
//     - { name: BRIDGE4, layer: M1, masks: [1, 2, 1, 2], max_gap: 80, min_run_length: 100 }
RuleDeck parse_rules(std::string_view text);

struct LibraryStats {
  std::map<Dbu, std::size_t> width_histogram;
  std::map<int, std::size_t> height_rows_histogram;
  std::size_t single_height = 0;
  std::size_t multi_height = 0;

  std::size_t total() const { return single_height + multi_height; }
};

LibraryStats profile(const CellLibrary& library);

}  // namespace seamcheck
