#pragma once

// Synthetic libraries and layouts shared by tests and benchmarks.

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "seamcheck/geom.hpp"
#include "seamcheck/libio.hpp"

namespace seamcheck::testing {

inline constexpr Dbu kRowHeight = 576;
inline constexpr Dbu kSiteWidth = 40;

// Cell with power rails on M2 and `bars` vertical Mask1/Mask2 M1 tracks kept
// at least `margin` from both side edges.
CellProfile make_cell(const std::string& name, Dbu width, int rows, int bars, Dbu margin = 60);

// `singles` single-height and `multis` double-height cells, widths drawn from
// the site grid. Deterministic for a given seed.
CellLibrary synthetic_library(std::size_t singles, std::size_t multis, std::uint64_t seed,
                              const std::string& name = "synth");

// Rule deck matching data/rules.yaml.
RuleDeck default_rules();

std::string write_lef(const CellLibrary& library);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& text);

// Directory holding the shipped fixture files (data/).
std::filesystem::path data_dir();

// Builds a FlatLayout directly from rectangles (one instance per shape).
FlatLayout layout_from_rects(const std::vector<ColoredRect>& rects, Dbu bin_size = 128);

Rect random_rect(std::mt19937_64& rng, Dbu extent, Dbu max_size);

}  // namespace seamcheck::testing
