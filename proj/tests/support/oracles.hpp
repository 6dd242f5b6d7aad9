#pragma once

// Brute-force reference implementations used to cross-check the library.
// Each one is written from the definitions alone and shares no code with the
// implementation it checks.

#include <cstddef>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "seamcheck/abut.hpp"
#include "seamcheck/geom.hpp"
#include "seamcheck/verify.hpp"

namespace seamcheck::testing {

// Shapes whose closed rect meets `window`, by linear scan.
std::vector<ShapeId> scan_window(const FlatLayout& layout, const Rect& window);

// Facing pairs on `layer` by all-pairs scan.
std::vector<ParallelRun> scan_runs(const FlatLayout& layout, LayerId layer, Dbu max_spacing);

// Whether the subgraph induced by `subset` admits a proper 2-coloring, by
// trying all 2^|subset| assignments.
bool two_colorable(const ConflictGraph& graph, const std::vector<std::size_t>& subset);

// Connected components, each sorted ascending.
std::vector<std::vector<std::size_t>> graph_components(const ConflictGraph& graph);

// Length of the shortest odd cycle through any vertex of `component`, via
// BFS on the parity double cover; SIZE_MAX when there is none.
std::size_t shortest_odd_cycle_length(const ConflictGraph& graph,
                                      const std::vector<std::size_t>& component);

// A seam side and an ordered left|right pair, identified with its mirror.
using SeamSide = std::pair<std::string, Orientation>;
using SeamPair = std::pair<SeamSide, SeamSide>;
using SeamClass = std::set<SeamPair>;

SeamClass seam_class(const SeamPair& pair);

// Left|right pairs of touching same-row placements, found from geometry.
std::vector<SeamPair> touching_pairs(const AbutmentCase& c, const CellLibrary& library);

// Classes needed between cells x and y using even-row orientations.
std::set<SeamClass> required_classes(const std::string& x, const std::string& y);

std::set<SeamClass> realized_classes(const std::vector<AbutmentCase>& cases,
                                     const CellLibrary& library);

struct ClassCoverage {
  std::size_t required = 0;
  std::size_t missing = 0;
};

// Every cell with itself and every pair with at least one single-height cell.
ClassCoverage brute_force_coverage(const std::vector<AbutmentCase>& cases,
                                   const CellLibrary& library);

}  // namespace seamcheck::testing
