#pragma once

// Width/spacing DRC, double-patterning color verification and hotspot
// pattern matching over a flattened layout.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "seamcheck/abut.hpp"
#include "seamcheck/emitio.hpp"
#include "seamcheck/geom.hpp"
#include "seamcheck/libio.hpp"

namespace seamcheck {

enum class ViolationKind {
  Width,
  SpacingSameMask,
  SpacingAnyMask,
  ColorMissing,
  OddCycle,
  Hotspot
};

std::string_view to_string(ViolationKind kind);
std::optional<ViolationKind> violation_kind_from_string(std::string_view name);

// DRC+ covers pattern hits; everything else is DRC.
constexpr bool is_drc_plus(ViolationKind k) { return k == ViolationKind::Hotspot; }
constexpr bool is_color_related(ViolationKind k) {
  return k == ViolationKind::SpacingSameMask || k == ViolationKind::ColorMissing ||
         k == ViolationKind::OddCycle;
}

struct Violation {
  ViolationKind kind = ViolationKind::Width;
  std::string layer;
  Rect bbox;
  std::vector<ShapeId> shapes;  // ascending
  std::string pattern;          // Hotspot only
  std::size_t case_index = 0;   // filled in by run_all

  auto operator<=>(const Violation&) const = default;
};

// Pre-assigned cell colors (I) versus recoloring the placed layout (II).
enum class DptOption { OptionI, OptionII };

std::string_view to_string(DptOption option);

std::vector<Violation> check_width(const FlatLayout& layout, const RuleDeck& rules);

// Spacing between shapes that are not connected (touching or overlapping
// shapes on a layer form one connected group). Under Option II the same-mask
// check applies only where both shapes carry a mask and ColorMissing is not
// reported.
std::vector<Violation> check_spacing(const FlatLayout& layout, const RuleDeck& rules,
                                     DptOption option, int jobs = 1);

struct ConflictEdge {
  std::size_t u = 0;
  std::size_t v = 0;  // u < v
  ShapeId witness_a = 0;
  ShapeId witness_b = 0;

  auto operator<=>(const ConflictEdge&) const = default;
};

// Nodes are connected groups of touching same-layer shapes, numbered by their
// smallest shape id. An edge joins two nodes when some pair of their shapes
// faces with 0 < spacing < spacing_same.
struct ConflictGraph {
  std::string layer;
  std::vector<std::vector<ShapeId>> nodes;  // each ascending
  std::vector<ConflictEdge> edges;          // sorted, unique (u, v)
  std::vector<std::size_t> node_of_shape;   // indexed by ShapeId, npos off-layer

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::vector<std::vector<std::size_t>> adjacency() const;

  bool operator==(const ConflictGraph&) const = default;
};

ConflictGraph build_conflict_graph(const FlatLayout& layout, const RuleDeck& rules,
                                   const std::string& layer, int jobs = 1);

// Per-node masks; Mask::None for nodes of non-bipartite components. Each
// component's smallest node gets Mask1.
struct ColorResult {
  std::vector<Mask> node_masks;
  std::vector<Violation> odd_cycles;  // one per non-bipartite component

  bool bipartite() const { return odd_cycles.empty(); }
};

ColorResult color_decompose(const ConflictGraph& graph, const FlatLayout& layout);

// Overwrites masks of the graph's shapes. Throws IncompleteAssignment when a
// node has no mask unless `allow_partial`, in which case its shapes become
// uncolored.
FlatLayout apply_colors(const FlatLayout& layout, const ConflictGraph& graph,
                        const std::vector<Mask>& node_masks, bool allow_partial = false);

std::vector<Violation> match_hotspots(const FlatLayout& layout,
                                      const std::vector<HotspotPattern>& patterns, int jobs = 1);

// Shape whose mask was changed by Option II recoloring.
struct RecolorChange {
  ShapeId shape = 0;
  Mask from = Mask::None;
  Mask to = Mask::None;
};

struct RunOptions {
  Dbu max_row_width = 200000;
  int jobs = 1;
};

struct VerificationResult {
  std::string library;
  DptOption option = DptOption::OptionI;
  std::vector<AbutmentCase> cases;
  Floorplan floorplan;
  FlatLayout layout;  // after recoloring under Option II
  std::vector<std::size_t> case_of_instance;
  std::vector<Violation> width;
  std::vector<Violation> spacing;   // SpacingAnyMask, SpacingSameMask, ColorMissing
  std::vector<Violation> coloring;  // OddCycle
  std::vector<Violation> hotspots;
  std::vector<RecolorChange> recolored;

  // All violations sorted by (case, layer, kind, bbox, shapes).
  std::vector<Violation> all() const;
  std::size_t drc_count() const;
  std::size_t drc_plus_count() const;
  std::size_t color_related_count() const;
  bool clean() const { return drc_count() == 0 && drc_plus_count() == 0; }
};

// Flattened layout of all cases before any checks or recoloring.
struct PreparedLayout {
  std::vector<AbutmentCase> cases;
  Floorplan floorplan;
  FlatLayout layout;
  std::vector<std::size_t> case_of_instance;
};

PreparedLayout prepare_layout(const CellLibrary& library, const RuleDeck& rules,
                              const RunOptions& options);

// enumerate -> floorplan -> flatten -> (Option II: recolor each DPT layer)
// -> width, spacing and hotspot checks.
VerificationResult run_all(const CellLibrary& library, const RuleDeck& rules, DptOption option,
                           const RunOptions& options = {});

// Checks an already prepared layout. Exposed so callers can verify layouts
// that were not produced by enumeration.
VerificationResult verify_layout(PreparedLayout prepared, const RuleDeck& rules, DptOption option,
                                 int jobs = 1);

}  // namespace seamcheck
