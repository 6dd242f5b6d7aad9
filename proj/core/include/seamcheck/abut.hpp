#pragma once

// Reduced side-to-side abutment testcases.
//
// Every case is a short row of abutted instances whose seams together realize
// every abutment topology a pair of cells can form, up to mirror symmetry:
//
//   Type A-A         [A:MY][A:R0][A:R0][A:MY]                 3 seams, 3 classes
//   Type A-B         [B:R0][A:R0][B:MY][A:MY][B:R0]           4 seams, 4 classes
//   single/multi A-B same as A-B with each B replaced by a k-high stack
//
// A library of N single-height cells yields 4N + 5N(N-1)/2 instances.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "seamcheck/geometry.hpp"
#include "seamcheck/libio.hpp"

namespace seamcheck {

enum class RowParity { Even, Odd };

// Even rows carry R0/MY, odd rows carry the vertically flipped MX/R180.
std::vector<Orientation> legal_orientations(RowParity parity);

struct Placement {
  std::string instance;
  std::string cell;
  Point origin;
  Orientation orientation = Orientation::R0;

  auto operator<=>(const Placement&) const = default;
};

enum class CaseKind { AASingle, ABSingle, AAMulti, ABSingleMulti };

std::string_view to_string(CaseKind kind);

// Shared vertical edge between two horizontally adjacent instances. `left` and
// `right` index the case's placements at the seam's base row.
struct Seam {
  Dbu x = 0;
  int row_span = 1;
  std::size_t left = 0;
  std::size_t right = 0;
};

// Placements are relative to the case origin (0,0); the bottom row is even.
struct AbutmentCase {
  CaseKind kind = CaseKind::AASingle;
  std::string cell_a;
  std::optional<std::string> cell_b;
  std::vector<Placement> placements;
  std::vector<Seam> seams;
  Dbu width = 0;
  int rows = 1;
};

AbutmentCase gen_type_aa(const CellProfile& cell);
AbutmentCase gen_type_ab(const CellProfile& cell_a, const CellProfile& cell_b);
// `multi` must span k >= 2 rows and `single` exactly one.
AbutmentCase gen_single_multi(const CellProfile& multi, const CellProfile& single, Dbu row_height);

// One A-A case per cell, one A-B case per unordered pair of single-height
// cells, one single/multi case per (multi, single) pair. Order: all A-A in
// library order, then A-B pairs (i < j), then single/multi pairs.
std::vector<AbutmentCase> enumerate_library(const CellLibrary& library);

enum class CountMode { Proposed, Conventional };

// Proposed: 4N + 2.5N(N-1). Conventional: 8N + 8N(N-1).
std::uint64_t expected_count(std::uint64_t n, CountMode mode);

std::size_t total_placements(const std::vector<AbutmentCase>& cases);

// One side of an abutment: a cell in one of the even-row orientations.
struct AbutSide {
  std::size_t cell = 0;  // library index
  Orientation orientation = Orientation::R0;
  auto operator<=>(const AbutSide&) const = default;
};

// Ordered (left, right) abutment.
struct Topology {
  AbutSide left;
  AbutSide right;
  auto operator<=>(const Topology&) const = default;
};

// Mirroring the whole pair about a vertical axis swaps the sides and the
// horizontal mirror state of each.
Topology mirror(const Topology& t);
// Lexicographically smaller of t and mirror(t).
Topology canonical(const Topology& t);

struct CoverageReport {
  std::size_t required = 0;
  std::size_t covered = 0;
  std::vector<Topology> missing;  // canonical representatives, sorted

  bool complete() const { return missing.empty(); }
};

// Required classes: for every cell its A-A classes, and for every pair of
// distinct cells that are not both multi-height its A-B classes, over
// orientations {R0, MY}. A class is covered when some seam realizes it.
CoverageReport coverage_check(const std::vector<AbutmentCase>& cases, const CellLibrary& library);

}  // namespace seamcheck
