#pragma once

// Floorplanning of abutment cases plus Verilog/DEF serialization.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "seamcheck/abut.hpp"
#include "seamcheck/geometry.hpp"
#include "seamcheck/libio.hpp"

namespace seamcheck {

struct CaseSlot {
  std::size_t shelf = 0;  // packing shelf, counted from the bottom
  int row = 0;            // first row of the shelf (always even)
  Dbu x = 0;
  Point origin(Dbu row_height) const { return {x, row * row_height}; }
};

// Cases are packed first-fit onto shelves. A shelf is as tall as its tallest
// case rounded up to an even row count, and consecutive shelves are separated
// by enough empty rows that nothing interacts vertically.
struct Floorplan {
  Dbu max_row_width = 0;
  Dbu case_gap = 0;
  Dbu row_height = 0;
  std::vector<CaseSlot> slots;  // parallel to the case list
  Rect die_area;
};

Floorplan plan_floorplan(const std::vector<AbutmentCase>& cases, const RuleDeck& rules,
                         Dbu max_row_width);

// Module name of a case: scell_<A>, scell_<A>_<B> or mcell_<A>_<B>, with any
// character outside [A-Za-z0-9_] replaced by '_'.
std::string case_module_name(const AbutmentCase& c);

// Module names for all cases; throws NameCollision on duplicates.
std::vector<std::string> case_module_names(const std::vector<AbutmentCase>& cases);

// Absolute placements with hierarchical instance names `<module>/U<i>`,
// in case order.
std::vector<Placement> place_cases(const std::vector<AbutmentCase>& cases,
                                   const Floorplan& floorplan);

std::string emit_verilog(const std::vector<AbutmentCase>& cases);

struct DefDesign {
  std::string design = "TOP";
  Rect die_area;
  std::vector<Placement> components;

  bool operator==(const DefDesign&) const = default;
};

std::string write_def(const DefDesign& design);
std::string emit_def(const std::vector<AbutmentCase>& cases, const CellLibrary& library,
                     const Floorplan& floorplan);
DefDesign parse_def(std::string_view text);

}  // namespace seamcheck
