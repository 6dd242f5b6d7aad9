#pragma once

// Flattened layout, orientation transforms and proximity queries.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "seamcheck/abut.hpp"
#include "seamcheck/geometry.hpp"
#include "seamcheck/libio.hpp"

namespace seamcheck {

using ShapeId = std::uint32_t;
using LayerId = std::uint16_t;

// Places `rect` (cell coordinates) into die coordinates. The origin is the
// lower-left corner of the placed cell's bounding box.
Rect transform_rect(const Rect& rect, Dbu cell_width, Dbu cell_height, Orientation orientation,
                    Point origin);

struct FlatShape {
  ShapeId id = 0;
  LayerId layer = 0;
  Mask mask = Mask::None;
  Rect rect;
  std::uint32_t instance = 0;    // index into FlatLayout::instances()
  std::uint32_t cell_shape = 0;  // index into the cell's shape list
};

// Uniform bin grid over a fixed extent. Each shape is listed in every bin it
// touches; queries gather candidates from the covered bins and filter exactly.
class GridIndex {
 public:
  GridIndex() = default;
  GridIndex(const Rect& extent, Dbu bin_size, std::span<const FlatShape> shapes);

  // Ids of shapes whose rect intersects `window` (closed), ascending.
  std::vector<ShapeId> query(const Rect& window, std::span<const FlatShape> shapes) const;

  Dbu bin_size() const { return bin_; }

 private:
  int bin_of(Dbu offset, int count) const;

  Rect extent_;
  Dbu bin_ = 1;
  int nx_ = 0;
  int ny_ = 0;
  std::vector<std::uint32_t> offsets_;  // CSR row starts, size nx*ny + 1
  std::vector<ShapeId> entries_;
};

class FlatLayout {
 public:
  FlatLayout() = default;
  FlatLayout(Rect die_area, std::vector<std::string> layers, std::vector<Placement> instances,
             std::vector<FlatShape> shapes, Dbu bin_size);

  const Rect& die_area() const { return die_area_; }
  std::span<const FlatShape> shapes() const { return shapes_; }
  const FlatShape& shape(ShapeId id) const { return shapes_[id]; }
  const std::vector<std::string>& layers() const { return layers_; }
  const std::string& layer_name(LayerId id) const { return layers_.at(id); }
  std::optional<LayerId> layer_id(std::string_view name) const;
  const std::vector<Placement>& instances() const { return instances_; }
  const Placement& instance_of(ShapeId id) const { return instances_[shapes_[id].instance]; }
  Dbu bin_size() const { return index_.bin_size(); }

  // Copy with masks replaced; `masks` is indexed by ShapeId.
  FlatLayout with_masks(std::vector<Mask> masks) const;

 private:
  Rect die_area_;
  std::vector<std::string> layers_;
  std::vector<Placement> instances_;
  std::vector<FlatShape> shapes_;
  GridIndex index_;

  friend std::vector<ShapeId> query_window(const FlatLayout&, const Rect&);
};

// Shape ids are assigned in placement order, then cell shape order. Throws
// UnknownCellRef, or ShapeOutOfBounds if a shape leaves the die.
FlatLayout flatten(const CellLibrary& library, const std::vector<Placement>& placements,
                   const Rect& die_area, Dbu bin_size);

std::vector<ShapeId> query_window(const FlatLayout& layout, const Rect& window);

// Horizontal: the shapes sit side by side and the gap is measured along x
// (their vertical edges face). Vertical: stacked, gap measured along y.
enum class RunAxis { Horizontal, Vertical };

// `a < b`. Touching or overlapping shapes are reported with spacing 0.
struct ParallelRun {
  ShapeId a = 0;
  ShapeId b = 0;
  Dbu spacing = 0;
  Dbu run_length = 0;
  RunAxis axis = RunAxis::Horizontal;

  auto operator<=>(const ParallelRun&) const = default;
};

// Facing relation between two rectangles, if their projections overlap on
// one axis by a positive length and the gap on the other is <= max_spacing.
std::optional<ParallelRun> facing_run(const Rect& a, const Rect& b, Dbu max_spacing);

// All same-layer pairs on `layer` with spacing <= max_spacing and positive
// run length, sorted by (a, b). `jobs` bounds worker threads.
std::vector<ParallelRun> parallel_runs(const FlatLayout& layout, LayerId layer, Dbu max_spacing,
                                       int jobs = 1);

}  // namespace seamcheck
