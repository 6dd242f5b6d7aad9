#include "seamcheck/geom.hpp"

#include <algorithm>
#include <unordered_map>

#include "parallel.hpp"
#include "seamcheck/error.hpp"

namespace seamcheck {

Rect transform_rect(const Rect& r, Dbu cell_width, Dbu cell_height, Orientation orientation,
                    Point origin) {
  Dbu x1 = r.x1, x2 = r.x2, y1 = r.y1, y2 = r.y2;
  if (mirrors_x_coordinate(orientation)) {
    x1 = cell_width - r.x2;
    x2 = cell_width - r.x1;
  }
  if (mirrors_y_coordinate(orientation)) {
    y1 = cell_height - r.y2;
    y2 = cell_height - r.y1;
  }
  return Rect{x1, y1, x2, y2}.translated(origin);
}

GridIndex::GridIndex(const Rect& extent, Dbu bin_size, std::span<const FlatShape> shapes)
    : extent_(extent), bin_(std::max<Dbu>(bin_size, 1)) {
  // Keep the grid proportional to the shape count on sparse, wide dies.
  const double cap = 4.0 * static_cast<double>(shapes.size()) + 4096.0;
  auto cells = [&] {
    return static_cast<double>(extent_.width() / bin_ + 1) *
           static_cast<double>(extent_.height() / bin_ + 1);
  };
  while (cells() > cap) bin_ *= 2;
  nx_ = static_cast<int>(extent_.width() / bin_ + 1);
  ny_ = static_cast<int>(extent_.height() / bin_ + 1);

  const std::size_t nbins = static_cast<std::size_t>(nx_) * static_cast<std::size_t>(ny_);
  std::vector<std::uint32_t> counts(nbins + 1, 0);
  auto for_each_bin = [&](const Rect& r, auto&& fn) {
    const int bx1 = bin_of(r.x1 - extent_.x1, nx_);
    const int bx2 = bin_of(r.x2 - extent_.x1, nx_);
    const int by1 = bin_of(r.y1 - extent_.y1, ny_);
    const int by2 = bin_of(r.y2 - extent_.y1, ny_);
    for (int by = by1; by <= by2; ++by) {
      for (int bx = bx1; bx <= bx2; ++bx) fn(static_cast<std::size_t>(by) * nx_ + bx);
    }
  };
  for (const auto& s : shapes) for_each_bin(s.rect, [&](std::size_t b) { ++counts[b + 1]; });
  for (std::size_t b = 0; b < nbins; ++b) counts[b + 1] += counts[b];
  offsets_ = counts;
  entries_.resize(offsets_.back());
  std::vector<std::uint32_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (const auto& s : shapes)
    for_each_bin(s.rect, [&](std::size_t b) { entries_[fill[b]++] = s.id; });
}

int GridIndex::bin_of(Dbu offset, int count) const {
  if (offset < 0) return 0;
  return static_cast<int>(std::min<Dbu>(offset / bin_, count - 1));
}

std::vector<ShapeId> GridIndex::query(const Rect& window, std::span<const FlatShape> shapes) const {
  std::vector<ShapeId> out;
  if (nx_ == 0 || !window.intersects(extent_)) return out;
  const int bx1 = bin_of(window.x1 - extent_.x1, nx_);
  const int bx2 = bin_of(window.x2 - extent_.x1, nx_);
  const int by1 = bin_of(window.y1 - extent_.y1, ny_);
  const int by2 = bin_of(window.y2 - extent_.y1, ny_);
  for (int by = by1; by <= by2; ++by) {
    for (int bx = bx1; bx <= bx2; ++bx) {
      const std::size_t b = static_cast<std::size_t>(by) * nx_ + bx;
      for (std::uint32_t k = offsets_[b]; k < offsets_[b + 1]; ++k) {
        const ShapeId id = entries_[k];
        if (shapes[id].rect.intersects(window)) out.push_back(id);
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

FlatLayout::FlatLayout(Rect die_area, std::vector<std::string> layers,
                       std::vector<Placement> instances, std::vector<FlatShape> shapes,
                       Dbu bin_size)
    : die_area_(die_area),
      layers_(std::move(layers)),
      instances_(std::move(instances)),
      shapes_(std::move(shapes)),
      index_(die_area_, bin_size, shapes_) {}

std::optional<LayerId> FlatLayout::layer_id(std::string_view name) const {
  for (std::size_t i = 0; i < layers_.size(); ++i) {
    if (layers_[i] == name) return static_cast<LayerId>(i);
  }
  return std::nullopt;
}

FlatLayout FlatLayout::with_masks(std::vector<Mask> masks) const {
  if (masks.size() != shapes_.size()) {
    throw Error(ErrorCode::Precondition, "mask vector does not match shape count");
  }
  FlatLayout out = *this;
  for (std::size_t i = 0; i < masks.size(); ++i) out.shapes_[i].mask = masks[i];
  return out;
}

FlatLayout flatten(const CellLibrary& library, const std::vector<Placement>& placements,
                   const Rect& die_area, Dbu bin_size) {
  std::vector<std::string> layers;
  std::unordered_map<std::string, LayerId> layer_ids;
  auto intern = [&](const std::string& name) {
    auto [it, inserted] = layer_ids.emplace(name, static_cast<LayerId>(layers.size()));
    if (inserted) layers.push_back(name);
    return it->second;
  };
  // Layer ids follow first appearance in library order, independent of placements.
  for (const auto& cell : library.cells()) {
    for (const auto& s : cell.shapes) intern(s.layer);
  }

  std::vector<FlatShape> shapes;
  for (std::size_t pi = 0; pi < placements.size(); ++pi) {
    const Placement& p = placements[pi];
    const CellProfile* cell = library.find(p.cell);
    if (cell == nullptr) {
      throw Error(ErrorCode::UnknownCellRef, p.instance + " references unknown cell " + p.cell);
    }
    for (std::size_t si = 0; si < cell->shapes.size(); ++si) {
      const ColoredRect& src = cell->shapes[si];
      FlatShape fs;
      fs.id = static_cast<ShapeId>(shapes.size());
      fs.layer = layer_ids.at(src.layer);
      fs.mask = src.mask;
      fs.rect = transform_rect(src.rect, cell->width, cell->height, p.orientation, p.origin);
      fs.instance = static_cast<std::uint32_t>(pi);
      fs.cell_shape = static_cast<std::uint32_t>(si);
      if (!die_area.contains(fs.rect)) {
        throw Error(ErrorCode::ShapeOutOfBounds, p.instance + " places a shape outside the die");
      }
      shapes.push_back(fs);
    }
  }
  return FlatLayout(die_area, std::move(layers), placements, std::move(shapes), bin_size);
}

std::vector<ShapeId> query_window(const FlatLayout& layout, const Rect& window) {
  return layout.index_.query(window, layout.shapes_);
}

std::optional<ParallelRun> facing_run(const Rect& a, const Rect& b, Dbu max_spacing) {
  const Dbu x_overlap = std::min(a.x2, b.x2) - std::max(a.x1, b.x1);
  const Dbu y_overlap = std::min(a.y2, b.y2) - std::max(a.y1, b.y1);
  ParallelRun run;
  if (x_overlap > 0 && y_overlap > 0) {
    run.spacing = 0;
    run.run_length = y_overlap;
    run.axis = RunAxis::Horizontal;
  } else if (y_overlap > 0) {
    run.spacing = -x_overlap;
    run.run_length = y_overlap;
    run.axis = RunAxis::Horizontal;
  } else if (x_overlap > 0) {
    run.spacing = -y_overlap;
    run.run_length = x_overlap;
    run.axis = RunAxis::Vertical;
  } else {
    return std::nullopt;
  }
  if (run.spacing > max_spacing) return std::nullopt;
  return run;
}

std::vector<ParallelRun> parallel_runs(const FlatLayout& layout, LayerId layer, Dbu max_spacing,
                                       int jobs) {
  const auto shapes = layout.shapes();
  return detail::parallel_collect<ParallelRun>(
      shapes.size(), jobs, [&](std::size_t begin, std::size_t end) {
        std::vector<ParallelRun> out;
        for (std::size_t i = begin; i < end; ++i) {
          const FlatShape& a = shapes[i];
          if (a.layer != layer) continue;
          for (ShapeId j : query_window(layout, a.rect.expanded(max_spacing))) {
            if (j <= a.id || shapes[j].layer != layer) continue;
            if (auto run = facing_run(a.rect, shapes[j].rect, max_spacing)) {
              run->a = a.id;
              run->b = j;
              out.push_back(*run);
            }
          }
        }
        return out;
      });
}

}  // namespace seamcheck
