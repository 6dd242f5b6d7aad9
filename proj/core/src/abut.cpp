#include "seamcheck/abut.hpp"

#include <algorithm>
#include <array>
#include <set>

#include "seamcheck/error.hpp"

namespace seamcheck {

namespace {

constexpr std::array<Orientation, 4> kAaSequence = {Orientation::MY, Orientation::R0,
                                                    Orientation::R0, Orientation::MY};
constexpr std::array<Orientation, 5> kAbSequence = {
    Orientation::R0, Orientation::R0, Orientation::MY, Orientation::MY, Orientation::R0};

std::string instance_name(std::size_t index) { return "U" + std::to_string(index + 1); }

}  // namespace

std::vector<Orientation> legal_orientations(RowParity parity) {
  if (parity == RowParity::Even) return {Orientation::R0, Orientation::MY};
  return {Orientation::MX, Orientation::R180};
}

std::string_view to_string(CaseKind kind) {
  switch (kind) {
    case CaseKind::AASingle:
      return "AA_single";
    case CaseKind::ABSingle:
      return "AB_single";
    case CaseKind::AAMulti:
      return "AA_multi";
    case CaseKind::ABSingleMulti:
      return "AB_single_multi";
  }
  return "?";
}

AbutmentCase gen_type_aa(const CellProfile& cell) {
  AbutmentCase c;
  c.kind = cell.single_height() ? CaseKind::AASingle : CaseKind::AAMulti;
  c.cell_a = cell.name;
  c.rows = cell.height_rows;
  Dbu x = 0;
  for (std::size_t i = 0; i < kAaSequence.size(); ++i) {
    if (i > 0) c.seams.push_back({x, cell.height_rows, i - 1, i});
    c.placements.push_back({instance_name(i), cell.name, {x, 0}, kAaSequence[i]});
    x += cell.width;
  }
  c.width = x;
  return c;
}

AbutmentCase gen_type_ab(const CellProfile& cell_a, const CellProfile& cell_b) {
  if (cell_a.name == cell_b.name) {
    throw Error(ErrorCode::Precondition, "A-B case needs two distinct cells, got " + cell_a.name);
  }
  if (!cell_a.single_height() || !cell_b.single_height()) {
    throw Error(ErrorCode::HeightMismatch,
                "A-B case needs single-height cells: " + cell_a.name + ", " + cell_b.name);
  }
  AbutmentCase c;
  c.kind = CaseKind::ABSingle;
  c.cell_a = cell_a.name;
  c.cell_b = cell_b.name;
  Dbu x = 0;
  for (std::size_t i = 0; i < kAbSequence.size(); ++i) {
    const CellProfile& cell = i % 2 == 0 ? cell_b : cell_a;
    if (i > 0) c.seams.push_back({x, 1, i - 1, i});
    c.placements.push_back({instance_name(i), cell.name, {x, 0}, kAbSequence[i]});
    x += cell.width;
  }
  c.width = x;
  return c;
}

AbutmentCase gen_single_multi(const CellProfile& multi, const CellProfile& single, Dbu row_height) {
  if (multi.height_rows < 2) {
    throw Error(ErrorCode::HeightMismatch, multi.name + " is not multi-height (rows=" +
                                               std::to_string(multi.height_rows) + ")");
  }
  if (!single.single_height()) {
    throw Error(ErrorCode::HeightMismatch, single.name + " is not single-height");
  }
  const int k = multi.height_rows;
  AbutmentCase c;
  c.kind = CaseKind::ABSingleMulti;
  c.cell_a = multi.name;
  c.cell_b = single.name;
  c.rows = k;
  Dbu x = 0;
  std::size_t prev_base = 0;
  for (std::size_t col = 0; col < kAbSequence.size(); ++col) {
    const Orientation base = kAbSequence[col];
    const std::size_t base_index = c.placements.size();
    if (col > 0) c.seams.push_back({x, k, prev_base, base_index});
    if (col % 2 == 0) {
      for (int row = 0; row < k; ++row) {
        const Orientation o = row % 2 == 0 ? base : flip_vertical(base);
        c.placements.push_back(
            {instance_name(c.placements.size()), single.name, {x, row * row_height}, o});
      }
      x += single.width;
    } else {
      c.placements.push_back({instance_name(c.placements.size()), multi.name, {x, 0}, base});
      x += multi.width;
    }
    prev_base = base_index;
  }
  c.width = x;
  return c;
}

std::vector<AbutmentCase> enumerate_library(const CellLibrary& library) {
  const auto& cells = library.cells();
  const Dbu rh = library.row_height();
  std::vector<AbutmentCase> cases;
  std::size_t singles = 0;
  for (const auto& c : cells) singles += c.single_height() ? 1 : 0;
  const std::size_t multis = cells.size() - singles;
  cases.reserve(cells.size() + singles * (singles ? singles - 1 : 0) / 2 + multis * singles);

  for (const auto& cell : cells) cases.push_back(gen_type_aa(cell));
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (!cells[i].single_height()) continue;
    for (std::size_t j = i + 1; j < cells.size(); ++j) {
      if (!cells[j].single_height()) continue;
      cases.push_back(gen_type_ab(cells[i], cells[j]));
    }
  }
  for (const auto& m : cells) {
    if (m.single_height()) continue;
    for (const auto& s : cells) {
      if (!s.single_height()) continue;
      cases.push_back(gen_single_multi(m, s, rh));
    }
  }
  return cases;
}

std::uint64_t expected_count(std::uint64_t n, CountMode mode) {
  if (n == 0) return 0;
  if (mode == CountMode::Proposed) return 4 * n + 5 * n * (n - 1) / 2;
  return 8 * n + 8 * n * (n - 1);
}

std::size_t total_placements(const std::vector<AbutmentCase>& cases) {
  std::size_t total = 0;
  for (const auto& c : cases) total += c.placements.size();
  return total;
}

Topology mirror(const Topology& t) {
  return {{t.right.cell, mirror_horizontal(t.right.orientation)},
          {t.left.cell, mirror_horizontal(t.left.orientation)}};
}

Topology canonical(const Topology& t) { return std::min(t, mirror(t)); }

CoverageReport coverage_check(const std::vector<AbutmentCase>& cases, const CellLibrary& library) {
  const auto& cells = library.cells();
  constexpr std::array<Orientation, 2> kRow = {Orientation::R0, Orientation::MY};

  std::set<Topology> required;
  auto require_pair = [&](std::size_t x, std::size_t y) {
    for (Orientation o1 : kRow) {
      for (Orientation o2 : kRow) {
        required.insert(canonical({{x, o1}, {y, o2}}));
        required.insert(canonical({{y, o1}, {x, o2}}));
      }
    }
  };
  for (std::size_t i = 0; i < cells.size(); ++i) {
    require_pair(i, i);
    for (std::size_t j = i + 1; j < cells.size(); ++j) {
      if (!cells[i].single_height() && !cells[j].single_height()) continue;
      require_pair(i, j);
    }
  }

  std::set<Topology> realized;
  for (const auto& c : cases) {
    for (const auto& seam : c.seams) {
      const Placement& l = c.placements.at(seam.left);
      const Placement& r = c.placements.at(seam.right);
      auto li = library.index_of(l.cell);
      auto ri = library.index_of(r.cell);
      if (!li || !ri) continue;
      if (mirrors_y_coordinate(l.orientation) || mirrors_y_coordinate(r.orientation)) continue;
      realized.insert(canonical({{*li, l.orientation}, {*ri, r.orientation}}));
    }
  }

  CoverageReport report;
  report.required = required.size();
  for (const auto& t : required) {
    if (realized.contains(t)) {
      ++report.covered;
    } else {
      report.missing.push_back(t);
    }
  }
  return report;
}

}  // namespace seamcheck
