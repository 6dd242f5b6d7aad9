#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string_view>

namespace seamcheck {

// Database units. 1000 DBU = 1 micron throughout the project.
using Dbu = std::int64_t;
inline constexpr Dbu kDbuPerMicron = 1000;

struct Point {
  Dbu x = 0;
  Dbu y = 0;
  auto operator<=>(const Point&) const = default;
};

// Axis-aligned rectangle with x1 < x2 and y1 < y2 for any real shape.
// Intersection tests are closed: rectangles sharing an edge intersect.
struct Rect {
  Dbu x1 = 0;
  Dbu y1 = 0;
  Dbu x2 = 0;
  Dbu y2 = 0;

  auto operator<=>(const Rect&) const = default;

  constexpr Dbu width() const { return x2 - x1; }
  constexpr Dbu height() const { return y2 - y1; }
  constexpr Dbu area() const { return width() * height(); }
  constexpr bool valid() const { return x1 < x2 && y1 < y2; }

  constexpr bool intersects(const Rect& o) const {
    return x1 <= o.x2 && o.x1 <= x2 && y1 <= o.y2 && o.y1 <= y2;
  }
  constexpr bool contains(const Rect& o) const {
    return x1 <= o.x1 && o.x2 <= x2 && y1 <= o.y1 && o.y2 <= y2;
  }
  constexpr Rect expanded(Dbu d) const { return {x1 - d, y1 - d, x2 + d, y2 + d}; }
  constexpr Rect translated(Point p) const { return {x1 + p.x, y1 + p.y, x2 + p.x, y2 + p.y}; }

  static constexpr Rect normalized(Dbu ax, Dbu ay, Dbu bx, Dbu by) {
    return {std::min(ax, bx), std::min(ay, by), std::max(ax, bx), std::max(ay, by)};
  }
};

constexpr Rect bounding_union(const Rect& a, const Rect& b) {
  return {std::min(a.x1, b.x1), std::min(a.y1, b.y1), std::max(a.x2, b.x2), std::max(a.y2, b.y2)};
}

std::ostream& operator<<(std::ostream& os, const Rect& r);

// Double-patterning mask color. Mask1/Mask2 correspond to the _E1/_E2
// layer-name suffixes in library files.
enum class Mask : std::uint8_t { None, Mask1, Mask2 };

std::string_view to_string(Mask m);
constexpr Mask opposite(Mask m) {
  return m == Mask::Mask1 ? Mask::Mask2 : m == Mask::Mask2 ? Mask::Mask1 : Mask::None;
}

// The four legal standard-cell orientations.
//   R0   identity                      (DEF N)
//   R180 rotated by 180 degrees        (DEF S)
//   MX   mirrored about the X axis     (DEF FS)
//   MY   mirrored about the Y axis     (DEF FN)
enum class Orientation : std::uint8_t { R0, R180, MX, MY };

inline constexpr std::array<Orientation, 4> kAllOrientations = {Orientation::R0, Orientation::R180,
                                                                Orientation::MX, Orientation::MY};

std::string_view to_string(Orientation o);
std::string_view to_def_code(Orientation o);
std::optional<Orientation> from_def_code(std::string_view code);
std::optional<Orientation> orientation_from_string(std::string_view name);

// Swaps the horizontal mirror state: R0<->MY, MX<->R180.
constexpr Orientation mirror_horizontal(Orientation o) {
  switch (o) {
    case Orientation::R0:
      return Orientation::MY;
    case Orientation::MY:
      return Orientation::R0;
    case Orientation::MX:
      return Orientation::R180;
    case Orientation::R180:
      return Orientation::MX;
  }
  return o;
}

// Swaps the vertical flip state: R0<->MX, MY<->R180.
constexpr Orientation flip_vertical(Orientation o) {
  switch (o) {
    case Orientation::R0:
      return Orientation::MX;
    case Orientation::MX:
      return Orientation::R0;
    case Orientation::MY:
      return Orientation::R180;
    case Orientation::R180:
      return Orientation::MY;
  }
  return o;
}

constexpr bool mirrors_x_coordinate(Orientation o) {
  return o == Orientation::MY || o == Orientation::R180;
}
constexpr bool mirrors_y_coordinate(Orientation o) {
  return o == Orientation::MX || o == Orientation::R180;
}

}  // namespace seamcheck
