#pragma once

// Seam attribution, summary tables, violation records and SVG snapshots.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "seamcheck/abut.hpp"
#include "seamcheck/emitio.hpp"
#include "seamcheck/geom.hpp"
#include "seamcheck/verify.hpp"

namespace seamcheck {

struct SeamReport {
  std::size_t case_index = 0;
  std::size_t seam_index = 0;
  std::string module;
  Dbu x = 0;  // die coordinates
  Rect band;  // attribution band: seam +/- window over the case's rows
  std::string left_cell;
  Orientation left_orientation = Orientation::R0;
  std::string right_cell;
  Orientation right_orientation = Orientation::R0;
  std::vector<std::size_t> violations;  // indices into the input list
};

struct Attribution {
  std::vector<SeamReport> seams;                   // only seams with violations
  std::vector<std::size_t> residual;               // touched no seam
  std::vector<std::vector<std::size_t>> seams_of;  // per violation, into `seams`
};

// A violation belongs to every seam whose band [x - window, x + window],
// spanning the rows of the seam's case, intersects its bbox.
Attribution attribute_to_seams(const std::vector<Violation>& violations,
                               const std::vector<AbutmentCase>& cases, const Floorplan& floorplan,
                               Dbu window);

struct RunCounts {
  std::string library;
  DptOption option = DptOption::OptionI;
  std::size_t drc = 0;
  std::size_t drc_plus = 0;
};

struct SummaryRow {
  std::string library;
  std::optional<std::size_t> drc_option1;
  std::optional<std::size_t> drc_plus_option1;
  std::optional<std::size_t> drc_option2;
  std::optional<std::size_t> drc_plus_option2;
};

// Rows in first-appearance order of the libraries. Zero renders as "Clean",
// an option that was not run as "-".
struct SummaryTable {
  std::vector<SummaryRow> rows;

  std::string render_text() const;
  std::string render_json() const;
};

SummaryTable summarize(const std::vector<RunCounts>& runs);
SummaryTable summarize(const std::vector<VerificationResult>& results);

std::string format_count(std::optional<std::size_t> count);

// One JSON object per line and per violation.
std::string violation_records(const VerificationResult& result, const Attribution& attribution);

struct ViolationRecord {
  std::string library;
  DptOption option = DptOption::OptionI;
  ViolationKind kind = ViolationKind::Width;
  std::string layer;
  Rect bbox;
  std::string case_module;
  std::vector<Dbu> seams;
  std::vector<ShapeId> shapes;
  std::string pattern;
};

std::vector<ViolationRecord> parse_violation_records(std::string_view text);

// Recolor diff of an Option II run, one JSON object per changed shape.
std::string recolor_records(const VerificationResult& result);

// SVG 1.1 view of bbox + margin showing the violation layer's shapes by mask,
// the violation outline and any attributed seam lines.
std::string render_svg(const FlatLayout& layout, const Violation& violation, Dbu margin,
                       const std::vector<Dbu>& seam_xs = {});

}  // namespace seamcheck
