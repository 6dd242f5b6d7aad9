#include "seamcheck/report.hpp"

#include <algorithm>
#include <iomanip>
#include <map>
#include <nlohmann/json.hpp>
#include <sstream>

#include "seamcheck/error.hpp"

namespace seamcheck {

using nlohmann::json;

Attribution attribute_to_seams(const std::vector<Violation>& violations,
                               const std::vector<AbutmentCase>& cases, const Floorplan& floorplan,
                               Dbu window) {
  struct Band {
    Rect rect;
    std::size_t case_index;
    std::size_t seam_index;
    Dbu x;
  };
  std::vector<Band> bands;
  for (std::size_t ci = 0; ci < cases.size() && ci < floorplan.slots.size(); ++ci) {
    const Point origin = floorplan.slots[ci].origin(floorplan.row_height);
    const Dbu top = origin.y + cases[ci].rows * floorplan.row_height;
    for (std::size_t si = 0; si < cases[ci].seams.size(); ++si) {
      const Dbu x = origin.x + cases[ci].seams[si].x;
      bands.push_back({{x - window, origin.y, x + window, top}, ci, si, x});
    }
  }
  // Every band is 2*window wide, so candidates for a bbox lie in a contiguous
  // range of x1.
  std::sort(bands.begin(), bands.end(), [](const Band& a, const Band& b) {
    return std::tie(a.rect.x1, a.case_index, a.seam_index) <
           std::tie(b.rect.x1, b.case_index, b.seam_index);
  });

  Attribution out;
  out.seams_of.resize(violations.size());
  std::map<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>> hits;
  for (std::size_t vi = 0; vi < violations.size(); ++vi) {
    const Rect& bb = violations[vi].bbox;
    auto first = std::lower_bound(bands.begin(), bands.end(), bb.x1 - 2 * window,
                                  [](const Band& b, Dbu v) { return b.rect.x1 < v; });
    bool any = false;
    for (auto it = first; it != bands.end() && it->rect.x1 <= bb.x2; ++it) {
      if (it->rect.intersects(bb)) {
        hits[{it->case_index, it->seam_index}].push_back(vi);
        any = true;
      }
    }
    if (!any) out.residual.push_back(vi);
  }

  const auto names = case_module_names(cases);
  for (auto& [key, list] : hits) {
    const auto [ci, si] = key;
    const AbutmentCase& c = cases[ci];
    const Seam& seam = c.seams[si];
    SeamReport r;
    r.case_index = ci;
    r.seam_index = si;
    r.module = names[ci];
    const Point origin = floorplan.slots[ci].origin(floorplan.row_height);
    r.x = origin.x + seam.x;
    r.band = {r.x - window, origin.y, r.x + window, origin.y + c.rows * floorplan.row_height};
    r.left_cell = c.placements[seam.left].cell;
    r.left_orientation = c.placements[seam.left].orientation;
    r.right_cell = c.placements[seam.right].cell;
    r.right_orientation = c.placements[seam.right].orientation;
    std::sort(list.begin(), list.end());
    r.violations = list;
    for (std::size_t vi : list) out.seams_of[vi].push_back(out.seams.size());
    out.seams.push_back(std::move(r));
  }
  return out;
}

SummaryTable summarize(const std::vector<RunCounts>& runs) {
  SummaryTable table;
  std::map<std::string, std::size_t> row_of;
  for (const auto& run : runs) {
    auto [it, inserted] = row_of.emplace(run.library, table.rows.size());
    if (inserted) table.rows.push_back({run.library, {}, {}, {}, {}});
    SummaryRow& row = table.rows[it->second];
    if (run.option == DptOption::OptionI) {
      row.drc_option1 = row.drc_option1.value_or(0) + run.drc;
      row.drc_plus_option1 = row.drc_plus_option1.value_or(0) + run.drc_plus;
    } else {
      row.drc_option2 = row.drc_option2.value_or(0) + run.drc;
      row.drc_plus_option2 = row.drc_plus_option2.value_or(0) + run.drc_plus;
    }
  }
  return table;
}

SummaryTable summarize(const std::vector<VerificationResult>& results) {
  std::vector<RunCounts> runs;
  runs.reserve(results.size());
  for (const auto& r : results) {
    runs.push_back({r.library, r.option, r.drc_count(), r.drc_plus_count()});
  }
  return summarize(runs);
}

std::string format_count(std::optional<std::size_t> count) {
  if (!count) return "-";
  if (*count == 0) return "Clean";
  return std::to_string(*count);
}

std::string SummaryTable::render_text() const {
  const std::vector<std::string> header = {"Library", "Option I DRC", "Option I DRC+",
                                           "Option II DRC", "Option II DRC+"};
  std::vector<std::vector<std::string>> cells;
  for (const auto& r : rows) {
    cells.push_back({r.library, format_count(r.drc_option1), format_count(r.drc_plus_option1),
                     format_count(r.drc_option2), format_count(r.drc_plus_option2)});
  }
  std::vector<std::size_t> width(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) {
    width[c] = header[c].size();
    for (const auto& row : cells) width[c] = std::max(width[c], row[c].size());
  }
  std::ostringstream os;
  auto line = [&](const std::vector<std::string>& row) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c > 0) os << " | ";
      os << row[c];
      if (c + 1 < row.size()) os << std::string(width[c] - row[c].size(), ' ');
    }
    os << "\n";
  };
  line(header);
  std::vector<std::string> rule;
  for (std::size_t w : width) rule.push_back(std::string(w, '-'));
  line(rule);
  for (const auto& row : cells) line(row);
  return os.str();
}

std::string SummaryTable::render_json() const {
  json out = json::array();
  auto value = [](std::optional<std::size_t> v) -> json {
    if (!v) return nullptr;
    return *v;
  };
  for (const auto& r : rows) {
    out.push_back(
        {{"library", r.library},
         {"option_I", {{"drc", value(r.drc_option1)}, {"drc_plus", value(r.drc_plus_option1)}}},
         {"option_II", {{"drc", value(r.drc_option2)}, {"drc_plus", value(r.drc_plus_option2)}}}});
  }
  return out.dump(2) + "\n";
}

std::string violation_records(const VerificationResult& result, const Attribution& attribution) {
  const auto names = case_module_names(result.cases);
  const auto all = result.all();
  std::ostringstream os;
  for (std::size_t vi = 0; vi < all.size(); ++vi) {
    const Violation& v = all[vi];
    json rec;
    rec["library"] = result.library;
    rec["option"] = std::string(to_string(result.option));
    rec["kind"] = std::string(to_string(v.kind));
    rec["layer"] = v.layer;
    rec["bbox"] = {v.bbox.x1, v.bbox.y1, v.bbox.x2, v.bbox.y2};
    rec["case"] = v.case_index < names.size() ? names[v.case_index] : "";
    json seams = json::array();
    if (vi < attribution.seams_of.size()) {
      for (std::size_t s : attribution.seams_of[vi]) seams.push_back(attribution.seams[s].x);
    }
    rec["seams"] = seams;
    rec["shapes"] = v.shapes;
    json instances = json::array();
    for (ShapeId s : v.shapes) instances.push_back(result.layout.instance_of(s).instance);
    rec["instances"] = instances;
    if (v.kind == ViolationKind::Hotspot) rec["pattern"] = v.pattern;
    os << rec.dump() << "\n";
  }
  return os.str();
}

std::vector<ViolationRecord> parse_violation_records(std::string_view text) {
  std::vector<ViolationRecord> out;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      const json j = json::parse(line);
      ViolationRecord r;
      r.library = j.at("library").get<std::string>();
      r.option =
          j.at("option").get<std::string>() == "II" ? DptOption::OptionII : DptOption::OptionI;
      auto kind = violation_kind_from_string(j.at("kind").get<std::string>());
      if (!kind) throw Error(ErrorCode::Syntax, "unknown violation kind", line_no);
      r.kind = *kind;
      r.layer = j.at("layer").get<std::string>();
      const auto bb = j.at("bbox").get<std::vector<Dbu>>();
      if (bb.size() != 4) throw Error(ErrorCode::Syntax, "bbox needs 4 values", line_no);
      r.bbox = {bb[0], bb[1], bb[2], bb[3]};
      r.case_module = j.value("case", "");
      r.seams = j.value("seams", std::vector<Dbu>{});
      r.shapes = j.value("shapes", std::vector<ShapeId>{});
      r.pattern = j.value("pattern", "");
      out.push_back(std::move(r));
    } catch (const json::exception& e) {
      throw Error(ErrorCode::Syntax, e.what(), line_no);
    }
  }
  return out;
}

std::string recolor_records(const VerificationResult& result) {
  std::ostringstream os;
  for (const auto& c : result.recolored) {
    const FlatShape& s = result.layout.shape(c.shape);
    const Placement& p = result.layout.instances()[s.instance];
    json rec = {{"instance", p.instance},
                {"cell", p.cell},
                {"cell_shape", s.cell_shape},
                {"shape", c.shape},
                {"layer", result.layout.layer_name(s.layer)},
                {"from", std::string(to_string(c.from))},
                {"to", std::string(to_string(c.to))}};
    os << rec.dump() << "\n";
  }
  return os.str();
}

namespace {

std::string_view fill_for(Mask m) {
  switch (m) {
    case Mask::Mask1:
      return "#d62728";
    case Mask::Mask2:
      return "#1f77b4";
    case Mask::None:
      return "#9e9e9e";
  }
  return "#000000";
}

std::string xml_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '"':
        out += "&quot;";
        break;
      case '\'':
        out += "&apos;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

}  // namespace

std::string render_svg(const FlatLayout& layout, const Violation& violation, Dbu margin,
                       const std::vector<Dbu>& seam_xs) {
  const Rect view = violation.bbox.expanded(margin);
  const auto layer = layout.layer_id(violation.layer);
  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  // y grows upward in the layout; the group below flips it for SVG.
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"" << view.x1 << " "
     << -view.y2 << " " << view.width() << " " << view.height() << "\">\n";
  os << "<title>" << xml_escape(to_string(violation.kind)) << " " << xml_escape(violation.layer);
  if (!violation.pattern.empty()) os << " " << xml_escape(violation.pattern);
  os << " " << violation.bbox << "</title>\n";
  os << "<g transform=\"scale(1,-1)\">\n";
  if (layer) {
    for (ShapeId id : query_window(layout, view)) {
      const FlatShape& s = layout.shape(id);
      if (s.layer != *layer) continue;
      const bool involved =
          std::binary_search(violation.shapes.begin(), violation.shapes.end(), id);
      os << "<rect class=\"" << (involved ? "involved" : "context") << "\" data-shape=\"" << id
         << "\" x=\"" << s.rect.x1 << "\" y=\"" << s.rect.y1 << "\" width=\"" << s.rect.width()
         << "\" height=\"" << s.rect.height() << "\" fill=\"" << fill_for(s.mask)
         << "\" fill-opacity=\"" << (involved ? "0.85" : "0.4") << "\"/>\n";
    }
  }
  const Rect& b = violation.bbox;
  os << "<rect class=\"violation\" x=\"" << b.x1 << "\" y=\"" << b.y1 << "\" width=\"" << b.width()
     << "\" height=\"" << b.height()
     << "\" fill=\"none\" stroke=\"#000000\" stroke-width=\"2\" stroke-dasharray=\"6 3\"/>\n";
  for (Dbu x : seam_xs) {
    os << "<line class=\"seam\" x1=\"" << x << "\" y1=\"" << view.y1 << "\" x2=\"" << x
       << "\" y2=\"" << view.y2 << "\" stroke=\"#2ca02c\" stroke-width=\"2\"/>\n";
  }
  os << "</g>\n</svg>\n";
  return os.str();
}

}  // namespace seamcheck
