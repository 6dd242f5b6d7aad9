#include "seamcheck/report.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <regex>
#include <sstream>

#include "synthetic.hpp"

namespace seamcheck {
namespace {

using testing::make_cell;

struct Fixture {
  std::vector<AbutmentCase> cases;
  Floorplan floorplan;
};

Fixture one_aa_case(Dbu cell_width) {
  Fixture f;
  f.cases = {gen_type_aa(make_cell("C", cell_width, 1, 1))};
  f.floorplan = plan_floorplan(f.cases, testing::default_rules(), 100000);
  return f;
}

Violation at(Rect bbox) {
  Violation v;
  v.kind = ViolationKind::SpacingSameMask;
  v.layer = "M1";
  v.bbox = bbox;
  return v;
}

TEST(Attribution, StraddlingSeam) {
  auto f = one_aa_case(200);
  auto a = attribute_to_seams({at({190, 100, 210, 200})}, f.cases, f.floorplan, 64);
  ASSERT_EQ(a.seams.size(), 1u);
  EXPECT_EQ(a.seams[0].x, 200);
  EXPECT_EQ(a.seams[0].module, "scell_C");
  EXPECT_EQ(a.seams[0].left_orientation, Orientation::MY);
  EXPECT_EQ(a.seams[0].right_orientation, Orientation::R0);
  EXPECT_EQ(a.seams[0].violations, (std::vector<std::size_t>{0}));
  EXPECT_TRUE(a.residual.empty());
}

TEST(Attribution, FarFromSeamsIsResidual) {
  auto f = one_aa_case(1000);
  auto a = attribute_to_seams({at({1490, 100, 1510, 200})}, f.cases, f.floorplan, 64);
  EXPECT_TRUE(a.seams.empty());
  EXPECT_EQ(a.residual, (std::vector<std::size_t>{0}));
}

TEST(Attribution, TwoNearbySeams) {
  auto f = one_aa_case(100);
  auto a = attribute_to_seams({at({140, 100, 160, 200})}, f.cases, f.floorplan, 64);
  ASSERT_EQ(a.seams.size(), 2u);
  EXPECT_EQ(a.seams[0].x, 100);
  EXPECT_EQ(a.seams[1].x, 200);
  EXPECT_EQ(a.seams_of[0], (std::vector<std::size_t>{0, 1}));
}

TEST(Attribution, BandCoversOnlyTheCaseRows) {
  auto f = one_aa_case(200);
  auto a = attribute_to_seams({at({190, 700, 210, 800})}, f.cases, f.floorplan, 64);
  EXPECT_TRUE(a.seams.empty());
  EXPECT_EQ(a.residual.size(), 1u);
}

// Property: each violation is either residual or attributed, and the
// attribution equals a brute-force band test over every seam.
TEST(Attribution, ConservationAgainstBruteForce) {
  auto lib = testing::synthetic_library(5, 2, 6);
  auto cases = enumerate_library(lib);
  auto fp = plan_floorplan(cases, testing::default_rules(), 6000);
  std::mt19937_64 rng(8);
  std::vector<Violation> vs;
  for (int i = 0; i < 500; ++i) {
    vs.push_back(at(testing::random_rect(rng, std::max(fp.die_area.x2, fp.die_area.y2), 150)));
  }
  const Dbu window = 64;
  auto a = attribute_to_seams(vs, cases, fp, window);
  std::size_t residual = 0;
  for (std::size_t vi = 0; vi < vs.size(); ++vi) {
    std::vector<std::pair<std::size_t, std::size_t>> expected;
    for (std::size_t ci = 0; ci < cases.size(); ++ci) {
      const Point o = fp.slots[ci].origin(fp.row_height);
      for (std::size_t si = 0; si < cases[ci].seams.size(); ++si) {
        const Dbu x = o.x + cases[ci].seams[si].x;
        const Rect& b = vs[vi].bbox;
        const bool hit = b.x1 <= x + window && x - window <= b.x2 &&
                         b.y1 <= o.y + cases[ci].rows * fp.row_height && o.y <= b.y2;
        if (hit) expected.emplace_back(ci, si);
      }
    }
    std::vector<std::pair<std::size_t, std::size_t>> got;
    for (std::size_t s : a.seams_of[vi])
      got.emplace_back(a.seams[s].case_index, a.seams[s].seam_index);
    std::sort(got.begin(), got.end());
    EXPECT_EQ(got, expected) << vi;
    const bool is_residual = std::binary_search(a.residual.begin(), a.residual.end(), vi);
    EXPECT_EQ(is_residual, expected.empty());
    residual += is_residual;
  }
  std::size_t attributed = 0;
  for (const auto& s : a.seams) EXPECT_FALSE(s.violations.empty());
  for (const auto& list : a.seams_of) attributed += list.empty() ? 0 : 1;
  EXPECT_EQ(attributed + residual, vs.size());
}

std::vector<std::string> cells_of_row(const std::string& text, const std::string& library) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind(library + " ", 0) != 0) continue;
    std::vector<std::string> cells;
    std::stringstream row(line);
    std::string cell;
    while (std::getline(row, cell, '|')) {
      cell.erase(0, cell.find_first_not_of(' '));
      cell.erase(cell.find_last_not_of(' ') + 1);
      cells.push_back(cell);
    }
    return cells;
  }
  return {};
}

TEST(Summary, CleanAndCounts) {
  auto table = summarize(std::vector<RunCounts>{{"lib1", DptOption::OptionI, 0, 218},
                                                {"lib1", DptOption::OptionII, 0, 0},
                                                {"lib2", DptOption::OptionI, 0, 0},
                                                {"lib2", DptOption::OptionII, 0, 0}});
  const std::string text = table.render_text();
  EXPECT_EQ(cells_of_row(text, "lib1"),
            (std::vector<std::string>{"lib1", "Clean", "218", "Clean", "Clean"}));
  EXPECT_EQ(cells_of_row(text, "lib2"),
            (std::vector<std::string>{"lib2", "Clean", "Clean", "Clean", "Clean"}));
  EXPECT_NE(text.find("Option I DRC+"), std::string::npos);
}

TEST(Summary, MissingOptionRendersDash) {
  auto table = summarize(std::vector<RunCounts>{{"lib", DptOption::OptionII, 3, 1}});
  EXPECT_EQ(cells_of_row(table.render_text(), "lib"),
            (std::vector<std::string>{"lib", "-", "-", "3", "1"}));
  EXPECT_NE(table.render_json().find("\"lib\""), std::string::npos);
}

TEST(Summary, FormatCount) {
  EXPECT_EQ(format_count(0), "Clean");
  EXPECT_EQ(format_count(12), "12");
  EXPECT_EQ(format_count(std::nullopt), "-");
}

TEST(Summary, FromResults) {
  const RuleDeck rules = parse_rules(testing::read_file(testing::data_dir() / "rules.yaml"));
  auto lib = parse_library(testing::read_file(testing::data_dir() / "seam_conflict.lef"),
                           "seam_conflict", rules.row_height);
  std::vector<VerificationResult> results = {run_all(lib, rules, DptOption::OptionI),
                                             run_all(lib, rules, DptOption::OptionII)};
  auto table = summarize(results);
  ASSERT_EQ(table.rows.size(), 1u);
  EXPECT_EQ(table.rows[0].drc_option1, results[0].drc_count());
  EXPECT_EQ(table.rows[0].drc_plus_option2, results[1].drc_plus_count());
}

// Structural XML check: every opened element is closed in order.
bool well_formed(const std::string& xml) {
  std::vector<std::string> stack;
  const std::regex tag(R"(<(/?)([A-Za-z][\w-]*)[^>]*?(/?)>)");
  for (auto it = std::sregex_iterator(xml.begin(), xml.end(), tag); it != std::sregex_iterator();
       ++it) {
    const auto& m = *it;
    if (m[1] == "/") {
      if (stack.empty() || stack.back() != m[2]) return false;
      stack.pop_back();
    } else if (m[3] != "/") {
      stack.push_back(m[2]);
    }
  }
  return stack.empty();
}

std::size_t count(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto p = text.find(needle); p != std::string::npos; p = text.find(needle, p + 1)) ++n;
  return n;
}

TEST(Svg, HotspotSnapshot) {
  const Mask masks[] = {Mask::Mask1, Mask::Mask2, Mask::Mask1, Mask::Mask2};
  std::vector<ColoredRect> rects;
  for (int i = 0; i < 4; ++i) rects.push_back({"M1", masks[i], {i * 80, 100, i * 80 + 32, 300}});
  rects.push_back({"M1", Mask::None, {500, 100, 532, 300}});
  rects.push_back({"M2", Mask::None, {0, 0, 600, 32}});
  auto layout = testing::layout_from_rects(rects);
  auto hits =
      match_hotspots(layout, {{"P", "M1", {masks[0], masks[1], masks[2], masks[3]}, 50, 100}});
  ASSERT_EQ(hits.size(), 1u);

  const std::string svg = render_svg(layout, hits[0], 300, {200});
  EXPECT_EQ(count(svg, "class=\"involved\""), 4u);
  EXPECT_EQ(count(svg, "class=\"context\""), 1u);
  EXPECT_EQ(count(svg, "class=\"violation\""), 1u);
  EXPECT_EQ(count(svg, "class=\"seam\""), 1u);
  EXPECT_EQ(count(svg, "#d62728"), 2u);
  EXPECT_EQ(count(svg, "#1f77b4"), 2u);
  EXPECT_TRUE(well_formed(svg));
  EXPECT_EQ(svg, render_svg(layout, hits[0], 300, {200}));
}

TEST(Svg, ZeroMarginViewportIsBbox) {
  auto layout = testing::layout_from_rects({{"M1", Mask::Mask1, {10, 20, 42, 220}}});
  Violation v = at({10, 20, 42, 220});
  v.shapes = {0};
  const std::string svg = render_svg(layout, v, 0);
  EXPECT_NE(svg.find("viewBox=\"10 -220 32 200\""), std::string::npos) << svg;
  EXPECT_TRUE(well_formed(svg));
}

TEST(Records, RoundTrip) {
  const RuleDeck rules = parse_rules(testing::read_file(testing::data_dir() / "rules.yaml"));
  auto lib = parse_library(testing::read_file(testing::data_dir() / "seam_conflict.lef"),
                           "seam_conflict", rules.row_height);
  for (DptOption o : {DptOption::OptionI, DptOption::OptionII}) {
    auto r = run_all(lib, rules, o);
    const auto all = r.all();
    auto attribution = attribute_to_seams(all, r.cases, r.floorplan, rules.interaction_distance);
    const std::string text = violation_records(r, attribution);
    EXPECT_EQ(static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n')), all.size());
    auto parsed = parse_violation_records(text);
    ASSERT_EQ(parsed.size(), all.size());
    for (std::size_t i = 0; i < all.size(); ++i) {
      EXPECT_EQ(parsed[i].library, "seam_conflict");
      EXPECT_EQ(parsed[i].option, o);
      EXPECT_EQ(parsed[i].kind, all[i].kind);
      EXPECT_EQ(parsed[i].layer, all[i].layer);
      EXPECT_EQ(parsed[i].bbox, all[i].bbox);
      EXPECT_EQ(parsed[i].shapes, all[i].shapes);
      EXPECT_EQ(parsed[i].pattern, all[i].pattern);
      EXPECT_EQ(parsed[i].seams.size(), attribution.seams_of[i].size());
    }
  }
}

TEST(Records, RecolorDiff) {
  const RuleDeck rules = parse_rules(testing::read_file(testing::data_dir() / "rules.yaml"));
  auto lib = parse_library(testing::read_file(testing::data_dir() / "seam_conflict.lef"),
                           "seam_conflict", rules.row_height);
  auto r = run_all(lib, rules, DptOption::OptionII);
  const std::string text = recolor_records(r);
  EXPECT_EQ(static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n')),
            r.recolored.size());
}

}  // namespace
}  // namespace seamcheck
