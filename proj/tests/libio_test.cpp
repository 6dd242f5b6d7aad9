#include "seamcheck/libio.hpp"

#include <gtest/gtest.h>

#include <random>
#include <string>

#include "seamcheck/error.hpp"
#include "synthetic.hpp"

namespace seamcheck {
namespace {

std::string one_cell(const std::string& size, const std::string& body = "") {
  return "VERSION 5.8 ;\n"
         "SITE core CLASS CORE ; SIZE 0.04 BY 0.576 ; END core\n"
         "MACRO C\n  CLASS CORE ;\n  SIZE " +
         size + " ;\n" + body + "END C\nEND LIBRARY\n";
}

ErrorCode code_of(const std::string& text, std::optional<Dbu> row_height = std::nullopt) {
  try {
    parse_library(text, "lib", row_height);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::Io;
}

TEST(ParseMicrons, ExactDecimals) {
  EXPECT_EQ(parse_microns("0.2"), 200);
  EXPECT_EQ(parse_microns("0.576"), 576);
  EXPECT_EQ(parse_microns("1.152"), 1152);
  EXPECT_EQ(parse_microns("3"), 3000);
  EXPECT_EQ(parse_microns("-1.25"), -1250);
  EXPECT_EQ(parse_microns("0.050"), 50);
}

TEST(ParseMicrons, RejectsSubDbuPrecision) {
  try {
    parse_microns("0.0001");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Precision);
  }
}

TEST(ParseMicrons, RejectsGarbage) {
  EXPECT_THROW(parse_microns("abc"), Error);
  EXPECT_THROW(parse_microns(""), Error);
  EXPECT_THROW(parse_microns("1.2.3"), Error);
}

// Property: every DBU value printed as a three-decimal micron literal parses
// back to itself.
TEST(ParseMicrons, RoundTripsRandomValues) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<Dbu> dist(-5'000'000, 5'000'000);
  for (int i = 0; i < 2000; ++i) {
    const Dbu v = dist(rng);
    const Dbu a = v < 0 ? -v : v;
    char frac[8];
    std::snprintf(frac, sizeof frac, "%03lld", static_cast<long long>(a % 1000));
    const std::string text = std::string(v < 0 ? "-" : "") + std::to_string(a / 1000) + "." + frac;
    ASSERT_EQ(parse_microns(text), v) << text;
  }
}

TEST(ParseLibrary, SingleHeightCell) {
  auto lib = parse_library(one_cell("0.2 BY 0.576"));
  ASSERT_EQ(lib.size(), 1u);
  const auto& c = lib.at("C");
  EXPECT_EQ(c.width, 200);
  EXPECT_EQ(c.height, 576);
  EXPECT_EQ(c.height_rows, 1);
  EXPECT_TRUE(c.single_height());
  EXPECT_EQ(lib.row_height(), 576);
}

TEST(ParseLibrary, DoubleHeightCell) {
  auto lib = parse_library(one_cell("0.4 BY 1.152"));
  EXPECT_EQ(lib.at("C").height_rows, 2);
  EXPECT_FALSE(lib.at("C").single_height());
}

TEST(ParseLibrary, NonIntegerHeight) {
  EXPECT_EQ(code_of(one_cell("0.2 BY 0.8")), ErrorCode::NonIntegerHeight);
}

TEST(ParseLibrary, PrecisionError) {
  EXPECT_EQ(code_of(one_cell("0.2001 BY 0.576")), ErrorCode::Precision);
}

TEST(ParseLibrary, MaskSuffixesAndPins) {
  const std::string body =
      "  PIN A\n    DIRECTION INPUT ;\n    PORT\n      LAYER M1 ;\n"
      "      RECT 0.05 0.1 0.08 0.4 ;\n    END\n  END A\n"
      "  OBS\n    LAYER M1_E1 ;\n    RECT 0.01 0.1 0.04 0.4 ;\n"
      "    LAYER M1_E2 ;\n    RECT 0.1 0.1 0.132 0.4 ;\n"
      "    LAYER M2 ;\n    RECT 0 0 0.2 0.032 ;\n  END\n";
  auto lib = parse_library(one_cell("0.2 BY 0.576", body));
  const auto& c = lib.at("C");
  ASSERT_EQ(c.shapes.size(), 3u);
  EXPECT_EQ(c.shapes[0], (ColoredRect{"M1", Mask::Mask1, {10, 100, 40, 400}}));
  EXPECT_EQ(c.shapes[1], (ColoredRect{"M1", Mask::Mask2, {100, 100, 132, 400}}));
  EXPECT_EQ(c.shapes[2], (ColoredRect{"M2", Mask::None, {0, 0, 200, 32}}));
  ASSERT_EQ(c.pins.size(), 1u);
  EXPECT_EQ(c.pins[0].name, "A");
  ASSERT_EQ(c.pins[0].rects.size(), 1u);
  EXPECT_EQ(c.pins[0].rects[0].rect, (Rect{50, 100, 80, 400}));
}

TEST(ParseLibrary, DuplicateCell) {
  const std::string text =
      "SITE core SIZE 0.04 BY 0.576 ; END core\n"
      "MACRO C SIZE 0.2 BY 0.576 ; END C\n"
      "MACRO C SIZE 0.4 BY 0.576 ; END C\nEND LIBRARY\n";
  EXPECT_EQ(code_of(text), ErrorCode::DuplicateCell);
}

TEST(ParseLibrary, ShapeOutOfBounds) {
  const std::string body = "  OBS\n    LAYER M1 ;\n    RECT 0.1 0.1 0.3 0.4 ;\n  END\n";
  EXPECT_EQ(code_of(one_cell("0.2 BY 0.576", body)), ErrorCode::ShapeOutOfBounds);
}

TEST(ParseLibrary, SyntaxErrorCarriesLocation) {
  const std::string text =
      "SITE core SIZE 0.04 BY 0.576 ; END core\n"
      "MACRO C\n"
      "  SIZE 0.2 0.576 ;\n"
      "END C\n";
  try {
    parse_library(text);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Syntax);
    EXPECT_EQ(e.line(), 3);
    EXPECT_GT(e.column(), 0);
  }
}

TEST(ParseLibrary, RowHeightFromCallerOrSite) {
  const std::string no_site = "MACRO C SIZE 0.2 BY 1.152 ; END C\nEND LIBRARY\n";
  EXPECT_EQ(parse_library(no_site, "lib", 576).at("C").height_rows, 2);
  EXPECT_EQ(code_of(no_site), ErrorCode::Syntax);
  EXPECT_EQ(code_of(one_cell("0.2 BY 0.576"), 600), ErrorCode::InvalidRule);
}

TEST(ParseLibrary, ShippedFixturesLoad) {
  for (const char* name : {"clean.lef", "seam_conflict.lef"}) {
    auto lib = parse_library(testing::read_file(testing::data_dir() / name), name, 576);
    EXPECT_GT(lib.size(), 0u) << name;
  }
}

// Property: parsing the serialized form of a library reproduces it.
TEST(ParseLibrary, RoundTripsSyntheticLibraries) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto lib = testing::synthetic_library(6, 2, seed);
    auto back = parse_library(testing::write_lef(lib), "synth");
    ASSERT_EQ(back.size(), lib.size());
    for (std::size_t i = 0; i < lib.size(); ++i) {
      const auto& a = lib.cells()[i];
      const auto& b = back.cells()[i];
      EXPECT_EQ(a.name, b.name);
      EXPECT_EQ(a.width, b.width);
      EXPECT_EQ(a.height_rows, b.height_rows);
      EXPECT_EQ(a.shapes, b.shapes);
    }
  }
}

// Property: damaging a valid file by dropping a token either still parses
// into a library satisfying the invariants or raises a typed Error; nothing
// else escapes.
TEST(ParseLibrary, MutatedInputFailsCleanly) {
  const std::string text = testing::write_lef(testing::synthetic_library(3, 1, 11));
  std::vector<std::pair<std::size_t, std::size_t>> tokens;
  for (std::size_t i = 0; i < text.size();) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    std::size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    if (j > i) tokens.emplace_back(i, j - i);
    i = j;
  }
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    auto [pos, len] = tokens[rng() % tokens.size()];
    std::string broken = text;
    broken.erase(pos, len);
    try {
      auto lib = parse_library(broken);
      for (const auto& c : lib.cells()) {
        EXPECT_EQ(c.height % lib.row_height(), 0);
        for (const auto& s : c.shapes) {
          EXPECT_TRUE((Rect{0, 0, c.width, c.height}.contains(s.rect)));
        }
      }
    } catch (const Error&) {
    }
  }
}

TEST(ParseRules, ShippedDeck) {
  auto deck = parse_rules(testing::read_file(testing::data_dir() / "rules.yaml"));
  EXPECT_EQ(deck.row_height, 576);
  EXPECT_EQ(deck.site_width, 40);
  EXPECT_EQ(deck.interaction_distance, 128);
  ASSERT_NE(deck.rule("M1"), nullptr);
  EXPECT_TRUE(deck.rule("M1")->dpt);
  EXPECT_EQ(deck.rule("M1")->spacing_same, 64);
  EXPECT_FALSE(deck.rule("M2")->dpt);
  EXPECT_EQ(deck.rule("M3"), nullptr);
  ASSERT_EQ(deck.hotspot_patterns.size(), 1u);
  EXPECT_EQ(deck.hotspot_patterns[0].track_count(), 4u);
  EXPECT_EQ(deck.hotspot_patterns[0].masks[1], Mask::Mask2);
}

ErrorCode rules_error(const std::string& yaml) {
  try {
    parse_rules(yaml);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::Io;
}

TEST(ParseRules, InconsistentSpacing) {
  EXPECT_EQ(rules_error("row_height: 576\nsite_width: 40\nlayers:\n"
                        "  M1: { min_width: 32, spacing_any: 64, spacing_same: 32, dpt: true }\n"),
            ErrorCode::InconsistentSpacing);
}

TEST(ParseRules, MissingEntries) {
  EXPECT_EQ(rules_error("site_width: 40\nlayers:\n  M1: { min_width: 32, spacing_any: 32 }\n"),
            ErrorCode::MissingRule);
  EXPECT_EQ(rules_error("row_height: 576\nsite_width: 40\nlayers:\n  M1: { spacing_any: 32 }\n"),
            ErrorCode::MissingRule);
  EXPECT_EQ(rules_error("row_height: 576\nsite_width: 40\nlayers:\n"
                        "  M1: { min_width: 32, spacing_any: 32, dpt: true }\n"),
            ErrorCode::MissingRule);
}

TEST(ParseRules, DefaultInteractionDistanceCoversRuleReach) {
  auto deck = parse_rules(
      "row_height: 576\nsite_width: 40\nlayers:\n"
      "  M1: { min_width: 32, spacing_any: 32, spacing_same: 64, dpt: true }\n"
      "hotspot_patterns:\n"
      "  - { name: P, layer: M1, masks: [1, 2], max_gap: 90, min_run_length: 10 }\n");
  EXPECT_EQ(deck.interaction_distance, 90);
}

TEST(Profile, Histograms) {
  std::vector<CellProfile> cells = {testing::make_cell("A", 200, 1, 1),
                                    testing::make_cell("B", 200, 1, 1),
                                    testing::make_cell("C", 400, 2, 1)};
  auto stats = profile(CellLibrary("lib", testing::kRowHeight, cells));
  EXPECT_EQ(stats.width_histogram, (std::map<Dbu, std::size_t>{{200, 2}, {400, 1}}));
  EXPECT_EQ(stats.height_rows_histogram, (std::map<int, std::size_t>{{1, 2}, {2, 1}}));
  EXPECT_EQ(stats.single_height, 2u);
  EXPECT_EQ(stats.multi_height, 1u);
}

TEST(Profile, SplitMatchesCellCounts) {
  auto stats = profile(testing::synthetic_library(68, 21, 5));
  EXPECT_EQ(stats.single_height, 68u);
  EXPECT_EQ(stats.multi_height, 21u);
  EXPECT_EQ(stats.total(), 89u);
  std::size_t sum = 0;
  for (const auto& [w, n] : stats.width_histogram) sum += n;
  EXPECT_EQ(sum, 89u);
}

TEST(Profile, EmptyLibrary) {
  auto stats = profile(CellLibrary("empty", testing::kRowHeight, {}));
  EXPECT_EQ(stats.total(), 0u);
  EXPECT_TRUE(stats.width_histogram.empty());
}

}  // namespace
}  // namespace seamcheck
