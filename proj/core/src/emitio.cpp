#include "seamcheck/emitio.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>
#include <unordered_set>

#include "seamcheck/error.hpp"

namespace seamcheck {

namespace {

Dbu round_up(Dbu v, Dbu grid) { return grid <= 0 ? v : (v + grid - 1) / grid * grid; }

std::string sanitize(std::string_view name) {
  std::string out(name);
  for (char& c : out) {
    const bool ok =
        (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
    if (!ok) c = '_';
  }
  return out;
}

bool is_simple_identifier(std::string_view name) {
  if (name.empty() || (name[0] >= '0' && name[0] <= '9') || name[0] == '$') return false;
  return sanitize(name) == name;
}

// Verilog escaped identifiers end at whitespace.
std::string verilog_ref(std::string_view name) {
  if (is_simple_identifier(name)) return std::string(name);
  return "\\" + std::string(name) + " ";
}

struct Shelf {
  int row = 0;
  int rows = 0;
  Dbu cursor = 0;
};

}  // namespace

Floorplan plan_floorplan(const std::vector<AbutmentCase>& cases, const RuleDeck& rules,
                         Dbu max_row_width) {
  Floorplan fp;
  fp.max_row_width = max_row_width;
  fp.row_height = rules.row_height;
  fp.case_gap =
      round_up(std::max(2 * rules.interaction_distance, rules.site_width), rules.site_width);
  const Dbu rh = rules.row_height;
  int gap_rows = static_cast<int>((fp.case_gap + rh - 1) / rh);
  gap_rows += gap_rows % 2;

  std::vector<Shelf> shelves;
  fp.slots.reserve(cases.size());
  Dbu die_w = 0;
  Dbu die_h = 0;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const AbutmentCase& c = cases[i];
    if (c.width > max_row_width) {
      throw Error(ErrorCode::CaseTooWide, "case " + case_module_name(c) + " is " +
                                              std::to_string(c.width) + " wide, row limit is " +
                                              std::to_string(max_row_width));
    }
    std::size_t chosen = shelves.size();
    for (std::size_t s = 0; s < shelves.size(); ++s) {
      const Shelf& sh = shelves[s];
      const Dbu start = sh.cursor == 0 ? 0 : sh.cursor + fp.case_gap;
      if (c.rows <= sh.rows && start + c.width <= max_row_width) {
        chosen = s;
        break;
      }
    }
    if (chosen == shelves.size()) {
      Shelf sh;
      sh.row = shelves.empty() ? 0 : shelves.back().row + shelves.back().rows + gap_rows;
      sh.rows = c.rows + c.rows % 2;
      shelves.push_back(sh);
    }
    Shelf& sh = shelves[chosen];
    const Dbu x = sh.cursor == 0 ? 0 : sh.cursor + fp.case_gap;
    sh.cursor = x + c.width;
    fp.slots.push_back({chosen, sh.row, x});
    die_w = std::max(die_w, x + c.width);
    die_h = std::max(die_h, static_cast<Dbu>(sh.row + c.rows) * rh);
  }
  fp.die_area = {0, 0, die_w, die_h};
  return fp;
}

std::string case_module_name(const AbutmentCase& c) {
  switch (c.kind) {
    case CaseKind::AASingle:
    case CaseKind::AAMulti:
      return "scell_" + sanitize(c.cell_a);
    case CaseKind::ABSingle:
      return "scell_" + sanitize(c.cell_a) + "_" + sanitize(c.cell_b.value_or(""));
    case CaseKind::ABSingleMulti:
      return "mcell_" + sanitize(c.cell_a) + "_" + sanitize(c.cell_b.value_or(""));
  }
  return "case";
}

std::vector<std::string> case_module_names(const std::vector<AbutmentCase>& cases) {
  std::vector<std::string> names;
  names.reserve(cases.size());
  std::unordered_set<std::string> seen;
  seen.reserve(cases.size());
  for (const auto& c : cases) {
    std::string name = case_module_name(c);
    if (name == "TOP" || !seen.insert(name).second) {
      throw Error(ErrorCode::NameCollision, "module name " + name + " is not unique");
    }
    names.push_back(std::move(name));
  }
  return names;
}

std::vector<Placement> place_cases(const std::vector<AbutmentCase>& cases,
                                   const Floorplan& floorplan) {
  if (floorplan.slots.size() != cases.size()) {
    throw Error(ErrorCode::Precondition, "floorplan does not match case list");
  }
  const auto names = case_module_names(cases);
  std::vector<Placement> out;
  out.reserve(total_placements(cases));
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const Point offset = floorplan.slots[i].origin(floorplan.row_height);
    for (const auto& p : cases[i].placements) {
      out.push_back({names[i] + "/" + p.instance,
                     p.cell,
                     {p.origin.x + offset.x, p.origin.y + offset.y},
                     p.orientation});
    }
  }
  return out;
}

std::string emit_verilog(const std::vector<AbutmentCase>& cases) {
  const auto names = case_module_names(cases);
  std::ostringstream os;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    os << "module " << names[i] << " ();\n";
    for (const auto& p : cases[i].placements) {
      os << "  " << verilog_ref(p.cell) << " " << p.instance << " ();\n";
    }
    os << "endmodule\n\n";
  }
  os << "module TOP ();\n";
  for (const auto& name : names) os << "  " << name << " " << name << " ();\n";
  os << "endmodule\n";
  return os.str();
}

std::string write_def(const DefDesign& design) {
  std::ostringstream os;
  os << "VERSION 5.6 ;\n";
  os << "DESIGN " << design.design << " ;\n";
  os << "UNITS DISTANCE MICRONS 1000 ;\n";
  const Rect& d = design.die_area;
  os << "DIEAREA ( " << d.x1 << " " << d.y1 << " ) ( " << d.x2 << " " << d.y2 << " ) ;\n";
  os << "COMPONENTS " << design.components.size() << " ;\n";
  for (const auto& p : design.components) {
    os << "- " << p.instance << " " << p.cell << " + PLACED ( " << p.origin.x << " " << p.origin.y
       << " ) " << to_def_code(p.orientation) << " ;\n";
  }
  os << "END COMPONENTS\n";
  os << "END DESIGN\n";
  return os.str();
}

std::string emit_def(const std::vector<AbutmentCase>& cases, const CellLibrary& library,
                     const Floorplan& floorplan) {
  DefDesign design;
  design.die_area = floorplan.die_area;
  design.components = place_cases(cases, floorplan);
  for (const auto& p : design.components) library.at(p.cell);
  return write_def(design);
}

namespace {

struct DefToken {
  std::string_view text;
  int line = 0;
};

class DefReader {
 public:
  explicit DefReader(std::string_view text) {
    int line = 1;
    std::size_t i = 0;
    while (i < text.size()) {
      const char c = text[i];
      if (c == '\n') {
        ++line;
        ++i;
      } else if (c == ' ' || c == '\t' || c == '\r') {
        ++i;
      } else if (c == '#') {
        while (i < text.size() && text[i] != '\n') ++i;
      } else if (c == ';' || c == '(' || c == ')') {
        tokens_.push_back({text.substr(i, 1), line});
        ++i;
      } else {
        std::size_t j = i;
        while (j < text.size() && text[j] != ' ' && text[j] != '\t' && text[j] != '\r' &&
               text[j] != '\n' && text[j] != ';' && text[j] != '(' && text[j] != ')') {
          ++j;
        }
        tokens_.push_back({text.substr(i, j - i), line});
        i = j;
      }
    }
  }

  bool done() const { return pos_ >= tokens_.size(); }
  DefToken next() {
    if (done()) {
      throw Error(ErrorCode::Syntax, "unexpected end of DEF",
                  tokens_.empty() ? 1 : tokens_.back().line);
    }
    return tokens_[pos_++];
  }
  void expect(std::string_view w) {
    DefToken t = next();
    if (t.text != w) fail(t, "expected '" + std::string(w) + "'");
  }
  void skip_statement() {
    while (next().text != ";") {
    }
  }
  Dbu integer() {
    DefToken t = next();
    Dbu v = 0;
    auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (ec != std::errc{} || ptr != t.text.data() + t.text.size()) fail(t, "expected integer");
    return v;
  }
  Point point() {
    expect("(");
    Point p;
    p.x = integer();
    p.y = integer();
    expect(")");
    return p;
  }
  [[noreturn]] void fail(const DefToken& t, const std::string& msg) const {
    throw Error(ErrorCode::Syntax, msg + ", found '" + std::string(t.text) + "'", t.line);
  }

 private:
  std::vector<DefToken> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace

DefDesign parse_def(std::string_view text) {
  DefReader in(text);
  DefDesign design;
  for (;;) {
    DefToken t = in.next();
    if (t.text == "DESIGN") {
      design.design = std::string(in.next().text);
      in.expect(";");
    } else if (t.text == "DIEAREA") {
      Point a = in.point();
      Point b = in.point();
      in.expect(";");
      design.die_area = Rect::normalized(a.x, a.y, b.x, b.y);
    } else if (t.text == "COMPONENTS") {
      const Dbu count = in.integer();
      in.expect(";");
      for (;;) {
        DefToken c = in.next();
        if (c.text == "END") {
          in.expect("COMPONENTS");
          break;
        }
        if (c.text != "-") in.fail(c, "expected component entry");
        Placement p;
        p.instance = std::string(in.next().text);
        p.cell = std::string(in.next().text);
        bool placed = false;
        for (;;) {
          DefToken a = in.next();
          if (a.text == ";") break;
          if (a.text == "+") continue;
          if (a.text == "PLACED" || a.text == "FIXED") {
            p.origin = in.point();
            DefToken code = in.next();
            auto o = from_def_code(code.text);
            if (!o) {
              throw Error(ErrorCode::UnknownOrientationCode,
                          "orientation '" + std::string(code.text) + "'", code.line);
            }
            p.orientation = *o;
            placed = true;
          }
        }
        if (!placed) in.fail(c, "component " + p.instance + " is not placed");
        design.components.push_back(std::move(p));
      }
      if (static_cast<Dbu>(design.components.size()) != count) {
        throw Error(ErrorCode::Syntax, "COMPONENTS declares " + std::to_string(count) +
                                           " entries, found " +
                                           std::to_string(design.components.size()));
      }
    } else if (t.text == "END") {
      in.expect("DESIGN");
      return design;
    } else {
      in.skip_statement();
    }
  }
}

}  // namespace seamcheck
