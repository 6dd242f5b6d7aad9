#include "seamcheck/libio.hpp"

#include <charconv>
#include <unordered_set>
#include <utility>

#include "seamcheck/error.hpp"

namespace seamcheck {

namespace {

struct Token {
  std::string_view text;
  int line = 0;
  int column = 0;
};

// Splits on whitespace; ';' is always a token of its own; '#' starts a comment.
std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> tokens;
  int line = 1;
  int column = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
  };
  while (i < text.size()) {
    const char c = text[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    if (c == ';') {
      tokens.push_back({text.substr(i, 1), line, column});
      advance(1);
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && text[j] != ' ' && text[j] != '\t' && text[j] != '\r' &&
           text[j] != '\n' && text[j] != ';' && text[j] != '#') {
      ++j;
    }
    tokens.push_back({text.substr(i, j - i), line, column});
    advance(j - i);
  }
  return tokens;
}

class LefReader {
 public:
  explicit LefReader(std::string_view text) : tokens_(tokenize(text)) {}

  bool done() const { return pos_ >= tokens_.size(); }

  const Token& peek() const {
    if (done()) fail_eof();
    return tokens_[pos_];
  }

  Token next() {
    if (done()) fail_eof();
    return tokens_[pos_++];
  }

  void expect(std::string_view word) {
    Token t = next();
    if (t.text != word) {
      throw Error(ErrorCode::Syntax,
                  "expected '" + std::string(word) + "', found '" + std::string(t.text) + "'",
                  t.line, t.column);
    }
  }

  void skip_statement() {
    while (next().text != ";") {
    }
  }

  Dbu number() {
    Token t = next();
    try {
      return parse_microns(t.text);
    } catch (const Error& e) {
      throw Error(e.code(), "bad number '" + std::string(t.text) + "'", t.line, t.column);
    }
  }

  [[noreturn]] void fail(const Token& t, const std::string& message) const {
    throw Error(ErrorCode::Syntax, message, t.line, t.column);
  }

 private:
  [[noreturn]] void fail_eof() const {
    int line = tokens_.empty() ? 1 : tokens_.back().line;
    throw Error(ErrorCode::Syntax, "unexpected end of input", line, 0);
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

ColoredRect make_colored(std::string_view layer, Rect rect) {
  ColoredRect out;
  out.rect = rect;
  if (layer.size() > 3 && layer.substr(layer.size() - 3) == "_E1") {
    out.mask = Mask::Mask1;
    layer.remove_suffix(3);
  } else if (layer.size() > 3 && layer.substr(layer.size() - 3) == "_E2") {
    out.mask = Mask::Mask2;
    layer.remove_suffix(3);
  }
  out.layer = std::string(layer);
  return out;
}

// Reads `LAYER l ; RECT ... ;` statements up to the closing END of a PORT/OBS.
void read_geometry(LefReader& in, std::vector<ColoredRect>& out) {
  std::optional<std::string> layer;
  for (;;) {
    Token t = in.next();
    if (t.text == "END") return;
    if (t.text == "LAYER") {
      layer = std::string(in.next().text);
      in.skip_statement();
    } else if (t.text == "RECT") {
      if (!layer) in.fail(t, "RECT before any LAYER");
      Dbu x1 = in.number();
      Dbu y1 = in.number();
      Dbu x2 = in.number();
      Dbu y2 = in.number();
      in.expect(";");
      Rect r = Rect::normalized(x1, y1, x2, y2);
      if (!r.valid()) in.fail(t, "zero-area RECT");
      out.push_back(make_colored(*layer, r));
    } else if (t.text == "WIDTH" || t.text == "CLASS") {
      in.skip_statement();
    } else {
      in.fail(t, "unsupported geometry statement '" + std::string(t.text) + "'");
    }
  }
}

PinDef read_pin(LefReader& in) {
  PinDef pin;
  pin.name = std::string(in.next().text);
  for (;;) {
    Token t = in.next();
    if (t.text == "END") {
      Token name = in.next();
      if (name.text != pin.name) in.fail(name, "END does not match PIN " + pin.name);
      return pin;
    }
    if (t.text == "PORT") {
      read_geometry(in, pin.rects);
    } else {
      // DIRECTION, USE, SHAPE and friends carry no geometry.
      if (t.text != ";") in.skip_statement();
    }
  }
}

CellProfile read_macro(LefReader& in, Dbu row_height) {
  CellProfile cell;
  Token name_tok = in.next();
  cell.name = std::string(name_tok.text);
  bool have_size = false;
  Token size_tok = name_tok;
  std::unordered_set<std::string> pin_names;
  for (;;) {
    Token t = in.next();
    if (t.text == "END") {
      Token name = in.next();
      if (name.text != cell.name) in.fail(name, "END does not match MACRO " + cell.name);
      break;
    }
    if (t.text == "SIZE") {
      size_tok = t;
      cell.width = in.number();
      in.expect("BY");
      cell.height = in.number();
      in.expect(";");
      have_size = true;
    } else if (t.text == "PIN") {
      PinDef pin = read_pin(in);
      if (!pin_names.insert(pin.name).second) {
        throw Error(ErrorCode::DuplicatePin, "pin " + pin.name + " repeated in " + cell.name,
                    t.line, t.column);
      }
      cell.pins.push_back(std::move(pin));
    } else if (t.text == "OBS") {
      read_geometry(in, cell.shapes);
    } else if (t.text == "ORIGIN") {
      Dbu ox = in.number();
      Dbu oy = in.number();
      in.expect(";");
      if (ox != 0 || oy != 0) in.fail(t, "non-zero ORIGIN is not supported");
    } else {
      // CLASS, FOREIGN, SYMMETRY, SITE, PROPERTY ...
      in.skip_statement();
    }
  }
  if (!have_size) in.fail(name_tok, "MACRO " + cell.name + " has no SIZE");
  if (cell.width <= 0 || cell.height <= 0) in.fail(size_tok, "non-positive SIZE");
  if (cell.height % row_height != 0) {
    throw Error(ErrorCode::NonIntegerHeight,
                cell.name + " height " + std::to_string(cell.height) +
                    " is not a multiple of row height " + std::to_string(row_height),
                size_tok.line, size_tok.column);
  }
  cell.height_rows = static_cast<int>(cell.height / row_height);
  return cell;
}

void check_cell(const CellProfile& cell, Dbu row_height) {
  if (cell.width <= 0 || cell.height <= 0) {
    throw Error(ErrorCode::Precondition, cell.name + ": non-positive size");
  }
  if (cell.height % row_height != 0 || cell.height_rows != cell.height / row_height) {
    throw Error(ErrorCode::NonIntegerHeight, cell.name + ": height is not an integer row count");
  }
  const Rect bounds{0, 0, cell.width, cell.height};
  auto check = [&](const ColoredRect& r) {
    if (!r.rect.valid() || !bounds.contains(r.rect)) {
      throw Error(ErrorCode::ShapeOutOfBounds,
                  cell.name + ": shape on " + r.layer + " outside cell");
    }
  };
  for (const auto& s : cell.shapes) check(s);
  std::unordered_set<std::string_view> pins;
  for (const auto& p : cell.pins) {
    if (!pins.insert(p.name).second) {
      throw Error(ErrorCode::DuplicatePin, cell.name + ": duplicate pin " + p.name);
    }
    for (const auto& r : p.rects) check(r);
  }
}

}  // namespace

Dbu parse_microns(std::string_view literal) {
  std::string_view s = literal;
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  const auto dot = s.find('.');
  std::string_view whole = s.substr(0, dot);
  std::string_view frac = dot == std::string_view::npos ? std::string_view{} : s.substr(dot + 1);
  auto all_digits = [](std::string_view d) {
    for (char c : d) {
      if (c < '0' || c > '9') return false;
    }
    return true;
  };
  if ((whole.empty() && frac.empty()) || !all_digits(whole) || !all_digits(frac) ||
      (dot != std::string_view::npos && frac.empty() && whole.empty())) {
    throw Error(ErrorCode::Syntax, "not a number: '" + std::string(literal) + "'");
  }
  if (frac.size() > 3) {
    throw Error(ErrorCode::Precision,
                "'" + std::string(literal) + "' has more than 3 decimal places");
  }
  Dbu value = 0;
  if (!whole.empty()) {
    auto [ptr, ec] = std::from_chars(whole.data(), whole.data() + whole.size(), value);
    if (ec != std::errc{}) throw Error(ErrorCode::Syntax, "number out of range");
  }
  Dbu fraction = 0;
  for (std::size_t k = 0; k < 3; ++k) {
    fraction = fraction * 10 + (k < frac.size() ? frac[k] - '0' : 0);
  }
  value = value * kDbuPerMicron + fraction;
  return negative ? -value : value;
}

CellLibrary::CellLibrary(std::string name, Dbu row_height, std::vector<CellProfile> cells)
    : name_(std::move(name)), row_height_(row_height), cells_(std::move(cells)) {
  if (row_height_ <= 0) throw Error(ErrorCode::Precondition, "row height must be positive");
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    check_cell(cells_[i], row_height_);
    if (!index_.emplace(cells_[i].name, i).second) {
      throw Error(ErrorCode::DuplicateCell, "cell " + cells_[i].name + " defined twice");
    }
  }
}

const CellProfile* CellLibrary::find(std::string_view cell) const {
  auto it = index_.find(std::string(cell));
  return it == index_.end() ? nullptr : &cells_[it->second];
}

const CellProfile& CellLibrary::at(std::string_view cell) const {
  const CellProfile* p = find(cell);
  if (p == nullptr) throw Error(ErrorCode::UnknownCellRef, "unknown cell " + std::string(cell));
  return *p;
}

std::optional<std::size_t> CellLibrary::index_of(std::string_view cell) const {
  auto it = index_.find(std::string(cell));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

CellLibrary parse_library(std::string_view text, std::string name, std::optional<Dbu> row_height) {
  LefReader in(text);
  std::optional<Dbu> site_height;
  std::vector<CellProfile> cells;
  std::unordered_map<std::string, Token> seen;
  auto effective_row_height = [&](const Token& at) -> Dbu {
    if (site_height) return *site_height;
    if (row_height) return *row_height;
    in.fail(at, "no SITE defined before first MACRO and no row height supplied");
  };

  while (!in.done()) {
    Token t = in.next();
    if (t.text == "VERSION" || t.text == "BUSBITCHARS" || t.text == "DIVIDERCHAR" ||
        t.text == "NAMESCASESENSITIVE" || t.text == "MANUFACTURINGGRID") {
      in.skip_statement();
    } else if (t.text == "UNITS") {
      for (;;) {
        Token u = in.next();
        if (u.text == "END") {
          in.expect("UNITS");
          break;
        }
        if (u.text == "DATABASE") {
          in.expect("MICRONS");
          Token v = in.next();
          if (v.text != "1000") in.fail(v, "only DATABASE MICRONS 1000 is supported");
          in.expect(";");
        } else {
          in.skip_statement();
        }
      }
    } else if (t.text == "SITE") {
      Token site = in.next();
      std::optional<Dbu> h;
      for (;;) {
        Token s = in.next();
        if (s.text == "END") {
          Token end_name = in.next();
          if (end_name.text != site.text) in.fail(end_name, "END does not match SITE");
          break;
        }
        if (s.text == "SIZE") {
          in.number();
          in.expect("BY");
          h = in.number();
          in.expect(";");
        } else {
          in.skip_statement();
        }
      }
      if (!h || *h <= 0) in.fail(site, "SITE without positive SIZE");
      if (!site_height) {
        site_height = h;
        if (row_height && *row_height != *h) {
          throw Error(ErrorCode::InvalidRule,
                      "SITE height " + std::to_string(*h) + " disagrees with row height " +
                          std::to_string(*row_height),
                      site.line, site.column);
        }
      }
    } else if (t.text == "MACRO") {
      const Token& name_tok = in.peek();
      Dbu rh = effective_row_height(t);
      if (auto it = seen.find(std::string(name_tok.text)); it != seen.end()) {
        throw Error(ErrorCode::DuplicateCell, "MACRO " + std::string(name_tok.text) + " redefined",
                    name_tok.line, name_tok.column);
      }
      seen.emplace(std::string(name_tok.text), name_tok);
      CellProfile cell = read_macro(in, rh);
      try {
        check_cell(cell, rh);
      } catch (const Error& e) {
        const Token& at = seen.at(cell.name);
        throw Error(e.code(), e.what(), at.line, at.column);
      }
      cells.push_back(std::move(cell));
    } else if (t.text == "END") {
      in.expect("LIBRARY");
      if (!in.done()) in.fail(in.peek(), "content after END LIBRARY");
    } else {
      in.fail(t, "unexpected '" + std::string(t.text) + "'");
    }
  }
  Dbu rh = site_height ? *site_height : row_height.value_or(0);
  if (rh <= 0) {
    if (cells.empty()) {
      rh = 1;  // an empty library with no row information is still a library
    } else {
      throw Error(ErrorCode::Syntax, "library has no row height");
    }
  }
  return CellLibrary(std::move(name), rh, std::move(cells));
}

LibraryStats profile(const CellLibrary& library) {
  LibraryStats stats;
  for (const auto& cell : library.cells()) {
    ++stats.width_histogram[cell.width];
    ++stats.height_rows_histogram[cell.height_rows];
    if (cell.single_height()) {
      ++stats.single_height;
    } else {
      ++stats.multi_height;
    }
  }
  return stats;
}

}  // namespace seamcheck
