#include <algorithm>

#include "parallel.hpp"
#include "seamcheck/verify.hpp"

namespace seamcheck {

namespace {

struct Track {
  ShapeId next = 0;
  RunAxis axis = RunAxis::Horizontal;
};

// Span of a rect along the run direction (y for side-by-side tracks).
std::pair<Dbu, Dbu> run_span(const Rect& r, RunAxis axis) {
  return axis == RunAxis::Horizontal ? std::pair{r.y1, r.y2} : std::pair{r.x1, r.x2};
}

// True if some third shape on the layer pokes into the open gap between
// two facing tracks.
bool gap_is_blocked(const FlatLayout& layout, LayerId layer, ShapeId a, ShapeId b, RunAxis axis) {
  const Rect& ra = layout.shape(a).rect;
  const Rect& rb = layout.shape(b).rect;
  Rect gap = axis == RunAxis::Horizontal
                 ? Rect{ra.x2, std::max(ra.y1, rb.y1), rb.x1, std::min(ra.y2, rb.y2)}
                 : Rect{std::max(ra.x1, rb.x1), ra.y2, std::min(ra.x2, rb.x2), rb.y1};
  for (ShapeId id : query_window(layout, gap)) {
    if (id == a || id == b) continue;
    const FlatShape& s = layout.shape(id);
    if (s.layer != layer) continue;
    if (s.rect.x1 < gap.x2 && s.rect.x2 > gap.x1 && s.rect.y1 < gap.y2 && s.rect.y2 > gap.y1) {
      return true;
    }
  }
  return false;
}

class PatternMatcher {
 public:
  PatternMatcher(const FlatLayout& layout, const HotspotPattern& pattern, LayerId layer)
      : layout_(layout), pattern_(pattern), layer_(layer), reversed_(pattern.masks) {
    std::reverse(reversed_.begin(), reversed_.end());
    forward_.assign(layout.shapes().size(), {});
    for (const auto& run : parallel_runs(layout, layer, pattern.max_gap)) {
      if (run.spacing == 0) continue;
      const Rect& ra = layout.shape(run.a).rect;
      const Rect& rb = layout.shape(run.b).rect;
      const bool a_first = run.axis == RunAxis::Horizontal ? ra.x2 <= rb.x1 : ra.y2 <= rb.y1;
      const ShapeId lo = a_first ? run.a : run.b;
      const ShapeId hi = a_first ? run.b : run.a;
      if (gap_is_blocked(layout, layer, lo, hi, run.axis)) continue;
      forward_[lo].push_back({hi, run.axis});
    }
    for (auto& f : forward_) {
      std::sort(f.begin(), f.end(), [](const Track& x, const Track& y) {
        return std::pair{x.axis, x.next} < std::pair{y.axis, y.next};
      });
    }
  }

  void match_from(ShapeId start, std::vector<Violation>& out) const {
    if (layout_.shape(start).layer != layer_) return;
    std::vector<ShapeId> chain;
    for (RunAxis axis : {RunAxis::Horizontal, RunAxis::Vertical}) {
      chain = {start};
      auto [lo, hi] = run_span(layout_.shape(start).rect, axis);
      extend(chain, axis, lo, hi, out);
    }
  }

 private:
  bool prefix_matches(const std::vector<ShapeId>& chain, const std::vector<Mask>& seq) const {
    for (std::size_t i = 0; i < chain.size(); ++i) {
      if (layout_.shape(chain[i]).mask != seq[i]) return false;
    }
    return true;
  }

  void extend(std::vector<ShapeId>& chain, RunAxis axis, Dbu lo, Dbu hi,
              std::vector<Violation>& out) const {
    if (hi - lo < pattern_.min_run_length) return;
    if (!prefix_matches(chain, pattern_.masks) && !prefix_matches(chain, reversed_)) return;
    if (chain.size() == pattern_.track_count()) {
      out.push_back(make_violation(chain, axis, lo, hi));
      return;
    }
    for (const Track& t : forward_[chain.back()]) {
      if (t.axis != axis) continue;
      auto [nlo, nhi] = run_span(layout_.shape(t.next).rect, axis);
      chain.push_back(t.next);
      extend(chain, axis, std::max(lo, nlo), std::min(hi, nhi), out);
      chain.pop_back();
    }
  }

  Violation make_violation(const std::vector<ShapeId>& chain, RunAxis axis, Dbu lo, Dbu hi) const {
    Violation v;
    v.kind = ViolationKind::Hotspot;
    v.layer = pattern_.layer;
    v.pattern = pattern_.name;
    v.shapes = chain;
    std::sort(v.shapes.begin(), v.shapes.end());
    const Rect& first = layout_.shape(chain.front()).rect;
    const Rect& last = layout_.shape(chain.back()).rect;
    if (axis == RunAxis::Horizontal) {
      v.bbox = {first.x1, lo, last.x2, hi};
    } else {
      v.bbox = {lo, first.y1, hi, last.y2};
    }
    return v;
  }

  const FlatLayout& layout_;
  const HotspotPattern& pattern_;
  LayerId layer_;
  std::vector<Mask> reversed_;
  std::vector<std::vector<Track>> forward_;
};

}  // namespace

std::vector<Violation> match_hotspots(const FlatLayout& layout,
                                      const std::vector<HotspotPattern>& patterns, int jobs) {
  std::vector<Violation> out;
  for (const auto& pattern : patterns) {
    auto layer = layout.layer_id(pattern.layer);
    if (!layer || pattern.track_count() < 2) continue;
    const PatternMatcher matcher(layout, pattern, *layer);
    auto found = detail::parallel_collect<Violation>(
        layout.shapes().size(), jobs, [&](std::size_t begin, std::size_t end) {
          std::vector<Violation> hits;
          for (std::size_t s = begin; s < end; ++s) {
            matcher.match_from(static_cast<ShapeId>(s), hits);
          }
          return hits;
        });
    out.insert(out.end(), found.begin(), found.end());
  }
  return out;
}

}  // namespace seamcheck
