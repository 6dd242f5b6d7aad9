#include "seamcheck/verify.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <tuple>

#include "seamcheck/error.hpp"

namespace seamcheck {

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  // The smaller root wins so roots are the minimum element of their set.
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
  }

 private:
  std::vector<std::size_t> parent_;
};

// Region between two facing shapes.
Rect gap_region(const Rect& a, const Rect& b, RunAxis axis) {
  if (axis == RunAxis::Horizontal) {
    return {std::min(a.x2, b.x2), std::max(a.y1, b.y1), std::max(a.x1, b.x1), std::min(a.y2, b.y2)};
  }
  return {std::max(a.x1, b.x1), std::min(a.y2, b.y2), std::min(a.x2, b.x2), std::max(a.y1, b.y1)};
}

Violation pair_violation(ViolationKind kind, const FlatLayout& layout, const ParallelRun& run) {
  const Rect& ra = layout.shape(run.a).rect;
  const Rect& rb = layout.shape(run.b).rect;
  Violation v;
  v.kind = kind;
  v.layer = layout.layer_name(layout.shape(run.a).layer);
  v.bbox = gap_region(ra, rb, run.axis);
  v.shapes = {run.a, run.b};
  return v;
}

// Shape ids of `layer` joined into connected groups by touching runs.
DisjointSets connectivity(const FlatLayout& layout, const std::vector<ParallelRun>& runs) {
  DisjointSets sets(layout.shapes().size());
  for (const auto& r : runs) {
    if (r.spacing == 0) sets.unite(r.a, r.b);
  }
  return sets;
}

bool violation_order(const Violation& a, const Violation& b) {
  return std::tie(a.case_index, a.layer, a.kind, a.bbox, a.shapes, a.pattern) <
         std::tie(b.case_index, b.layer, b.kind, b.bbox, b.shapes, b.pattern);
}

}  // namespace

std::string_view to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::Width:
      return "Width";
    case ViolationKind::SpacingSameMask:
      return "SpacingSameMask";
    case ViolationKind::SpacingAnyMask:
      return "SpacingAnyMask";
    case ViolationKind::ColorMissing:
      return "ColorMissing";
    case ViolationKind::OddCycle:
      return "OddCycle";
    case ViolationKind::Hotspot:
      return "Hotspot";
  }
  return "?";
}

std::optional<ViolationKind> violation_kind_from_string(std::string_view name) {
  for (auto k :
       {ViolationKind::Width, ViolationKind::SpacingSameMask, ViolationKind::SpacingAnyMask,
        ViolationKind::ColorMissing, ViolationKind::OddCycle, ViolationKind::Hotspot}) {
    if (to_string(k) == name) return k;
  }
  return std::nullopt;
}

std::string_view to_string(DptOption option) { return option == DptOption::OptionI ? "I" : "II"; }

std::vector<Violation> check_width(const FlatLayout& layout, const RuleDeck& rules) {
  std::vector<const LayerRule*> by_layer;
  for (const auto& name : layout.layers()) by_layer.push_back(rules.rule(name));
  std::vector<Violation> out;
  for (const auto& s : layout.shapes()) {
    const LayerRule* rule = by_layer[s.layer];
    if (rule == nullptr) continue;
    if (std::min(s.rect.width(), s.rect.height()) < rule->min_width) {
      Violation v;
      v.kind = ViolationKind::Width;
      v.layer = layout.layer_name(s.layer);
      v.bbox = s.rect;
      v.shapes = {s.id};
      out.push_back(std::move(v));
    }
  }
  return out;
}

std::vector<Violation> check_spacing(const FlatLayout& layout, const RuleDeck& rules,
                                     DptOption option, int jobs) {
  std::vector<Violation> out;
  for (std::size_t li = 0; li < layout.layers().size(); ++li) {
    const LayerId layer = static_cast<LayerId>(li);
    const LayerRule* rule = rules.rule(layout.layer_name(layer));
    if (rule == nullptr) continue;
    const Dbu reach =
        rule->dpt ? std::max(rule->spacing_same, rule->spacing_any) : rule->spacing_any;
    const auto runs = parallel_runs(layout, layer, reach - 1, jobs);
    DisjointSets groups = connectivity(layout, runs);
    for (const auto& run : runs) {
      if (run.spacing == 0 || groups.find(run.a) == groups.find(run.b)) continue;
      if (run.spacing < rule->spacing_any) {
        out.push_back(pair_violation(ViolationKind::SpacingAnyMask, layout, run));
      }
      if (!rule->dpt) continue;
      const Mask ma = layout.shape(run.a).mask;
      const Mask mb = layout.shape(run.b).mask;
      if (ma != Mask::None && ma == mb && run.spacing < rule->spacing_same) {
        out.push_back(pair_violation(ViolationKind::SpacingSameMask, layout, run));
      }
    }
    if (rule->dpt && option == DptOption::OptionI) {
      for (const auto& s : layout.shapes()) {
        if (s.layer != layer || s.mask != Mask::None) continue;
        Violation v;
        v.kind = ViolationKind::ColorMissing;
        v.layer = layout.layer_name(layer);
        v.bbox = s.rect;
        v.shapes = {s.id};
        out.push_back(std::move(v));
      }
    }
  }
  return out;
}

std::vector<std::vector<std::size_t>> ConflictGraph::adjacency() const {
  std::vector<std::vector<std::size_t>> adj(nodes.size());
  for (const auto& e : edges) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  for (auto& a : adj) std::sort(a.begin(), a.end());
  return adj;
}

ConflictGraph build_conflict_graph(const FlatLayout& layout, const RuleDeck& rules,
                                   const std::string& layer, int jobs) {
  ConflictGraph g;
  g.layer = layer;
  g.node_of_shape.assign(layout.shapes().size(), ConflictGraph::npos);
  const LayerRule* rule = rules.rule(layer);
  auto lid = layout.layer_id(layer);
  if (rule == nullptr || !rule->dpt) {
    throw Error(ErrorCode::Precondition, layer + " is not a DPT layer");
  }
  if (!lid) return g;

  const auto runs = parallel_runs(layout, *lid, rule->spacing_same - 1, jobs);
  DisjointSets groups = connectivity(layout, runs);
  std::map<std::size_t, std::size_t> node_of_root;
  for (const auto& s : layout.shapes()) {
    if (s.layer != *lid) continue;
    const std::size_t root = groups.find(s.id);
    auto [it, inserted] = node_of_root.emplace(root, g.nodes.size());
    if (inserted) g.nodes.emplace_back();
    g.nodes[it->second].push_back(s.id);
    g.node_of_shape[s.id] = it->second;
  }
  std::map<std::pair<std::size_t, std::size_t>, ConflictEdge> edges;
  for (const auto& run : runs) {
    if (run.spacing == 0) continue;
    std::size_t u = g.node_of_shape[run.a];
    std::size_t v = g.node_of_shape[run.b];
    if (u == v) continue;
    if (v < u) std::swap(u, v);
    edges.try_emplace({u, v}, ConflictEdge{u, v, run.a, run.b});
  }
  g.edges.reserve(edges.size());
  for (auto& [key, e] : edges) g.edges.push_back(e);
  return g;
}

namespace {

struct OddCycleWitness {
  std::vector<std::size_t> nodes;  // closed walk without the repeated start
};

// Shortest odd cycle inside one component: BFS from every node; an edge
// between two nodes at equal depth closes an odd cycle of length 2d+1, and
// the minimum over all roots is a simple cycle.
OddCycleWitness shortest_odd_cycle(const std::vector<std::size_t>& component,
                                   const std::vector<std::vector<std::size_t>>& adj) {
  constexpr std::size_t kUnseen = static_cast<std::size_t>(-1);
  std::size_t best_len = kUnseen;
  OddCycleWitness best;
  std::vector<std::size_t> dist(adj.size(), kUnseen);
  std::vector<std::size_t> parent(adj.size(), kUnseen);
  for (std::size_t root : component) {
    for (std::size_t n : component) {
      dist[n] = kUnseen;
      parent[n] = kUnseen;
    }
    std::deque<std::size_t> queue{root};
    dist[root] = 0;
    while (!queue.empty()) {
      const std::size_t u = queue.front();
      queue.pop_front();
      for (std::size_t w : adj[u]) {
        if (dist[w] == kUnseen) {
          dist[w] = dist[u] + 1;
          parent[w] = u;
          queue.push_back(w);
        }
      }
    }
    for (std::size_t u : component) {
      for (std::size_t w : adj[u]) {
        if (w <= u || dist[u] != dist[w]) continue;
        const std::size_t len = 2 * dist[u] + 1;
        if (len >= best_len) continue;
        std::vector<std::size_t> left;
        for (std::size_t x = u; x != kUnseen; x = parent[x]) left.push_back(x);
        std::vector<std::size_t> right;
        for (std::size_t x = w; x != root; x = parent[x]) right.push_back(x);
        std::reverse(left.begin(), left.end());  // root .. u
        best.nodes = left;
        best.nodes.insert(best.nodes.end(), right.begin(), right.end());  // w .. (child of root)
        best_len = len;
      }
    }
  }
  return best;
}

}  // namespace

ColorResult color_decompose(const ConflictGraph& graph, const FlatLayout& layout) {
  const auto adj = graph.adjacency();
  const std::size_t n = graph.nodes.size();
  ColorResult result;
  result.node_masks.assign(n, Mask::None);
  std::map<std::pair<std::size_t, std::size_t>, const ConflictEdge*> edge_of;
  for (const auto& e : graph.edges) edge_of[{e.u, e.v}] = &e;

  std::vector<bool> visited(n, false);
  for (std::size_t start = 0; start < n; ++start) {
    if (visited[start]) continue;
    std::vector<std::size_t> component;
    std::deque<std::size_t> queue{start};
    visited[start] = true;
    result.node_masks[start] = Mask::Mask1;
    bool bipartite = true;
    while (!queue.empty()) {
      const std::size_t u = queue.front();
      queue.pop_front();
      component.push_back(u);
      for (std::size_t w : adj[u]) {
        if (!visited[w]) {
          visited[w] = true;
          result.node_masks[w] = opposite(result.node_masks[u]);
          queue.push_back(w);
        } else if (result.node_masks[w] == result.node_masks[u]) {
          bipartite = false;
        }
      }
    }
    if (bipartite) continue;

    std::sort(component.begin(), component.end());
    for (std::size_t c : component) result.node_masks[c] = Mask::None;
    const OddCycleWitness cycle = shortest_odd_cycle(component, adj);
    Violation v;
    v.kind = ViolationKind::OddCycle;
    v.layer = graph.layer;
    bool first = true;
    for (std::size_t k = 0; k < cycle.nodes.size(); ++k) {
      std::size_t a = cycle.nodes[k];
      std::size_t b = cycle.nodes[(k + 1) % cycle.nodes.size()];
      if (b < a) std::swap(a, b);
      const ConflictEdge* e = edge_of.at({a, b});
      for (ShapeId s : {e->witness_a, e->witness_b}) {
        v.shapes.push_back(s);
        const Rect& r = layout.shape(s).rect;
        v.bbox = first ? r : bounding_union(v.bbox, r);
        first = false;
      }
    }
    std::sort(v.shapes.begin(), v.shapes.end());
    v.shapes.erase(std::unique(v.shapes.begin(), v.shapes.end()), v.shapes.end());
    result.odd_cycles.push_back(std::move(v));
  }
  return result;
}

FlatLayout apply_colors(const FlatLayout& layout, const ConflictGraph& graph,
                        const std::vector<Mask>& node_masks, bool allow_partial) {
  if (node_masks.size() != graph.nodes.size()) {
    throw Error(ErrorCode::IncompleteAssignment, "assignment size does not match graph nodes");
  }
  std::vector<Mask> masks;
  masks.reserve(layout.shapes().size());
  for (const auto& s : layout.shapes()) masks.push_back(s.mask);
  for (std::size_t n = 0; n < graph.nodes.size(); ++n) {
    if (node_masks[n] == Mask::None && !allow_partial) {
      throw Error(ErrorCode::IncompleteAssignment,
                  "node " + std::to_string(n) + " on " + graph.layer + " has no mask");
    }
    for (ShapeId s : graph.nodes[n]) masks[s] = node_masks[n];
  }
  return layout.with_masks(std::move(masks));
}

std::vector<Violation> VerificationResult::all() const {
  std::vector<Violation> out;
  out.reserve(width.size() + spacing.size() + coloring.size() + hotspots.size());
  for (const auto* list : {&width, &spacing, &coloring, &hotspots}) {
    out.insert(out.end(), list->begin(), list->end());
  }
  std::sort(out.begin(), out.end(), violation_order);
  return out;
}

std::size_t VerificationResult::drc_count() const {
  return width.size() + spacing.size() + coloring.size();
}

std::size_t VerificationResult::drc_plus_count() const { return hotspots.size(); }

std::size_t VerificationResult::color_related_count() const {
  std::size_t n = 0;
  for (const auto* list : {&width, &spacing, &coloring, &hotspots}) {
    for (const auto& v : *list) n += is_color_related(v.kind) ? 1 : 0;
  }
  return n;
}

PreparedLayout prepare_layout(const CellLibrary& library, const RuleDeck& rules,
                              const RunOptions& options) {
  if (!library.cells().empty() && library.row_height() != rules.row_height) {
    throw Error(ErrorCode::InvalidRule, "library " + library.name() + " row height " +
                                            std::to_string(library.row_height()) +
                                            " differs from rule deck " +
                                            std::to_string(rules.row_height));
  }
  PreparedLayout p;
  p.cases = enumerate_library(library);
  p.floorplan = plan_floorplan(p.cases, rules, options.max_row_width);
  auto placements = place_cases(p.cases, p.floorplan);
  p.case_of_instance.reserve(placements.size());
  for (std::size_t i = 0; i < p.cases.size(); ++i) {
    p.case_of_instance.insert(p.case_of_instance.end(), p.cases[i].placements.size(), i);
  }
  p.layout = flatten(library, placements, p.floorplan.die_area, rules.interaction_distance);
  return p;
}

VerificationResult verify_layout(PreparedLayout prepared, const RuleDeck& rules, DptOption option,
                                 int jobs) {
  VerificationResult r;
  r.option = option;
  r.cases = std::move(prepared.cases);
  r.floorplan = std::move(prepared.floorplan);
  r.case_of_instance = std::move(prepared.case_of_instance);
  r.layout = std::move(prepared.layout);

  if (option == DptOption::OptionII) {
    const FlatLayout before = r.layout;
    for (const auto& [name, rule] : rules.layers) {
      if (!rule.dpt || !r.layout.layer_id(name)) continue;
      const ConflictGraph graph = build_conflict_graph(r.layout, rules, name, jobs);
      ColorResult colors = color_decompose(graph, r.layout);
      r.layout = apply_colors(r.layout, graph, colors.node_masks, /*allow_partial=*/true);
      for (auto& v : colors.odd_cycles) r.coloring.push_back(std::move(v));
    }
    for (const auto& s : before.shapes()) {
      const Mask now = r.layout.shape(s.id).mask;
      if (now != s.mask) r.recolored.push_back({s.id, s.mask, now});
    }
  }

  r.width = check_width(r.layout, rules);
  r.spacing = check_spacing(r.layout, rules, option, jobs);
  r.hotspots = match_hotspots(r.layout, rules.hotspot_patterns, jobs);

  for (auto* list : {&r.width, &r.spacing, &r.coloring, &r.hotspots}) {
    for (auto& v : *list) {
      if (!v.shapes.empty() && !r.case_of_instance.empty()) {
        v.case_index = r.case_of_instance[r.layout.shape(v.shapes.front()).instance];
      }
    }
    std::sort(list->begin(), list->end(), violation_order);
  }
  return r;
}

VerificationResult run_all(const CellLibrary& library, const RuleDeck& rules, DptOption option,
                           const RunOptions& options) {
  VerificationResult r =
      verify_layout(prepare_layout(library, rules, options), rules, option, options.jobs);
  r.library = library.name();
  return r;
}

}  // namespace seamcheck
