#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <string>

#include "seamcheck/error.hpp"
#include "seamcheck/libio.hpp"

namespace seamcheck {

namespace {

int line_of(const YAML::Node& n) { return n.Mark().line + 1; }
int column_of(const YAML::Node& n) { return n.Mark().column + 1; }

Dbu required_dbu(const YAML::Node& parent, const char* key, const std::string& where) {
  YAML::Node n = parent[key];
  if (!n) {
    throw Error(ErrorCode::MissingRule, where + ": missing '" + key + "'", line_of(parent),
                column_of(parent));
  }
  try {
    return n.as<Dbu>();
  } catch (const YAML::Exception&) {
    throw Error(ErrorCode::InvalidRule, where + ": '" + key + "' must be an integer DBU value",
                line_of(n), column_of(n));
  }
}

Mask mask_from_node(const YAML::Node& n) {
  const std::string v = n.as<std::string>();
  if (v == "1" || v == "E1" || v == "Mask1") return Mask::Mask1;
  if (v == "2" || v == "E2" || v == "Mask2") return Mask::Mask2;
  throw Error(ErrorCode::InvalidRule, "mask must be 1 or 2, got '" + v + "'", line_of(n),
              column_of(n));
}

}  // namespace

const LayerRule* RuleDeck::rule(std::string_view layer) const {
  auto it = layers.find(layer);
  return it == layers.end() ? nullptr : &it->second;
}

RuleDeck parse_rules(std::string_view text) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(text));
  } catch (const YAML::ParserException& e) {
    throw Error(ErrorCode::Syntax, e.msg, e.mark.line + 1, e.mark.column + 1);
  }
  if (!root.IsMap()) throw Error(ErrorCode::Syntax, "rule deck must be a mapping");

  RuleDeck deck;
  deck.row_height = required_dbu(root, "row_height", "deck");
  deck.site_width = required_dbu(root, "site_width", "deck");
  if (deck.row_height <= 0 || deck.site_width <= 0) {
    throw Error(ErrorCode::InvalidRule, "row_height and site_width must be positive");
  }

  YAML::Node layers = root["layers"];
  if (!layers || !layers.IsMap() || layers.size() == 0) {
    throw Error(ErrorCode::MissingRule, "deck: no layer rules", line_of(root), column_of(root));
  }
  Dbu reach = 0;
  for (const auto& kv : layers) {
    const std::string name = kv.first.as<std::string>();
    const YAML::Node& body = kv.second;
    const std::string where = "layer " + name;
    LayerRule rule;
    rule.min_width = required_dbu(body, "min_width", where);
    rule.spacing_any = required_dbu(body, "spacing_any", where);
    rule.dpt = body["dpt"] ? body["dpt"].as<bool>() : false;
    rule.spacing_same =
        body["spacing_same"] ? required_dbu(body, "spacing_same", where) : rule.spacing_any;
    if (rule.dpt && !body["spacing_same"]) {
      throw Error(ErrorCode::MissingRule, where + ": DPT layer needs 'spacing_same'", line_of(body),
                  column_of(body));
    }
    if (rule.min_width <= 0 || rule.spacing_any <= 0) {
      throw Error(ErrorCode::InvalidRule, where + ": widths and spacings must be positive",
                  line_of(body), column_of(body));
    }
    if (rule.spacing_same < rule.spacing_any) {
      throw Error(ErrorCode::InconsistentSpacing,
                  where + ": spacing_same " + std::to_string(rule.spacing_same) +
                      " < spacing_any " + std::to_string(rule.spacing_any),
                  line_of(body), column_of(body));
    }
    reach = std::max(reach, rule.spacing_same);
    deck.layers.emplace(name, rule);
  }

  if (YAML::Node patterns = root["hotspot_patterns"]) {
    if (!patterns.IsSequence()) {
      throw Error(ErrorCode::Syntax, "hotspot_patterns must be a list", line_of(patterns),
                  column_of(patterns));
    }
    for (const auto& p : patterns) {
      HotspotPattern pat;
      if (!p["name"] || !p["layer"] || !p["masks"]) {
        throw Error(ErrorCode::MissingRule, "pattern needs name, layer and masks", line_of(p),
                    column_of(p));
      }
      pat.name = p["name"].as<std::string>();
      pat.layer = p["layer"].as<std::string>();
      for (const auto& m : p["masks"]) pat.masks.push_back(mask_from_node(m));
      const std::string where = "pattern " + pat.name;
      pat.max_gap = required_dbu(p, "max_gap", where);
      pat.min_run_length = required_dbu(p, "min_run_length", where);
      if (pat.masks.size() < 2 || pat.max_gap <= 0 || pat.min_run_length <= 0) {
        throw Error(ErrorCode::InvalidRule,
                    where + ": needs >= 2 tracks and positive max_gap/min_run_length", line_of(p),
                    column_of(p));
      }
      reach = std::max(reach, pat.max_gap);
      deck.hotspot_patterns.push_back(std::move(pat));
    }
  }

  if (root["interaction_distance"]) {
    deck.interaction_distance = required_dbu(root, "interaction_distance", "deck");
    if (deck.interaction_distance < reach) {
      throw Error(ErrorCode::InvalidRule,
                  "interaction_distance " + std::to_string(deck.interaction_distance) +
                      " is below the largest rule reach " + std::to_string(reach));
    }
  } else {
    deck.interaction_distance = reach;
  }
  return deck;
}

}  // namespace seamcheck
