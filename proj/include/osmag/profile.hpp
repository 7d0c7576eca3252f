#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "osmag/osm_document.hpp"

namespace osmag {

enum class ElementKind { area, passage };

/// Tag pattern. Text forms: "key=value", "key=*" (key present),
/// "key>number", "key<number", "*" (everything). A leading "area:" or
/// "passage:" restricts the element kind.
struct Selector {
  enum class Op { any, exists, equals, greater, less };
  std::optional<ElementKind> scope;
  Op op = Op::any;
  std::string key;
  std::string value;
  double number = 0.0;

  bool matches(ElementKind kind, const Tags& tags) const;
  std::string to_string() const;
};

Selector parse_selector(std::string_view text);

struct Effect {
  enum class Kind { blocked, multiplier, add_cost };
  Kind kind = Kind::multiplier;
  double value = 1.0;  // factor (>= 0) or added metres (>= 0)

  bool is_identity() const {
    return (kind == Kind::multiplier && value == 1.0) || (kind == Kind::add_cost && value == 0.0);
  }
};

struct Rule {
  Selector selector;
  Effect effect;
};

/// Robot capability rules; the first matching rule wins.
struct CapabilityProfile {
  std::string name = "default";
  std::vector<Rule> rules;
  double vertical_cost_per_meter = 1.0;

  const Rule* match(ElementKind kind, const Tags& tags) const;
  /// min(1, smallest multiplier of any rule); scales the planner heuristic.
  double min_multiplier() const;
};

/// Adjusted cost in metres, or nullopt when the element is blocked.
std::optional<double> apply_profile(const CapabilityProfile& profile, ElementKind kind, const Tags& tags,
                                    double base_cost);

/// Built-ins: "default" (no rules), "wheeled", "legged".
std::optional<CapabilityProfile> builtin_profile(std::string_view name);

/// JSON: {"name": ..., "vertical_cost_per_meter": 1.0,
///        "rules": [{"match": "highway=steps", "effect": "blocked"},
///                  {"match": "surface=grass", "effect": "multiplier", "value": 2.0}]}
CapabilityProfile parse_profile(std::string_view json_text);
CapabilityProfile load_profile(const std::filesystem::path& path);

/// Built-in name or path to a JSON profile.
CapabilityProfile resolve_profile(std::string_view name_or_path);

}  // namespace osmag
