#include "osmag/profile.hpp"

#include <algorithm>
#include <charconv>

#include "json.hpp"

#include "osmag/error.hpp"

namespace osmag {

namespace {

std::optional<double> leading_number(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  double v = 0.0;
  auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc()) return std::nullopt;
  return v;
}

}  // namespace

bool Selector::matches(ElementKind kind, const Tags& tags) const {
  if (scope && *scope != kind) return false;
  if (op == Op::any) return true;
  const std::string* v = find_tag(tags, key);
  if (!v) return false;
  switch (op) {
    case Op::exists: return true;
    case Op::equals: return *v == value;
    case Op::greater: {
      auto n = leading_number(*v);
      return n && *n > number;
    }
    case Op::less: {
      auto n = leading_number(*v);
      return n && *n < number;
    }
    case Op::any: break;
  }
  return true;
}

std::string Selector::to_string() const {
  std::string prefix = scope ? (*scope == ElementKind::area ? "area:" : "passage:") : "";
  switch (op) {
    case Op::any: return prefix + "*";
    case Op::exists: return prefix + key + "=*";
    case Op::equals: return prefix + key + "=" + value;
    case Op::greater: return prefix + key + ">" + value;
    case Op::less: return prefix + key + "<" + value;
  }
  return prefix;
}

Selector parse_selector(std::string_view text) {
  Selector s;
  if (text.starts_with("area:")) {
    s.scope = ElementKind::area;
    text.remove_prefix(5);
  } else if (text.starts_with("passage:")) {
    s.scope = ElementKind::passage;
    text.remove_prefix(8);
  }
  if (text == "*") return s;
  auto pos = text.find_first_of("=<>");
  if (pos == std::string_view::npos || pos == 0)
    throw Error(Errc::BadProfile, "selector '" + std::string(text) + "' is not key=value, key>n, key<n or *");
  s.key = std::string(text.substr(0, pos));
  s.value = std::string(text.substr(pos + 1));
  const char op = text[pos];
  if (op == '=') {
    s.op = s.value == "*" ? Selector::Op::exists : Selector::Op::equals;
  } else {
    auto n = leading_number(s.value);
    if (!n) throw Error(Errc::BadProfile, "selector '" + std::string(text) + "' needs a number after " + op);
    s.number = *n;
    s.op = op == '>' ? Selector::Op::greater : Selector::Op::less;
  }
  return s;
}

const Rule* CapabilityProfile::match(ElementKind kind, const Tags& tags) const {
  for (const auto& r : rules)
    if (r.selector.matches(kind, tags)) return &r;
  return nullptr;
}

double CapabilityProfile::min_multiplier() const {
  double m = 1.0;
  for (const auto& r : rules)
    if (r.effect.kind == Effect::Kind::multiplier) m = std::min(m, r.effect.value);
  return m;
}

std::optional<double> apply_profile(const CapabilityProfile& profile, ElementKind kind, const Tags& tags,
                                    double base_cost) {
  const Rule* rule = profile.match(kind, tags);
  if (!rule) return base_cost;
  switch (rule->effect.kind) {
    case Effect::Kind::blocked: return std::nullopt;
    case Effect::Kind::multiplier: return base_cost * rule->effect.value;
    case Effect::Kind::add_cost: return base_cost + rule->effect.value;
  }
  return base_cost;
}

std::optional<CapabilityProfile> builtin_profile(std::string_view name) {
  auto rule = [](std::string_view sel, Effect::Kind kind, double value = 1.0) {
    return Rule{parse_selector(sel), Effect{kind, value}};
  };
  if (name == "default") return CapabilityProfile{};
  if (name == "wheeled") {
    CapabilityProfile p;
    p.name = "wheeled";
    p.rules = {rule("highway=steps", Effect::Kind::blocked), rule("stairs=yes", Effect::Kind::blocked),
               rule("kerb:height>0.04", Effect::Kind::blocked)};
    return p;
  }
  if (name == "legged") {
    CapabilityProfile p;
    p.name = "legged";
    p.rules = {rule("highway=steps", Effect::Kind::multiplier, 1.0), rule("stairs=yes", Effect::Kind::multiplier, 1.0)};
    return p;
  }
  return std::nullopt;
}

CapabilityProfile parse_profile(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::BadProfile, e.what());
  }
  try {
    CapabilityProfile p;
    p.name = doc.value("name", std::string("custom"));
    p.vertical_cost_per_meter = doc.value("vertical_cost_per_meter", 1.0);
    if (p.vertical_cost_per_meter < 0) throw Error(Errc::BadProfile, "vertical_cost_per_meter must be >= 0");
    for (const auto& r : doc.value("rules", nlohmann::json::array())) {
      Rule rule;
      rule.selector = parse_selector(r.at("match").get<std::string>());
      const std::string effect = r.at("effect").get<std::string>();
      if (effect == "blocked") {
        rule.effect = {Effect::Kind::blocked, 0.0};
      } else if (effect == "multiplier") {
        rule.effect = {Effect::Kind::multiplier, r.at("value").get<double>()};
      } else if (effect == "add_cost") {
        rule.effect = {Effect::Kind::add_cost, r.at("value").get<double>()};
      } else {
        throw Error(Errc::BadProfile, "unknown effect '" + effect + "'");
      }
      if (rule.effect.value < 0) throw Error(Errc::BadProfile, "effect values must be >= 0");
      p.rules.push_back(std::move(rule));
    }
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::BadProfile, e.what());
  }
}

CapabilityProfile load_profile(const std::filesystem::path& path) { return parse_profile(read_file(path)); }

CapabilityProfile resolve_profile(std::string_view name_or_path) {
  if (auto p = builtin_profile(name_or_path)) return *p;
  const std::filesystem::path path{std::string(name_or_path)};
  if (!std::filesystem::is_regular_file(path))
    throw Error(Errc::BadProfile, "'" + path.string() + "' is neither a built-in profile nor a profile file");
  return load_profile(path);
}

}  // namespace osmag
