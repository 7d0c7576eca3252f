#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "osmag/model.hpp"
#include "osmag/planner.hpp"

namespace osmag {

struct RenderStyle {
  double wall_width = 0.15;  // m
  std::string inner_fill = "#f4efe1";
  std::string structure_fill = "#d9d9d9";
  std::string wall_stroke = "#333333";
  std::string passage_stroke = "#d62728";
  double passage_width = 0.3;
  std::string route_stroke = "#1f77b4";
  double route_width = 0.25;
  double level_min = 0.0;  // inclusive height band, m
  double level_max = 0.0;
  bool labels = true;
  double font_size = 0.6;  // m
};

/// Band [h - tolerance, h + tolerance] around one floor.
RenderStyle style_for_level(double height);

/// JSON object with any of the RenderStyle field names. Throws BadStyle.
RenderStyle parse_render_style(std::string_view json_text, RenderStyle base = {});

/// SVG 1.1 of the areas whose height lies in the band. Map (x, y) in metres
/// is drawn at SVG (x, -y). Route legs outside the band are dashed.
/// Throws EmptySelection and BadStyle.
std::string render_svg(const MapModel& model, const RenderStyle& style, const Route* route = nullptr);

}  // namespace osmag
