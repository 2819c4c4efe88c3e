#pragma once
// SVG snapshots in the Poincare disc.

#include <array>
#include <string>
#include <string_view>

#include "heptaca/engine.hpp"

namespace heptaca {

struct RenderStyle {
  /// Fill per state, indexed W B G R.
  std::array<std::string, 4> fill{"#d6eaf8", "#2e6fd8", "#2f9e44", "#d9342b"};
  /// Draw a locomotive front (a B cell next to an R cell) darker. Display
  /// only; the state is not touched.
  bool darken_front = true;
  std::string front_fill = "#0b2a6b";
  double radius = 400.0;        // disc radius in SVG units
  unsigned max_level = 4;       // deepest level drawn
  std::string stroke = "#555555";
};

/// Comma-separated key=value overrides: W=, B=, G=, R= (colours),
/// front=on|off, front-fill=, radius=, level=, stroke=. Throws
/// std::invalid_argument.
RenderStyle parse_style(std::string_view spec, RenderStyle base = {});

/// One polygon per cell of level <= style.max_level, placed by composing
/// hyperbolic isometries from the centre outwards. Output depends only on
/// the inputs.
std::string render_svg(const Configuration& cfg, const RenderStyle& style = {});

/// Number of polygons render_svg emits.
std::size_t rendered_cell_count(const Region& region, const RenderStyle& style);

}  // namespace heptaca
