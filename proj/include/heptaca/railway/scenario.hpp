#pragma once
// Scenario files: which region to build and what to put on it.
//
//   # comment
//   kind=horizontal        quiescent | horizontal | vertical | sliproad |
//                          crossing | switch-<fixed|memory|flipflop>-<left|right>
//   level=6                region max level
//   orientation=ccw        ccw | mirrored
//   anchor=1:9             sector:nu
//   span=0
//   direction=+1           +1 | -1 (also ccw, cw, down, up)
//   locomotive=5           front position on the proper track
//   margin=on              off skips the rim-margin check
//   frame=local            local | sector (switch marker coordinates)
//   cell 2:4 B             extra cells, applied last

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "heptaca/engine.hpp"
#include "heptaca/railway/junctions.hpp"
#include "heptaca/railway/paths.hpp"

namespace heptaca::railway {

struct Scenario {
  std::string kind = "quiescent";
  unsigned level = 6;
  Orientation orientation = Orientation::CounterClockwise;
  std::optional<CellId> anchor;
  std::size_t span = 0;
  int direction = 1;
  std::optional<std::size_t> locomotive;
  bool margin = true;
  CoordinateFrame frame = CoordinateFrame::Local;
  Assignment extra;
};

/// Throws std::invalid_argument naming the line.
Scenario parse_scenario(std::string_view text);
std::string format_scenario(const Scenario& s);

struct BuiltScenario {
  std::shared_ptr<const Region> region;
  Configuration initial;
  std::optional<PathLayout> path;
  std::optional<JunctionCandidate> junction;
  /// Constraint report of the path or junction, empty for quiescent.
  std::string report;
};

/// Builds region and initial configuration. Throws MarginError,
/// ResourceLimitError, std::invalid_argument.
BuiltScenario build_scenario(const Scenario& s, std::size_t max_cells = RegionOptions{}.max_cells);

struct ScenarioKind {
  std::string name;
  std::string description;
};
std::vector<ScenarioKind> scenario_kinds();

}  // namespace heptaca::railway
