#pragma once
// Cell-level tracks: the green (S1), blue (S2), proper (S3) and safeguard
// (S4) tracks of a locomotive path, and the locomotive on it.

#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "heptaca/engine.hpp"
#include "heptaca/heptagrid.hpp"
#include "heptaca/rules.hpp"

namespace heptaca::railway {

enum class PathKind { Horizontal, Vertical, SlipRoad };

std::string_view to_string(PathKind k);

/// anchor: first proper-track cell (Horizontal, SlipRoad) or top blue cell
/// (Vertical). span: number of cells; 0 means a closed isocline for
/// Horizontal and "as far as the margin allows" otherwise. direction: +1
/// runs counter-clockwise / away from the centre, -1 the other way.
struct PathSpec {
  PathKind kind = PathKind::Horizontal;
  CellId anchor = CellId::in_sector(1, 1);
  std::size_t span = 0;
  int direction = 1;
  /// Off only to build deliberately unsafe test scenarios.
  bool enforce_margin = true;
};

struct ConstraintCheck {
  std::string name;
  bool ok = true;
  std::string detail;
};

struct ConstraintReport {
  std::vector<ConstraintCheck> checks;
  bool ok() const;
  void add(std::string name, bool ok, std::string detail = {});
  const ConstraintCheck* find(std::string_view name) const;
  std::string text() const;
};

/// The path does not fit in the region with two quiescent levels below it.
class MarginError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Number of quiescent levels required between a path and the rim.
inline constexpr unsigned kRimMargin = 2;

struct PathLayout {
  PathSpec spec;
  bool closed = false;
  std::vector<CellId> s1, s2;
  std::vector<CellId> s3;  // in travel order
  std::vector<CellId> s4;
  std::vector<CellId> milestones;  // the blue cells of S4
  Configuration idle;
  ConstraintReport report;
};

/// Builds a path and checks its textual constraints. Throws MarginError or
/// std::invalid_argument for anchors that cannot carry the path kind.
PathLayout build_path(std::shared_ptr<const Region> region, const PathSpec& spec);

/// Idle path plus a locomotive: front (B) on s3[position], rear (R) on the
/// cell behind it. Throws std::out_of_range when either cell is off S3.
Configuration place_locomotive(const PathLayout& path, std::size_t position);
/// Same, on an arbitrary configuration of the path's region.
Configuration place_locomotive(const Configuration& cfg, const PathLayout& path, std::size_t position);
/// Removes the locomotive (S3 back to blank).
Configuration remove_locomotive(const Configuration& cfg, const PathLayout& path);

struct IdleCheck {
  bool fixed_point = false;
  std::vector<MissingContext> missing;
  std::vector<CellId> changed;
};

/// One step from `idle`; fixed when nothing changes and no rule is missing.
IdleCheck check_idle(const Configuration& idle, const RuleTable& table);

struct MotionCheck {
  bool moving = false;
  std::size_t period = 0;   // steps per advanced cell
  std::size_t periods = 0;  // advances verified
  RunStatus status = RunStatus::Completed;
  std::vector<MissingContext> missing;
  std::string detail;
};

/// Runs the path with a locomotive at `position` and looks for the smallest
/// p <= max_period with trace[k p] = locomotive advanced k cells, for
/// `periods` consecutive advances.
MotionCheck check_motion(const PathLayout& path, const RuleTable& table, std::size_t position, std::size_t periods,
                         std::size_t max_period = 4);

/// Zig-zag proper track: starting at `start` entered from `pred`, each next
/// cell sits two slots after the previous one around the current cell,
/// turning alternately (first by `first_turn`, +1 or -1). Every flower centre
/// (track cell with both neighbours on the track) gets three milestones:
/// the apex between its two track neighbours and the petals two slots
/// beyond them; its two remaining petals are blank safeguards.
struct ZigZag {
  std::vector<CellId> track;
  std::vector<CellId> milestones;  // may repeat or hit the track; callers check
  std::vector<CellId> safeguards;
};
ZigZag zigzag_track(const Region& region, CellId pred, CellId start, std::size_t cells, int first_turn = 1);

/// Straight-line model of the motion: BWW->B, RBW->R, WRB->W, WWR->W read
/// left-self-right for rightward motion, mirrored for leftward motion; every
/// other triple keeps the cell. Cells beyond the ends read as W.
std::vector<State> oracle_motion_1d(const std::vector<State>& line, std::size_t steps);

}  // namespace heptaca::railway
