#pragma once
// Candidate idle configurations of crossings and switches.
//
// The centre of a junction is the central cell of the region; half-paths
// leave it through sector roots (first cells) and continue as slip-road
// tracks. The layouts only follow what the textual description pins down,
// so every candidate carries a constraint report and must pass the idle
// fixed-point check before it is trusted.

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "heptaca/engine.hpp"
#include "heptaca/railway/paths.hpp"

namespace heptaca::railway {

enum class JunctionKind { Crossing, FixedSwitch, MemorySwitch, FlipFlopSwitch };
enum class Side { Left, Right };
/// How "1(1)", "1(7)", "2(1)" are read: relative to the switch arms, or as
/// sector numbers around the centre.
enum class CoordinateFrame { Local, Sector };

struct JunctionSpec {
  JunctionKind kind = JunctionKind::Crossing;
  Side side = Side::Left;
  CoordinateFrame frame = CoordinateFrame::Local;
  std::size_t arm_length = 4;  // proper-track cells per half-path
};

struct JunctionCandidate {
  JunctionSpec spec;
  Configuration idle;
  /// Named cells: "centre", "first", "green", "idle", "obstacle", "marker",
  /// "track", "milestone".
  std::map<std::string, std::vector<CellId>> roles;
  ConstraintReport report;
};

JunctionCandidate build_junction(std::shared_ptr<const Region> region, const JunctionSpec& spec);

/// Adds the idle fixed-point check to the report; true when every check holds.
bool accept_junction(JunctionCandidate& candidate, const RuleTable& table);

/// "crossing", "switch-fixed-left", "switch-memory-right", ...
std::string junction_name(const JunctionSpec& spec);
/// Inverse of junction_name; throws std::invalid_argument.
JunctionSpec parse_junction_name(std::string_view name);

}  // namespace heptaca::railway
