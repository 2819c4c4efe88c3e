#include "heptaca/railway/junctions.hpp"

#include <algorithm>
#include <set>

namespace heptaca::railway {

namespace {

struct Layout {
  int arriving = 0;                // sector of each first cell
  std::vector<int> firsts;
  std::vector<int> greens;
  int idle = 0;                    // 0 when absent
  int selected = 0, non_selected = 0;
};

Layout layout_of(const JunctionSpec& s) {
  Layout l;
  const bool left = s.side == Side::Left;
  switch (s.kind) {
    case JunctionKind::Crossing:
      l.firsts = {1, 3, 4, 7};
      l.greens = {2, 6};
      l.idle = 5;
      break;
    case JunctionKind::FixedSwitch:
      l.arriving = 4;
      l.selected = left ? 1 : 7;
      l.non_selected = left ? 7 : 1;
      l.firsts = {1, 4, 7};
      l.greens = {2, 6};
      l.idle = 5;
      break;
    case JunctionKind::MemorySwitch:
    case JunctionKind::FlipFlopSwitch:
      l.arriving = 4;
      l.selected = left ? 1 : 7;
      l.non_selected = left ? 7 : 1;
      l.firsts = {1, 4, 7};
      l.greens = {2, 3, 5, 6};
      break;
  }
  return l;
}

std::size_t count_state(const Configuration& cfg, CellId c, State s) {
  std::size_t k = 0;
  for (const auto& n : cfg.region().neighbors(c)) k += (n ? cfg.at(*n) : State::W) == s;
  return k;
}

bool three_consecutive_blank(const Configuration& cfg, CellId c) {
  const Neighbors nb = cfg.region().neighbors(c);
  for (int k = 0; k < kSides; ++k) {
    bool all = true;
    for (int d = 0; d < 3; ++d) {
      const auto& n = nb[(k + d) % kSides];
      all = all && (!n || cfg.at(*n) == State::W);
    }
    if (all) return true;
  }
  return false;
}

}  // namespace

JunctionCandidate build_junction(std::shared_ptr<const Region> region, const JunctionSpec& spec) {
  const Region& r = *region;
  const Layout l = layout_of(spec);
  JunctionCandidate jc{spec, Configuration(region), {}, {}};
  const CellId centre = CellId::center();
  auto root = [](int sector) { return CellId::in_sector(sector, 1); };
  jc.roles["centre"] = {centre};

  // Arms: sector root, its middle son, then a zig-zag slip-road track.
  std::set<CellId> reserved{centre};
  for (int s = 1; s <= kSectors; ++s) reserved.insert(root(s));
  std::vector<CellId> clashes;
  std::set<CellId> arm_cells;
  unsigned deepest = 0;
  for (int s : l.firsts) {
    jc.roles["first"].push_back(root(s));
    const auto sons = r.sons(root(s));
    if (sons.size() < 2 || !sons[1]) throw MarginError("region too small for the junction arms");
    std::vector<CellId> track{root(s)};
    std::vector<CellId> milestones;
    if (spec.arm_length > 1) {
      const ZigZag z = zigzag_track(r, root(s), *sons[1], spec.arm_length - 1, 1);
      track.insert(track.end(), z.track.begin(), z.track.end());
      milestones = z.milestones;
    }
    for (CellId c : track) {
      if (c != root(s) && (reserved.contains(c) || !arm_cells.insert(c).second)) clashes.push_back(c);
      deepest = std::max(deepest, r.level(c));
      jc.roles["track"].push_back(c);
    }
    for (CellId c : milestones) {
      deepest = std::max(deepest, r.level(c));
      if (reserved.contains(c)) {
        clashes.push_back(c);
        continue;
      }
      jc.roles["milestone"].push_back(c);
    }
  }
  if (deepest + kRimMargin > r.max_level()) {
    throw MarginError("junction arms reach level " + std::to_string(deepest) + "; region too shallow");
  }
  const std::set<CellId> track_set(jc.roles["track"].begin(), jc.roles["track"].end());
  for (CellId c : jc.roles["milestone"]) {
    if (track_set.contains(c)) clashes.push_back(c);
    else jc.idle.set(c, State::B);
  }

  for (int s : l.greens) {
    jc.roles["green"].push_back(root(s));
    jc.idle.set(root(s), State::G);
  }
  if (l.idle) jc.roles["idle"] = {root(l.idle)};

  const bool memory_like = spec.kind == JunctionKind::MemorySwitch || spec.kind == JunctionKind::FlipFlopSwitch;
  if (spec.kind == JunctionKind::FixedSwitch) {
    // Green idle cell held by two blue neighbours.
    const CellId idle = root(l.idle);
    jc.idle.set(idle, State::G);
    const auto sons = r.sons(idle);
    for (std::size_t k = 0; k < 2 && k < sons.size(); ++k) {
      if (sons[k]) {
        jc.idle.set(*sons[k], State::B);
        jc.roles["idle-guard"].push_back(*sons[k]);
      }
    }
  }
  if (memory_like) {
    const CellId obstacle = root(l.non_selected);
    jc.idle.set(obstacle, State::G);
    jc.roles["obstacle"] = {obstacle};
    CellId marker;
    if (spec.frame == CoordinateFrame::Sector) {
      marker = CellId::in_sector(l.selected, 2);
    } else {
      for (const auto& son : r.sons(root(l.selected))) {
        if (son && !track_set.contains(*son)) {
          marker = *son;
          break;
        }
      }
    }
    jc.roles["marker"] = {marker};
    jc.idle.set(marker, spec.kind == JunctionKind::FlipFlopSwitch ? State::R : State::B);
  }

  // Textual constraints.
  auto& rep = jc.report;
  rep.add("arms-disjoint", clashes.empty(), clashes.empty() ? "" : std::to_string(clashes.size()) + " shared cell(s)");
  rep.add("centre-blank", jc.idle.at(centre) == State::W);
  bool firsts_blank = true;
  for (int s : l.firsts) {
    if (s != l.non_selected || !memory_like) firsts_blank = firsts_blank && jc.idle.at(root(s)) == State::W;
  }
  rep.add("first-cells-blank", firsts_blank);
  const std::size_t greens = count_state(jc.idle, centre, State::G);
  switch (spec.kind) {
    case JunctionKind::Crossing:
      rep.add("centre-two-green", greens == 2, std::to_string(greens) + " green neighbours");
      rep.add("idle-three-blank", three_consecutive_blank(jc.idle, root(l.idle)));
      break;
    case JunctionKind::FixedSwitch:
      rep.add("idle-green-two-blue",
              jc.idle.at(root(l.idle)) == State::G && count_state(jc.idle, root(l.idle), State::B) == 2);
      break;
    case JunctionKind::MemorySwitch:
      rep.add("centre-five-green", greens == 5, std::to_string(greens) + " green neighbours");
      rep.add("marker-blue", jc.idle.at(jc.roles["marker"][0]) == State::B);
      break;
    case JunctionKind::FlipFlopSwitch:
      rep.add("centre-five-green", greens == 5, std::to_string(greens) + " green neighbours");
      rep.add("marker-red", jc.idle.at(jc.roles["marker"][0]) == State::R);
      rep.add("marker-decoration", false, "the four cells guarding the red marker are not placed");
      break;
  }
  return jc;
}

bool accept_junction(JunctionCandidate& jc, const RuleTable& table) {
  const IdleCheck idle = check_idle(jc.idle, table);
  std::string detail;
  if (!idle.missing.empty()) {
    detail = std::to_string(idle.missing.size()) + " cell(s) without a rule, e.g. " +
             to_string(idle.missing.front().cell) + " " + idle.missing.front().context.word();
  } else if (!idle.changed.empty()) {
    detail = std::to_string(idle.changed.size()) + " cell(s) change, e.g. " + to_string(idle.changed.front());
  }
  jc.report.add("idle-fixed-point", idle.fixed_point, detail);
  return jc.report.ok();
}

std::string junction_name(const JunctionSpec& s) {
  std::string side = s.side == Side::Left ? "left" : "right";
  switch (s.kind) {
    case JunctionKind::Crossing: return "crossing";
    case JunctionKind::FixedSwitch: return "switch-fixed-" + side;
    case JunctionKind::MemorySwitch: return "switch-memory-" + side;
    case JunctionKind::FlipFlopSwitch: return "switch-flipflop-" + side;
  }
  return "?";
}

JunctionSpec parse_junction_name(std::string_view name) {
  JunctionSpec s;
  if (name == "crossing") return s;
  for (auto kind : {JunctionKind::FixedSwitch, JunctionKind::MemorySwitch, JunctionKind::FlipFlopSwitch}) {
    for (auto side : {Side::Left, Side::Right}) {
      s.kind = kind;
      s.side = side;
      if (junction_name(s) == name) return s;
    }
  }
  throw std::invalid_argument("unknown junction '" + std::string(name) + "'");
}

}  // namespace heptaca::railway
