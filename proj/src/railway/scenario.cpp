#include "heptaca/railway/scenario.hpp"

#include <sstream>

#include "heptaca/fib.hpp"
#include "heptaca/railway/coloring.hpp"

namespace heptaca::railway {

namespace {

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::size_t to_size(const std::string& v) {
  std::size_t used = 0;
  const unsigned long long x = std::stoull(v, &used);
  if (used != v.size()) throw std::invalid_argument("not a number: " + v);
  return static_cast<std::size_t>(x);
}

bool is_path_kind(const std::string& k) { return k == "horizontal" || k == "vertical" || k == "sliproad"; }

}  // namespace

Scenario parse_scenario(std::string_view text) {
  Scenario s;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    try {
      if (line.starts_with("cell ")) {
        const Assignment a = parse_assignment(line.substr(5));
        s.extra.insert(a.begin(), a.end());
        continue;
      }
      const auto eq = line.find('=');
      if (eq == std::string::npos) throw std::invalid_argument("expected key=value");
      const std::string key = trim(line.substr(0, eq)), v = trim(line.substr(eq + 1));
      if (key == "kind") {
        if (v != "quiescent" && !is_path_kind(v)) parse_junction_name(v);
        s.kind = v;
      } else if (key == "level") {
        s.level = static_cast<unsigned>(to_size(v));
      } else if (key == "orientation") {
        if (v == "ccw") s.orientation = Orientation::CounterClockwise;
        else if (v == "mirrored") s.orientation = Orientation::Mirrored;
        else throw std::invalid_argument("orientation must be ccw or mirrored");
      } else if (key == "anchor") {
        s.anchor = parse_cell_id(v);
      } else if (key == "span") {
        s.span = to_size(v);
      } else if (key == "direction") {
        if (v == "+1" || v == "1" || v == "ccw" || v == "down") s.direction = 1;
        else if (v == "-1" || v == "cw" || v == "up") s.direction = -1;
        else throw std::invalid_argument("direction must be +1 or -1");
      } else if (key == "locomotive") {
        s.locomotive = to_size(v);
      } else if (key == "margin") {
        if (v != "on" && v != "off") throw std::invalid_argument("margin must be on or off");
        s.margin = v == "on";
      } else if (key == "frame") {
        if (v == "local") s.frame = CoordinateFrame::Local;
        else if (v == "sector") s.frame = CoordinateFrame::Sector;
        else throw std::invalid_argument("frame must be local or sector");
      } else {
        throw std::invalid_argument("unknown key '" + key + "'");
      }
    } catch (const std::exception& e) {
      throw std::invalid_argument("scenario line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return s;
}

std::string format_scenario(const Scenario& s) {
  std::ostringstream out;
  out << "kind=" << s.kind << '\n' << "level=" << s.level << '\n';
  out << "orientation=" << (s.orientation == Orientation::Mirrored ? "mirrored" : "ccw") << '\n';
  if (s.anchor) out << "anchor=" << to_string(*s.anchor) << '\n';
  out << "span=" << s.span << '\n' << "direction=" << (s.direction > 0 ? "+1" : "-1") << '\n';
  if (s.locomotive) out << "locomotive=" << *s.locomotive << '\n';
  if (!s.margin) out << "margin=off\n";
  if (s.frame == CoordinateFrame::Sector) out << "frame=sector\n";
  for (const auto& [c, st] : s.extra) out << "cell " << to_string(c) << ' ' << to_char(st) << '\n';
  return out.str();
}

BuiltScenario build_scenario(const Scenario& s, std::size_t max_cells) {
  RegionOptions opt;
  opt.orientation = s.orientation;
  opt.max_cells = max_cells;
  auto region = std::make_shared<const Region>(build_region(s.level, opt));
  BuiltScenario b{region, Configuration(region), std::nullopt, std::nullopt, {}};

  if (is_path_kind(s.kind)) {
    PathSpec spec;
    spec.kind = s.kind == "horizontal" ? PathKind::Horizontal : s.kind == "vertical" ? PathKind::Vertical
                                                                                    : PathKind::SlipRoad;
    spec.span = s.span;
    spec.direction = s.direction;
    spec.enforce_margin = s.margin;
    if (s.anchor) {
      spec.anchor = *s.anchor;
    } else if (spec.kind == PathKind::Horizontal) {
      spec.anchor = CellId::in_sector(1, fib::fib(6));  // first cell of level 3
    } else if (spec.kind == PathKind::Vertical) {
      const SectorColoring col = paint_sector(*region);
      for (CellId c : col.isocline(1)) {
        if (col.at(c) == TileColor::Y) spec.anchor = c;
      }
    } else {
      spec.anchor = CellId::in_sector(1, fib::fib(4));  // first cell of level 2
    }
    b.path = build_path(region, spec);
    b.initial = s.locomotive ? place_locomotive(*b.path, *s.locomotive) : b.path->idle;
    b.report = b.path->report.text();
  } else if (s.kind != "quiescent") {
    JunctionSpec spec = parse_junction_name(s.kind);
    spec.frame = s.frame;
    if (s.span) spec.arm_length = s.span;
    b.junction = build_junction(region, spec);
    b.initial = b.junction->idle;
    b.report = b.junction->report.text();
  } else if (s.locomotive) {
    throw std::invalid_argument("a quiescent scenario has no track for a locomotive");
  }
  for (const auto& [c, st] : s.extra) b.initial.set(c, st);
  return b;
}

std::vector<ScenarioKind> scenario_kinds() {
  return {
      {"quiescent", "all cells blank"},
      {"horizontal", "four tracks on consecutive isoclines; span=0 closes the isocline"},
      {"vertical", "blue track on a yellow ray, green and proper tracks beside it (candidate)"},
      {"sliproad", "zig-zag proper track with milestone triangles (candidate)"},
      {"crossing", "two paths crossing at the central cell (candidate)"},
      {"switch-fixed-left", "fixed switch at the central cell (candidate)"},
      {"switch-fixed-right", "fixed switch, right-hand selection (candidate)"},
      {"switch-memory-left", "memory switch at the central cell (candidate)"},
      {"switch-memory-right", "memory switch, right-hand selection (candidate)"},
      {"switch-flipflop-left", "flip-flop switch at the central cell (candidate)"},
      {"switch-flipflop-right", "flip-flop switch, right-hand selection (candidate)"},
  };
}

}  // namespace heptaca::railway
