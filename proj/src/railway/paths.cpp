#include "heptaca/railway/paths.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "heptaca/railway/coloring.hpp"

namespace heptaca::railway {

std::string_view to_string(PathKind k) {
  switch (k) {
    case PathKind::Horizontal: return "horizontal";
    case PathKind::Vertical: return "vertical";
    case PathKind::SlipRoad: return "sliproad";
  }
  return "?";
}

bool ConstraintReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const ConstraintCheck& c) { return c.ok; });
}

void ConstraintReport::add(std::string name, bool ok, std::string detail) {
  checks.push_back({std::move(name), ok, std::move(detail)});
}

const ConstraintCheck* ConstraintReport::find(std::string_view name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

std::string ConstraintReport::text() const {
  std::ostringstream out;
  for (const auto& c : checks) {
    out << (c.ok ? "ok   " : "FAIL ") << c.name;
    if (!c.detail.empty()) out << ": " << c.detail;
    out << '\n';
  }
  return out.str();
}

namespace {

using CellSet = std::set<CellId>;

std::vector<CellId> level_cells(const Region& r, unsigned level) {
  std::vector<CellId> out;
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (r.level(i) == level && i != 0) out.push_back(r.cell(i));
  }
  return out;
}

std::vector<CellId> neighbor_cells(const Region& r, CellId c) {
  std::vector<CellId> out;
  for (const auto& n : r.neighbors(c)) {
    if (n) out.push_back(*n);
  }
  return out;
}

bool adjacent(const Region& r, CellId a, CellId b) {
  for (const auto& n : r.neighbors(a)) {
    if (n == b) return true;
  }
  return false;
}

std::size_t count_in(const Region& r, CellId c, const CellSet& set) {
  std::size_t k = 0;
  for (const auto& n : r.neighbors(c)) k += n && set.contains(*n);
  return k;
}

std::string cells_text(const std::vector<CellId>& cells, std::size_t limit = 6) {
  std::string s;
  for (std::size_t i = 0; i < cells.size() && i < limit; ++i) s += (i ? " " : "") + to_string(cells[i]);
  if (cells.size() > limit) s += " ... (" + std::to_string(cells.size()) + ")";
  return s;
}

void require_margin(const Region& r, unsigned deepest, bool enforce = true) {
  if (!enforce) return;
  if (deepest + kRimMargin > r.max_level()) {
    throw MarginError("path reaches level " + std::to_string(deepest) + " but the region stops at level " +
                      std::to_string(r.max_level()) + "; " + std::to_string(kRimMargin) +
                      " quiescent levels are required below it");
  }
}

// Checks shared by every kind.
void common_checks(const Region& r, PathLayout& p) {
  std::vector<CellSet> sets;
  for (const auto* v : {&p.s1, &p.s2, &p.s3, &p.s4}) sets.emplace_back(v->begin(), v->end());
  std::vector<CellId> overlap;
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = i + 1; j < 4; ++j) {
      for (CellId c : sets[i]) {
        if (sets[j].contains(c)) overlap.push_back(c);
      }
    }
  }
  p.report.add("disjoint", overlap.empty(), overlap.empty() ? "" : "shared cells " + cells_text(overlap));

  std::vector<CellId> gaps;
  for (std::size_t i = 0; i + 1 < p.s3.size(); ++i) {
    if (!adjacent(r, p.s3[i], p.s3[i + 1])) gaps.push_back(p.s3[i]);
  }
  if (p.closed && p.s3.size() > 1 && !adjacent(r, p.s3.back(), p.s3.front())) gaps.push_back(p.s3.back());
  p.report.add("s3-contiguous", gaps.empty(), gaps.empty() ? "" : "no step after " + cells_text(gaps));

  const CellSet& s3 = sets[2];
  std::vector<CellId> branching;
  for (std::size_t i = 0; i < p.s3.size(); ++i) {
    const bool end = !p.closed && (i == 0 || i + 1 == p.s3.size());
    const std::size_t want = p.s3.size() == 1 ? 0 : end ? 1 : 2;
    if (count_in(r, p.s3[i], s3) != want) branching.push_back(p.s3[i]);
  }
  p.report.add("s3-elementary", branching.empty(),
               branching.empty() ? "" : "wrong S3 neighbour count at " + cells_text(branching));

  const CellSet ms(p.milestones.begin(), p.milestones.end());
  std::vector<CellId> bad_m, bad_s4;
  for (CellId c : p.s4) {
    const std::size_t k = count_in(r, c, s3);
    if (ms.contains(c)) {
      if (k != 2) bad_m.push_back(c);
    } else if (k != 1) {
      bad_s4.push_back(c);
    }
  }
  if (p.spec.kind != PathKind::SlipRoad) {
    p.report.add("milestones-two-s3", bad_m.empty(), bad_m.empty() ? "" : cells_text(bad_m));
    p.report.add("s4-one-s3", bad_s4.empty(), bad_s4.empty() ? "" : cells_text(bad_s4));
  }
}

Configuration idle_of(std::shared_ptr<const Region> region, const PathLayout& p) {
  Configuration cfg(std::move(region));
  for (CellId c : p.s1) cfg.set(c, State::G);
  for (CellId c : p.s2) cfg.set(c, State::B);
  for (CellId c : p.milestones) cfg.set(c, State::B);
  return cfg;
}

// Cells of `ring` adjacent to some cell of `from`, kept in ring order.
std::vector<CellId> touching(const Region& r, const std::vector<CellId>& ring, const CellSet& from) {
  std::vector<CellId> out;
  for (CellId c : ring) {
    if (count_in(r, c, from) > 0) out.push_back(c);
  }
  return out;
}

PathLayout horizontal(std::shared_ptr<const Region> region, const PathSpec& spec) {
  const Region& r = *region;
  if (spec.anchor.is_center()) throw std::invalid_argument("a horizontal path cannot run through the centre");
  const unsigned level = r.level(spec.anchor);
  if (level < 2) throw std::invalid_argument("the proper track needs two isoclines above it (level >= 2)");
  require_margin(r, level + 1, spec.enforce_margin);

  PathLayout p{spec, spec.span == 0, {}, {}, {}, {}, {}, Configuration(region), {}};
  std::vector<CellId> ring = level_cells(r, level);
  if (spec.direction < 0) std::reverse(ring.begin(), ring.end());
  std::rotate(ring.begin(), std::find(ring.begin(), ring.end(), spec.anchor), ring.end());
  if (spec.span > ring.size()) throw std::invalid_argument("span longer than the isocline");
  p.s3.assign(ring.begin(), ring.begin() + static_cast<std::ptrdiff_t>(p.closed ? ring.size() : spec.span));
  if (p.closed) p.s3 = ring;

  const CellSet s3(p.s3.begin(), p.s3.end());
  p.s2 = touching(r, level_cells(r, level - 1), s3);
  const CellSet s2(p.s2.begin(), p.s2.end());
  p.s1 = touching(r, level_cells(r, level - 2), s2);
  p.s4 = touching(r, level_cells(r, level + 1), s3);
  for (CellId c : p.s4) {
    if (count_in(r, c, s3) == 2) p.milestones.push_back(c);
  }

  common_checks(r, p);
  auto on_level = [&](const std::vector<CellId>& v, unsigned l) {
    return std::all_of(v.begin(), v.end(), [&](CellId c) { return r.level(c) == l; });
  };
  p.report.add("consecutive-isoclines",
               on_level(p.s1, level - 2) && on_level(p.s2, level - 1) && on_level(p.s4, level + 1),
               "S1..S4 on levels " + std::to_string(level - 2) + ".." + std::to_string(level + 1));
  p.idle = idle_of(region, p);
  return p;
}

// Neighbours of chain cell `c` lying on one side of the chain, from the
// father side to the son side.
std::vector<CellId> side_arc(const Region& r, CellId c, std::optional<CellId> prev, std::optional<CellId> next,
                             bool right) {
  const Neighbors nb = r.neighbors(c);
  auto slot_of = [&](std::optional<CellId> x) {
    for (int k = 0; k < kSides; ++k) {
      if (x && nb[k] == x) return k;
    }
    return -1;
  };
  int from = prev ? slot_of(prev) : 0;
  int to = next ? slot_of(next) : -1;
  if (to < 0) to = (from + (right ? 4 : 3)) % kSides;  // chain end: split the ring in halves
  std::vector<CellId> out;
  const int step = right ? 1 : kSides - 1;
  for (int k = (from + step) % kSides; k != to; k = (k + step) % kSides) {
    if (nb[k]) out.push_back(*nb[k]);
  }
  return out;
}

PathLayout vertical_side(std::shared_ptr<const Region> region, const PathSpec& spec,
                         const std::vector<CellId>& chain, bool green_right) {
  const Region& r = *region;
  PathLayout p{spec, false, {}, chain, {}, {}, {}, Configuration(region), {}};
  const CellSet s2(chain.begin(), chain.end());
  CellSet used(s2);
  std::vector<CellId> s1, s3;
  for (std::size_t i = 0; i < chain.size(); ++i) {
    const std::optional<CellId> prev = i ? std::optional(chain[i - 1]) : std::optional(r.father(chain[i]));
    const std::optional<CellId> next = i + 1 < chain.size() ? std::optional(chain[i + 1]) : std::nullopt;
    for (bool right : {true, false}) {
      auto& dest = right == green_right ? s1 : s3;
      for (CellId c : side_arc(r, chain[i], prev, next, right)) {
        if (!s2.contains(c) && std::find(dest.begin(), dest.end(), c) == dest.end()) dest.push_back(c);
      }
    }
  }
  p.s1 = s1;
  p.s3 = s3;
  if (spec.direction < 0) std::reverse(p.s3.begin(), p.s3.end());
  CellSet s3set(p.s3.begin(), p.s3.end());
  CellSet near(s2);
  near.insert(p.s1.begin(), p.s1.end());
  near.insert(p.s3.begin(), p.s3.end());
  CellSet seen;
  for (CellId c : p.s3) {
    for (CellId n : neighbor_cells(r, c)) {
      if (!near.contains(n) && seen.insert(n).second) p.s4.push_back(n);
    }
  }
  for (CellId c : p.s4) {
    if (count_in(r, c, s3set) == 2) p.milestones.push_back(c);
  }
  common_checks(r, p);
  p.report.add("green-side", true, green_right ? "green track on the right of the vertical" : "green track on the left");
  p.idle = idle_of(region, p);
  return p;
}

PathLayout vertical(std::shared_ptr<const Region> region, const PathSpec& spec) {
  const Region& r = *region;
  if (spec.anchor.is_center()) throw std::invalid_argument("a vertical starts below the centre");
  const SectorColoring col = paint_sector(r, TileColor::G, spec.anchor.sector);
  if (col.at(spec.anchor) != TileColor::Y) {
    throw std::invalid_argument("anchor " + to_string(spec.anchor) + " is not a yellow tile");
  }
  std::vector<CellId> chain{spec.anchor};
  const unsigned limit = r.max_level() >= kRimMargin + 1 ? r.max_level() - kRimMargin - 1 : 0;
  while (spec.span == 0 ? r.level(chain.back()) < limit : chain.size() < spec.span) {
    std::optional<CellId> y;
    for (const auto& s : r.sons(chain.back())) {
      if (s && col.at(*s) == TileColor::Y) y = s;
    }
    if (!y) break;
    chain.push_back(*y);
  }
  require_margin(r, r.level(chain.back()) + 1, spec.enforce_margin);

  PathLayout best = vertical_side(region, spec, chain, false);
  PathLayout other = vertical_side(region, spec, chain, true);
  auto fails = [](const PathLayout& p) {
    return std::count_if(p.report.checks.begin(), p.report.checks.end(), [](const auto& c) { return !c.ok; });
  };
  if (fails(other) < fails(best)) best = std::move(other);
  best.report.add("s2-on-yellow-ray", true, cells_text(chain));
  return best;
}

// Proper track zig-zagging from flower to flower: at each track cell the
// previous and next cells are two slots apart, the tile between them (the
// apex) and the tiles two slots beyond them are milestones, the other two
// petals stay blank.
PathLayout sliproad(std::shared_ptr<const Region> region, const PathSpec& spec) {
  const Region& r = *region;
  if (spec.anchor.is_center()) throw std::invalid_argument("a slip road starts below the centre");
  const std::size_t span = spec.span == 0 ? 8 : spec.span;
  PathLayout p{spec, false, {}, {}, {}, {}, {}, Configuration(region), {}};
  const auto sons = r.sons(spec.anchor);
  if (!sons.back()) throw MarginError("slip road anchor is on the rim");
  const CellId second = spec.direction < 0 ? r.father(spec.anchor) : *sons.back();
  if (span < 2) throw std::invalid_argument("a slip road needs at least two cells");
  ZigZag z = zigzag_track(r, spec.anchor, second, span - 1, 1);
  std::vector<CellId> track{spec.anchor};
  track.insert(track.end(), z.track.begin(), z.track.end());
  std::vector<CellId> milestones = std::move(z.milestones), blanks = std::move(z.safeguards), conflicts;
  unsigned deepest = 0;
  for (CellId c : track) deepest = std::max(deepest, r.level(c));
  for (CellId c : milestones) deepest = std::max(deepest, r.level(c));
  require_margin(r, deepest, spec.enforce_margin);

  const CellSet tset(track.begin(), track.end());
  CellSet ms;
  for (CellId c : milestones) {
    if (tset.contains(c)) conflicts.push_back(c);
    else if (ms.insert(c).second) p.milestones.push_back(c);
  }
  p.s3 = track;
  CellSet s4(ms);
  for (CellId c : blanks) {
    if (!tset.contains(c)) s4.insert(c);
  }
  p.s4.assign(s4.begin(), s4.end());
  common_checks(r, p);
  p.report.add("milestones-off-track", conflicts.empty(), conflicts.empty() ? "" : cells_text(conflicts));
  std::vector<CellId> safeguard_clash;
  for (CellId c : blanks) {
    if (ms.contains(c)) safeguard_clash.push_back(c);
  }
  p.report.add("safeguards-blank", safeguard_clash.empty(),
               safeguard_clash.empty() ? "" : "petal both milestone and safeguard: " + cells_text(safeguard_clash));
  p.idle = idle_of(region, p);
  return p;
}

}  // namespace

ZigZag zigzag_track(const Region& r, CellId pred, CellId start, std::size_t cells, int first_turn) {
  ZigZag z;
  auto slot_in = [](const Neighbors& nb, CellId x) {
    for (int k = 0; k < kSides; ++k) {
      if (nb[k] == x) return k;
    }
    throw std::invalid_argument("zig-zag cells are not adjacent");
  };
  std::vector<CellId> track{pred, start};
  int turn = first_turn;
  while (track.size() < cells + 1) {
    const CellId c = track.back();
    if (c.is_center()) throw std::invalid_argument("zig-zag runs into the centre");
    const Neighbors nb = r.neighbors(c);
    const int from = slot_in(nb, track[track.size() - 2]);
    auto at = [&](int d) { return nb[((from + d * turn) % kSides + 2 * kSides) % kSides]; };
    if (!at(2)) throw MarginError("zig-zag leaves the region");
    for (int d : {1, -1, 3}) {
      if (auto m = at(d)) z.milestones.push_back(*m);
    }
    for (int d : {4, 5}) {
      if (auto m = at(d)) z.safeguards.push_back(*m);
    }
    track.push_back(*at(2));
    turn = -turn;
  }
  z.track.assign(track.begin() + 1, track.end());
  return z;
}

PathLayout build_path(std::shared_ptr<const Region> region, const PathSpec& spec) {
  if (!region->contains(spec.anchor)) throw std::invalid_argument("anchor outside the region");
  if (spec.direction != 1 && spec.direction != -1) throw std::invalid_argument("direction must be +1 or -1");
  switch (spec.kind) {
    case PathKind::Horizontal: return horizontal(std::move(region), spec);
    case PathKind::Vertical: return vertical(std::move(region), spec);
    case PathKind::SlipRoad: return sliproad(std::move(region), spec);
  }
  throw std::invalid_argument("unknown path kind");
}

namespace {

CellId behind(const PathLayout& p, std::size_t position) {
  if (position >= p.s3.size()) throw std::out_of_range("locomotive front off the proper track");
  if (position == 0) {
    if (!p.closed) throw std::out_of_range("locomotive rear off the proper track");
    return p.s3.back();
  }
  return p.s3[position - 1];
}

}  // namespace

Configuration place_locomotive(const Configuration& cfg, const PathLayout& path, std::size_t position) {
  const CellId rear = behind(path, position);
  Configuration out = cfg;
  out.set(path.s3[position], State::B);
  out.set(rear, State::R);
  return out;
}

Configuration place_locomotive(const PathLayout& path, std::size_t position) {
  return place_locomotive(path.idle, path, position);
}

Configuration remove_locomotive(const Configuration& cfg, const PathLayout& path) {
  Configuration out = cfg;
  for (CellId c : path.s3) out.set(c, State::W);
  return out;
}

IdleCheck check_idle(const Configuration& idle, const RuleTable& table) {
  IdleCheck out;
  StepResult s = step(idle, table);
  if (!s.ok()) {
    out.missing = std::move(s.missing);
    return out;
  }
  for (CellId c : idle.region().cells()) {
    if (s.next->at(c) != idle.at(c)) out.changed.push_back(c);
  }
  out.fixed_point = out.changed.empty();
  return out;
}

MotionCheck check_motion(const PathLayout& path, const RuleTable& table, std::size_t position, std::size_t periods,
                         std::size_t max_period) {
  MotionCheck out;
  const std::size_t n = path.s3.size();
  auto advanced = [&](std::size_t k) -> std::optional<Configuration> {
    const std::size_t pos = position + k;
    if (!path.closed && pos >= n) return std::nullopt;
    return place_locomotive(path, pos % n);
  };
  const Configuration start = place_locomotive(path, position);
  const RunResult run = heptaca::run(start, table, max_period * periods);
  out.status = run.status;
  out.missing = run.missing;
  for (std::size_t p = 1; p <= max_period; ++p) {
    std::size_t k = 1;
    for (; k <= periods; ++k) {
      const auto want = advanced(k);
      if (!want || k * p >= run.trace.size() || !(run.trace[k * p] == *want)) break;
    }
    if (k > periods) {
      out.moving = true;
      out.period = p;
      out.periods = periods;
      return out;
    }
  }
  std::ostringstream d;
  d << "no period <= " << max_period << " over " << periods << " advances; run stopped after "
    << run.trace.size() - 1 << " steps";
  if (run.status == RunStatus::MissingRule) d << " with " << run.missing.size() << " missing context(s)";
  if (run.status == RunStatus::RimContact) d << " on rim contact";
  out.detail = d.str();
  return out;
}

std::vector<State> oracle_motion_1d(const std::vector<State>& line, std::size_t steps) {
  int pairs = 0, others = 0;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == State::G) throw std::invalid_argument("green cell on the line");
    if (line[i] == State::W) continue;
    const bool paired = (i + 1 < line.size() && line[i + 1] != State::W && line[i + 1] != line[i]) ||
                        (i > 0 && line[i - 1] != State::W && line[i - 1] != line[i]);
    if (!paired) ++others;
    if (i + 1 < line.size() && line[i + 1] != State::W) ++pairs;
  }
  if (others > 0 || pairs > 1) throw std::invalid_argument("line must hold at most one R,B pair on blank cells");

  auto at = [](const std::vector<State>& v, std::ptrdiff_t i) {
    return i < 0 || i >= static_cast<std::ptrdiff_t>(v.size()) ? State::W : v[static_cast<std::size_t>(i)];
  };
  // rule(a, self, b) with a the cell behind and b the cell ahead
  auto rule = [](State a, State self, State b) {
    if (a == State::B && self == State::W && b == State::W) return State::B;
    if (a == State::R && self == State::B && b == State::W) return State::R;
    if (a == State::W && self == State::R && b == State::B) return State::W;
    if (a == State::W && self == State::W && b == State::R) return State::W;
    return self;
  };
  // Direction: rear R then front B to the right means rightward motion.
  bool rightward = true;
  for (std::size_t i = 0; i + 1 < line.size(); ++i) {
    if (line[i] == State::B && line[i + 1] == State::R) rightward = false;
  }
  std::vector<State> cur = line;
  for (std::size_t t = 0; t < steps; ++t) {
    std::vector<State> next(cur.size());
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(cur.size()); ++i) {
      const State left = at(cur, i - 1), right = at(cur, i + 1);
      next[static_cast<std::size_t>(i)] = rightward ? rule(left, cur[i], right) : rule(right, cur[i], left);
    }
    cur = std::move(next);
  }
  return cur;
}

}  // namespace heptaca::railway
