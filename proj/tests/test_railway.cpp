#include <doctest.h>

#include <array>
#include <set>

#include "heptaca/fib.hpp"
#include "heptaca/railway/coloring.hpp"
#include "heptaca/railway/junctions.hpp"
#include "heptaca/railway/paths.hpp"
#include "heptaca/railway/scenario.hpp"
#include "support.hpp"

using namespace heptaca;
using namespace heptaca::railway;

namespace {

// Counts (G, B, Y, O) after `level` applications of the substitution matrix.
std::array<std::uint64_t, 4> matrix_power_census(TileColor root, unsigned level) {
  // Columns: sons of G = Y B G, of B = B O, of Y = Y B G, of O = Y B O.
  const std::uint64_t m[4][4] = {
      // from  G  B  Y  O
      {1, 0, 1, 0},  // to G
      {1, 1, 1, 1},  // to B
      {1, 0, 1, 1},  // to Y
      {0, 1, 0, 1},  // to O
  };
  std::array<std::uint64_t, 4> v{};
  v[static_cast<int>(root)] = 1;
  for (unsigned l = 0; l < level; ++l) {
    std::array<std::uint64_t, 4> w{};
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) w[i] += m[i][j] * v[j];
    v = w;
  }
  return v;
}

std::array<std::uint64_t, 4> as_array(const std::map<TileColor, std::size_t>& c) {
  std::array<std::uint64_t, 4> a{};
  for (auto [k, n] : c) a[static_cast<int>(k)] = n;
  return a;
}

std::shared_ptr<const Region> r6(Orientation o = Orientation::CounterClockwise) { return testing::region(6, o); }

PathLayout ring_path(int direction, Orientation o = Orientation::CounterClockwise) {
  PathSpec spec;
  spec.anchor = CellId::in_sector(1, 13);
  spec.direction = direction;
  return build_path(r6(o), spec);
}

std::vector<State> shifted_line(std::size_t n, std::size_t rear, bool rightward) {
  std::vector<State> v(n, State::W);
  v[rear] = State::R;
  v[rightward ? rear + 1 : rear - 1] = State::B;
  return v;
}

}  // namespace

TEST_CASE("substitution words") {
  CHECK(substitute(TileColor::G) == "YBG");
  CHECK(substitute(TileColor::Y) == "YBG");
  CHECK(substitute(TileColor::O) == "YBO");
  CHECK(substitute(TileColor::B) == "BO");
}

TEST_CASE("colour censuses follow substitution matrix powers") {
  const auto& r = *r6();
  for (auto root : {TileColor::G, TileColor::Y, TileColor::O}) {
    const auto col = paint_subtree(r, CellId::in_sector(1, 1), root);
    for (unsigned l = 0; l <= 6; ++l) {
      CAPTURE(l);
      const auto c = as_array(census(col, l));
      CHECK(c == matrix_power_census(root, l));
      CHECK(c[0] + c[1] + c[2] + c[3] == fib::fib(2 * l + 1));
    }
  }
  const auto black = paint_sector(r, TileColor::B);
  for (unsigned l = 0; l <= 5; ++l) CHECK(as_array(census(black, l)) == matrix_power_census(TileColor::B, l));
  const auto b1 = census(black, 1);
  CHECK(b1.at(TileColor::B) == 1);
  CHECK(b1.at(TileColor::O) == 1);
  CHECK(b1.at(TileColor::G) + b1.at(TileColor::Y) == 0);
}

TEST_CASE("colours agree with node kinds") {
  const auto& r = *r6();
  const auto col = paint_sector(r);
  for (unsigned l = 0; l <= 6; ++l) {
    for (CellId c : col.isocline(l)) CHECK((col.at(c) == TileColor::B) == (r.kind(c) == NodeKind::Black));
  }
  CHECK_THROWS_AS(paint_subtree(r, CellId::in_sector(1, 1), TileColor::B), std::invalid_argument);
  CHECK_THROWS_AS(paint_subtree(r, CellId::in_sector(1, 2), TileColor::G), std::invalid_argument);
  CHECK_THROWS_AS(col.at(CellId::in_sector(2, 1)), std::out_of_range);
}

TEST_CASE("yellow rays never branch") {
  const auto& r = *r6();
  const auto col = paint_sector(r);
  std::size_t yellow = 0;
  for (unsigned l = 0; l < 6; ++l) {
    for (CellId c : col.isocline(l)) {
      if (col.at(c) != TileColor::Y) continue;
      ++yellow;
      int y_sons = 0;
      for (auto s : r.sons(c)) y_sons += s && col.at(*s) == TileColor::Y;
      CHECK(y_sons == 1);
    }
  }
  CHECK(yellow > 0);
  for (const auto& ray : yellow_rays(r, col)) {
    CHECK(r.level(ray.back()) == 6);
    for (std::size_t i = 1; i < ray.size(); ++i) CHECK(r.father(ray[i]) == ray[i - 1]);
  }
}

TEST_CASE("1D motion oracle matches a moving pair") {
  for (bool right : {true, false}) {
    const std::size_t rear = right ? 1 : 28;
    const auto line = shifted_line(30, rear, right);
    for (std::size_t t = 0; t <= 25; ++t) {
      CAPTURE(t);
      const auto expect = shifted_line(30, right ? rear + t : rear - t, right);
      CHECK(oracle_motion_1d(line, t) == expect);
    }
  }
  CHECK(oracle_motion_1d(std::vector<State>(30, State::W), 25) == std::vector<State>(30, State::W));
  auto bad = shifted_line(30, 3, true);
  bad[10] = State::B;
  CHECK_THROWS(oracle_motion_1d(bad, 1));
  bad = shifted_line(30, 3, true);
  bad[10] = State::G;
  CHECK_THROWS(oracle_motion_1d(bad, 1));
}

TEST_CASE("horizontal path layout") {
  const auto p = ring_path(1);
  INFO(p.report.text());
  CHECK(p.report.ok());
  CHECK(p.closed);
  CHECK(p.s3.size() >= 8);

  const auto& r = p.idle.region();
  const std::set<CellId> s3(p.s3.begin(), p.s3.end());
  const std::set<CellId> ms(p.milestones.begin(), p.milestones.end());
  // The four tracks sit on four consecutive levels.
  auto level_set = [&](const std::vector<CellId>& v) {
    std::set<unsigned> l;
    for (CellId c : v) l.insert(r.level(c));
    return l;
  };
  CHECK(level_set(p.s1) == std::set<unsigned>{1});
  CHECK(level_set(p.s2) == std::set<unsigned>{2});
  CHECK(level_set(p.s3) == std::set<unsigned>{3});
  CHECK(level_set(p.s4) == std::set<unsigned>{4});
  // Milestones: two proper-track neighbours; other safeguard cells: one.
  for (CellId c : p.s4) {
    int n = 0;
    for (auto nb : r.neighbors(c)) n += nb && s3.contains(*nb);
    CHECK(n == (ms.contains(c) ? 2 : 1));
  }
  // Consecutive proper-track cells are neighbours.
  for (std::size_t i = 0; i < p.s3.size(); ++i) {
    const auto nb = r.neighbors(p.s3[i]);
    const CellId next = p.s3[(i + 1) % p.s3.size()];
    CHECK(std::find(nb.begin(), nb.end(), NeighborSlot{next}) != nb.end());
  }
  // States of the idle path.
  for (CellId c : p.s1) CHECK(p.idle.at(c) == State::G);
  for (CellId c : p.s2) CHECK(p.idle.at(c) == State::B);
  for (CellId c : p.s3) CHECK(p.idle.at(c) == State::W);
  for (CellId c : p.milestones) CHECK(p.idle.at(c) == State::B);
}

TEST_CASE("idle paths are fixed points") {
  for (auto o : {Orientation::CounterClockwise, Orientation::Mirrored}) {
    for (int dir : {1, -1}) {
      const auto p = ring_path(dir, o);
      const auto idle = check_idle(p.idle, testing::fixture());
      CHECK(idle.missing.empty());
      CHECK(idle.fixed_point);
    }
  }
}

TEST_CASE("locomotive advances one cell per step") {
  for (auto o : {Orientation::CounterClockwise, Orientation::Mirrored}) {
    for (int dir : {1, -1}) {
      CAPTURE(dir);
      const auto p = ring_path(dir, o);
      const auto m = check_motion(p, testing::fixture(), 5, 12);
      INFO(m.detail);
      CHECK(m.moving);
      CHECK(m.period == 1);
      CHECK(m.periods >= 10);
      CHECK(m.status == RunStatus::Completed);
    }
  }
}

TEST_CASE("locomotive placement") {
  const auto p = ring_path(1);
  const auto c = place_locomotive(p, 5);
  CHECK(c.at(p.s3[5]) == State::B);
  CHECK(c.at(p.s3[4]) == State::R);
  CHECK(remove_locomotive(c, p) == p.idle);
  const auto wrap = place_locomotive(p, 0);
  CHECK(wrap.at(p.s3.back()) == State::R);
  CHECK_THROWS_AS(place_locomotive(p, p.s3.size()), std::out_of_range);
}

TEST_CASE("missing-rule reports are complete") {
  // Without the basic motion rules the locomotive cannot move.
  const auto seed = load_rules_file(testing::data_path("elicit/seed_rules.txt"));
  const auto p = ring_path(1);
  const auto idle = check_idle(p.idle, seed);
  CHECK_FALSE(idle.fixed_point);  // the conservative proper-track rules are gone too
  for (const auto& x : idle.missing) CHECK(std::holds_alternative<MissingRule>(seed.lookup(x.context)));
  const auto m = check_motion(p, seed, 5, 10);
  CHECK_FALSE(m.moving);
  CHECK(m.status == RunStatus::MissingRule);
  REQUIRE_FALSE(m.missing.empty());
  for (const auto& x : m.missing) CHECK(std::holds_alternative<MissingRule>(seed.lookup(x.context)));
  // Every unmatched cell is listed.
  const auto s = step(place_locomotive(p, 5), seed);
  CHECK(s.missing.size() == m.missing.size());
}

TEST_CASE("open segments and margins") {
  PathSpec spec;
  spec.anchor = CellId::in_sector(1, 13);
  spec.span = 12;
  const auto p = build_path(r6(), spec);
  CHECK_FALSE(p.closed);
  CHECK(p.s3.size() == 12);
  CHECK_THROWS_AS(place_locomotive(p, 0), std::out_of_range);

  PathSpec close = spec;
  close.anchor = CellId::in_sector(1, 2);  // S1 would lie below level 0
  CHECK_THROWS(build_path(r6(), close));
  PathSpec rim;
  rim.anchor = CellId::in_sector(1, 13);
  CHECK_THROWS_AS(build_path(testing::region(4), rim), MarginError);
  rim.enforce_margin = false;
  CHECK_NOTHROW(build_path(testing::region(4), rim));
}

TEST_CASE("vertical path and slip road layouts") {
  PathSpec v;
  v.kind = PathKind::Vertical;
  v.anchor = CellId::in_sector(1, 3);
  const auto vp = build_path(r6(), v);
  INFO(vp.report.text());
  CHECK(vp.report.find("s2-on-yellow-ray") != nullptr);
  CHECK(vp.report.find("disjoint")->ok);
  CHECK(vp.report.find("s3-contiguous")->ok);
  const auto col = paint_sector(*r6());
  for (CellId c : vp.s2) CHECK(col.at(c) == TileColor::Y);

  PathSpec s;
  s.kind = PathKind::SlipRoad;
  s.anchor = CellId::in_sector(1, 5);
  s.span = 4;
  const auto sp = build_path(testing::region(8), s);
  INFO(sp.report.text());
  CHECK(sp.report.ok());
  CHECK(check_idle(sp.idle, testing::fixture()).fixed_point);
}

TEST_CASE("junction candidates") {
  for (auto kind : {JunctionKind::Crossing, JunctionKind::FixedSwitch, JunctionKind::MemorySwitch,
                    JunctionKind::FlipFlopSwitch}) {
    for (auto side : {Side::Left, Side::Right}) {
      JunctionSpec spec{kind, side};
      const auto name = junction_name(spec);
      const auto back = parse_junction_name(name);
      CHECK(back.kind == kind);
      if (kind != JunctionKind::Crossing) CHECK(back.side == side);
      auto j = build_junction(testing::region(7), spec);
      CHECK(j.idle.at(CellId::center()) == State::W);
      CHECK(j.roles.contains("first"));
      accept_junction(j, testing::fixture());
      CHECK(j.report.find("idle-fixed-point") != nullptr);
      if (kind == JunctionKind::FlipFlopSwitch) CHECK_FALSE(j.report.ok());
    }
  }
  auto crossing = build_junction(testing::region(7), {});
  CHECK(accept_junction(crossing, testing::fixture()));
  CHECK_THROWS(parse_junction_name("roundabout"));
}

TEST_CASE("scenario files") {
  const auto s = parse_scenario("kind=horizontal\nlevel=6\nanchor=1:13\ndirection=cw\nlocomotive=3\ncell 2:40 G\n");
  CHECK(s.kind == "horizontal");
  CHECK(s.direction == -1);
  CHECK(s.locomotive == 3u);
  CHECK(s.extra.at(CellId::in_sector(2, 40)) == State::G);
  CHECK(parse_scenario(format_scenario(s)).anchor == s.anchor);
  CHECK_THROWS_AS(parse_scenario("kind=horizontal\nspeed=3\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_scenario("level=x\n"), std::invalid_argument);

  const auto b = build_scenario(s);
  CHECK(b.path.has_value());
  CHECK(b.initial.at(CellId::in_sector(2, 40)) == State::G);
  CHECK(b.initial.at(b.path->s3[3]) == State::B);
  CHECK_THROWS_AS(build_scenario(s, 1000), ResourceLimitError);
  CHECK_FALSE(scenario_kinds().empty());
}
