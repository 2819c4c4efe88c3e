#include <doctest.h>

#include <random>
#include <set>

#include "heptaca/engine.hpp"
#include "heptaca/railway/junctions.hpp"
#include "heptaca/railway/scenario.hpp"
#include "heptaca/toolkit.hpp"
#include "support.hpp"

using namespace heptaca;

namespace {

railway::BuiltScenario scenario(const std::string& name) {
  return railway::build_scenario(railway::parse_scenario(read_text_file(testing::data_path("scenarios/" + name))));
}

Configuration random_configuration(std::shared_ptr<const Region> r, std::mt19937& rng, double density) {
  Configuration c(r);
  std::bernoulli_distribution on(density);
  std::uniform_int_distribution<int> s(1, 3);
  for (auto cell : r->cells()) {
    if (!r->on_rim(*r->index_of(cell)) && on(rng)) c.set(cell, static_cast<State>(s(rng)));
  }
  return c;
}

}  // namespace

TEST_CASE("configurations") {
  Configuration c(testing::region(2));
  CHECK(c.at(CellId::in_sector(1, 3)) == State::W);
  c.set(CellId::in_sector(1, 3), State::R);
  CHECK(c.at(CellId::in_sector(1, 3)) == State::R);
  c.set(CellId::in_sector(1, 3), State::W);
  CHECK(c.assignment().empty());
  CHECK_THROWS_AS(c.set(CellId::in_sector(1, 13), State::B), std::out_of_range);
  CHECK_THROWS(Configuration(nullptr));
}

TEST_CASE("assignment and trace text") {
  const auto a = parse_assignment("1:3 B\n# x\nC R  # centre\n2:5 W\n");
  CHECK(a.size() == 2);
  CHECK(format_assignment(a) == "C R\n1:3 B\n");
  CHECK_THROWS(parse_assignment("1:3\n"));
  CHECK_THROWS(parse_assignment("1:3 Q\n"));

  const auto sc = scenario("horizontal_locomotive.scn");
  const auto run = heptaca::run(sc.initial, testing::fixture(), 5);
  const auto parsed = parse_trace(format_trace(run.trace));
  REQUIRE(parsed.size() == run.trace.size());
  for (std::size_t t = 0; t < parsed.size(); ++t) CHECK(parsed[t] == run.trace[t].assignment());
  CHECK_THROWS(parse_trace("== t=1 ==\n"));
}

TEST_CASE("all-blank configurations are fixed points") {
  for (unsigned l : {0u, 3u, 5u}) {
    Configuration blank(testing::region(l));
    const auto res = heptaca::run(blank, testing::fixture(), 100);
    REQUIRE(res.status == RunStatus::Completed);
    CHECK(res.trace.size() == 101);
    for (const auto& c : res.trace) CHECK(c == blank);
  }
}

TEST_CASE("runs are deterministic") {
  for (const char* name : {"horizontal_locomotive.scn", "straight_cw.scn", "quiescent.scn"}) {
    const auto a = scenario(name);
    const auto b = scenario(name);
    CHECK(a.initial == b.initial);
    const auto ra = heptaca::run(a.initial, testing::fixture(), 30);
    const auto rb = heptaca::run(b.initial, testing::fixture(), 30);
    CHECK(format_trace(ra.trace) == format_trace(rb.trace));
  }
}

TEST_CASE("scalar and active kernels give the same trace") {
  const auto sc = scenario("horizontal_locomotive.scn");
  Engine fast(sc.region, testing::fixture(), kernels::active_kernels());
  Engine slow(sc.region, testing::fixture(), kernels::scalar_kernels());
  CHECK(format_trace(fast.run(sc.initial, 30).trace) == format_trace(slow.run(sc.initial, 30).trace));
}

TEST_CASE("sector rotation commutes with step") {
  const auto r = testing::region(3);
  RuleTable closed;
  for (const auto& rule : close_under_rotation(testing::fixture())) closed.add(rule);
  Engine engine(r, closed);
  std::mt19937 rng(99);
  std::size_t full_steps = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto c = random_configuration(r, rng, trial % 2 ? 0.02 : 0.2);
    const auto s = engine.step(c);
    for (int k = 1; k < kSectors; ++k) {
      const auto rs = engine.step(rotate(c, k));
      REQUIRE(s.ok() == rs.ok());
      if (s.ok()) {
        CHECK(rotate(*s.next, k) == *rs.next);
      } else {
        REQUIRE(s.missing.size() == rs.missing.size());
        std::set<CellId> a, b;
        for (const auto& m : s.missing) a.insert(rotate_sectors(m.cell, k));
        for (const auto& m : rs.missing) b.insert(m.cell);
        CHECK(a == b);
      }
    }
    full_steps += s.ok();
  }
  // A crossing at the centre, rotated.
  railway::JunctionSpec spec;
  spec.arm_length = 1;
  const auto j = railway::build_junction(r, spec);
  for (int k = 0; k < kSectors; ++k) {
    const auto s = engine.step(j.idle);
    const auto rs = engine.step(rotate(j.idle, k));
    REQUIRE(s.ok() == rs.ok());
    if (s.ok()) CHECK(rotate(*s.next, k) == *rs.next);
  }
  MESSAGE("random configurations stepped without missing rules: " << full_steps);
}

TEST_CASE("missing rules are reported per cell") {
  RuleTable only_blank;
  only_blank.add(parse_rule_word("WWWWWWWWW"));
  Configuration c(testing::region(3));
  c.set(CellId::in_sector(1, 5), State::B);
  const auto s = step(c, only_blank);
  REQUIRE_FALSE(s.ok());
  CHECK(s.missing.size() == 8);  // the cell and its seven neighbours
  for (const auto& m : s.missing) CHECK(std::holds_alternative<MissingRule>(only_blank.lookup(m.context)));
  const auto res = heptaca::run(c, only_blank, 10);
  CHECK(res.status == RunStatus::MissingRule);
  CHECK(res.trace.size() == 1);
}

TEST_CASE("rim contact stops a run") {
  Configuration c(testing::region(2));
  c.set(CellId::in_sector(4, 5), State::B);  // level 2 is the rim
  const auto res = heptaca::run(c, testing::fixture(), 10);
  CHECK(res.status == RunStatus::RimContact);
  CHECK(res.rim_cell == CellId::in_sector(4, 5));
  CHECK(rim_contacts(c).size() == 1);
}
