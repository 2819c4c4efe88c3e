#include <doctest.h>

#include <random>

#include "heptaca/railway/circuit.hpp"

using namespace heptaca::railway;

namespace {

// The three switch laws written out case by case.
struct Expected {
  bool violation;
  Port exit;
  Branch after;
};

Expected law(SwitchKind k, Branch sel, Port entry) {
  const Port sel_port = sel == Branch::A ? Port::A : Port::B;
  const Branch flipped = sel == Branch::A ? Branch::B : Branch::A;
  switch (k) {
    case SwitchKind::Fixed:
      return {false, entry == Port::U ? sel_port : Port::U, sel};
    case SwitchKind::FlipFlop:
      if (entry != Port::U) return {true, Port::U, sel};
      return {false, sel_port, flipped};
    case SwitchKind::Memory:
      if (entry == Port::U) return {false, sel_port, sel};
      return {false, Port::U, entry == Port::A ? Branch::A : Branch::B};
  }
  return {};
}

}  // namespace

TEST_CASE("switch laws over every state and entry") {
  int cases = 0;
  for (auto k : {SwitchKind::Fixed, SwitchKind::FlipFlop, SwitchKind::Memory}) {
    for (auto sel : {Branch::A, Branch::B}) {
      for (auto entry : {Port::U, Port::A, Port::B}) {
        ++cases;
        const auto e = law(k, sel, entry);
        const SwitchState s{k, sel};
        if (e.violation) {
          CHECK_THROWS_AS(cross_switch(s, entry), ModelViolation);
          continue;
        }
        const auto c = cross_switch(s, entry);
        CHECK(c.exit == e.exit);
        CHECK(c.after.kind == k);
        CHECK(c.after.selected == e.after);
      }
    }
  }
  CHECK(cases == 18);
}

TEST_CASE("random crossing sequences") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    SwitchState fixed{SwitchKind::Fixed, Branch::B}, mem{SwitchKind::Memory, Branch::A},
        ff{SwitchKind::FlipFlop, Branch::A};
    std::optional<Branch> last_passive;
    int active_ff = 0;
    for (int i = 0; i < 30; ++i) {
      const auto entry = static_cast<Port>(rng() % 3);
      fixed = cross_switch(fixed, entry).after;
      mem = cross_switch(mem, entry).after;
      if (entry != Port::U) last_passive = entry == Port::A ? Branch::A : Branch::B;
      if (entry == Port::U) {
        ff = cross_switch(ff, entry).after;
        ++active_ff;
      }
    }
    CHECK(fixed.selected == Branch::B);
    CHECK(mem.selected == last_passive.value_or(Branch::A));
    CHECK(ff.selected == (active_ff % 2 ? Branch::B : Branch::A));
  }
}

TEST_CASE("elementary circuit reads and writes one bit") {
  for (int bit : {0, 1}) {
    CAPTURE(bit);
    const auto g = elementary_circuit(bit);
    CHECK(g.validate().empty());
    const auto s0 = g.initial_states();
    CHECK(elementary_bit(g, s0) == bit);

    // Reading: enter at E, leave through O1 for 0 and O2 for 1; nothing changes.
    const auto read = run_circuit(g, s0, "E");
    CHECK(read.exit_port == (bit ? "O2" : "O1"));
    CHECK(read.states == s0);

    // Writing: enter at U, leave through E with the bit changed.
    const auto write = run_circuit(g, s0, "U");
    CHECK(write.exit_port == "E");
    CHECK(elementary_bit(g, write.states) == 1 - bit);
    const auto reread = run_circuit(g, write.states, "E");
    CHECK(reread.exit_port == (bit ? "O1" : "O2"));

    // Writing twice restores the bit.
    const auto again = run_circuit(g, write.states, "U");
    CHECK(elementary_bit(g, again.states) == bit);
    CHECK(again.states == s0);
  }
  // Coming back from a read exit is a passive crossing of m.
  const auto g = elementary_circuit(0);
  const auto back = run_circuit(g, g.initial_states(), "O2");
  CHECK(back.exit_port == "E");
  CHECK(elementary_bit(g, back.states) == 1);
}

TEST_CASE("register unit routes") {
  for (int units : {1, 2, 3}) {
    for (int value = 0; value <= units; ++value) {
      CAPTURE(units);
      CAPTURE(value);
      const auto g = register_circuit(units, value);
      REQUIRE(g.validate().empty());
      const auto s = g.initial_states();
      CHECK(register_value(g, s) == value);

      const auto inc = run_circuit(g, s, "i");
      if (value < units) {
        CHECK(inc.exit_port == "r");
        CHECK(register_value(g, inc.states) == value + 1);
      } else {
        CHECK(inc.exit_port == "over");
      }

      const auto dec = run_circuit(g, s, "d");
      if (value > 0) {
        CHECK(dec.exit_port == "r");
        CHECK(register_value(g, dec.states) == value - 1);
      } else {
        CHECK(dec.exit_port == "j1");
        CHECK(register_value(g, dec.states) == 0);
        // The next decrement of the empty register takes the other exit.
        CHECK(run_circuit(g, dec.states, "d").exit_port == "j2");
      }
    }
  }
}

TEST_CASE("register counts up and down") {
  const auto g = register_circuit(4, 0);
  auto s = g.initial_states();
  for (int v = 1; v <= 4; ++v) {
    auto r = run_circuit(g, s, "i");
    REQUIRE(r.exit_port == "r");
    s = r.states;
    CHECK(register_value(g, s) == v);
  }
  for (int v = 3; v >= 0; --v) {
    auto r = run_circuit(g, s, "d");
    REQUIRE(r.exit_port == "r");
    s = r.states;
    CHECK(register_value(g, s) == v);
  }
  CHECK(run_circuit(g, s, "d").exit_port == "j1");
  CHECK_THROWS(register_circuit(0));
  CHECK_THROWS(register_circuit(2, 3));
}

TEST_CASE("circuit text") {
  const auto g = parse_circuit(R"(# a loop through one memory switch
port in
port out1
port out2
switch s memory b
joint j
link in s.u
link s.a j.0
link j.1 out1
link s.b out2
)");
  CHECK(g.validate().empty());
  CHECK(run_circuit(g, g.initial_states(), "in").exit_port == "out2");
  const auto back = run_circuit(g, g.initial_states(), "out1");
  CHECK(back.exit_port == "in");
  CHECK(back.path == std::vector<std::string>{"out1", "j", "s", "in"});

  const auto again = parse_circuit(g.format());
  CHECK(again.format() == g.format());

  CHECK_THROWS_AS(parse_circuit("switch s fancy a\n"), CircuitError);
  CHECK_THROWS_AS(parse_circuit("port a\nport a\n"), CircuitError);
  CHECK_THROWS_AS(parse_circuit("port a\nlink a b\n"), CircuitError);
  const auto dangling = parse_circuit("port a\nswitch s fixed a\nlink a s.u\n");
  CHECK(dangling.validate().size() == 2);
  CHECK_THROWS_AS(run_circuit(dangling, dangling.initial_states(), "a"), CircuitError);

  // A flip-flop entered through a branch.
  const auto bad = parse_circuit("port a\nport b\nport c\nswitch f flipflop a\nlink a f.a\nlink b f.u\nlink c f.b\n");
  CHECK_THROWS_AS(run_circuit(bad, bad.initial_states(), "a"), ModelViolation);

  // Two fixed switches facing each other make a cycle.
  const auto loop = parse_circuit(
      "port p\nport q\nswitch x fixed a\nswitch y fixed a\nlink p x.b\nlink x.u y.u\nlink x.a y.a\nlink y.b q\n");
  CHECK(loop.validate().empty());
  CHECK_THROWS_AS(run_circuit(loop, loop.initial_states(), "p", 50), CircuitError);
}
