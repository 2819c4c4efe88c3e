#include "heptaca/railway/circuit.hpp"

#include <sstream>

namespace heptaca::railway {

namespace {

Branch other(Branch b) { return b == Branch::A ? Branch::B : Branch::A; }
Port port_of(Branch b) { return b == Branch::A ? Port::A : Port::B; }

}  // namespace

Crossing cross_switch(const SwitchState& s, Port entry) {
  SwitchState after = s;
  if (entry == Port::U) {
    const Port exit = port_of(s.selected);
    if (s.kind == SwitchKind::FlipFlop) after.selected = other(s.selected);
    return {exit, after};
  }
  if (s.kind == SwitchKind::FlipFlop) {
    throw ModelViolation("flip-flop switch crossed passively");
  }
  if (s.kind == SwitchKind::Memory) after.selected = entry == Port::A ? Branch::A : Branch::B;
  return {Port::U, after};
}

std::string_view to_string(SwitchKind k) {
  switch (k) {
    case SwitchKind::Fixed: return "fixed";
    case SwitchKind::FlipFlop: return "flipflop";
    case SwitchKind::Memory: return "memory";
  }
  return "?";
}

std::string_view to_string(Branch b) { return b == Branch::A ? "a" : "b"; }

int CircuitGraph::add_node(Node n) {
  if (n.name.empty() || n.name.find_first_of(". \t#") != std::string::npos) {
    throw CircuitError("bad node name '" + n.name + "'");
  }
  const int id = static_cast<int>(nodes_.size());
  if (!by_name_.emplace(n.name, id).second) throw CircuitError("duplicate node '" + n.name + "'");
  nodes_.push_back(std::move(n));
  return id;
}

int CircuitGraph::add_port(std::string name) { return add_node({std::move(name), NodeType::Port, {}}); }

int CircuitGraph::add_switch(std::string name, SwitchKind kind, Branch selected) {
  return add_node({std::move(name), NodeType::Switch, {kind, selected}});
}

int CircuitGraph::add_joint(std::string name) { return add_node({std::move(name), NodeType::Joint, {}}); }

std::optional<int> CircuitGraph::find(std::string_view name) const {
  auto it = by_name_.find(name);
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

int CircuitGraph::require(std::string_view name) const {
  if (auto id = find(name)) return *id;
  throw CircuitError("unknown node '" + std::string(name) + "'");
}

CircuitGraph::End CircuitGraph::parse_end(std::string_view text) const {
  const auto dot = text.find('.');
  const int id = require(text.substr(0, dot));
  const std::string_view suffix = dot == std::string_view::npos ? "" : text.substr(dot + 1);
  switch (nodes_[id].type) {
    case NodeType::Port:
      if (suffix.empty() || suffix == "0") return {id, 0};
      break;
    case NodeType::Switch:
      if (suffix == "u") return {id, 0};
      if (suffix == "a") return {id, 1};
      if (suffix == "b") return {id, 2};
      break;
    case NodeType::Joint:
      if (suffix == "0") return {id, 0};
      if (suffix == "1") return {id, 1};
      break;
  }
  throw CircuitError("bad end '" + std::string(text) + "'");
}

std::string CircuitGraph::end_name(End e) const {
  const Node& n = nodes_.at(e.node);
  switch (n.type) {
    case NodeType::Port: return n.name;
    case NodeType::Switch: return n.name + "." + "uab"[e.end];
    case NodeType::Joint: return n.name + "." + std::to_string(e.end);
  }
  return n.name;
}

void CircuitGraph::link(End x, End y) {
  if (x == y) throw CircuitError("end " + end_name(x) + " linked to itself");
  for (End e : {x, y}) {
    if (links_.contains(e)) throw CircuitError("end " + end_name(e) + " already linked");
  }
  links_[x] = y;
  links_[y] = x;
}

void CircuitGraph::link(std::string_view x, std::string_view y) { link(parse_end(x), parse_end(y)); }

std::optional<CircuitGraph::End> CircuitGraph::partner(End e) const {
  auto it = links_.find(e);
  if (it == links_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::string> CircuitGraph::port_names() const {
  std::vector<std::string> out;
  for (const Node& n : nodes_) {
    if (n.type == NodeType::Port) out.push_back(n.name);
  }
  return out;
}

SwitchStates CircuitGraph::initial_states() const {
  SwitchStates s;
  for (const Node& n : nodes_) s.push_back(n.initial);
  return s;
}

std::vector<std::string> CircuitGraph::validate() const {
  std::vector<std::string> out;
  for (int id = 0; id < static_cast<int>(nodes_.size()); ++id) {
    const int ends = nodes_[id].type == NodeType::Switch ? 3 : nodes_[id].type == NodeType::Joint ? 2 : 1;
    for (int e = 0; e < ends; ++e) {
      if (!links_.contains({id, e})) out.push_back("dangling end " + end_name({id, e}));
    }
  }
  return out;
}

std::string CircuitGraph::format() const {
  std::ostringstream out;
  for (const Node& n : nodes_) {
    switch (n.type) {
      case NodeType::Port: out << "port " << n.name << '\n'; break;
      case NodeType::Joint: out << "joint " << n.name << '\n'; break;
      case NodeType::Switch:
        out << "switch " << n.name << ' ' << to_string(n.initial.kind) << ' ' << to_string(n.initial.selected) << '\n';
        break;
    }
  }
  for (const auto& [x, y] : links_) {
    if (x < y) out << "link " << end_name(x) << ' ' << end_name(y) << '\n';
  }
  return out.str();
}

CircuitGraph parse_circuit(std::string_view text) {
  CircuitGraph g;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream f(line);
    std::vector<std::string> tok;
    for (std::string t; f >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    auto fail = [&](const std::string& why) {
      throw CircuitError("line " + std::to_string(line_no) + ": " + why);
    };
    try {
      if (tok[0] == "port" && tok.size() == 2) {
        g.add_port(tok[1]);
      } else if (tok[0] == "joint" && tok.size() == 2) {
        g.add_joint(tok[1]);
      } else if (tok[0] == "switch" && tok.size() == 4) {
        SwitchKind k;
        if (tok[2] == "fixed") k = SwitchKind::Fixed;
        else if (tok[2] == "flipflop") k = SwitchKind::FlipFlop;
        else if (tok[2] == "memory") k = SwitchKind::Memory;
        else fail("unknown switch kind '" + tok[2] + "'");
        if (tok[3] != "a" && tok[3] != "b") fail("selected branch must be a or b");
        g.add_switch(tok[1], k, tok[3] == "a" ? Branch::A : Branch::B);
      } else if (tok[0] == "link" && tok.size() == 3) {
        g.link(tok[1], tok[2]);
      } else {
        fail("cannot parse '" + line + "'");
      }
    } catch (const CircuitError& e) {
      if (std::string_view(e.what()).starts_with("line ")) throw;
      fail(e.what());
    }
  }
  return g;
}

CircuitRun run_circuit(const CircuitGraph& g, SwitchStates states, std::string_view entry, std::size_t budget) {
  using End = CircuitGraph::End;
  using NT = CircuitGraph::NodeType;
  const int start = g.require(entry);
  if (g.nodes()[start].type != NT::Port) throw CircuitError("'" + std::string(entry) + "' is not a port");
  if (states.size() != g.nodes().size()) throw CircuitError("switch state vector has the wrong size");

  CircuitRun run;
  run.path.push_back(g.nodes()[start].name);
  End leaving{start, 0};
  for (std::size_t n = 0; n < budget; ++n) {
    const auto next = g.partner(leaving);
    if (!next) throw CircuitError("dangling end " + g.end_name(leaving));
    const auto& node = g.nodes()[next->node];
    run.path.push_back(node.name);
    switch (node.type) {
      case NT::Port:
        run.exit_port = node.name;
        run.states = std::move(states);
        return run;
      case NT::Joint:
        leaving = {next->node, 1 - next->end};
        break;
      case NT::Switch: {
        const Port in = static_cast<Port>(next->end);
        Crossing c;
        try {
          c = cross_switch(states[next->node], in);
        } catch (const ModelViolation&) {
          throw ModelViolation("flip-flop '" + node.name + "' crossed passively");
        }
        states[next->node] = c.after;
        leaving = {next->node, static_cast<int>(c.exit)};
        break;
      }
    }
  }
  throw CircuitError("step budget exhausted; the locomotive did not leave the circuit");
}

CircuitGraph elementary_circuit(int bit) {
  const Branch m = bit ? Branch::B : Branch::A;
  CircuitGraph g;
  for (const char* p : {"E", "U", "O1", "O2"}) g.add_port(p);
  g.add_switch("m", SwitchKind::Memory, m);
  g.add_switch("f", SwitchKind::FlipFlop, other(m));
  g.add_switch("g1", SwitchKind::Fixed, Branch::A);
  g.add_switch("g2", SwitchKind::Fixed, Branch::A);
  g.link("E", "m.u");
  g.link("U", "f.u");
  g.link("m.a", "g1.u");
  g.link("m.b", "g2.u");
  g.link("g1.a", "O1");
  g.link("g2.a", "O2");
  g.link("f.a", "g1.b");
  g.link("f.b", "g2.b");
  return g;
}

int elementary_bit(const CircuitGraph& g, const SwitchStates& s) {
  return s.at(g.require("m")).selected == Branch::B ? 1 : 0;
}

namespace {

// One copy of a unit's bit: memory switch <p>m (a = empty), fixed <p>h in
// front of its u end to split reads (h.b) from write exits (h.a), fixed
// <p>pa / <p>pb behind its branches to split read exits (.a) from the
// toggling flip-flop <p>f.
void add_bit_copy(CircuitGraph& g, const std::string& p, bool full) {
  const Branch m = full ? Branch::B : Branch::A;
  g.add_switch(p + "m", SwitchKind::Memory, m);
  g.add_switch(p + "h", SwitchKind::Fixed, Branch::A);
  g.add_switch(p + "pa", SwitchKind::Fixed, Branch::A);
  g.add_switch(p + "pb", SwitchKind::Fixed, Branch::A);
  g.add_switch(p + "f", SwitchKind::FlipFlop, other(m));
  g.link(p + "h.u", p + "m.u");
  g.link(p + "m.a", p + "pa.u");
  g.link(p + "m.b", p + "pb.u");
  g.link(p + "f.a", p + "pa.b");
  g.link(p + "f.b", p + "pb.b");
}

}  // namespace

// Unit k keeps its bit twice: copy I<k> is read by increments, copy D<k> by
// decrements. Both are toggled together, I first, through the merge q<k>.
//   increment: read I<k>; full -> unit k+1; empty -> toggle I<k>, D<k> -> r
//   decrement: read D<k>; full -> unit k+1 (the last unit clears itself);
//              empty -> clear unit k-1, or leave by j1/j2 for unit 1
CircuitGraph register_circuit(int units, int value) {
  if (units < 1) throw CircuitError("a register needs at least one unit");
  if (value < 0 || value > units) throw CircuitError("register value out of range");
  CircuitGraph g;
  for (const char* p : {"i", "d", "r", "j1", "j2", "over"}) g.add_port(p);
  g.add_switch("z", SwitchKind::FlipFlop, Branch::A);
  g.link("z.a", "j1");
  g.link("z.b", "j2");
  for (int k = 1; k <= units; ++k) {
    const std::string n = std::to_string(k);
    add_bit_copy(g, "I" + n, k <= value);
    add_bit_copy(g, "D" + n, k <= value);
    g.add_switch("q" + n, SwitchKind::Fixed, Branch::A);
    g.link("q" + n + ".u", "I" + n + "f.u");
    g.link("q" + n + ".a", "I" + n + "pa.a");
    g.link("I" + n + "h.a", "D" + n + "f.u");
  }
  g.link("i", "I1h.b");
  g.link("d", "D1h.b");
  g.link("D1pa.a", "z.u");
  for (int k = 1; k <= units; ++k) {
    const std::string n = std::to_string(k);
    const std::string next = std::to_string(k + 1);
    if (k < units) {
      g.link("I" + n + "pb.a", "I" + next + "h.b");
      g.link("D" + n + "pb.a", "D" + next + "h.b");
      g.link("D" + next + "pa.a", "q" + n + ".b");
    } else {
      g.link("I" + n + "pb.a", "over");
      g.link("D" + n + "pb.a", "q" + n + ".b");
    }
  }
  // Write exits merge into r.
  if (units == 1) {
    g.link("D1h.a", "r");
  } else {
    for (int k = 1; k < units; ++k) g.add_switch("rm" + std::to_string(k), SwitchKind::Fixed, Branch::A);
    g.link("rm1.u", "r");
    for (int k = 1; k < units; ++k) {
      const std::string n = std::to_string(k);
      g.link("D" + n + "h.a", "rm" + n + ".a");
      g.link("rm" + n + ".b", k + 1 < units ? "rm" + std::to_string(k + 1) + ".u" : "D" + std::to_string(units) + "h.a");
    }
  }
  return g;
}

int register_value(const CircuitGraph& g, const SwitchStates& s) {
  int value = 0;
  for (int k = 1;; ++k) {
    const auto im = g.find("I" + std::to_string(k) + "m");
    if (!im) break;
    const bool i_full = s.at(*im).selected == Branch::B;
    const bool d_full = s.at(g.require("D" + std::to_string(k) + "m")).selected == Branch::B;
    if (i_full != d_full) throw CircuitError("unit " + std::to_string(k) + " copies disagree");
    if (i_full) {
      if (value != k - 1) throw CircuitError("register units are not filled in order");
      value = k;
    }
  }
  return value;
}

}  // namespace heptaca::railway
