#pragma once
// Abstract railway circuits: tracks, switches and a single locomotive.
//
// A switch joins three track ends: u on one side, branches a and b on the
// other. Entering through u is an active crossing; the locomotive leaves
// through the selected branch. Entering through a branch is a passive
// crossing; the locomotive leaves through u.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace heptaca::railway {

enum class SwitchKind : std::uint8_t { Fixed, FlipFlop, Memory };
enum class Branch : std::uint8_t { A, B };  // a = left, b = right

struct SwitchState {
  SwitchKind kind = SwitchKind::Fixed;
  Branch selected = Branch::A;
  friend bool operator==(const SwitchState&, const SwitchState&) = default;
};

enum class Port : std::uint8_t { U, A, B };

/// Passive crossing of a flip-flop, forbidden by the model.
class ModelViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct Crossing {
  Port exit;
  SwitchState after;
};

/// One crossing of one switch entered through `entry`.
///  fixed:     active -> selected branch; passive -> u. Never changes.
///  flip-flop: active -> selected branch, then the selection toggles;
///             passive -> ModelViolation.
///  memory:    active -> selected branch; passive -> u, and the branch
///             just used becomes selected.
Crossing cross_switch(const SwitchState& s, Port entry);

std::string_view to_string(SwitchKind k);
std::string_view to_string(Branch b);

class CircuitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Circuit graph: ports (track ends leading outside), switches and joints
/// (two-ended track pieces used to name intermediate points). Every end is
/// linked to exactly one other end.
class CircuitGraph {
 public:
  enum class NodeType : std::uint8_t { Port, Switch, Joint };
  struct Node {
    std::string name;
    NodeType type;
    SwitchState initial;  // switches only
  };
  struct End {
    int node = -1;
    int end = 0;  // switch: 0 u, 1 a, 2 b; joint: 0/1; port: 0
    friend auto operator<=>(const End&, const End&) = default;
  };

  int add_port(std::string name);
  int add_switch(std::string name, SwitchKind kind, Branch selected);
  int add_joint(std::string name);
  /// Links two ends given as "name" (port), "name.u|a|b" (switch) or
  /// "name.0|1" (joint). Throws CircuitError.
  void link(std::string_view x, std::string_view y);
  void link(End x, End y);

  End parse_end(std::string_view text) const;
  std::string end_name(End e) const;

  const std::vector<Node>& nodes() const { return nodes_; }
  std::optional<int> find(std::string_view name) const;
  int require(std::string_view name) const;
  std::optional<End> partner(End e) const;

  std::vector<std::string> port_names() const;
  std::vector<SwitchState> initial_states() const;

  /// Dangling ends, one message each; empty when the graph is closed.
  std::vector<std::string> validate() const;

  /// Text form (see parse_circuit).
  std::string format() const;

 private:
  int add_node(Node n);
  std::vector<Node> nodes_;
  std::map<std::string, int, std::less<>> by_name_;
  std::map<End, End> links_;
};

/// Circuit text, one item per line, `#` comments:
///   port <name>
///   switch <name> fixed|flipflop|memory a|b
///   joint <name>
///   link <end> <end>
CircuitGraph parse_circuit(std::string_view text);

/// Switch states indexed by node id (entries of non-switch nodes unused).
using SwitchStates = std::vector<SwitchState>;

struct CircuitRun {
  std::string exit_port;
  SwitchStates states;
  std::vector<std::string> path;  // names of nodes visited, in order
};

/// Runs the locomotive from port `entry` until it leaves through a port.
/// Throws ModelViolation, CircuitError on dangling ends, and CircuitError
/// when `budget` crossings are exceeded.
CircuitRun run_circuit(const CircuitGraph& g, SwitchStates states, std::string_view entry,
                       std::size_t budget = 100000);

/// Bit circuit: memory switch `m` behind port E decides the read exit (O1
/// when a is selected, bit 0; O2 for bit 1). Entering at U, flip-flop `f`
/// sends the locomotive to the branch of `m` that is not selected; the
/// passive crossing flips `m`, the flip-flop has toggled, and the locomotive
/// leaves through E. Fixed switches `g1`, `g2` separate the read exits from
/// the write tracks.
CircuitGraph elementary_circuit(int bit = 0);
/// Value held by an elementary circuit in the given states.
int elementary_bit(const CircuitGraph& g, const SwitchStates& s);

/// Register of `units` consecutive units holding a unary value. Ports:
///   i  increment entry, r  exit once done,
///   d  decrement entry, r  exit when the value was positive,
///   j1 / j2  exits of a decrement on the empty register (alternating),
///   over  increment beyond the last unit.
CircuitGraph register_circuit(int units = 2, int value = 0);
int register_value(const CircuitGraph& g, const SwitchStates& s);

}  // namespace heptaca::railway
