#pragma once
// Cell states and rule contexts.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace heptaca {

/// The four states, declared in the order used to compare contexts:
/// W < B < G < R. W is the quiescent (blank) state.
enum class State : std::uint8_t { W = 0, B = 1, G = 2, R = 3 };

inline constexpr int kStateCount = 4;

char to_char(State s);
std::optional<State> state_from_char(char c);
/// Throws std::invalid_argument for anything but W, B, G, R.
State parse_state(std::string_view token);

/// 14-bit packing of a neighbour ring: eta1 in the two most significant bits,
/// eta7 in the least. Integer order on packed rings is the lexicographic order
/// of the rings under W < B < G < R.
using PackedRing = std::uint16_t;
/// 16-bit packing of a full context: eta0 on bits 14..15, ring below.
using PackedContext = std::uint16_t;

inline constexpr PackedRing kRingMask = 0x3FFF;
inline constexpr std::size_t kContextSpace = 1u << 16;

/// Rotation of a packed ring by one position: (eta1..eta7) -> (eta2..eta7, eta1).
constexpr PackedRing rotate_ring(PackedRing r) {
  return static_cast<PackedRing>(((r << 2) | (r >> 12)) & kRingMask);
}

constexpr PackedRing min_rotation(PackedRing r) {
  PackedRing best = r;
  for (int k = 1; k < 7; ++k) {
    r = rotate_ring(r);
    if (r < best) best = r;
  }
  return best;
}

/// The cell state eta0 and its ring eta1..eta7 in side order.
struct Context {
  State self = State::W;
  std::array<State, 7> ring{};

  PackedContext pack() const;
  static Context unpack(PackedContext p);

  /// Same self state, ring cyclically shifted left by k positions.
  Context rotated(int k) const;

  /// Word form, e.g. "WBBWBWBW".
  std::string word() const;

  friend bool operator==(const Context&, const Context&) = default;
  /// Lexicographic on (self, ring) with W < B < G < R.
  friend auto operator<=>(const Context& a, const Context& b) { return a.pack() <=> b.pack(); }
};

/// Parses an 8-letter word such as "WBBWBWBW".
Context parse_context(std::string_view word);

/// Same self state, ring replaced by the least of its 7 cyclic shifts.
Context minimal_rotated(const Context& ctx);

constexpr PackedContext minimal_rotated(PackedContext p) {
  return static_cast<PackedContext>((p & ~kRingMask) | min_rotation(static_cast<PackedRing>(p & kRingMask)));
}

}  // namespace heptaca
