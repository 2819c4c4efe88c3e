#include "heptaca/state.hpp"

#include <stdexcept>

namespace heptaca {

char to_char(State s) {
  static constexpr char kLetters[] = {'W', 'B', 'G', 'R'};
  return kLetters[static_cast<int>(s)];
}

std::optional<State> state_from_char(char c) {
  switch (c) {
    case 'W': return State::W;
    case 'B': return State::B;
    case 'G': return State::G;
    case 'R': return State::R;
    default: return std::nullopt;
  }
}

State parse_state(std::string_view token) {
  if (token.size() == 1) {
    if (auto s = state_from_char(token[0])) return *s;
  }
  throw std::invalid_argument("unknown state '" + std::string(token) + "'");
}

PackedContext Context::pack() const {
  unsigned p = static_cast<unsigned>(self) << 14;
  for (int k = 0; k < 7; ++k) p |= static_cast<unsigned>(ring[k]) << (12 - 2 * k);
  return static_cast<PackedContext>(p);
}

Context Context::unpack(PackedContext p) {
  Context c;
  c.self = static_cast<State>(p >> 14);
  for (int k = 0; k < 7; ++k) c.ring[k] = static_cast<State>((p >> (12 - 2 * k)) & 3);
  return c;
}

Context Context::rotated(int k) const {
  Context c{self, {}};
  k = ((k % 7) + 7) % 7;
  for (int i = 0; i < 7; ++i) c.ring[i] = ring[(i + k) % 7];
  return c;
}

std::string Context::word() const {
  std::string w(1, to_char(self));
  for (State s : ring) w.push_back(to_char(s));
  return w;
}

Context parse_context(std::string_view word) {
  if (word.size() != 8) throw std::invalid_argument("context must have 8 states: '" + std::string(word) + "'");
  Context c;
  c.self = parse_state(word.substr(0, 1));
  for (int k = 0; k < 7; ++k) c.ring[k] = parse_state(word.substr(k + 1, 1));
  return c;
}

Context minimal_rotated(const Context& ctx) { return Context::unpack(minimal_rotated(ctx.pack())); }

}  // namespace heptaca
