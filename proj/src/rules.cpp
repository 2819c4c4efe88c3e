#include "heptaca/rules.hpp"

#include <fstream>
#include <sstream>

#include "heptaca/kernels.hpp"

namespace heptaca {

std::string Rule::word() const {
  std::string w = context.word();
  w.push_back(to_char(result));
  return w;
}

std::string Rule::tokens() const {
  std::string out;
  for (char c : word()) {
    if (!out.empty()) out.push_back(' ');
    out.push_back(c);
  }
  return out;
}

Rule parse_rule_word(std::string_view word) {
  if (word.size() != 9) throw std::invalid_argument("rule word must have 9 states: '" + std::string(word) + "'");
  return Rule{parse_context(word.substr(0, 8)), parse_state(word.substr(8, 1)), 0};
}

RuleParseError::RuleParseError(std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

namespace {

std::string describe(const Rule& r) {
  std::string s = r.word();
  if (r.line != 0) s += " (line " + std::to_string(r.line) + ")";
  return s;
}

}  // namespace

RuleConflictError::RuleConflictError(Rule existing, Rule incoming)
    : std::runtime_error("rotation conflict: " + describe(incoming) + " contradicts " + describe(existing) +
                         ", shared minimal context " + minimal_rotated(existing.context).word()),
      existing_(std::move(existing)),
      incoming_(std::move(incoming)) {}

std::vector<Rule> parse_rules(std::string_view text) {
  std::vector<Rule> rules;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);

    std::istringstream in{std::string(line)};
    std::vector<std::string> tokens;
    for (std::string tok; in >> tok;) tokens.push_back(tok);
    if (tokens.empty()) continue;
    if (tokens.size() != 9) {
      throw RuleParseError(line_no, "expected 9 state tokens, found " + std::to_string(tokens.size()));
    }
    Rule r;
    r.line = line_no;
    for (int k = 0; k < 9; ++k) {
      const auto s = tokens[k].size() == 1 ? state_from_char(tokens[k][0]) : std::nullopt;
      if (!s) throw RuleParseError(line_no, "unknown state '" + tokens[k] + "'");
      if (k == 0) {
        r.context.self = *s;
      } else if (k < 8) {
        r.context.ring[k - 1] = *s;
      } else {
        r.result = *s;
      }
    }
    rules.push_back(r);
    if (end == text.size()) break;
  }
  return rules;
}

RuleTable::AddOutcome RuleTable::add(const Rule& rule) {
  const PackedContext key = minimal_rotated(rule.context.pack());
  auto [it, inserted] = entries_.try_emplace(key, Entry{rule.result, rule});
  if (!inserted && it->second.result != rule.result) throw RuleConflictError(it->second.first, rule);
  provenance_.push_back(rule);
  return inserted ? AddOutcome::Added : AddOutcome::Duplicate;
}

const RuleTable::Entry* RuleTable::find(const Context& ctx) const {
  auto it = entries_.find(minimal_rotated(ctx.pack()));
  return it == entries_.end() ? nullptr : &it->second;
}

LookupResult RuleTable::lookup(const Context& ctx) const {
  if (const Entry* e = find(ctx)) return e->result;
  return MissingRule{ctx};
}

std::vector<std::uint8_t> RuleTable::dense_lookup_table() const {
  std::vector<std::uint8_t> lut(kContextSpace + kernels::kGatherPadding, kernels::kMissing);
  for (const auto& [key, entry] : entries_) {
    const unsigned self = key & ~kRingMask;
    PackedRing r = key & kRingMask;
    for (int k = 0; k < 7; ++k) {
      lut[self | r] = static_cast<std::uint8_t>(entry.result);
      r = rotate_ring(r);
    }
  }
  return lut;
}

RuleTable load_rules(std::string_view text) {
  RuleTable table;
  for (const Rule& r : parse_rules(text)) table.add(r);
  return table;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RuleTable load_rules_file(const std::filesystem::path& path) { return load_rules(read_text_file(path)); }

}  // namespace heptaca
