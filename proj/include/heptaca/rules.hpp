#pragma once
// Rule words and rotation-invariant rule tables.

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "heptaca/state.hpp"

namespace heptaca {

/// One transition word eta0 eta1 .. eta7 -> eta0'.
struct Rule {
  Context context;
  State result = State::W;
  std::size_t line = 0;  // source line, 0 when not read from a file

  /// Compact word form, e.g. "WBBWBWBWW".
  std::string word() const;
  /// File form: nine space-separated tokens.
  std::string tokens() const;

  friend bool operator==(const Rule& a, const Rule& b) {
    return a.context == b.context && a.result == b.result;
  }
};

/// Parses a 9-letter word such as "WBBWBWBBB".
Rule parse_rule_word(std::string_view word);

class RuleParseError : public std::runtime_error {
 public:
  RuleParseError(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Two rules whose contexts are rotated images of each other but whose new
/// states differ.
class RuleConflictError : public std::runtime_error {
 public:
  RuleConflictError(Rule existing, Rule incoming);
  const Rule& existing() const { return existing_; }
  const Rule& incoming() const { return incoming_; }

 private:
  Rule existing_;
  Rule incoming_;
};

/// Parses rule-file text: one rule per line as nine whitespace-separated
/// state tokens, `#` starts a comment, blank lines are skipped. Only syntax is
/// checked; throws RuleParseError.
std::vector<Rule> parse_rules(std::string_view text);

struct MissingRule {
  Context context;
};

using LookupResult = std::variant<State, MissingRule>;

/// Deterministic rule table keyed by minimal rotated context. Adding a rule
/// whose minimal form is already present with the same result is accepted;
/// a different result is a conflict.
class RuleTable {
 public:
  struct Entry {
    State result;
    Rule first;  // earliest source rule with this minimal form
  };

  enum class AddOutcome { Added, Duplicate };

  /// Throws RuleConflictError and leaves the table unchanged on conflict.
  AddOutcome add(const Rule& rule);

  /// Entry whose minimal context equals minimal_rotated(ctx), if any.
  const Entry* find(const Context& ctx) const;
  LookupResult lookup(const Context& ctx) const;

  std::size_t minimal_form_count() const { return entries_.size(); }
  std::size_t raw_rule_count() const { return provenance_.size(); }
  bool empty() const { return entries_.empty(); }

  /// Minimal packed context -> entry, in ascending context order.
  const std::map<PackedContext, Entry>& entries() const { return entries_; }
  /// Every rule added, verbatim and in order.
  const std::vector<Rule>& provenance() const { return provenance_; }

  /// Dense table over all 4^8 raw contexts (result state or
  /// kernels::kMissing), padded for vector gathers.
  std::vector<std::uint8_t> dense_lookup_table() const;

 private:
  std::map<PackedContext, Entry> entries_;
  std::vector<Rule> provenance_;
};

/// Parses and indexes rule text. Throws RuleParseError or RuleConflictError
/// (the latter citing both source lines).
RuleTable load_rules(std::string_view text);
RuleTable load_rules_file(const std::filesystem::path& path);

/// Whole file contents; throws std::runtime_error when unreadable.
std::string read_text_file(const std::filesystem::path& path);

}  // namespace heptaca
