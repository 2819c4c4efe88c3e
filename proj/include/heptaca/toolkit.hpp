#pragma once
// Auditing, closing and eliciting rule tables.

#include <cstddef>
#include <functional>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "heptaca/engine.hpp"
#include "heptaca/rules.hpp"

namespace heptaca {

struct RuleConflict {
  Rule first;   // earliest rule of the group
  Rule second;  // earliest rule with a different new state
  Context minimal;
};

struct AuditReport {
  std::size_t raw_rule_count = 0;
  std::size_t minimal_form_count = 0;
  std::vector<RuleConflict> conflicts;
  /// Rules listed after an earlier rule with the same minimal form.
  std::vector<Rule> rotated_duplicates;
  /// Rules never fired during a trace, when coverage was computed.
  std::vector<Rule> unreachable;

  bool rotation_invariant() const { return conflicts.empty(); }
  /// `RAW=<n> MINIMAL=<m> CONFLICTS=<k>`
  std::string summary_line() const;
  std::string text() const;
};

/// Groups rules by minimal rotated context; each group holding two or more
/// distinct new states is one conflict.
AuditReport audit_rotation_invariance(std::span<const Rule> rules);

/// Rules of `table` whose minimal form matches no context of `trace`
/// (the last configuration is not stepped and is ignored).
std::vector<Rule> unfired_rules(const RuleTable& table, const std::vector<Configuration>& trace);

/// Comparison of audit counts against reference values, with every
/// rotated-duplicate line listed so a count difference can be reconciled.
std::string compare_counts(const AuditReport& report, std::size_t expected_raw, std::size_t expected_minimal);

/// Every distinct rotated form of every entry, with the entry's new state.
std::vector<Rule> close_under_rotation(const RuleTable& table);

struct TableDiff {
  std::vector<Rule> only_a;
  std::vector<Rule> only_b;
  std::vector<std::pair<Rule, Rule>> mismatched;  // same minimal form, different results
  bool empty() const { return only_a.empty() && only_b.empty() && mismatched.empty(); }
  /// Everything in a is in b with the same result.
  bool a_subset_of_b() const { return only_a.empty() && mismatched.empty(); }
  std::string text() const;
};

/// Set difference on minimal forms; reported rules are the tables' minimal
/// forms.
TableDiff diff_tables(const RuleTable& a, const RuleTable& b);

/// A context shown to whoever supplies new rules.
struct Prompt {
  std::size_t step = 0;  // time step whose evaluation failed
  CellId cell;
  Context context;
};

/// Source of new states during elicitation.
class AnswerSource {
 public:
  virtual ~AnswerSource() = default;
  /// std::nullopt when no answer is available.
  virtual std::optional<State> answer(const Prompt& prompt) = 0;
};

/// Answers consumed in order from a list (one state per prompt).
class ScriptedAnswers : public AnswerSource {
 public:
  explicit ScriptedAnswers(std::vector<State> answers) : answers_(std::move(answers)) {}
  /// One state token per line; blank lines and `#` comments ignored.
  static ScriptedAnswers parse(std::string_view text);
  std::optional<State> answer(const Prompt& prompt) override;
  std::size_t consumed() const { return next_; }

 private:
  std::vector<State> answers_;
  std::size_t next_ = 0;
};

class FunctionAnswers : public AnswerSource {
 public:
  explicit FunctionAnswers(std::function<std::optional<State>(const Prompt&)> fn) : fn_(std::move(fn)) {}
  std::optional<State> answer(const Prompt& prompt) override { return fn_(prompt); }

 private:
  std::function<std::optional<State>(const Prompt&)> fn_;
};

/// Interactive answers: prints the prompt to `out`, reads a state from `in`.
class StreamAnswers : public AnswerSource {
 public:
  StreamAnswers(std::istream& in, std::ostream& out) : in_(in), out_(out) {}
  std::optional<State> answer(const Prompt& prompt) override;

 private:
  std::istream& in_;
  std::ostream& out_;
};

class AnswersExhaustedError : public std::runtime_error {
 public:
  explicit AnswersExhaustedError(const Prompt& p);
  const Prompt& prompt() const { return prompt_; }

 private:
  Prompt prompt_;
};

/// When a context counts as unknown. Rotated: no rotated form of it is in
/// the table (what the engine needs). Exact: the context itself is not
/// literally in the table, as with a rule file matched verbatim; answers for
/// rotated forms of known rules are then appended when they agree and halt
/// with a conflict when they do not.
enum class MatchMode { Rotated, Exact };

struct ElicitOptions {
  MatchMode match = MatchMode::Rotated;
  bool guard_rim = true;
};

struct ElicitResult {
  RuleTable table;
  std::vector<Rule> appended;  // every accepted answer; appended[i] answers prompts[i]
  std::size_t new_minimal_forms = 0;
  std::vector<Prompt> prompts;
  std::vector<Configuration> trace;
  RunStatus status = RunStatus::Completed;  // RimContact stops elicitation
  std::size_t runs = 0;
};

/// Runs from the initial configuration; at the first step with unknown
/// contexts, presents each distinct one (cells in CellId order), appends the
/// answers as rules, and restarts from the initial configuration. Ends when
/// `steps` steps run with nothing unknown, or on rim contact. Throws
/// RuleConflictError when an answer contradicts an existing rotated form and
/// AnswersExhaustedError when the source runs dry.
ElicitResult elicit(const Configuration& initial, RuleTable table, std::size_t steps, AnswerSource& answers,
                    const ElicitOptions& options = {});

}  // namespace heptaca
