#include "heptaca/toolkit.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

namespace heptaca {

std::string AuditReport::summary_line() const {
  return "RAW=" + std::to_string(raw_rule_count) + " MINIMAL=" + std::to_string(minimal_form_count) +
         " CONFLICTS=" + std::to_string(conflicts.size());
}

namespace {

std::string cite(const Rule& r) {
  std::string s = r.word();
  if (r.line != 0) s += " (line " + std::to_string(r.line) + ")";
  return s;
}

}  // namespace

std::string AuditReport::text() const {
  std::ostringstream out;
  out << "rules read:           " << raw_rule_count << '\n';
  out << "minimal rotated forms: " << minimal_form_count << '\n';
  out << "rotated duplicates:   " << rotated_duplicates.size() << '\n';
  if (conflicts.empty()) {
    out << "rotation invariant: yes\n";
  } else {
    out << "rotation invariant: no, " << conflicts.size() << " conflict(s)\n";
    for (const auto& c : conflicts) {
      out << "  conflict on " << c.minimal.word() << ": " << cite(c.first) << " vs " << cite(c.second) << '\n';
    }
  }
  if (!unreachable.empty()) {
    out << "never fired: " << unreachable.size() << '\n';
    for (const auto& r : unreachable) out << "  " << cite(r) << '\n';
  }
  out << summary_line() << '\n';
  return out.str();
}

AuditReport audit_rotation_invariance(std::span<const Rule> rules) {
  AuditReport rep;
  rep.raw_rule_count = rules.size();
  struct Group {
    Rule first;
    std::optional<Rule> other;
  };
  std::map<PackedContext, Group> groups;
  for (const Rule& r : rules) {
    const PackedContext key = minimal_rotated(r.context.pack());
    auto [it, inserted] = groups.try_emplace(key, Group{r, std::nullopt});
    if (inserted) continue;
    rep.rotated_duplicates.push_back(r);
    if (!it->second.other && r.result != it->second.first.result) it->second.other = r;
  }
  rep.minimal_form_count = groups.size();
  for (const auto& [key, g] : groups) {
    if (g.other) rep.conflicts.push_back({g.first, *g.other, Context::unpack(key)});
  }
  return rep;
}

std::vector<Rule> unfired_rules(const RuleTable& table, const std::vector<Configuration>& trace) {
  std::set<PackedContext> fired;
  if (!trace.empty()) {
    Engine engine(trace.front().region_ptr(), table);
    for (std::size_t t = 0; t + 1 < trace.size(); ++t) {
      for (PackedContext c : engine.contexts(trace[t])) fired.insert(minimal_rotated(c));
    }
  }
  std::vector<Rule> out;
  for (const auto& [key, entry] : table.entries()) {
    if (!fired.contains(key)) out.push_back(entry.first);
  }
  return out;
}

std::string compare_counts(const AuditReport& report, std::size_t expected_raw, std::size_t expected_minimal) {
  std::ostringstream out;
  auto line = [&](const char* what, std::size_t have, std::size_t want) {
    out << what << ": " << have << " (reference " << want << ") ";
    if (have == want) {
      out << "match\n";
    } else {
      const long long delta = static_cast<long long>(have) - static_cast<long long>(want);
      out << "DIFFERS by " << (delta > 0 ? "+" : "") << delta << '\n';
    }
  };
  line("raw rules", report.raw_rule_count, expected_raw);
  line("minimal forms", report.minimal_form_count, expected_minimal);
  if (report.raw_rule_count != expected_raw || report.minimal_form_count != expected_minimal) {
    out << "raw = minimal + rotated duplicates: " << report.raw_rule_count << " = " << report.minimal_form_count
        << " + " << report.rotated_duplicates.size() << '\n';
    out << "rotated duplicates, line by line:\n";
    for (const Rule& r : report.rotated_duplicates) {
      out << "  " << cite(r) << " ~ " << minimal_rotated(r.context).word() << '\n';
    }
  }
  return out.str();
}

std::vector<Rule> close_under_rotation(const RuleTable& table) {
  std::vector<Rule> out;
  for (const auto& [key, entry] : table.entries()) {
    const Context base = Context::unpack(key);
    std::set<PackedContext> seen;
    for (int k = 0; k < 7; ++k) {
      const Context c = base.rotated(k);
      if (seen.insert(c.pack()).second) out.push_back(Rule{c, entry.result, 0});
    }
  }
  return out;
}

std::string TableDiff::text() const {
  std::ostringstream out;
  for (const auto& r : only_a) out << "< " << r.word() << '\n';
  for (const auto& r : only_b) out << "> " << r.word() << '\n';
  for (const auto& [a, b] : mismatched) out << "! " << a.word() << " vs " << b.word() << '\n';
  return out.str();
}

TableDiff diff_tables(const RuleTable& a, const RuleTable& b) {
  TableDiff d;
  auto minimal_rule = [](PackedContext key, State result) { return Rule{Context::unpack(key), result, 0}; };
  for (const auto& [key, ea] : a.entries()) {
    auto it = b.entries().find(key);
    if (it == b.entries().end()) {
      d.only_a.push_back(minimal_rule(key, ea.result));
    } else if (it->second.result != ea.result) {
      d.mismatched.emplace_back(minimal_rule(key, ea.result), minimal_rule(key, it->second.result));
    }
  }
  for (const auto& [key, eb] : b.entries()) {
    if (!a.entries().contains(key)) d.only_b.push_back(minimal_rule(key, eb.result));
  }
  return d;
}

ScriptedAnswers ScriptedAnswers::parse(std::string_view text) {
  std::vector<State> answers;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream fields(line);
    std::string tok, extra;
    if (!(fields >> tok)) continue;
    if (fields >> extra) throw RuleParseError(line_no, "expected one state per line");
    try {
      answers.push_back(parse_state(tok));
    } catch (const std::invalid_argument& e) {
      throw RuleParseError(line_no, e.what());
    }
  }
  return ScriptedAnswers(std::move(answers));
}

std::optional<State> ScriptedAnswers::answer(const Prompt&) {
  if (next_ >= answers_.size()) return std::nullopt;
  return answers_[next_++];
}

std::optional<State> StreamAnswers::answer(const Prompt& p) {
  for (;;) {
    out_ << "t=" << p.step << " cell " << to_string(p.cell) << " context " << p.context.word() << " -> new state? "
         << std::flush;
    std::string tok;
    if (!(in_ >> tok)) return std::nullopt;
    if (tok.size() == 1) {
      if (auto s = state_from_char(static_cast<char>(std::toupper(static_cast<unsigned char>(tok[0]))))) return s;
    }
    out_ << "expected one of W B G R\n";
  }
}

AnswersExhaustedError::AnswersExhaustedError(const Prompt& p)
    : std::runtime_error("no answer for context " + p.context.word() + " at cell " + to_string(p.cell) + ", t=" +
                         std::to_string(p.step)),
      prompt_(p) {}

ElicitResult elicit(const Configuration& initial, RuleTable table, std::size_t steps, AnswerSource& answers,
                    const ElicitOptions& options) {
  ElicitResult res;
  std::set<PackedContext> literal;
  for (const Rule& r : table.provenance()) literal.insert(r.context.pack());
  const Region& region = initial.region();

  for (;;) {
    ++res.runs;
    Engine engine(initial.region_ptr(), table);
    std::vector<Configuration> trace{initial};
    std::vector<MissingContext> unknown;
    bool rim = options.guard_rim && !rim_contacts(initial).empty();
    while (!rim && trace.size() <= steps) {
      const Configuration& cur = trace.back();
      if (options.match == MatchMode::Exact) {
        const auto ctx = engine.contexts(cur);
        for (std::size_t i = 0; i < ctx.size(); ++i) {
          if (!literal.contains(ctx[i])) unknown.push_back({region.cell(i), Context::unpack(ctx[i])});
        }
        if (!unknown.empty()) break;
      }
      StepResult s = engine.step(cur);
      if (!s.ok()) {
        unknown = std::move(s.missing);
        break;
      }
      trace.push_back(std::move(*s.next));
      rim = options.guard_rim && !rim_contacts(trace.back()).empty();
    }
    if (unknown.empty()) {
      res.status = rim ? RunStatus::RimContact : RunStatus::Completed;
      res.trace = std::move(trace);
      res.table = std::move(table);
      return res;
    }
    const std::size_t failed_step = trace.size() - 1;
    std::set<PackedContext> asked;
    for (const MissingContext& m : unknown) {
      if (!asked.insert(m.context.pack()).second) continue;
      Prompt p{failed_step, m.cell, m.context};
      res.prompts.push_back(p);
      const auto s = answers.answer(p);
      if (!s) throw AnswersExhaustedError(p);
      const Rule r{m.context, *s, 0};
      // Throws RuleConflictError on a contradicting rotated form.
      if (table.add(r) == RuleTable::AddOutcome::Added) ++res.new_minimal_forms;
      literal.insert(r.context.pack());
      res.appended.push_back(r);
    }
  }
}

}  // namespace heptaca
