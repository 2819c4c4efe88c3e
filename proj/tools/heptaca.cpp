// heptaca: command-line front end.
//
// Exit codes: 0 ok, 1 rule conflict or parse error, 2 missing rule,
// 3 rim contact, 4 I/O error.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "heptaca/engine.hpp"
#include "heptaca/railway/scenario.hpp"
#include "heptaca/render.hpp"
#include "heptaca/rules.hpp"
#include "heptaca/toolkit.hpp"

namespace fs = std::filesystem;
using namespace heptaca;

namespace {

enum Exit { kOk = 0, kConflict = 1, kMissing = 2, kRim = 3, kIo = 4 };

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string slurp(const fs::path& p) {
  try {
    return read_text_file(p);
  } catch (const std::exception& e) {
    throw IoError(e.what());
  }
}

void spit(const fs::path& p, const std::string& text, bool append = false) {
  std::ofstream out(p, append ? std::ios::app : std::ios::trunc);
  if (!out || !(out << text)) throw IoError("cannot write " + p.string());
}

std::size_t max_cells() {
  if (const char* v = std::getenv("HEPTACA_MAX_CELLS")) {
    try {
      return static_cast<std::size_t>(std::stoull(v));
    } catch (const std::exception&) {
      throw std::invalid_argument("HEPTACA_MAX_CELLS is not a number");
    }
  }
  return RegionOptions{}.max_cells;
}

railway::BuiltScenario load_scenario(const std::string& path) {
  return railway::build_scenario(railway::parse_scenario(slurp(path)), max_cells());
}

int report_run(const RunResult& run, std::ostream& err) {
  switch (run.status) {
    case RunStatus::Completed: return kOk;
    case RunStatus::MissingRule:
      err << "missing rule at t=" << run.trace.size() - 1 << " for " << run.missing.size() << " cell(s):\n";
      for (const auto& m : run.missing) err << "  " << to_string(m.cell) << ' ' << m.context.word() << '\n';
      return kMissing;
    case RunStatus::RimContact:
      err << "rim contact at t=" << run.trace.size() - 1 << ", cell " << to_string(*run.rim_cell) << '\n';
      return kRim;
  }
  return kOk;
}

int cmd_audit(const std::string& rules, std::optional<std::size_t> raw, std::optional<std::size_t> minimal) {
  const auto parsed = parse_rules(slurp(rules));
  const AuditReport rep = audit_rotation_invariance(parsed);
  std::cout << rep.text();
  if (raw || minimal) std::cout << compare_counts(rep, raw.value_or(rep.raw_rule_count), minimal.value_or(rep.minimal_form_count));
  return rep.rotation_invariant() ? kOk : kConflict;
}

int cmd_simulate(const std::string& rules, const std::string& scenario, std::size_t steps, const std::string& out) {
  const RuleTable table = load_rules(slurp(rules));
  const auto sc = load_scenario(scenario);
  const RunResult run = Engine(sc.region, table).run(sc.initial, steps);
  if (!out.empty()) spit(out, format_trace(run.trace));
  std::cout << "region level " << sc.region->max_level() << ", " << sc.region->size() << " cells; " << run.trace.size() - 1
            << " step(s) run\n";
  return report_run(run, std::cerr);
}

int cmd_render(const std::string& trace_file, const std::string& scenario, std::size_t step, unsigned level,
               const std::string& style_spec, const std::string& out) {
  std::shared_ptr<const Region> region;
  std::optional<Configuration> cfg;
  if (!scenario.empty()) {
    const auto sc = load_scenario(scenario);
    region = sc.region;
    cfg = sc.initial;
  }
  if (!trace_file.empty()) {
    const auto trace = parse_trace(slurp(trace_file));
    if (step >= trace.size()) {
      throw std::out_of_range("step " + std::to_string(step) + " out of range; trace has " +
                              std::to_string(trace.size()) + " configuration(s)");
    }
    if (!region) {
      RegionOptions opt;
      opt.max_cells = max_cells();
      region = std::make_shared<const Region>(build_region(level, opt));
    }
    cfg = Configuration(region, trace[step]);
  }
  if (!region) throw std::invalid_argument("render needs a trace file or --scenario");
  RenderStyle style;
  style.max_level = region->max_level();
  style = parse_style(style_spec, style);
  const std::string svg = render_svg(*cfg, style);
  if (out.empty()) std::cout << svg;
  else spit(out, svg);
  return kOk;
}

// Scenarios are elicited in turn, each starting from the table the previous
// one left; accepted rules are written as they are accepted.
int cmd_elicit(const std::string& rules, const std::vector<std::string>& scenarios, std::size_t steps,
               const std::string& answers, const std::string& match, const std::string& out) {
  RuleTable table = load_rules(slurp(rules));
  std::unique_ptr<AnswerSource> source;
  if (answers.empty()) source = std::make_unique<StreamAnswers>(std::cin, std::cerr);
  else source = std::make_unique<ScriptedAnswers>(ScriptedAnswers::parse(slurp(answers)));
  ElicitOptions opt;
  opt.match = match == "exact" ? MatchMode::Exact : MatchMode::Rotated;

  std::ostringstream text;
  std::size_t prompts = 0, appended = 0;
  int code = kOk;
  for (const auto& scenario : scenarios) {
    const auto sc = load_scenario(scenario);
    ElicitResult res;
    try {
      res = elicit(sc.initial, std::move(table), steps, *source, opt);
    } catch (const AnswersExhaustedError& e) {
      std::cerr << e.what() << '\n';
      code = kMissing;
      break;
    }
    for (std::size_t i = 0; i < res.appended.size(); ++i) {
      const Rule& r = res.appended[i];
      const Prompt& p = res.prompts.at(i);
      text << "# elicited on " << fs::path(scenario).filename().string() << " at t=" << p.step << ", cell "
           << to_string(p.cell) << '\n' << r.tokens() << '\n';
    }
    prompts += res.prompts.size();
    appended += res.appended.size();
    table = std::move(res.table);
    if (res.status == RunStatus::RimContact) {
      std::cerr << "rim contact in " << scenario << '\n';
      code = kRim;
      break;
    }
  }
  if (!out.empty()) spit(out, text.str(), true);
  else std::cout << text.str();
  std::cerr << prompts << " prompt(s), " << appended << " rule(s) appended\n";
  return code;
}

int cmd_scenario_list(const std::string& dir) {
  for (const auto& k : railway::scenario_kinds()) std::cout << k.name << "\t" << k.description << '\n';
  if (dir.empty()) return kOk;
  if (!fs::is_directory(dir)) throw IoError("not a directory: " + dir);
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.path().extension() == ".scn") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  for (const auto& f : files) {
    const auto s = railway::parse_scenario(slurp(f));
    std::cout << f.filename().string() << "\tkind=" << s.kind << " level=" << s.level << '\n';
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rotation-invariant 4-state cellular automaton on the heptagrid"};
  app.require_subcommand(1);

  std::string rules, scenario, out, answers, style, trace, dir, match = "rotated";
  std::vector<std::string> scenarios;
  std::size_t steps = 100, step = 0;
  unsigned level = 4;
  std::optional<std::size_t> expect_raw, expect_minimal;

  auto* audit = app.add_subcommand("audit", "check a rule file for rotation invariance");
  audit->add_option("--rules", rules, "rule file")->required();
  audit->add_option("--expect-raw", expect_raw, "reference raw rule count");
  audit->add_option("--expect-minimal", expect_minimal, "reference minimal form count");

  auto* sim = app.add_subcommand("simulate", "run a scenario and write its trace");
  sim->add_option("--rules", rules, "rule file")->required();
  sim->add_option("--scenario", scenario, "scenario file")->required();
  sim->add_option("--steps", steps, "number of steps")->capture_default_str();
  sim->add_option("--out", out, "trace output file");

  auto* render = app.add_subcommand("render", "draw one configuration as SVG");
  render->add_option("trace", trace, "trace file");
  render->add_option("--scenario", scenario, "scenario file (region, and initial configuration without a trace)");
  render->add_option("--step", step, "index of the configuration in the trace")->capture_default_str();
  render->add_option("--level", level, "region level when no scenario is given")->capture_default_str();
  render->add_option("--style", style, "style overrides, e.g. 'level=3,front=off,radius=300'");
  render->add_option("--out", out, "SVG output file");

  auto* eli = app.add_subcommand("elicit", "run a scenario, asking for the new state of unknown contexts");
  eli->add_option("--rules", rules, "rule file")->required();
  eli->add_option("--scenario", scenarios, "scenario file; repeat to elicit several in turn")->required();
  eli->add_option("--match", match, "unknown contexts: rotated (no rotated form known) or exact (not literally known)")
      ->check(CLI::IsMember({"rotated", "exact"}))
      ->capture_default_str();
  eli->add_option("--steps", steps, "number of steps")->capture_default_str();
  eli->add_option("--answers", answers, "scripted answers, one state per line (default: ask on the terminal)");
  eli->add_option("--out", out, "append accepted rules to this file (default: stdout)");

  auto* list = app.add_subcommand("scenario-list", "list scenario kinds and scenario files");
  list->add_option("dir", dir, "directory of .scn files");

  CLI11_PARSE(app, argc, argv);
  try {
    if (*audit) return cmd_audit(rules, expect_raw, expect_minimal);
    if (*sim) return cmd_simulate(rules, scenario, steps, out);
    if (*render) return cmd_render(trace, scenario, step, level, style, out);
    if (*eli) return cmd_elicit(rules, scenarios, steps, answers, match, out);
    if (*list) return cmd_scenario_list(dir);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIo;
  } catch (const RuleConflictError& e) {
    std::cerr << "conflict: " << e.what() << '\n';
    return kConflict;
  } catch (const RuleParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kConflict;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConflict;
  }
  return kOk;
}
