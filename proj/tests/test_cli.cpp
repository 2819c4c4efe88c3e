#include <doctest.h>

#include <sys/wait.h>

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "heptaca/engine.hpp"
#include "heptaca/rules.hpp"
#include "support.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out, err;
};

fs::path scratch_dir() {
  static const fs::path dir = [] {
    auto d = fs::temp_directory_path() / ("heptaca_cli_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

fs::path scratch(const std::string& name) { return scratch_dir() / name; }

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  return {std::istreambuf_iterator<char>(in), {}};
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

std::string data(const std::string& rel) { return testing::data_path(rel).string(); }

Result cli(const std::string& args, const std::string& env = {}) {
  static std::atomic<int> n{0};
  const auto id = std::to_string(n++);
  const auto out = scratch("out" + id), err = scratch("err" + id);
  const std::string cmd = env + " \"" HEPTACA_CLI "\" " + args + " >" + out.string() + " 2>" + err.string();
  const int status = std::system(cmd.c_str());
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out), slurp(err)};
}

std::size_t count(const std::string& s, const std::string& what) {
  std::size_t k = 0;
  for (auto p = s.find(what); p != std::string::npos; p = s.find(what, p + 1)) ++k;
  return k;
}

}  // namespace

TEST_CASE("cli audit") {
  auto r = cli("audit --rules " + data("rules_4state.txt"));
  CHECK(r.code == 0);
  CHECK(r.out.find("RAW=1168 MINIMAL=589 CONFLICTS=0") != std::string::npos);

  // One flipped result on the first rule that repeats an earlier minimal form.
  const auto rules = heptaca::parse_rules(heptaca::read_text_file(testing::data_path("rules_4state.txt")));
  std::map<heptaca::PackedContext, std::size_t> seen;
  std::size_t flip_line = 0;
  for (const auto& rule : rules) {
    if (!seen.emplace(heptaca::minimal_rotated(rule.context).pack(), rule.line).second) {
      flip_line = rule.line;
      break;
    }
  }
  REQUIRE(flip_line > 0);
  std::istringstream in(heptaca::read_text_file(testing::data_path("rules_4state.txt")));
  std::string line, corrupted;
  for (std::size_t k = 1; std::getline(in, line); ++k) {
    if (k == flip_line) line.back() = line.back() == 'W' ? 'B' : 'W';
    corrupted += line + '\n';
  }
  write(scratch("corrupted.txt"), corrupted);
  r = cli("audit --rules " + scratch("corrupted.txt").string());
  CHECK(r.code == 1);
  CHECK(r.out.find("CONFLICTS=1") != std::string::npos);
  CHECK(r.out.find("line " + std::to_string(flip_line)) != std::string::npos);

  write(scratch("empty.txt"), "");
  r = cli("audit --rules " + scratch("empty.txt").string());
  CHECK(r.code == 0);
  CHECK(r.out.find("RAW=0") != std::string::npos);

  write(scratch("bad.txt"), "W W W W W W W W W\nW W W\n");
  r = cli("audit --rules " + scratch("bad.txt").string());
  CHECK(r.code == 1);
  CHECK(r.err.find("line 2") != std::string::npos);

  r = cli("audit --rules " + scratch("no_such_file.txt").string());
  CHECK(r.code == 4);

  r = cli("audit --rules " + data("rules_4state.txt") + " --expect-raw 1168 --expect-minimal 595");
  CHECK(r.out.find("595") != std::string::npos);
}

TEST_CASE("cli simulate") {
  const auto rules = data("rules_4state.txt");
  auto r = cli("simulate --rules " + rules + " --scenario " + data("scenarios/quiescent.scn") + " --steps 100 --out " +
               scratch("q.trace").string());
  CHECK(r.code == 0);
  const auto q = heptaca::parse_trace(slurp(scratch("q.trace")));
  CHECK(q.size() == 101);
  for (const auto& a : q) CHECK(a.empty());

  r = cli("simulate --rules " + rules + " --scenario " + data("scenarios/horizontal_locomotive.scn") +
          " --steps 20 --out " + scratch("h.trace").string());
  CHECK(r.code == 0);
  const auto h = heptaca::parse_trace(slurp(scratch("h.trace")));
  REQUIRE(h.size() == 21);
  for (std::size_t t = 0; t < h.size(); ++t) {
    if (t > 0) CHECK(h[t] != h[t - 1]);  // moves every step
    std::size_t reds = 0;
    for (auto [c, s] : h[t]) reds += s == heptaca::State::R;
    CHECK(reds == 1);
  }

  r = cli("simulate --rules " + rules + " --scenario " + data("scenarios/too_close_to_rim.scn") + " --steps 10");
  CHECK(r.code == 3);
  CHECK(r.err.find("rim contact") != std::string::npos);

  r = cli("simulate --rules " + data("elicit/seed_rules.txt") + " --scenario " +
          data("scenarios/horizontal_locomotive.scn") + " --steps 10");
  CHECK(r.code == 2);
  CHECK(r.err.find("missing rule") != std::string::npos);

  r = cli("simulate --rules " + rules + " --scenario " + data("scenarios/horizontal_locomotive.scn") + " --steps 1",
          "HEPTACA_MAX_CELLS=1000");
  CHECK(r.code == 1);
}

TEST_CASE("cli render") {
  auto r = cli("render --scenario " + data("scenarios/quiescent.scn") + " --style level=0");
  CHECK(r.code == 0);
  CHECK(count(r.out, "<polygon") == 8);

  cli("simulate --rules " + data("rules_4state.txt") + " --scenario " + data("scenarios/horizontal_locomotive.scn") +
      " --steps 5 --out " + scratch("r.trace").string());
  const std::string args = "render " + scratch("r.trace").string() + " --scenario " +
                           data("scenarios/horizontal_locomotive.scn") + " --step 3 --style level=4";
  const auto a = cli(args), b = cli(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(count(a.out, "<polygon") == heptaca::region_cell_count(4));

  r = cli("render " + scratch("r.trace").string() + " --level 6 --step 9");
  CHECK(r.code == 1);
  CHECK(r.err.find("out of range") != std::string::npos);
}

TEST_CASE("cli elicit") {
  auto r = cli("elicit --rules " + data("rules_4state.txt") + " --scenario " +
               data("scenarios/horizontal_locomotive.scn") + " --steps 40 --answers " + scratch("empty.txt").string());
  CHECK(r.code == 0);
  CHECK(r.err.find("0 prompt(s), 0 rule(s) appended") != std::string::npos);

  const auto out = scratch("elicited.txt");
  fs::remove(out);
  r = cli("elicit --rules " + data("elicit/seed_rules.txt") + " --scenario " +
          data("scenarios/horizontal_locomotive.scn") + " --scenario " + data("scenarios/straight_cw.scn") +
          " --steps 40 --answers " + data("elicit/basic_answers.txt") + " --out " + out.string());
  CHECK(r.code == 0);
  CHECK(r.err.find("15 prompt(s), 15 rule(s) appended") != std::string::npos);
  const auto elicited = heptaca::load_rules_file(out);
  CHECK(elicited.raw_rule_count() == 15);
  CHECK(count(slurp(out), "# elicited on") == 15);

  r = cli("elicit --rules " + data("rules_4state.txt") + " --scenario " + data("scenarios/horizontal_locomotive.scn") +
          " --steps 40 --match exact --answers " + data("elicit/contradictory_answers.txt"));
  CHECK(r.code == 1);
  CHECK(r.err.find("GWWGBBBGW") != std::string::npos);
  CHECK(r.err.find("GBBBGWWGG") != std::string::npos);

  write(scratch("two.txt"), "W\nW\n");
  r = cli("elicit --rules " + data("elicit/seed_rules.txt") + " --scenario " +
          data("scenarios/horizontal_locomotive.scn") + " --steps 40 --answers " + scratch("two.txt").string());
  CHECK(r.code == 2);
}

TEST_CASE("cli scenario-list") {
  const auto r = cli("scenario-list " + testing::data_path("scenarios").string());
  CHECK(r.code == 0);
  CHECK(r.out.find("horizontal_locomotive.scn") != std::string::npos);
  CHECK(cli("scenario-list /no/such/dir").code == 4);
}
