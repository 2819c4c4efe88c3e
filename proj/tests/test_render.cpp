#include <doctest.h>

#include <cmath>
#include <regex>

#include "heptaca/railway/paths.hpp"
#include "heptaca/render.hpp"
#include "support.hpp"

using namespace heptaca;

namespace {

using Points = std::vector<std::pair<double, double>>;

std::map<std::string, Points> polygons(const std::string& svg) {
  std::map<std::string, Points> out;
  static const std::regex poly(R"re(<polygon data-cell="([^"]+)"[^>]* points="([^"]+)")re");
  for (std::sregex_iterator it(svg.begin(), svg.end(), poly), end; it != end; ++it) {
    Points pts;
    std::istringstream in((*it)[2].str());
    double x, y;
    char comma;
    while (in >> x >> comma >> y) pts.emplace_back(x, y);
    out[(*it)[1].str()] = pts;
  }
  return out;
}

std::size_t shared_vertices(const Points& a, const Points& b) {
  std::size_t n = 0;
  for (auto [x, y] : a) {
    for (auto [u, v] : b) n += std::hypot(x - u, y - v) < 0.01;
  }
  return n;
}

std::size_t count(const std::string& s, const std::string& what) {
  std::size_t n = 0;
  for (auto p = s.find(what); p != std::string::npos; p = s.find(what, p + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("polygon counts") {
  RenderStyle style;
  style.max_level = 0;
  CHECK(count(render_svg(Configuration(testing::region(3)), style), "<polygon") == 8);
  for (unsigned l = 0; l <= 4; ++l) {
    style.max_level = l;
    const auto svg = render_svg(Configuration(testing::region(5)), style);
    CHECK(count(svg, "<polygon") == region_cell_count(l));
    CHECK(rendered_cell_count(*testing::region(5), style) == region_cell_count(l));
  }
  style.max_level = 9;
  CHECK(count(render_svg(Configuration(testing::region(2)), style), "<polygon") == 85);
}

TEST_CASE("rendering is deterministic") {
  railway::PathSpec spec;
  spec.anchor = CellId::in_sector(1, 13);
  const auto p = railway::build_path(testing::region(6), spec);
  const auto cfg = railway::place_locomotive(p, 5);
  CHECK(render_svg(cfg) == render_svg(cfg));
}

TEST_CASE("neighbouring tiles share an edge") {
  for (auto o : {Orientation::CounterClockwise, Orientation::Mirrored}) {
    const auto& r = *testing::region(3, o);
    RenderStyle style;
    style.max_level = 3;
    const auto polys = polygons(render_svg(Configuration(testing::region(3, o)), style));
    REQUIRE(polys.size() == r.size());
    for (std::size_t i = 0; i < r.size(); ++i) {
      const auto& a = polys.at(to_string(r.cell(i)));
      CHECK(a.size() == 7);
      for (auto n : r.neighbor_indices(i)) {
        if (n == Region::kExterior) continue;
        CHECK(shared_vertices(a, polys.at(to_string(r.cell(static_cast<std::size_t>(n))))) == 2);
      }
      // Everything inside the disc.
      for (auto [x, y] : a) CHECK(std::hypot(x - 404, y - 404) < 400);
    }
  }
}

TEST_CASE("fills and the locomotive front") {
  Configuration c(testing::region(3));
  c.set(CellId::in_sector(1, 5), State::R);
  c.set(CellId::in_sector(1, 6), State::B);
  c.set(CellId::in_sector(2, 5), State::G);
  RenderStyle style;
  const auto svg = render_svg(c, style);
  CHECK(svg.find(R"(data-cell="2:5" fill="#2f9e44")") != std::string::npos);
  CHECK(svg.find(R"(data-cell="1:5" fill="#d9342b")") != std::string::npos);
  style.darken_front = false;
  CHECK(render_svg(c, style).find(R"(data-cell="1:6" fill="#2e6fd8")") != std::string::npos);
  CHECK(c.at(CellId::in_sector(1, 6)) == State::B);
}

TEST_CASE("style overrides") {
  const auto s = parse_style("W=#ffffff,front=off,radius=100,level=2");
  CHECK(s.fill[0] == "#ffffff");
  CHECK_FALSE(s.darken_front);
  CHECK(s.radius == 100);
  CHECK(s.max_level == 2);
  CHECK(parse_style("").fill == RenderStyle{}.fill);
  CHECK_THROWS_AS(parse_style("blink=1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_style("radius"), std::invalid_argument);
  CHECK_THROWS_AS(parse_style("radius=-1"), std::invalid_argument);
}
