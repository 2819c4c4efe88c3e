#include "heptaca/render.hpp"

#include <cmath>
#include <complex>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace heptaca {

namespace {

using cplx = std::complex<double>;

// Disc isometry z -> (a z + b) / (conj(b) z + conj(a)).
struct Mobius {
  cplx a{1.0, 0.0}, b{0.0, 0.0};

  cplx operator()(cplx z) const { return (a * z + b) / (std::conj(b) * z + std::conj(a)); }
  Mobius then(const Mobius& inner) const {  // this o inner
    return {a * inner.a + b * std::conj(inner.b), a * inner.b + b * std::conj(inner.a)};
  }
  static Mobius rotation(double theta) { return {std::polar(1.0, theta / 2), 0.0}; }
  static Mobius translation(double d) { return {std::cosh(d / 2), std::sinh(d / 2)}; }
};

constexpr double kPi = std::numbers::pi;

// {7,3}: inradius r with cosh r = cos(pi/3) / sin(pi/7), circumradius R with
// cosh R = cot(pi/7) cot(pi/3).
const double kCentreDistance = 2.0 * std::acosh(std::cos(kPi / 3) / std::sin(kPi / 7));
const double kVertexRadius = std::tanh(std::acosh(1.0 / (std::tan(kPi / 7) * std::tan(kPi / 3))) / 2);

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", std::abs(x) < 5e-4 ? 0.0 : x);
  return buf;
}

// A blue cell next to the red rear. Cells of the blue track touch the green
// track, the front does not; milestones have a single blue neighbour (the
// front itself) while the front sees the blue track and a milestone.
bool is_front(const Configuration& cfg, std::size_t i) {
  const Region& r = cfg.region();
  if (cfg.at(r.cell(i)) != State::B) return false;
  bool rear = false;
  int blue = 0;
  for (std::int32_t n : r.neighbor_indices(i)) {
    if (n == Region::kExterior) continue;
    const State s = cfg.at(r.cell(static_cast<std::size_t>(n)));
    if (s == State::G) return false;
    rear = rear || s == State::R;
    blue += s == State::B;
  }
  return rear && blue >= 2;
}

}  // namespace

RenderStyle parse_style(std::string_view spec, RenderStyle s) {
  std::string item;
  std::istringstream in{std::string(spec)};
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("style item '" + item + "' lacks '='");
    const std::string k = item.substr(0, eq), v = item.substr(eq + 1);
    if (k.size() == 1 && state_from_char(k[0])) {
      s.fill[static_cast<int>(*state_from_char(k[0]))] = v;
    } else if (k == "front") {
      if (v != "on" && v != "off") throw std::invalid_argument("front must be on or off");
      s.darken_front = v == "on";
    } else if (k == "front-fill") {
      s.front_fill = v;
    } else if (k == "radius") {
      s.radius = std::stod(v);
      if (!(s.radius > 0)) throw std::invalid_argument("radius must be positive");
    } else if (k == "level") {
      s.max_level = static_cast<unsigned>(std::stoul(v));
    } else if (k == "stroke") {
      s.stroke = v;
    } else {
      throw std::invalid_argument("unknown style key '" + k + "'");
    }
  }
  return s;
}

std::size_t rendered_cell_count(const Region& region, const RenderStyle& style) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < region.size(); ++i) n += region.level(i) <= style.max_level;
  return n;
}

std::string render_svg(const Configuration& cfg, const RenderStyle& style) {
  const Region& r = cfg.region();
  const double sgn = r.orientation() == Orientation::Mirrored ? -1.0 : 1.0;
  auto side_angle = [&](int slot) { return kPi / 2 + sgn * 2 * kPi * slot / kSides; };

  // Breadth-first placement from the centre.
  std::vector<std::optional<Mobius>> place(r.size());
  place[0] = Mobius{};
  std::vector<std::size_t> queue{0};
  for (std::size_t q = 0; q < queue.size(); ++q) {
    const std::size_t x = queue[q];
    const auto nx = r.neighbor_indices(x);
    for (int k = 0; k < kSides; ++k) {
      if (nx[k] == Region::kExterior) continue;
      const auto y = static_cast<std::size_t>(nx[k]);
      if (place[y] || r.level(y) > style.max_level) continue;
      const auto ny = r.neighbor_indices(y);
      int m = 0;
      while (m < kSides && ny[m] != static_cast<std::int32_t>(x)) ++m;
      place[y] = place[x]->then(Mobius::rotation(side_angle(k)))
                     .then(Mobius::translation(kCentreDistance))
                     .then(Mobius::rotation(kPi - side_angle(m)));
      queue.push_back(y);
    }
  }

  const double R = style.radius, margin = 4.0, size = 2 * (R + margin);
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(size) << "\" height=\"" << fmt(size)
      << "\" viewBox=\"0 0 " << fmt(size) << ' ' << fmt(size) << "\">\n";
  out << "<circle cx=\"" << fmt(R + margin) << "\" cy=\"" << fmt(R + margin) << "\" r=\"" << fmt(R)
      << "\" fill=\"#ffffff\" stroke=\"#000000\"/>\n";
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (r.level(i) > style.max_level) continue;
    if (!place[i]) throw std::logic_error("cell " + to_string(r.cell(i)) + " not reached while placing tiles");
    std::string fill = style.fill[static_cast<int>(cfg.at(r.cell(i)))];
    if (style.darken_front && is_front(cfg, i)) fill = style.front_fill;
    out << "<polygon data-cell=\"" << to_string(r.cell(i)) << "\" fill=\"" << fill << "\" stroke=\"" << style.stroke
        << "\" stroke-width=\"0.5\" points=\"";
    for (int v = 0; v < kSides; ++v) {
      // Vertex between local sides v and v+1.
      const cplx z = (*place[i])(std::polar(kVertexRadius, side_angle(v) + sgn * kPi / kSides));
      out << (v ? " " : "") << fmt(R + margin + R * z.real()) << ',' << fmt(R + margin - R * z.imag());
    }
    out << "\"/>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace heptaca
