#include "heptaca/railway/coloring.hpp"

#include <stdexcept>
#include <string>

namespace heptaca::railway {

char to_char(TileColor c) { return "GBYO"[static_cast<int>(c)]; }

std::string_view substitute(TileColor c) {
  switch (c) {
    case TileColor::G: return "YBG";
    case TileColor::Y: return "YBG";
    case TileColor::O: return "YBO";
    case TileColor::B: return "BO";
  }
  return "";
}

namespace {

TileColor from_char(char ch) {
  switch (ch) {
    case 'G': return TileColor::G;
    case 'B': return TileColor::B;
    case 'Y': return TileColor::Y;
    default: return TileColor::O;
  }
}

}  // namespace

TileColor SectorColoring::at(CellId c) const {
  auto it = colors_.find(c);
  if (it == colors_.end()) throw std::out_of_range("cell " + to_string(c) + " is not in the painted subtree");
  return it->second;
}

SectorColoring paint_subtree(const Region& region, CellId root, TileColor color) {
  if (root.is_center()) throw std::invalid_argument("the central cell heads no tree");
  const bool black = region.kind(root) == NodeKind::Black;
  if (black != (color == TileColor::B)) {
    throw std::invalid_argument(std::string("colour ") + to_char(color) + " does not fit the " +
                                (black ? "black" : "white") + " node " + to_string(root));
  }
  SectorColoring sc;
  sc.levels_.push_back({root});
  sc.colors_[root] = color;
  for (unsigned level = region.level(root); level < region.max_level(); ++level) {
    std::vector<CellId> next;
    for (CellId c : sc.levels_.back()) {
      const std::string_view word = substitute(sc.colors_.at(c));
      const auto sons = region.sons(c);
      if (sons.size() != word.size()) throw std::logic_error("node arity does not match its colour");
      std::string whites;
      for (char ch : word) {
        if (ch != 'B') whites += ch;
      }
      std::size_t w = 0;
      for (const auto& s : sons) {
        const CellId son = s.value();
        sc.colors_[son] = region.kind(son) == NodeKind::Black ? TileColor::B : from_char(whites.at(w++));
        next.push_back(son);
      }
    }
    sc.levels_.push_back(std::move(next));
  }
  return sc;
}

SectorColoring paint_sector(const Region& region, TileColor root, int sector) {
  if (sector < 1 || sector > kSectors) throw std::invalid_argument("sector must be 1..7");
  CellId r = CellId::in_sector(sector, 1);
  if (root == TileColor::B) {
    for (const auto& s : region.sons(r)) {
      if (s && region.kind(*s) == NodeKind::Black) r = *s;
    }
    if (r.nu == 1) throw std::invalid_argument("region too small to paint from a black node");
  }
  return paint_subtree(region, r, root);
}

std::map<TileColor, std::size_t> census(const SectorColoring& coloring, unsigned level) {
  std::map<TileColor, std::size_t> out{{TileColor::G, 0}, {TileColor::B, 0}, {TileColor::Y, 0}, {TileColor::O, 0}};
  for (CellId c : coloring.isocline(level)) ++out[coloring.at(c)];
  return out;
}

std::vector<std::vector<CellId>> yellow_rays(const Region& region, const SectorColoring& coloring) {
  std::vector<std::vector<CellId>> rays;
  for (unsigned level = 0; level <= coloring.max_level(); ++level) {
    for (CellId c : coloring.isocline(level)) {
      if (coloring.at(c) != TileColor::Y) continue;
      if (level > 0 && coloring.at(region.father(c)) == TileColor::Y) continue;
      std::vector<CellId> ray{c};
      for (bool more = true; more;) {
        more = false;
        for (const auto& s : region.sons(ray.back())) {
          if (s && coloring.at(*s) == TileColor::Y) {
            ray.push_back(*s);
            more = true;
            break;
          }
        }
      }
      rays.push_back(std::move(ray));
    }
  }
  return rays;
}

}  // namespace heptaca::railway
