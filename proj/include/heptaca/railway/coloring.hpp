#pragma once
// Colouring of a Fibonacci sector by the substitution
//   G -> YBG, Y -> YBG, O -> YBO, B -> BO
// where B marks black nodes and G, Y, O white ones. Yellow tiles line up
// along verticals; the cells of one level of a sector form an isocline.

#include <cstddef>
#include <cstdint>
#include <map>
#include <string_view>
#include <vector>

#include "heptaca/heptagrid.hpp"

namespace heptaca::railway {

enum class TileColor : std::uint8_t { G, B, Y, O };

char to_char(TileColor c);
/// Colours of the sons, in side order.
std::string_view substitute(TileColor c);

/// Colouring of the subtree below one node; levels count from that node.
class SectorColoring {
 public:
  CellId root() const { return levels_.front().front(); }
  /// Deepest painted level, relative to the root.
  unsigned max_level() const { return static_cast<unsigned>(levels_.size() - 1); }
  bool contains(CellId c) const { return colors_.contains(c); }
  /// Throws std::out_of_range for cells outside the painted subtree.
  TileColor at(CellId c) const;
  /// Cells of one relative level, in node order.
  const std::vector<CellId>& isocline(unsigned level) const { return levels_.at(level); }

 private:
  friend SectorColoring paint_subtree(const Region&, CellId, TileColor);
  std::vector<std::vector<CellId>> levels_;
  std::map<CellId, TileColor> colors_;
};

/// Paints the subtree rooted at `root` down to the rim. The root colour must
/// match its kind: B for a black node, G, Y or O for a white one
/// (std::invalid_argument otherwise). Sons take the substitution word of
/// their father: the black son takes the B, the white sons take the
/// remaining letters in side order.
SectorColoring paint_subtree(const Region& region, CellId root, TileColor color);

/// Paints sector `sector` from its root. Sector roots are white; with
/// root colour B the black son of the sector root is painted instead.
SectorColoring paint_sector(const Region& region, TileColor root = TileColor::G, int sector = 1);

/// Colour counts on one level.
std::map<TileColor, std::size_t> census(const SectorColoring& coloring, unsigned level);

/// Yellow verticals: chains of yellow father/son tiles, from a yellow tile
/// whose father is not yellow down to max_level.
std::vector<std::vector<CellId>> yellow_rays(const Region& region, const SectorColoring& coloring);

}  // namespace heptaca::railway
