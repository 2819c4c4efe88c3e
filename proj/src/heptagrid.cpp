#include "heptaca/heptagrid.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "heptaca/fib.hpp"

namespace heptaca {

std::string to_string(CellId c) {
  if (c.is_center()) return "C";
  return std::to_string(c.sector) + ":" + std::to_string(c.nu);
}

CellId parse_cell_id(std::string_view text) {
  if (text == "C") return CellId::center();
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) throw std::invalid_argument("bad cell id '" + std::string(text) + "'");
  unsigned sector = 0;
  std::uint64_t nu = 0;
  const auto s = text.substr(0, colon);
  const auto n = text.substr(colon + 1);
  auto r1 = std::from_chars(s.data(), s.data() + s.size(), sector);
  auto r2 = std::from_chars(n.data(), n.data() + n.size(), nu);
  if (r1.ec != std::errc{} || r1.ptr != s.data() + s.size() || r2.ec != std::errc{} ||
      r2.ptr != n.data() + n.size() || sector < 1 || sector > kSectors || nu < 1) {
    throw std::invalid_argument("bad cell id '" + std::string(text) + "'");
  }
  return CellId::in_sector(static_cast<int>(sector), nu);
}

CellId rotate_sectors(CellId c, int k) {
  if (c.is_center()) return c;
  const int s = ((c.sector - 1 + k) % kSectors + kSectors) % kSectors + 1;
  return CellId::in_sector(s, c.nu);
}

std::uint64_t region_cell_count(unsigned max_level) {
  return 1 + kSectors * fib::cumulative_population(max_level);
}

std::optional<std::size_t> Region::index_of(CellId c) const {
  if (c.is_center()) return 0;
  if (c.sector < 1 || c.sector > kSectors || c.nu < 1 || c.nu > per_sector_) return std::nullopt;
  return 1 + (c.sector - 1) * per_sector_ + (c.nu - 1);
}

std::size_t Region::require_index(CellId c) const {
  auto i = index_of(c);
  if (!i) throw std::out_of_range("cell " + to_string(c) + " is outside the region");
  return *i;
}

Neighbors Region::neighbors(CellId c) const {
  const auto idx = neighbor_indices(require_index(c));
  Neighbors out;
  for (int k = 0; k < kSides; ++k) {
    if (idx[k] != kExterior) out[k] = cells_[idx[k]];
  }
  return out;
}

CellId Region::father(CellId c) const {
  if (c.is_center()) throw std::invalid_argument("the central cell has no father");
  const auto i = require_index(c);
  return cells_[neighbors_[i * kSides]];
}

std::vector<int> Region::son_slots(NodeKind kind) const {
  std::vector<int> slots = kind == NodeKind::Black ? std::vector<int>{3, 4} : std::vector<int>{2, 3, 4};
  if (orientation_ == Orientation::Mirrored) {
    for (int& s : slots) s = kSides - s;
  }
  return slots;
}

std::vector<NeighborSlot> Region::sons(CellId c) const {
  if (c.is_center()) throw std::invalid_argument("the central cell is not a tree node");
  const auto i = require_index(c);
  std::vector<NeighborSlot> out;
  for (int slot : son_slots(kinds_[i])) {
    const auto n = neighbors_[i * kSides + slot];
    if (n == kExterior) {
      out.emplace_back(std::nullopt);
    } else {
      out.emplace_back(cells_[n]);
    }
  }
  return out;
}

Region Region::with_neighbor(CellId c, int slot, NeighborSlot n) const {
  if (slot < 0 || slot >= kSides) throw std::out_of_range("slot out of range");
  Region copy = *this;
  copy.neighbors_[require_index(c) * kSides + slot] =
      n ? static_cast<std::int32_t>(require_index(*n)) : kExterior;
  return copy;
}

namespace {

// Tile of the ring construction. Ring d holds the cells at edge distance d
// from the centre (level d - 1 of the sector trees); consecutive ring tiles
// share an edge, so each ring is a closed cycle listed counter-clockwise.
struct Tile {
  std::int32_t index = Region::kExterior;           // final dense index
  std::array<std::int32_t, 2> inner{-1, -1};        // father first
  int inner_count = 0;
  std::int32_t cw = -1, ccw = -1;                   // lateral neighbours (tile ids)
  std::vector<std::int32_t> outer;                  // outward neighbours, cw to ccw
};

}  // namespace

Region build_region(unsigned max_level, const RegionOptions& options) {
  const std::uint64_t total = region_cell_count(max_level);
  if (total > options.max_cells) {
    throw ResourceLimitError("region of level " + std::to_string(max_level) + " needs " + std::to_string(total) +
                             " cells, cap is " + std::to_string(options.max_cells));
  }

  Region r;
  r.max_level_ = max_level;
  r.orientation_ = options.orientation;
  r.per_sector_ = fib::cumulative_population(max_level);
  r.cells_.resize(total);
  r.neighbors_.assign(total * kSides, Region::kExterior);
  r.levels_.assign(total, 0);
  r.kinds_.assign(total, NodeKind::White);

  std::vector<Tile> tiles;
  tiles.reserve(total);
  tiles.emplace_back();
  tiles[0].index = 0;

  // Ring 1: the sector roots, each with the centre as only inner neighbour.
  std::vector<std::int32_t> ring;
  for (int s = 1; s <= kSectors; ++s) {
    Tile t;
    t.inner = {0, -1};
    t.inner_count = 1;
    t.index = static_cast<std::int32_t>(r.require_index(CellId::in_sector(s, 1)));
    r.cells_[t.index] = CellId::in_sector(s, 1);
    ring.push_back(static_cast<std::int32_t>(tiles.size()));
    tiles.push_back(std::move(t));
  }
  tiles[0].outer = ring;

  auto close_ring = [&](const std::vector<std::int32_t>& cyc) {
    const auto m = cyc.size();
    for (std::size_t i = 0; i < m; ++i) {
      tiles[cyc[i]].cw = cyc[(i + m - 1) % m];
      tiles[cyc[i]].ccw = cyc[(i + 1) % m];
    }
  };

  for (unsigned level = 1; level <= max_level; ++level) {
    close_ring(ring);
    const auto m = ring.size();
    // corner[i] sits between ring[i] and ring[i+1] and is a son of ring[i+1].
    std::vector<std::int32_t> corner(m);
    std::vector<std::vector<std::int32_t>> privates(m);
    std::array<std::uint64_t, kSectors + 1> next_nu{};
    next_nu.fill(fib::cumulative_population(level - 1) + 1);

    for (std::size_t i = 0; i < m; ++i) {
      const auto t = ring[i];
      const int outward = kSides - 2 - tiles[t].inner_count;
      for (int k = 0; k < outward - 2; ++k) {
        Tile p;
        p.inner = {t, -1};
        p.inner_count = 1;
        privates[i].push_back(static_cast<std::int32_t>(tiles.size()));
        tiles.push_back(std::move(p));
      }
      Tile c;
      c.inner = {ring[(i + 1) % m], t};
      c.inner_count = 2;
      corner[i] = static_cast<std::int32_t>(tiles.size());
      tiles.push_back(std::move(c));
    }

    std::vector<std::int32_t> next;
    next.reserve(m * 3);
    for (std::size_t i = 0; i < m; ++i) {
      const auto t = ring[i];
      const auto cw_corner = corner[(i + m - 1) % m];
      auto& outer = tiles[t].outer;
      outer.push_back(cw_corner);
      outer.insert(outer.end(), privates[i].begin(), privates[i].end());
      outer.push_back(corner[i]);
      // sons in left-to-right order: the cw corner, then the private tiles
      const int sector = r.cells_[tiles[t].index].sector;
      auto adopt = [&](std::int32_t son) {
        const CellId id = CellId::in_sector(sector, next_nu[sector]++);
        const auto idx = static_cast<std::int32_t>(r.require_index(id));
        tiles[son].index = idx;
        r.cells_[idx] = id;
        r.levels_[idx] = static_cast<std::uint8_t>(level);
        r.kinds_[idx] = tiles[son].inner_count == 2 ? NodeKind::Black : NodeKind::White;
        next.push_back(son);
      };
      adopt(cw_corner);
      for (auto p : privates[i]) adopt(p);
    }
    ring = std::move(next);
  }
  close_ring(ring);

  // Root-level kinds: roots have one inner neighbour.
  for (std::size_t i = 1; i < r.cells_.size(); ++i) {
    if (r.levels_[i] == 0) r.kinds_[i] = NodeKind::White;
  }

  auto idx_of = [&](std::int32_t tile) { return tile < 0 ? Region::kExterior : tiles[tile].index; };
  for (const Tile& t : tiles) {
    std::array<std::int32_t, kSides> slots;
    slots.fill(Region::kExterior);
    if (t.index == 0) {
      for (int k = 0; k < kSides; ++k) slots[k] = idx_of(t.outer[k]);
    } else if (t.inner_count == 1) {
      // father, cw lateral, four outward tiles, ccw lateral
      slots[0] = idx_of(t.inner[0]);
      slots[1] = idx_of(t.cw);
      for (std::size_t k = 0; k < t.outer.size(); ++k) slots[2 + k] = idx_of(t.outer[k]);
      slots[6] = idx_of(t.ccw);
    } else {
      // father (ccw inner), cw inner, cw lateral, three outward tiles, ccw lateral
      slots[0] = idx_of(t.inner[0]);
      slots[1] = idx_of(t.inner[1]);
      slots[2] = idx_of(t.cw);
      for (std::size_t k = 0; k < t.outer.size(); ++k) slots[3 + k] = idx_of(t.outer[k]);
      slots[6] = idx_of(t.ccw);
    }
    if (options.orientation == Orientation::Mirrored) std::reverse(slots.begin() + 1, slots.end());
    std::copy(slots.begin(), slots.end(), r.neighbors_.begin() + t.index * kSides);
  }
  return r;
}

std::string_view to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::CellCount: return "cell-count";
    case ViolationKind::MissingNeighbor: return "missing-neighbor";
    case ViolationKind::DuplicateNeighbor: return "duplicate-neighbor";
    case ViolationKind::Asymmetric: return "asymmetric";
    case ViolationKind::VertexDegree: return "vertex-degree";
    case ViolationKind::FatherSlot: return "father-slot";
    case ViolationKind::SonSides: return "son-sides";
  }
  return "?";
}

std::size_t RegionReport::count(ViolationKind kind) const {
  return static_cast<std::size_t>(
      std::count_if(violations.begin(), violations.end(), [kind](const Violation& v) { return v.kind == kind; }));
}

RegionReport verify_region(const Region& region) {
  RegionReport rep;
  auto flag = [&](ViolationKind k, std::size_t i, std::string detail) {
    rep.violations.push_back({k, region.cell(i), std::move(detail)});
  };
  const auto n = region.size();
  if (n != region_cell_count(region.max_level())) {
    rep.violations.push_back({ViolationKind::CellCount, CellId::center(),
                              "expected " + std::to_string(region_cell_count(region.max_level())) + ", have " +
                                  std::to_string(n)});
  }
  auto slot_of = [&](std::size_t cell, std::int32_t target) -> int {
    const auto nb = region.neighbor_indices(cell);
    for (int k = 0; k < kSides; ++k) {
      if (nb[k] == target) return k;
    }
    return -1;
  };

  for (std::size_t i = 0; i < n; ++i) {
    const auto nb = region.neighbor_indices(i);
    const bool interior = !region.on_rim(i);
    for (int k = 0; k < kSides; ++k) {
      if (nb[k] == Region::kExterior) {
        if (interior) flag(ViolationKind::MissingNeighbor, i, "slot " + std::to_string(k + 1) + " is exterior");
        continue;
      }
      for (int j = k + 1; j < kSides; ++j) {
        if (nb[j] == nb[k]) {
          flag(ViolationKind::DuplicateNeighbor, i,
               "slots " + std::to_string(k + 1) + " and " + std::to_string(j + 1) + " both hold " +
                   to_string(region.cell(nb[k])));
        }
      }
      if (slot_of(nb[k], static_cast<std::int32_t>(i)) < 0) {
        flag(ViolationKind::Asymmetric, i, "lists " + to_string(region.cell(nb[k])) + " which does not list it back");
      }
    }
    // Around each vertex of cell i: neighbours on slots k and k+1 must be
    // adjacent, and around the slot-k neighbour, i follows the slot-(k+1)
    // neighbour. Anything else means more than three tiles meet there.
    for (int k = 0; k < kSides; ++k) {
      const auto a = nb[k];
      const auto b = nb[(k + 1) % kSides];
      if (a == Region::kExterior || b == Region::kExterior) continue;
      const int pos = slot_of(a, b);
      const bool ok = pos >= 0 && region.neighbor_indices(a)[(pos + 1) % kSides] == static_cast<std::int32_t>(i);
      if (!ok) {
        flag(ViolationKind::VertexDegree, i,
             "vertex between slots " + std::to_string(k + 1) + " and " + std::to_string((k + 1) % kSides + 1) +
                 " is not shared by exactly three tiles");
      }
    }
    if (i == 0) {
      for (int k = 0; k < kSides; ++k) {
        if (nb[k] == Region::kExterior || region.cell(nb[k]) != CellId::in_sector(k + 1, 1)) {
          if (region.orientation() == Orientation::CounterClockwise) {
            flag(ViolationKind::FatherSlot, i, "slot " + std::to_string(k + 1) + " is not the root of sector " +
                                                   std::to_string(k + 1));
          }
        }
      }
      continue;
    }
    const CellId c = region.cell(i);
    const auto f = nb[0];
    const bool father_ok = f != Region::kExterior &&
                           (region.level(i) == 0 ? f == 0
                                                 : region.cell(f).sector == c.sector &&
                                                       region.level(static_cast<std::size_t>(f)) + 1 == region.level(i));
    if (!father_ok) flag(ViolationKind::FatherSlot, i, "slot 1 is not the father");
    if (region.level(i) < region.max_level()) {
      for (int slot : region.son_slots(region.kind(i))) {
        const auto s = nb[slot];
        if (s == Region::kExterior || region.neighbor_indices(s)[0] != static_cast<std::int32_t>(i)) {
          flag(ViolationKind::SonSides, i, "side " + std::to_string(slot + 1) + " does not hold a son");
        }
      }
    }
  }
  return rep;
}

std::string dump_region(const Region& region) {
  std::ostringstream out;
  for (std::size_t i = 0; i < region.size(); ++i) {
    out << to_string(region.cell(i)) << ' ';
    if (i == 0) {
      out << "center";
    } else {
      out << (region.kind(i) == NodeKind::Black ? "black" : "white");
    }
    for (auto n : region.neighbor_indices(i)) {
      out << ' ' << (n == Region::kExterior ? std::string("X") : to_string(region.cell(n)));
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace heptaca
