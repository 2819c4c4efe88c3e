#pragma once
// The ternary heptagrid {7,3} materialized as seven Fibonacci sector trees
// around a central cell.
//
// Side numbering follows the usual convention for cells of the heptagrid:
// side 1 of a non-central cell is shared with its father, the remaining sides
// are numbered 2..7 counter-clockwise. Sons of a black node sit on sides 4, 5;
// sons of a white node on sides 3, 4, 5. Side 1 of the central cell is the
// root of sector 1, and sectors are numbered counter-clockwise.
//
// Slots in this API are 0-based: slot 0 is side 1.

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace heptaca {

inline constexpr int kSides = 7;
inline constexpr int kSectors = 7;

/// Address of a tile: the central cell, or node `nu` (1 = root) of the tree
/// spanning sector `sector` (1..7).
struct CellId {
  std::uint8_t sector = 0;  // 0 for the central cell
  std::uint64_t nu = 0;

  static constexpr CellId center() { return {}; }
  static constexpr CellId in_sector(int sector, std::uint64_t nu) {
    return {static_cast<std::uint8_t>(sector), nu};
  }
  constexpr bool is_center() const { return sector == 0; }

  friend constexpr auto operator<=>(const CellId&, const CellId&) = default;
};

/// "C" or "<sector>:<nu>".
std::string to_string(CellId c);
/// Inverse of to_string; throws std::invalid_argument.
CellId parse_cell_id(std::string_view text);

/// Image of `c` under the rotation of the tiling that maps sector s to s + k.
CellId rotate_sectors(CellId c, int k);

enum class NodeKind : std::uint8_t { White, Black };

/// Which lateral neighbour takes side 2. Mirrored reverses sides 2..7 of
/// every cell, i.e. numbers them clockwise.
enum class Orientation : std::uint8_t { CounterClockwise, Mirrored };

class ResourceLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RegionOptions {
  Orientation orientation = Orientation::CounterClockwise;
  std::size_t max_cells = 5'000'000;
};

/// Neighbour slot value; std::nullopt is the Exterior sentinel (outside the
/// materialized region, read as quiescent by the automaton).
using NeighborSlot = std::optional<CellId>;
using Neighbors = std::array<NeighborSlot, kSides>;

/// All cells of level <= max_level in the seven sectors, plus the centre.
///
/// Cells are stored in CellId order (centre, then sector by sector, then by
/// nu), so dense indices are stable and iteration is deterministic. Immutable
/// once built.
class Region {
 public:
  static constexpr std::int32_t kExterior = -1;

  unsigned max_level() const { return max_level_; }
  Orientation orientation() const { return orientation_; }
  std::size_t size() const { return cells_.size(); }
  std::span<const CellId> cells() const { return cells_; }
  const CellId& cell(std::size_t index) const { return cells_[index]; }

  bool contains(CellId c) const { return index_of(c).has_value(); }
  std::optional<std::size_t> index_of(CellId c) const;
  /// Throws std::out_of_range when c is outside the region.
  std::size_t require_index(CellId c) const;

  /// Dense neighbour indices of cell `index`, kExterior for slots outside.
  std::span<const std::int32_t, kSides> neighbor_indices(std::size_t index) const {
    return std::span<const std::int32_t, kSides>(neighbors_.data() + index * kSides, kSides);
  }
  /// Flat row-major [size() x 7] neighbour table.
  std::span<const std::int32_t> neighbor_table() const { return neighbors_; }

  Neighbors neighbors(CellId c) const;

  unsigned level(std::size_t index) const { return levels_[index]; }
  unsigned level(CellId c) const { return levels_[require_index(c)]; }
  NodeKind kind(std::size_t index) const { return kinds_[index]; }
  NodeKind kind(CellId c) const { return kinds_[require_index(c)]; }
  bool on_rim(std::size_t index) const { return index != 0 && levels_[index] == max_level_; }

  /// Father in the sector tree; sector roots have the centre as father.
  /// Throws std::invalid_argument for the centre.
  CellId father(CellId c) const;

  /// Sons in side order (2 for black, 3 for white). Sons beyond max_level are
  /// reported as Exterior.
  std::vector<NeighborSlot> sons(CellId c) const;

  /// Slots (0-based) carrying the sons of a node of the given kind.
  std::vector<int> son_slots(NodeKind kind) const;

  /// Copy with one neighbour slot overwritten. Used to inject faults when
  /// testing verify_region.
  Region with_neighbor(CellId c, int slot, NeighborSlot n) const;

 private:
  friend Region build_region(unsigned max_level, const RegionOptions& options);

  unsigned max_level_ = 0;
  Orientation orientation_ = Orientation::CounterClockwise;
  std::uint64_t per_sector_ = 0;
  std::vector<CellId> cells_;
  std::vector<std::int32_t> neighbors_;
  std::vector<std::uint8_t> levels_;
  std::vector<NodeKind> kinds_;
};

/// Cell count of a region: 1 + 7 * sum_{k <= max_level} f(2k + 1).
std::uint64_t region_cell_count(unsigned max_level);

/// Builds the region ring by ring. Throws ResourceLimitError when the cell
/// count would exceed options.max_cells.
Region build_region(unsigned max_level, const RegionOptions& options = {});

enum class ViolationKind {
  CellCount,
  MissingNeighbor,
  DuplicateNeighbor,
  Asymmetric,
  VertexDegree,
  FatherSlot,
  SonSides,
};

std::string_view to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  CellId cell;
  std::string detail;
};

struct RegionReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  std::size_t count(ViolationKind kind) const;
};

/// Checks every structural invariant of a region: cell count, seven distinct
/// neighbours for interior cells, symmetric adjacency, three tiles around
/// each interior vertex (consecutive slots are adjacent, with consistent
/// orientation), father on slot 1 and sons on the expected sides.
RegionReport verify_region(const Region& region);

/// Diagnostic dump, one line per cell: `<id> <kind> <n1> .. <n7>`, with `C`
/// for the centre and `X` for Exterior.
std::string dump_region(const Region& region);

}  // namespace heptaca
