#pragma once
// Synchronous stepping of the automaton over sparse configurations.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "heptaca/heptagrid.hpp"
#include "heptaca/kernels.hpp"
#include "heptaca/rules.hpp"
#include "heptaca/state.hpp"

namespace heptaca {

using Assignment = std::map<CellId, State>;

/// Sparse map CellId -> State over a region; absent cells are W and W is
/// never stored.
class Configuration {
 public:
  explicit Configuration(std::shared_ptr<const Region> region);
  /// Throws std::out_of_range if a key lies outside the region.
  Configuration(std::shared_ptr<const Region> region, const Assignment& assignment);

  const Region& region() const { return *region_; }
  const std::shared_ptr<const Region>& region_ptr() const { return region_; }

  State at(CellId c) const;
  /// Throws std::out_of_range outside the region.
  void set(CellId c, State s);

  const Assignment& assignment() const { return cells_; }
  std::size_t non_quiescent() const { return cells_.size(); }
  bool quiescent() const { return cells_.empty(); }

  /// One byte per region cell, in region index order.
  std::vector<std::uint8_t> dense() const;
  static Configuration from_dense(std::shared_ptr<const Region> region, std::span<const std::uint8_t> states);

  /// Equal assignments on regions of the same shape.
  friend bool operator==(const Configuration& a, const Configuration& b);

 private:
  std::shared_ptr<const Region> region_;
  Assignment cells_;
};

/// Relabels by the rotation mapping sector s to s + k.
Configuration rotate(const Configuration& c, int k);

/// A cell whose context has no rule.
struct MissingContext {
  CellId cell;
  Context context;
};

struct StepResult {
  std::optional<Configuration> next;   // empty when a rule is missing
  std::vector<MissingContext> missing; // in CellId order
  bool ok() const { return next.has_value(); }
};

enum class RunStatus { Completed, MissingRule, RimContact };

struct RunOptions {
  /// Stop when a non-W state reaches the outermost level of the region.
  bool guard_rim = true;
};

struct RunResult {
  std::vector<Configuration> trace;     // trace[0] is the initial configuration
  RunStatus status = RunStatus::Completed;
  std::vector<MissingContext> missing;  // set with RunStatus::MissingRule
  std::optional<CellId> rim_cell;       // set with RunStatus::RimContact
};

/// Non-W cells on the outermost level, in CellId order.
std::vector<CellId> rim_contacts(const Configuration& c);

/// Steps configurations on one region with one rule table. Exterior slots
/// read as W and are never updated. All cells are evaluated on the old
/// configuration; a missing rule anywhere aborts the step with no update.
class Engine {
 public:
  Engine(std::shared_ptr<const Region> region, const RuleTable& table,
         const kernels::KernelSet& kernels = kernels::active_kernels());

  StepResult step(const Configuration& c) const;
  RunResult run(const Configuration& c, std::size_t steps, const RunOptions& options = {}) const;

  /// Packed contexts of every cell, in region index order.
  std::vector<PackedContext> contexts(const Configuration& c) const;

  const Region& region() const { return *region_; }

 private:
  std::shared_ptr<const Region> region_;
  const kernels::KernelSet* kernels_;
  std::vector<std::uint8_t> lut_;
  std::vector<std::int32_t> neighbors_;  // slot-major, exterior -> sentinel index
};

StepResult step(const Configuration& c, const RuleTable& table);
RunResult run(const Configuration& c, const RuleTable& table, std::size_t steps, const RunOptions& options = {});

/// Configuration text: `C <state>` or `<sector>:<nu> <state>` per line, `#`
/// comments; omitted cells are W. Throws std::invalid_argument with the line
/// number on syntax errors.
Assignment parse_assignment(std::string_view text);
std::string format_assignment(const Assignment& a);

/// Trace text: each configuration preceded by `== t=<k> ==`.
std::string format_trace(const std::vector<Configuration>& trace);
std::vector<Assignment> parse_trace(std::string_view text);

}  // namespace heptaca
