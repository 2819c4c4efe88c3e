#pragma once

#include <filesystem>
#include <memory>
#include <string>

#include "heptaca/heptagrid.hpp"
#include "heptaca/rules.hpp"

namespace testing {

inline std::filesystem::path data_path(const std::string& rel) { return std::filesystem::path(HEPTACA_DATA_DIR) / rel; }

inline const heptaca::RuleTable& fixture() {
  static const heptaca::RuleTable t = heptaca::load_rules_file(data_path("rules_4state.txt"));
  return t;
}

// Regions are immutable, so tests share them.
inline std::shared_ptr<const heptaca::Region> region(unsigned level,
                                                     heptaca::Orientation o = heptaca::Orientation::CounterClockwise) {
  static std::shared_ptr<const heptaca::Region> cache[2][10];
  auto& slot = cache[o == heptaca::Orientation::Mirrored][level];
  if (!slot) slot = std::make_shared<const heptaca::Region>(heptaca::build_region(level, {o}));
  return slot;
}

}  // namespace testing
