#include "heptaca/engine.hpp"

#include <sstream>
#include <stdexcept>

namespace heptaca {

Configuration::Configuration(std::shared_ptr<const Region> region) : region_(std::move(region)) {
  if (!region_) throw std::invalid_argument("configuration needs a region");
}

Configuration::Configuration(std::shared_ptr<const Region> region, const Assignment& assignment)
    : Configuration(std::move(region)) {
  for (const auto& [cell, s] : assignment) set(cell, s);
}

State Configuration::at(CellId c) const {
  auto it = cells_.find(c);
  return it == cells_.end() ? State::W : it->second;
}

void Configuration::set(CellId c, State s) {
  if (!region_->contains(c)) throw std::out_of_range("cell " + to_string(c) + " is outside the region");
  if (s == State::W) {
    cells_.erase(c);
  } else {
    cells_[c] = s;
  }
}

std::vector<std::uint8_t> Configuration::dense() const {
  std::vector<std::uint8_t> out(region_->size(), 0);
  for (const auto& [cell, s] : cells_) out[*region_->index_of(cell)] = static_cast<std::uint8_t>(s);
  return out;
}

Configuration Configuration::from_dense(std::shared_ptr<const Region> region, std::span<const std::uint8_t> states) {
  Configuration c(std::move(region));
  auto hint = c.cells_.end();
  for (std::size_t i = 0; i < c.region_->size(); ++i) {
    if (states[i] != 0) hint = c.cells_.emplace_hint(hint, c.region_->cell(i), static_cast<State>(states[i]));
  }
  return c;
}

bool operator==(const Configuration& a, const Configuration& b) {
  return a.region_->max_level() == b.region_->max_level() &&
         a.region_->orientation() == b.region_->orientation() && a.cells_ == b.cells_;
}

Configuration rotate(const Configuration& c, int k) {
  Configuration out(c.region_ptr());
  for (const auto& [cell, s] : c.assignment()) out.set(rotate_sectors(cell, k), s);
  return out;
}

std::vector<CellId> rim_contacts(const Configuration& c) {
  std::vector<CellId> out;
  const Region& r = c.region();
  for (const auto& [cell, s] : c.assignment()) {
    if (r.on_rim(*r.index_of(cell))) out.push_back(cell);
  }
  return out;
}

Engine::Engine(std::shared_ptr<const Region> region, const RuleTable& table, const kernels::KernelSet& kernels)
    : region_(std::move(region)), kernels_(&kernels), lut_(table.dense_lookup_table()) {
  const std::size_t n = region_->size();
  neighbors_.resize(n * kSides);
  const auto flat = region_->neighbor_table();
  for (std::size_t i = 0; i < n; ++i) {
    for (int k = 0; k < kSides; ++k) {
      const auto v = flat[i * kSides + k];
      neighbors_[k * n + i] = v == Region::kExterior ? static_cast<std::int32_t>(n) : v;
    }
  }
}

std::vector<PackedContext> Engine::contexts(const Configuration& c) const {
  const std::size_t n = region_->size();
  std::vector<std::uint8_t> states(n + 1 + kernels::kGatherPadding, 0);
  for (const auto& [cell, s] : c.assignment()) states[*region_->index_of(cell)] = static_cast<std::uint8_t>(s);
  std::vector<PackedContext> ctx(n);
  kernels_->gather_contexts({states, neighbors_, n}, ctx);
  return ctx;
}

StepResult Engine::step(const Configuration& c) const {
  const std::size_t n = region_->size();
  const auto ctx = contexts(c);
  std::vector<std::uint8_t> next(n);
  kernels_->lookup(ctx, lut_, next);

  StepResult result;
  for (std::size_t i = 0; i < n; ++i) {
    if (next[i] == kernels::kMissing) result.missing.push_back({region_->cell(i), Context::unpack(ctx[i])});
  }
  if (result.missing.empty()) result.next = Configuration::from_dense(region_, next);
  return result;
}

RunResult Engine::run(const Configuration& c, std::size_t steps, const RunOptions& options) const {
  RunResult out;
  out.trace.push_back(c);
  auto check_rim = [&](const Configuration& cfg) {
    if (!options.guard_rim) return false;
    auto hits = rim_contacts(cfg);
    if (hits.empty()) return false;
    out.status = RunStatus::RimContact;
    out.rim_cell = hits.front();
    return true;
  };
  if (check_rim(c)) return out;
  for (std::size_t t = 0; t < steps; ++t) {
    StepResult s = step(out.trace.back());
    if (!s.ok()) {
      out.status = RunStatus::MissingRule;
      out.missing = std::move(s.missing);
      return out;
    }
    out.trace.push_back(std::move(*s.next));
    if (check_rim(out.trace.back())) return out;
  }
  return out;
}

StepResult step(const Configuration& c, const RuleTable& table) { return Engine(c.region_ptr(), table).step(c); }

RunResult run(const Configuration& c, const RuleTable& table, std::size_t steps, const RunOptions& options) {
  return Engine(c.region_ptr(), table).run(c, steps, options);
}

Assignment parse_assignment(std::string_view text) {
  Assignment a;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream fields(line);
    std::string id, state, extra;
    if (!(fields >> id)) continue;
    try {
      if (!(fields >> state) || (fields >> extra)) throw std::invalid_argument("expected '<cell> <state>'");
      const CellId cell = parse_cell_id(id);
      const State s = parse_state(state);
      if (s == State::W) {
        a.erase(cell);
      } else {
        a[cell] = s;
      }
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return a;
}

std::string format_assignment(const Assignment& a) {
  std::string out;
  for (const auto& [cell, s] : a) {
    out += to_string(cell);
    out += ' ';
    out += to_char(s);
    out += '\n';
  }
  return out;
}

std::string format_trace(const std::vector<Configuration>& trace) {
  std::string out;
  for (std::size_t t = 0; t < trace.size(); ++t) {
    out += "== t=" + std::to_string(t) + " ==\n";
    out += format_assignment(trace[t].assignment());
  }
  return out;
}

std::vector<Assignment> parse_trace(std::string_view text) {
  std::vector<Assignment> out;
  std::string block;
  bool open = false;
  std::istringstream in{std::string(text)};
  std::string line;
  auto flush = [&] {
    if (open) out.push_back(parse_assignment(block));
    block.clear();
  };
  while (std::getline(in, line)) {
    if (line.rfind("== t=", 0) == 0) {
      flush();
      const auto k = std::stoul(line.substr(5));
      if (k != out.size()) throw std::invalid_argument("trace header t=" + std::to_string(k) + " out of sequence");
      open = true;
      continue;
    }
    if (!open && line.find_first_not_of(" \t\r") != std::string::npos && line[0] != '#') {
      throw std::invalid_argument("trace data before the first header");
    }
    block += line;
    block += '\n';
  }
  flush();
  return out;
}

}  // namespace heptaca
