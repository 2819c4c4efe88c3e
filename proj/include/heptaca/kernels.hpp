#pragma once
// Data-parallel inner loops of the automaton.
//
// Every kernel has a scalar reference implementation and, on x86-64, an AVX2
// variant. The variant is chosen at runtime from the CPU features (override
// with HEPTACA_ISA=scalar); tests check the variants agree bit for bit.

#include <cstdint>
#include <span>
#include <string_view>

#include "heptaca/state.hpp"

namespace heptaca::kernels {

/// Lookup-table value for a context without a rule.
inline constexpr std::uint8_t kMissing = 0xFF;

/// Extra readable bytes required after `states` and after the lookup table:
/// the vector gathers load 32-bit words at byte offsets.
inline constexpr std::size_t kGatherPadding = 3;

struct GatherInput {
  /// One state per cell, followed by a W sentinel at index `cells` that all
  /// exterior slots point to, then kGatherPadding bytes.
  std::span<const std::uint8_t> states;
  /// Slot-major neighbour indices: entry k * cells + i is neighbour k of cell i.
  std::span<const std::int32_t> neighbors;
  std::size_t cells = 0;
};

enum class Isa { Scalar, Avx2 };

std::string_view to_string(Isa isa);

struct KernelSet {
  Isa isa;
  /// out[i] = packed context (self, ring) of cell i.
  void (*gather_contexts)(const GatherInput& in, std::span<PackedContext> out);
  /// out[i] = minimal rotated form of in[i].
  void (*canonicalize)(std::span<const PackedContext> in, std::span<PackedContext> out);
  /// out[i] = lut[ctx[i]]; lut has kContextSpace entries plus padding.
  void (*lookup)(std::span<const PackedContext> ctx, std::span<const std::uint8_t> lut, std::span<std::uint8_t> out);
};

const KernelSet& scalar_kernels();
/// nullptr when the build or the CPU lacks AVX2.
const KernelSet* avx2_kernels();
/// The set used by the engine.
const KernelSet& active_kernels();

}  // namespace heptaca::kernels
