#include "heptaca/kernels.hpp"

namespace heptaca::kernels {
namespace {

void gather_scalar(const GatherInput& in, std::span<PackedContext> out) {
  const std::size_t n = in.cells;
  for (std::size_t i = 0; i < n; ++i) {
    unsigned p = static_cast<unsigned>(in.states[i]) << 14;
    for (int k = 0; k < 7; ++k) {
      p |= static_cast<unsigned>(in.states[in.neighbors[k * n + i]]) << (12 - 2 * k);
    }
    out[i] = static_cast<PackedContext>(p);
  }
}

void canonicalize_scalar(std::span<const PackedContext> in, std::span<PackedContext> out) {
  for (std::size_t i = 0; i < in.size(); ++i) out[i] = minimal_rotated(in[i]);
}

void lookup_scalar(std::span<const PackedContext> ctx, std::span<const std::uint8_t> lut,
                   std::span<std::uint8_t> out) {
  for (std::size_t i = 0; i < ctx.size(); ++i) out[i] = lut[ctx[i]];
}

}  // namespace

const KernelSet& scalar_kernels() {
  static const KernelSet set{Isa::Scalar, gather_scalar, canonicalize_scalar, lookup_scalar};
  return set;
}

}  // namespace heptaca::kernels
