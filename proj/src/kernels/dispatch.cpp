#include <cstdlib>
#include <string>

#include "heptaca/kernels.hpp"

namespace heptaca::kernels {

std::string_view to_string(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

const KernelSet& active_kernels() {
  static const KernelSet& chosen = [] () -> const KernelSet& {
    const char* env = std::getenv("HEPTACA_ISA");
    if (env != nullptr && std::string(env) == "scalar") return scalar_kernels();
    if (const KernelSet* v = avx2_kernels()) return *v;
    return scalar_kernels();
  }();
  return chosen;
}

}  // namespace heptaca::kernels
