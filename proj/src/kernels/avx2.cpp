#include "heptaca/kernels.hpp"

#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))
#define HEPTACA_HAVE_AVX2 1
#include <immintrin.h>
#else
#define HEPTACA_HAVE_AVX2 0
#endif

namespace heptaca::kernels {

#if HEPTACA_HAVE_AVX2
namespace {

#define HEPTACA_AVX2 __attribute__((target("avx2")))

HEPTACA_AVX2 void gather_avx2(const GatherInput& in, std::span<PackedContext> out) {
  const std::size_t n = in.cells;
  const auto* base = reinterpret_cast<const int*>(in.states.data());
  const __m256i byte_mask = _mm256_set1_epi32(0xFF);
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m128i self8 = _mm_loadl_epi64(reinterpret_cast<const __m128i*>(in.states.data() + i));
    __m256i acc = _mm256_slli_epi32(_mm256_cvtepu8_epi32(self8), 14);
    for (int k = 0; k < 7; ++k) {
      const __m256i idx = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(in.neighbors.data() + k * n + i));
      __m256i v = _mm256_and_si256(_mm256_i32gather_epi32(base, idx, 1), byte_mask);
      v = _mm256_sll_epi32(v, _mm_cvtsi32_si128(12 - 2 * k));
      acc = _mm256_or_si256(acc, v);
    }
    // 8 x u32 -> 8 x u16 (values fit in 16 bits)
    const __m256i packed = _mm256_permute4x64_epi64(_mm256_packus_epi32(acc, _mm256_setzero_si256()), 0xD8);
    _mm_storeu_si128(reinterpret_cast<__m128i*>(out.data() + i), _mm256_castsi256_si128(packed));
  }
  for (; i < n; ++i) {
    unsigned p = static_cast<unsigned>(in.states[i]) << 14;
    for (int k = 0; k < 7; ++k) p |= static_cast<unsigned>(in.states[in.neighbors[k * n + i]]) << (12 - 2 * k);
    out[i] = static_cast<PackedContext>(p);
  }
}

HEPTACA_AVX2 void canonicalize_avx2(std::span<const PackedContext> in, std::span<PackedContext> out) {
  const std::size_t n = in.size();
  const __m256i ring_mask = _mm256_set1_epi16(static_cast<short>(kRingMask));
  const __m256i self_mask = _mm256_set1_epi16(static_cast<short>(0xC000));
  std::size_t i = 0;
  for (; i + 16 <= n; i += 16) {
    const __m256i ctx = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(in.data() + i));
    __m256i r = _mm256_and_si256(ctx, ring_mask);
    __m256i best = r;
    for (int k = 1; k < 7; ++k) {
      r = _mm256_and_si256(_mm256_or_si256(_mm256_slli_epi16(r, 2), _mm256_srli_epi16(r, 12)), ring_mask);
      best = _mm256_min_epu16(best, r);
    }
    const __m256i res = _mm256_or_si256(_mm256_and_si256(ctx, self_mask), best);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out.data() + i), res);
  }
  for (; i < n; ++i) out[i] = minimal_rotated(in[i]);
}

HEPTACA_AVX2 void lookup_avx2(std::span<const PackedContext> ctx, std::span<const std::uint8_t> lut,
                              std::span<std::uint8_t> out) {
  const std::size_t n = ctx.size();
  const auto* base = reinterpret_cast<const int*>(lut.data());
  const __m256i byte_mask = _mm256_set1_epi32(0xFF);
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256i idx = _mm256_cvtepu16_epi32(_mm_loadu_si128(reinterpret_cast<const __m128i*>(ctx.data() + i)));
    const __m256i v = _mm256_and_si256(_mm256_i32gather_epi32(base, idx, 1), byte_mask);
    // 8 x u32 -> 8 x u8
    const __m256i w16 = _mm256_permute4x64_epi64(_mm256_packus_epi32(v, v), 0xD8);
    const __m128i w8 = _mm_packus_epi16(_mm256_castsi256_si128(w16), _mm256_castsi256_si128(w16));
    _mm_storel_epi64(reinterpret_cast<__m128i*>(out.data() + i), w8);
  }
  for (; i < n; ++i) out[i] = lut[ctx[i]];
}

}  // namespace

const KernelSet* avx2_kernels() {
  static const KernelSet set{Isa::Avx2, gather_avx2, canonicalize_avx2, lookup_avx2};
  static const bool supported = __builtin_cpu_supports("avx2");
  return supported ? &set : nullptr;
}

#else

const KernelSet* avx2_kernels() { return nullptr; }

#endif

}  // namespace heptaca::kernels
