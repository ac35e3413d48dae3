// SPDX-License-Identifier: Apache-2.0

// AVX2 kernel variants. This translation unit is the only one built with
// -mavx2; callers reach it through the dispatch table after a CPUID check.

#include "kernels_internal.hpp"

#if defined(ISOCLEAN_HAVE_AVX2)

#include <immintrin.h>

#include <array>
#include <cstring>

namespace isoclean::kernels {

namespace {

// Expands an 8-bit compare mask into eight 0/1 bytes.
constexpr std::array<std::uint64_t, 256> make_byte_lut() {
    std::array<std::uint64_t, 256> lut{};
    for (int m = 0; m < 256; ++m) {
        std::uint64_t v = 0;
        for (int b = 0; b < 8; ++b)
            if (m & (1 << b)) v |= std::uint64_t{1} << (8 * b);
        lut[static_cast<std::size_t>(m)] = v;
    }
    return lut;
}

constexpr auto kByteLut = make_byte_lut();

template <int Cmp>
void classify_cmp(const double* f, std::size_t n, double iso, std::uint8_t* mask) {
    const __m256d viso = _mm256_set1_pd(iso);
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        const __m256d a = _mm256_loadu_pd(f + i);
        const __m256d b = _mm256_loadu_pd(f + i + 4);
        const int lo = _mm256_movemask_pd(_mm256_cmp_pd(a, viso, Cmp));
        const int hi = _mm256_movemask_pd(_mm256_cmp_pd(b, viso, Cmp));
        const std::uint64_t bytes = kByteLut[static_cast<std::size_t>(lo | (hi << 4))];
        std::memcpy(mask + i, &bytes, 8);
    }
    for (; i < n; ++i) {
        const bool in = Cmp == _CMP_GE_OQ ? f[i] >= iso : f[i] <= iso;
        mask[i] = in ? 1 : 0;
    }
}

void avx2_classify_ge(const double* f, std::size_t n, double iso, std::uint8_t* mask) {
    classify_cmp<_CMP_GE_OQ>(f, n, iso, mask);
}

void avx2_classify_le(const double* f, std::size_t n, double iso, std::uint8_t* mask) {
    classify_cmp<_CMP_LE_OQ>(f, n, iso, mask);
}

MinMax avx2_minmax(const double* f, std::size_t n) {
    std::size_t i = 0;
    __m256d vmin = _mm256_set1_pd(f[0]);
    __m256d vmax = vmin;
    for (; i + 4 <= n; i += 4) {
        const __m256d v = _mm256_loadu_pd(f + i);
        vmin = _mm256_min_pd(vmin, v);
        vmax = _mm256_max_pd(vmax, v);
    }
    alignas(32) double lo[4], hi[4];
    _mm256_store_pd(lo, vmin);
    _mm256_store_pd(hi, vmax);
    MinMax r{lo[0], hi[0]};
    for (int k = 1; k < 4; ++k) {
        if (lo[k] < r.min) r.min = lo[k];
        if (hi[k] > r.max) r.max = hi[k];
    }
    for (; i < n; ++i) {
        if (f[i] < r.min) r.min = f[i];
        if (f[i] > r.max) r.max = f[i];
    }
    return r;
}

std::uint64_t avx2_count_active_cubes_row(const std::uint8_t* r00, const std::uint8_t* r10,
                                          const std::uint8_t* r01, const std::uint8_t* r11,
                                          std::size_t cubes) {
    const __m256i one = _mm256_set1_epi8(1);
    const __m256i zero = _mm256_setzero_si256();
    __m256i acc = zero;
    std::size_t i = 0;
    for (; i + 32 <= cubes; i += 32) {
        const __m256i a0 = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(r00 + i));
        const __m256i a1 = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(r00 + i + 1));
        const __m256i b0 = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(r10 + i));
        const __m256i b1 = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(r10 + i + 1));
        const __m256i c0 = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(r01 + i));
        const __m256i c1 = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(r01 + i + 1));
        const __m256i d0 = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(r11 + i));
        const __m256i d1 = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(r11 + i + 1));
        const __m256i any = _mm256_or_si256(
            _mm256_or_si256(_mm256_or_si256(a0, a1), _mm256_or_si256(b0, b1)),
            _mm256_or_si256(_mm256_or_si256(c0, c1), _mm256_or_si256(d0, d1)));
        const __m256i all = _mm256_and_si256(
            _mm256_and_si256(_mm256_and_si256(a0, a1), _mm256_and_si256(b0, b1)),
            _mm256_and_si256(_mm256_and_si256(c0, c1), _mm256_and_si256(d0, d1)));
        const __m256i active = _mm256_and_si256(any, _mm256_xor_si256(all, one));
        acc = _mm256_add_epi64(acc, _mm256_sad_epu8(active, zero));
    }
    alignas(32) std::uint64_t lanes[4];
    _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), acc);
    std::uint64_t count = lanes[0] + lanes[1] + lanes[2] + lanes[3];
    if (i < cubes) count += scalar_ops().count_active_cubes_row(r00 + i, r10 + i, r01 + i,
                                                                r11 + i, cubes - i);
    return count;
}

void avx2_cube_configs_row(const std::uint8_t* r00, const std::uint8_t* r10,
                           const std::uint8_t* r01, const std::uint8_t* r11,
                           std::size_t cubes, std::uint8_t* configs) {
    const __m256i ones = _mm256_set1_epi8(static_cast<char>(0xFF));
    std::size_t i = 0;
    // Corner bytes hold 0/1, so epi16 shifts by < 8 cannot leak across the
    // byte boundary.
    for (; i + 32 <= cubes; i += 32) {
        const __m256i c0 = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(r00 + i));
        const __m256i c1 = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(r00 + i + 1));
        const __m256i c2 = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(r10 + i + 1));
        const __m256i c3 = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(r10 + i));
        const __m256i c4 = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(r01 + i));
        const __m256i c5 = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(r01 + i + 1));
        const __m256i c6 = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(r11 + i + 1));
        const __m256i c7 = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(r11 + i));
        __m256i inside = c0;
        inside = _mm256_or_si256(inside, _mm256_slli_epi16(c1, 1));
        inside = _mm256_or_si256(inside, _mm256_slli_epi16(c2, 2));
        inside = _mm256_or_si256(inside, _mm256_slli_epi16(c3, 3));
        inside = _mm256_or_si256(inside, _mm256_slli_epi16(c4, 4));
        inside = _mm256_or_si256(inside, _mm256_slli_epi16(c5, 5));
        inside = _mm256_or_si256(inside, _mm256_slli_epi16(c6, 6));
        inside = _mm256_or_si256(inside, _mm256_slli_epi16(c7, 7));
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(configs + i),
                            _mm256_xor_si256(inside, ones));
    }
    if (i < cubes)
        scalar_ops().cube_configs_row(r00 + i, r10 + i, r01 + i, r11 + i, cubes - i,
                                      configs + i);
}

}  // namespace

const OpTable& avx2_ops() {
    static const OpTable table{avx2_classify_ge, avx2_classify_le, avx2_minmax,
                               avx2_count_active_cubes_row, avx2_cube_configs_row};
    return table;
}

}  // namespace isoclean::kernels

#endif  // ISOCLEAN_HAVE_AVX2
