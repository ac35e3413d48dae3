// SPDX-License-Identifier: Apache-2.0

// Scalar reference kernels and the runtime dispatch table.

#include "kernels_internal.hpp"

#include <cstdlib>
#include <string>

namespace isoclean::kernels {

namespace {

void scalar_classify_ge(const double* f, std::size_t n, double iso, std::uint8_t* mask) {
    for (std::size_t i = 0; i < n; ++i) mask[i] = f[i] >= iso ? 1 : 0;
}

void scalar_classify_le(const double* f, std::size_t n, double iso, std::uint8_t* mask) {
    for (std::size_t i = 0; i < n; ++i) mask[i] = f[i] <= iso ? 1 : 0;
}

MinMax scalar_minmax(const double* f, std::size_t n) {
    MinMax r{f[0], f[0]};
    for (std::size_t i = 1; i < n; ++i) {
        if (f[i] < r.min) r.min = f[i];
        if (f[i] > r.max) r.max = f[i];
    }
    return r;
}

std::uint64_t scalar_count_active_cubes_row(const std::uint8_t* r00, const std::uint8_t* r10,
                                            const std::uint8_t* r01, const std::uint8_t* r11,
                                            std::size_t cubes) {
    std::uint64_t count = 0;
    for (std::size_t i = 0; i < cubes; ++i) {
        const std::uint8_t any = r00[i] | r00[i + 1] | r10[i] | r10[i + 1] | r01[i] |
                                 r01[i + 1] | r11[i] | r11[i + 1];
        const std::uint8_t all = r00[i] & r00[i + 1] & r10[i] & r10[i + 1] & r01[i] &
                                 r01[i + 1] & r11[i] & r11[i + 1];
        count += static_cast<std::uint8_t>(any & static_cast<std::uint8_t>(all ^ 1));
    }
    return count;
}

void scalar_cube_configs_row(const std::uint8_t* r00, const std::uint8_t* r10,
                             const std::uint8_t* r01, const std::uint8_t* r11,
                             std::size_t cubes, std::uint8_t* configs) {
    for (std::size_t i = 0; i < cubes; ++i) {
        const std::uint8_t inside =
            static_cast<std::uint8_t>(r00[i] | r00[i + 1] << 1 | r10[i + 1] << 2 |
                                      r10[i] << 3 | r01[i] << 4 | r01[i + 1] << 5 |
                                      r11[i + 1] << 6 | r11[i] << 7);
        configs[i] = static_cast<std::uint8_t>(inside ^ 0xFF);
    }
}

struct Dispatch {
    OpTable ops;
    Level level;

    Dispatch() {
        Level want = best_supported_level();
        if (const char* env = std::getenv("ISOCLEAN_SIMD")) {
            const std::string v(env);
            if (v == "scalar") want = Level::Scalar;
            // "avx2" keeps the CPUID-selected best; anything else is ignored.
        }
        select(want);
    }

    void select(Level want) {
        if (want > best_supported_level()) want = best_supported_level();
        level = want;
        switch (level) {
#if defined(ISOCLEAN_HAVE_AVX2)
            case Level::Avx2:
                ops = avx2_ops();
                break;
#endif
            default:
                level = Level::Scalar;
                ops = scalar_ops();
                break;
        }
    }
};

Dispatch& dispatch() {
    static Dispatch d;
    return d;
}

}  // namespace

const OpTable& scalar_ops() {
    static const OpTable table{scalar_classify_ge, scalar_classify_le, scalar_minmax,
                               scalar_count_active_cubes_row, scalar_cube_configs_row};
    return table;
}

Level best_supported_level() {
#if defined(ISOCLEAN_HAVE_AVX2)
    if (__builtin_cpu_supports("avx2")) return Level::Avx2;
#endif
    return Level::Scalar;
}

Level active_level() { return dispatch().level; }

void force_level(Level level) { dispatch().select(level); }

std::string_view level_name(Level level) {
    switch (level) {
        case Level::Scalar: return "scalar";
        case Level::Avx2: return "avx2";
    }
    return "?";
}

void classify_ge(const double* f, std::size_t n, double iso, std::uint8_t* mask) {
    dispatch().ops.classify_ge(f, n, iso, mask);
}

void classify_le(const double* f, std::size_t n, double iso, std::uint8_t* mask) {
    dispatch().ops.classify_le(f, n, iso, mask);
}

MinMax minmax(const double* f, std::size_t n) { return dispatch().ops.minmax(f, n); }

std::uint64_t count_active_cubes_row(const std::uint8_t* r00, const std::uint8_t* r10,
                                     const std::uint8_t* r01, const std::uint8_t* r11,
                                     std::size_t cubes) {
    return dispatch().ops.count_active_cubes_row(r00, r10, r01, r11, cubes);
}

void cube_configs_row(const std::uint8_t* r00, const std::uint8_t* r10,
                      const std::uint8_t* r01, const std::uint8_t* r11, std::size_t cubes,
                      std::uint8_t* configs) {
    dispatch().ops.cube_configs_row(r00, r10, r01, r11, cubes, configs);
}

}  // namespace isoclean::kernels
