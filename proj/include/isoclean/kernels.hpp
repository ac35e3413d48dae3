// SPDX-License-Identifier: Apache-2.0

// ----------------------------------------------------------------------------
// Data-parallel inner loops shared by labeling, the cube census and marching
// cubes: per-vertex threshold classification, min/max reduction, and per-row
// cube activity / configuration from classification masks.
//
// Each kernel has a scalar reference implementation and an AVX2 variant; the
// variant is picked once at startup from CPUID and can be overridden with
// force_level() or the ISOCLEAN_SIMD env var (values: scalar, avx2). All
// variants produce bit-identical results; tests assert that equivalence.
//
// Mask convention: mask[i] == 1 iff vertex i satisfies the predicate, else 0.
// Cube corner rows: for the cube column at (y, z), r00/r10/r01/r11 point at
// x == 0 of the mask rows (y,z), (y+1,z), (y,z+1), (y+1,z+1).
// ----------------------------------------------------------------------------

#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace isoclean::kernels {

enum class Level { Scalar, Avx2 };

Level best_supported_level();
Level active_level();
// Levels above best_supported_level() are clamped down.
void force_level(Level level);
std::string_view level_name(Level level);

// mask[i] = (f[i] >= iso)
void classify_ge(const double* f, std::size_t n, double iso, std::uint8_t* mask);
// mask[i] = (f[i] <= iso)
void classify_le(const double* f, std::size_t n, double iso, std::uint8_t* mask);

struct MinMax {
    double min;
    double max;
};
// n must be >= 1.
MinMax minmax(const double* f, std::size_t n);

// Number of cubes in the row with at least one corner mask set and at least
// one clear, i.e. cubes straddling the isovalue when masks came from
// classify_ge.
std::uint64_t count_active_cubes_row(const std::uint8_t* r00, const std::uint8_t* r10,
                                     const std::uint8_t* r01, const std::uint8_t* r11,
                                     std::size_t cubes);

// Marching-cubes case index per cube, bit i set iff corner i is BELOW the
// isovalue (masks come from classify_ge). Corner numbering:
//   0:(x,y,z) 1:(x+1,y,z) 2:(x+1,y+1,z) 3:(x,y+1,z)
//   4..7: same with z+1.
void cube_configs_row(const std::uint8_t* r00, const std::uint8_t* r10,
                      const std::uint8_t* r01, const std::uint8_t* r11, std::size_t cubes,
                      std::uint8_t* configs);

}  // namespace isoclean::kernels
