// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "isoclean/kernels.hpp"

namespace isoclean::kernels {

// One entry per kernel; a level fills the table with its implementations.
struct OpTable {
    void (*classify_ge)(const double*, std::size_t, double, std::uint8_t*);
    void (*classify_le)(const double*, std::size_t, double, std::uint8_t*);
    MinMax (*minmax)(const double*, std::size_t);
    std::uint64_t (*count_active_cubes_row)(const std::uint8_t*, const std::uint8_t*,
                                            const std::uint8_t*, const std::uint8_t*,
                                            std::size_t);
    void (*cube_configs_row)(const std::uint8_t*, const std::uint8_t*, const std::uint8_t*,
                             const std::uint8_t*, std::size_t, std::uint8_t*);
};

const OpTable& scalar_ops();

#if defined(ISOCLEAN_HAVE_AVX2)
const OpTable& avx2_ops();
#endif

}  // namespace isoclean::kernels
