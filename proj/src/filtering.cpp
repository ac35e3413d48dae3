// SPDX-License-Identifier: Apache-2.0

#include "isoclean/filtering.hpp"

#include <cmath>
#include <limits>

namespace isoclean {

namespace {

// Keeps a freshly assigned value strictly on the leaving side even when the
// averaging rounds onto the isovalue itself.
double clamp_to_side(double value, double isovalue, FilterMode mode) {
    if (mode == FilterMode::Above) {
        if (value >= isovalue)
            return std::nextafter(isovalue, -std::numeric_limits<double>::infinity());
    } else {
        if (value <= isovalue)
            return std::nextafter(isovalue, std::numeric_limits<double>::infinity());
    }
    return value;
}

}  // namespace

double reassign_value(const VolumeGrid& grid, std::size_t x, std::size_t y, std::size_t z,
                      double isovalue, FilterMode mode) {
    const Dims& d = grid.dims();
    const std::vector<double>& f = grid.samples();
    const std::size_t sy = d.nx;
    const std::size_t sz = d.nx * d.ny;
    const std::size_t v = grid.linear_index(x, y, z);

    const auto other_side = [&](double s) {
        return mode == FilterMode::Above ? s < isovalue : s > isovalue;
    };

    double sum = 0.0;
    int found = 0;
    const auto scan = [&](std::size_t steps, std::size_t stride, bool negative) {
        std::size_t u = v;
        for (std::size_t k = 0; k < steps; ++k) {
            u = negative ? u - stride : u + stride;
            if (other_side(f[u])) {
                sum += f[u];
                ++found;
                return;
            }
        }
    };

    scan(x, 1, true);
    scan(d.nx - 1 - x, 1, false);
    scan(y, sy, true);
    scan(d.ny - 1 - y, sy, false);
    scan(z, sz, true);
    scan(d.nz - 1 - z, sz, false);

    if (found == 0)
        return mode == FilterMode::Above ? isovalue - 1.0 : isovalue + 1.0;
    return clamp_to_side(sum / found, isovalue, mode);
}

FilterOutcome filter_components(const VolumeGrid& grid, const ComponentLabeling& labeling,
                                std::uint64_t threshold) {
    const std::vector<std::uint32_t> doomed = small_components(labeling, threshold);
    std::vector<std::uint8_t> is_doomed(labeling.component_count(), 0);
    for (std::uint32_t id : doomed) is_doomed[id] = 1;

    // Phase one reads only the original grid, phase two writes; a vertex's
    // replacement never sees another vertex's replacement.
    const Dims& d = grid.dims();
    std::vector<double> out = grid.samples();
    std::uint64_t modified = 0;
    std::size_t v = 0;
    for (std::size_t z = 0; z < d.nz; ++z) {
        for (std::size_t y = 0; y < d.ny; ++y) {
            for (std::size_t x = 0; x < d.nx; ++x, ++v) {
                const std::uint32_t id = labeling.labels[v];
                if (id == ComponentLabeling::kNoComponent || !is_doomed[id]) continue;
                out[v] = reassign_value(grid, x, y, z, labeling.isovalue, labeling.mode);
                ++modified;
            }
        }
    }

    return FilterOutcome{grid.with_samples(std::move(out)),
                         labeling.mode,
                         labeling.isovalue,
                         threshold,
                         labeling.component_count(),
                         doomed.size(),
                         modified,
                         doomed};
}

FilterOutcome filter_components(const VolumeGrid& grid, double isovalue, FilterMode mode,
                                std::uint64_t threshold) {
    return filter_components(grid, label_components(grid, isovalue, mode), threshold);
}

BothOutcome filter_both(const VolumeGrid& grid, double isovalue,
                        std::uint64_t above_threshold, std::uint64_t below_threshold) {
    FilterOutcome above =
        filter_components(grid, isovalue, FilterMode::Above, above_threshold);
    FilterOutcome below =
        filter_components(above.filtered, isovalue, FilterMode::Below, below_threshold);
    VolumeGrid final_grid = below.filtered;
    return BothOutcome{std::move(final_grid), std::move(above), std::move(below)};
}

}  // namespace isoclean
