// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

#include "isoclean/labeling.hpp"
#include "isoclean/volume.hpp"

namespace isoclean {

struct FilterOutcome {
    VolumeGrid filtered;
    FilterMode mode;
    double isovalue;
    std::uint64_t threshold;
    std::uint64_t total_components;
    std::uint64_t components_removed;
    std::uint64_t scalars_modified;
    std::vector<std::uint32_t> removed_ids;
};

// Replacement scalar for a vertex being detached from the selected side.
// Scans the six axis directions from (x, y, z) for the nearest vertex
// already strictly on the other side of the isovalue and averages the
// values found. All reads come from the grid passed in, so the result is
// independent of rewrite order.
double reassign_value(const VolumeGrid& grid, std::size_t x, std::size_t y, std::size_t z,
                      double isovalue, FilterMode mode);

// Rewrites every vertex of every component of size <= threshold so it
// leaves the selected side of the isovalue. Untouched samples are copied
// bit for bit.
FilterOutcome filter_components(const VolumeGrid& grid, const ComponentLabeling& labeling,
                                std::uint64_t threshold);

FilterOutcome filter_components(const VolumeGrid& grid, double isovalue, FilterMode mode,
                                std::uint64_t threshold);

struct BothOutcome {
    VolumeGrid filtered;
    FilterOutcome above;  // stats from the first pass; its grid is interim
    FilterOutcome below;  // stats from the second pass; its grid is final
};

// Above pass first, then a Below pass over the already-filtered grid.
BothOutcome filter_both(const VolumeGrid& grid, double isovalue,
                        std::uint64_t above_threshold, std::uint64_t below_threshold);

}  // namespace isoclean
