// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

#include "isoclean/volume.hpp"

namespace isoclean {

// Which side of the isovalue forms the vertex graph. Above selects
// f(v) >= iso, Below selects f(v) <= iso.
enum class FilterMode { Above, Below };

const char* filter_mode_name(FilterMode mode);

// Connected components of the selected vertices under 6-connectivity.
// Component ids are dense, 0-based, and ordered by each component's
// smallest linear vertex index, so labelings are reproducible.
struct ComponentLabeling {
    FilterMode mode;
    double isovalue;
    // One entry per vertex; kNoComponent for vertices off the selected side.
    std::vector<std::uint32_t> labels;
    // Indexed by component id.
    std::vector<std::uint64_t> component_sizes;

    static constexpr std::uint32_t kNoComponent = 0xFFFFFFFFu;

    std::size_t component_count() const { return component_sizes.size(); }
};

ComponentLabeling label_components(const VolumeGrid& grid, double isovalue, FilterMode mode);

// Ids of components whose vertex count is <= threshold, ascending.
std::vector<std::uint32_t> small_components(const ComponentLabeling& labeling,
                                            std::uint64_t threshold);

}  // namespace isoclean
