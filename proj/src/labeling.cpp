// SPDX-License-Identifier: Apache-2.0

#include "isoclean/labeling.hpp"

#include <limits>
#include <stdexcept>

#include "isoclean/dsu.hpp"
#include "isoclean/kernels.hpp"

namespace isoclean {

const char* filter_mode_name(FilterMode mode) {
    return mode == FilterMode::Above ? "above" : "below";
}

ComponentLabeling label_components(const VolumeGrid& grid, double isovalue, FilterMode mode) {
    const Dims& d = grid.dims();
    const std::size_t nv = grid.vertex_count();
    if (nv >= DisjointSetForest::kAbsent)
        throw VolumeError("volume too large for 32-bit component labeling");

    std::vector<std::uint8_t> mask(nv);
    if (mode == FilterMode::Above)
        kernels::classify_ge(grid.samples().data(), nv, isovalue, mask.data());
    else
        kernels::classify_le(grid.samples().data(), nv, isovalue, mask.data());

    DisjointSetForest dsu(nv);
    for (std::size_t v = 0; v < nv; ++v)
        if (mask[v]) dsu.make_set(static_cast<std::uint32_t>(v));

    // 6-connectivity: join each selected vertex to its selected -x/-y/-z
    // neighbors. Every edge is visited exactly once.
    const std::size_t sx = 1;
    const std::size_t sy = d.nx;
    const std::size_t sz = d.nx * d.ny;
    for (std::size_t z = 0; z < d.nz; ++z) {
        for (std::size_t y = 0; y < d.ny; ++y) {
            const std::size_t row = y * sy + z * sz;
            for (std::size_t x = 0; x < d.nx; ++x) {
                const std::size_t v = row + x;
                if (!mask[v]) continue;
                const auto u = static_cast<std::uint32_t>(v);
                if (x > 0 && mask[v - sx]) dsu.unite(u, static_cast<std::uint32_t>(v - sx));
                if (y > 0 && mask[v - sy]) dsu.unite(u, static_cast<std::uint32_t>(v - sy));
                if (z > 0 && mask[v - sz]) dsu.unite(u, static_cast<std::uint32_t>(v - sz));
            }
        }
    }

    ComponentLabeling out;
    out.mode = mode;
    out.isovalue = isovalue;
    out.labels.assign(nv, ComponentLabeling::kNoComponent);

    // Dense ids in ascending order of each component's smallest vertex: a
    // forward scan meets each root first at exactly that vertex.
    std::vector<std::uint32_t> root_id(nv, ComponentLabeling::kNoComponent);
    for (std::size_t v = 0; v < nv; ++v) {
        if (!mask[v]) continue;
        const std::uint32_t root = dsu.find(static_cast<std::uint32_t>(v));
        std::uint32_t id = root_id[root];
        if (id == ComponentLabeling::kNoComponent) {
            id = static_cast<std::uint32_t>(out.component_sizes.size());
            root_id[root] = id;
            out.component_sizes.push_back(dsu.set_size(root));
        }
        out.labels[v] = id;
    }
    return out;
}

std::vector<std::uint32_t> small_components(const ComponentLabeling& labeling,
                                            std::uint64_t threshold) {
    std::vector<std::uint32_t> ids;
    for (std::size_t i = 0; i < labeling.component_sizes.size(); ++i)
        if (labeling.component_sizes[i] <= threshold)
            ids.push_back(static_cast<std::uint32_t>(i));
    return ids;
}

}  // namespace isoclean
