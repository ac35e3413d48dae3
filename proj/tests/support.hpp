// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstdint>
#include <queue>
#include <random>
#include <vector>

#include "isoclean/labeling.hpp"
#include "isoclean/volume.hpp"

namespace isoclean::testing {

// Independent reference labeling: breadth-first flood fill, no union-find.
// Same dense-id rule as the library (ascending smallest vertex index),
// reached here by scanning vertices in linear order and flooding unseen
// selected ones.
inline ComponentLabeling bfs_label_components(const VolumeGrid& grid, double isovalue,
                                              FilterMode mode) {
    const Dims& d = grid.dims();
    const std::vector<double>& f = grid.samples();
    const std::size_t nv = grid.vertex_count();

    const auto selected = [&](std::size_t v) {
        return mode == FilterMode::Above ? f[v] >= isovalue : f[v] <= isovalue;
    };

    ComponentLabeling out;
    out.mode = mode;
    out.isovalue = isovalue;
    out.labels.assign(nv, ComponentLabeling::kNoComponent);

    std::queue<std::size_t> frontier;
    for (std::size_t seed = 0; seed < nv; ++seed) {
        if (!selected(seed) || out.labels[seed] != ComponentLabeling::kNoComponent)
            continue;
        const auto id = static_cast<std::uint32_t>(out.component_sizes.size());
        out.component_sizes.push_back(0);
        out.labels[seed] = id;
        frontier.push(seed);
        while (!frontier.empty()) {
            const std::size_t v = frontier.front();
            frontier.pop();
            ++out.component_sizes[id];
            const auto [x, y, z] = grid.coords(v);
            const std::size_t neighbors[6] = {
                x > 0 ? v - 1 : v,          x + 1 < d.nx ? v + 1 : v,
                y > 0 ? v - d.nx : v,       y + 1 < d.ny ? v + d.nx : v,
                z > 0 ? v - d.nx * d.ny : v, z + 1 < d.nz ? v + d.nx * d.ny : v,
            };
            for (std::size_t u : neighbors) {
                if (u == v || !selected(u)) continue;
                if (out.labels[u] != ComponentLabeling::kNoComponent) continue;
                out.labels[u] = id;
                frontier.push(u);
            }
        }
    }
    return out;
}

// Second, even simpler reference for set merging: a label array rewritten
// wholesale on every union. Quadratic, fine for small universes.
class NaiveSets {
public:
    explicit NaiveSets(std::size_t n) : label_(n, kNone) {}

    static constexpr std::uint32_t kNone = 0xFFFFFFFFu;

    void make_set(std::size_t v) { label_[v] = static_cast<std::uint32_t>(v); }
    bool live(std::size_t v) const { return label_[v] != kNone; }
    std::uint32_t find(std::size_t v) const { return label_[v]; }

    void unite(std::size_t a, std::size_t b) {
        const std::uint32_t la = label_[a];
        const std::uint32_t lb = label_[b];
        if (la == lb) return;
        for (auto& l : label_)
            if (l == lb) l = la;
    }

    std::uint64_t set_size(std::size_t v) const {
        std::uint64_t n = 0;
        for (auto l : label_)
            if (l == label_[v]) ++n;
        return n;
    }

private:
    std::vector<std::uint32_t> label_;
};

struct RandomCase {
    VolumeGrid grid;
    double isovalue;
    FilterMode mode;
};

// Random small volume: dims in [1, 12] by default (32 max for the larger
// acceptance sweep), integer-leaning sample values so ties against the
// isovalue actually occur, isovalue drawn near the sample range.
inline RandomCase random_case(std::mt19937_64& rng, std::size_t max_dim = 12) {
    std::uniform_int_distribution<std::size_t> dim(1, max_dim);
    const Dims d{dim(rng), dim(rng), dim(rng)};

    std::uniform_int_distribution<int> pick(0, 9);
    const bool float_samples = pick(rng) < 3;
    std::vector<double> f(d.vertex_count());
    if (float_samples) {
        std::uniform_real_distribution<double> val(-4.0, 4.0);
        for (auto& s : f) s = val(rng);
    } else {
        std::uniform_int_distribution<int> val(0, 6);
        for (auto& s : f) s = val(rng);
    }

    // Half the time use a value present in the grid so >= / <= ties matter.
    double iso;
    if (pick(rng) < 5 && !f.empty()) {
        std::uniform_int_distribution<std::size_t> at(0, f.size() - 1);
        iso = f[at(rng)];
    } else {
        std::uniform_real_distribution<double> val(-1.0, 7.0);
        iso = val(rng);
    }

    const FilterMode mode = pick(rng) < 5 ? FilterMode::Above : FilterMode::Below;
    return RandomCase{VolumeGrid(d, std::move(f), SampleKind::Float32), iso, mode};
}

// 32^3 signed distance sphere: positive inside radius 10 around the grid
// center, so the 0-level set is a closed surface well away from the border.
inline VolumeGrid sphere_volume(std::size_t n = 32, double radius = 10.0) {
    const Dims d{n, n, n};
    const double c = (static_cast<double>(n) - 1.0) / 2.0;
    std::vector<double> f(d.vertex_count());
    std::size_t v = 0;
    for (std::size_t z = 0; z < n; ++z)
        for (std::size_t y = 0; y < n; ++y)
            for (std::size_t x = 0; x < n; ++x, ++v) {
                const double dx = static_cast<double>(x) - c;
                const double dy = static_cast<double>(y) - c;
                const double dz = static_cast<double>(z) - c;
                f[v] = radius - std::sqrt(dx * dx + dy * dy + dz * dz);
            }
    return VolumeGrid(d, std::move(f), SampleKind::Float32);
}

// Central solid blob plus isolated single-voxel spikes scattered on a
// coarse sublattice away from the blob and the border. Every spike is its
// own superlevel component of size 1 and its own little isosurface shell.
inline VolumeGrid blob_with_noise(std::size_t n, std::size_t spikes,
                                  std::vector<std::size_t>* spike_indices = nullptr) {
    const Dims d{n, n, n};
    std::vector<double> f(d.vertex_count(), 0.0);
    const double c = (static_cast<double>(n) - 1.0) / 2.0;
    const double radius = static_cast<double>(n) / 6.0;

    std::size_t v = 0;
    for (std::size_t z = 0; z < n; ++z)
        for (std::size_t y = 0; y < n; ++y)
            for (std::size_t x = 0; x < n; ++x, ++v) {
                const double dx = static_cast<double>(x) - c;
                const double dy = static_cast<double>(y) - c;
                const double dz = static_cast<double>(z) - c;
                if (std::sqrt(dx * dx + dy * dy + dz * dz) <= radius) f[v] = 100.0;
            }

    std::size_t placed = 0;
    for (std::size_t z = 2; z + 2 < n && placed < spikes; z += 3)
        for (std::size_t y = 2; y + 2 < n && placed < spikes; y += 3)
            for (std::size_t x = 2; x + 2 < n && placed < spikes; x += 3) {
                const double dx = static_cast<double>(x) - c;
                const double dy = static_cast<double>(y) - c;
                const double dz = static_cast<double>(z) - c;
                // Keep a 2-voxel moat between a spike and the blob.
                if (std::sqrt(dx * dx + dy * dy + dz * dz) <= radius + 2.5) continue;
                const std::size_t idx = x + n * (y + n * z);
                f[idx] = 100.0;
                if (spike_indices) spike_indices->push_back(idx);
                ++placed;
            }

    return VolumeGrid(d, std::move(f), SampleKind::Float32);
}

}  // namespace isoclean::testing
