// SPDX-License-Identifier: Apache-2.0

#include <random>
#include <vector>

#include "doctest.h"

#include "isoclean/filtering.hpp"
#include "support.hpp"

using namespace isoclean;

namespace {

VolumeGrid grid_of(Dims d, std::vector<double> f) {
    return VolumeGrid(d, std::move(f), SampleKind::Float32);
}

}  // namespace

TEST_CASE("reassignment averages the nearest across-threshold hits") {
    std::vector<double> f(27, 10.0);
    f[13] = 100.0;  // center of 3x3x3
    const VolumeGrid g = grid_of(Dims{3, 3, 3}, std::move(f));
    CHECK(reassign_value(g, 1, 1, 1, 50.5, FilterMode::Above) == 10.0);
}

TEST_CASE("directions that exit the grid contribute nothing") {
    const VolumeGrid g = grid_of(Dims{3, 1, 1}, {0.0, 100.0, 100.0});
    // +x sees only 100 (not below), -x finds 0; y/z scans leave immediately.
    CHECK(reassign_value(g, 1, 0, 0, 50.5, FilterMode::Above) == 0.0);
}

TEST_CASE("below mode is the mirror image") {
    std::vector<double> f(27, 100.0);
    f[13] = 0.0;
    const VolumeGrid g = grid_of(Dims{3, 3, 3}, std::move(f));
    CHECK(reassign_value(g, 1, 1, 1, 50.5, FilterMode::Below) == 100.0);
}

TEST_CASE("scans skip over same-side vertices to the nearest qualifying one") {
    // From the 100 at x=3, scanning -x passes 60 (>= iso) and stops at 10.
    const VolumeGrid g = grid_of(Dims{5, 1, 1}, {10.0, 60.0, 60.0, 100.0, 90.0});
    CHECK(reassign_value(g, 3, 0, 0, 50.5, FilterMode::Above) == 10.0);
}

TEST_CASE("threshold zero removes nothing and copies the input") {
    std::mt19937_64 rng(41);
    const testing::RandomCase c = testing::random_case(rng, 10);
    const FilterOutcome out = filter_components(c.grid, c.isovalue, c.mode, 0);
    CHECK(out.components_removed == 0);
    CHECK(out.scalars_modified == 0);
    CHECK(out.removed_ids.empty());
    CHECK(out.filtered.samples() == c.grid.samples());
}

TEST_CASE("replacement values come from the original snapshot, not partial rewrites") {
    // Both 9s form one removable component; each sees 4 on one side and 0 on
    // the other in the ORIGINAL grid, so both become exactly (4+0)/2 = 2.
    // In-place sequential rewriting would give the second one (2+0)/2 = 1.
    const VolumeGrid g = grid_of(Dims{4, 1, 1}, {4.0, 9.0, 9.0, 0.0});
    const FilterOutcome out = filter_components(g, 5.5, FilterMode::Above, 2);
    CHECK(out.components_removed == 1);
    CHECK(out.scalars_modified == 2);
    CHECK(out.filtered[1] == 2.0);
    CHECK(out.filtered[2] == 2.0);
    CHECK(out.filtered[0] == 4.0);
    CHECK(out.filtered[3] == 0.0);
}

TEST_CASE("whole-grid component falls back to one past the isovalue") {
    const VolumeGrid g = grid_of(Dims{2, 1, 1}, {9.0, 9.0});
    const FilterOutcome above = filter_components(g, 5.5, FilterMode::Above, 2);
    CHECK(above.components_removed == 1);
    CHECK(above.filtered[0] == 4.5);
    CHECK(above.filtered[1] == 4.5);

    const VolumeGrid h = grid_of(Dims{2, 1, 1}, {1.0, 1.0});
    const FilterOutcome below = filter_components(h, 5.5, FilterMode::Below, 2);
    CHECK(below.filtered[0] == 6.5);
    CHECK(below.filtered[1] == 6.5);
}

TEST_CASE("filtering invariants hold across random volumes") {
    std::mt19937_64 rng(42);
    for (int round = 0; round < 60; ++round) {
        const testing::RandomCase c = testing::random_case(rng);
        const ComponentLabeling before = label_components(c.grid, c.isovalue, c.mode);
        for (std::uint64_t threshold : {1, 2, 5}) {
            const FilterOutcome out = filter_components(c.grid, before, threshold);

            // Count consistency: modifications equal differing vertices.
            std::uint64_t diffs = 0;
            for (std::size_t v = 0; v < c.grid.vertex_count(); ++v) {
                const bool changed = out.filtered[v] != c.grid[v];
                if (changed) ++diffs;
                const bool in_removed =
                    before.labels[v] != ComponentLabeling::kNoComponent &&
                    before.component_sizes[before.labels[v]] <= threshold;
                if (!in_removed) {
                    // Non-interference, bit for bit.
                    CHECK(out.filtered[v] == c.grid[v]);
                } else {
                    // Side guarantee: strictly on the removing side.
                    if (c.mode == FilterMode::Above)
                        CHECK(out.filtered[v] < c.isovalue);
                    else
                        CHECK(out.filtered[v] > c.isovalue);
                }
            }
            // Replacements are strictly across the isovalue while originals
            // were on it or beyond, so every rewrite changes the value.
            CHECK(out.scalars_modified == diffs);

            // Removal completeness: the survivors are exactly the big
            // components of the original labeling.
            const ComponentLabeling after =
                label_components(out.filtered, c.isovalue, c.mode);
            std::vector<std::vector<std::uint32_t>> want;
            {
                std::vector<std::vector<std::uint32_t>> groups(before.component_count());
                for (std::size_t v = 0; v < before.labels.size(); ++v)
                    if (before.labels[v] != ComponentLabeling::kNoComponent)
                        groups[before.labels[v]].push_back(static_cast<std::uint32_t>(v));
                for (std::size_t i = 0; i < groups.size(); ++i)
                    if (before.component_sizes[i] > threshold)
                        want.push_back(std::move(groups[i]));
            }
            std::vector<std::vector<std::uint32_t>> got(after.component_count());
            for (std::size_t v = 0; v < after.labels.size(); ++v)
                if (after.labels[v] != ComponentLabeling::kNoComponent)
                    got[after.labels[v]].push_back(static_cast<std::uint32_t>(v));
            CHECK(got == want);
        }
    }
}

TEST_CASE("both-mode runs above then below on the intermediate result") {
    // 7x7x7 zeros; a lone 100 (above-noise) and a 0-pocket inside a 100
    // block (below-noise) at sigma 50.5.
    const std::size_t n = 7;
    std::vector<double> f(n * n * n, 0.0);
    const auto at = [&](std::size_t x, std::size_t y, std::size_t z) {
        return x + n * (y + n * z);
    };
    f[at(1, 1, 1)] = 100.0;
    for (std::size_t z = 4; z < 7; ++z)
        for (std::size_t y = 4; y < 7; ++y)
            for (std::size_t x = 4; x < 7; ++x) f[at(x, y, z)] = 100.0;
    f[at(5, 5, 5)] = 0.0;

    const VolumeGrid g = grid_of(Dims{n, n, n}, std::move(f));
    const BothOutcome out = filter_both(g, 50.5, 1, 1);

    CHECK(out.above.components_removed == 1);
    CHECK(out.above.scalars_modified == 1);
    CHECK(out.below.components_removed == 1);
    CHECK(out.below.scalars_modified == 1);
    CHECK(out.filtered[at(1, 1, 1)] < 50.5);
    CHECK(out.filtered[at(5, 5, 5)] > 50.5);

    // Zero thresholds leave the volume untouched.
    const BothOutcome id = filter_both(g, 50.5, 0, 0);
    CHECK(id.filtered.samples() == g.samples());
}

TEST_CASE("outcome bookkeeping matches the labeling") {
    std::mt19937_64 rng(43);
    const testing::RandomCase c = testing::random_case(rng, 16);
    const ComponentLabeling lab = label_components(c.grid, c.isovalue, c.mode);
    const FilterOutcome out = filter_components(c.grid, lab, 3);

    CHECK(out.total_components == lab.component_count());
    CHECK(out.removed_ids == small_components(lab, 3));
    std::uint64_t expect_scalars = 0;
    for (auto id : out.removed_ids) expect_scalars += lab.component_sizes[id];
    CHECK(out.scalars_modified == expect_scalars);
    CHECK(out.mode == c.mode);
    CHECK(out.isovalue == c.isovalue);
    CHECK(out.threshold == 3);
}
