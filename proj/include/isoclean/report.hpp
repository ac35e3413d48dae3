// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "isoclean/labeling.hpp"
#include "isoclean/volume.hpp"

namespace isoclean {

// One measured configuration: counts from the filtering pass plus the cube
// census and the two phase timings.
struct StatsRow {
    std::string dataset;
    double isovalue = 0.0;
    FilterMode mode = FilterMode::Above;
    std::uint64_t threshold = 0;
    std::uint64_t total_components = 0;
    std::uint64_t components_removed = 0;
    double removed_fraction = 0.0;
    std::uint64_t scalar_values_modified = 0;
    std::uint64_t active_cubes = 0;
    std::uint64_t total_cubes = 0;
    double label_filter_seconds = 0.0;
    double mc_seconds = 0.0;
};

// Labels + filters (timed together), then runs the cube census and a timed
// surface extraction on the input grid.
StatsRow run_case(const VolumeGrid& grid, const std::string& dataset, double isovalue,
                  std::uint64_t threshold, FilterMode mode);

// One row per threshold at a fixed isovalue. Thresholds must be ascending.
std::vector<StatsRow> sweep_thresholds(const VolumeGrid& grid, const std::string& dataset,
                                       double isovalue, FilterMode mode,
                                       const std::vector<std::uint64_t>& thresholds);

// One row per isovalue at a fixed threshold.
std::vector<StatsRow> sweep_isovalues(const VolumeGrid& grid, const std::string& dataset,
                                      const std::vector<double>& isovalues,
                                      std::uint64_t threshold, FilterMode mode);

enum class StatsFormat { Csv, Json };

std::string render_stats(const std::vector<StatsRow>& rows, StatsFormat format);
void emit(const std::vector<StatsRow>& rows, StatsFormat format, const std::string& path);

// Worker count for sweeps: least of the case count, the hardware thread
// count, and the ISOCLEAN_THREADS cap.
std::size_t sweep_parallelism(std::size_t cases);

}  // namespace isoclean
