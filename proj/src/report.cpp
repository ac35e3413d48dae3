// SPDX-License-Identifier: Apache-2.0

#include "isoclean/report.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <stdexcept>
#include <thread>

#include "json.hpp"

#include "isoclean/filtering.hpp"
#include "isoclean/isosurface.hpp"

namespace isoclean {

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string format_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// RFC 4180: quote fields holding commas, quotes, or newlines.
std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

void run_indexed(std::size_t count, std::size_t workers,
                 const std::function<void(std::size_t)>& body) {
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1))
                body(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace

std::size_t sweep_parallelism(std::size_t cases) {
    std::size_t n = std::thread::hardware_concurrency();
    if (n == 0) n = 1;
    if (const char* env = std::getenv("ISOCLEAN_THREADS")) {
        char* end = nullptr;
        const long cap = std::strtol(env, &end, 10);
        if (end != env && cap >= 1 && static_cast<std::size_t>(cap) < n)
            n = static_cast<std::size_t>(cap);
    }
    return cases < n ? (cases == 0 ? 1 : cases) : n;
}

StatsRow run_case(const VolumeGrid& grid, const std::string& dataset, double isovalue,
                  std::uint64_t threshold, FilterMode mode) {
    StatsRow row;
    row.dataset = dataset;
    row.isovalue = isovalue;
    row.mode = mode;
    row.threshold = threshold;

    const auto t0 = std::chrono::steady_clock::now();
    const FilterOutcome outcome = filter_components(grid, isovalue, mode, threshold);
    row.label_filter_seconds = seconds_since(t0);

    row.total_components = outcome.total_components;
    row.components_removed = outcome.components_removed;
    row.scalar_values_modified = outcome.scalars_modified;
    row.removed_fraction =
        row.total_components == 0
            ? 0.0
            : static_cast<double>(row.components_removed) /
                  static_cast<double>(row.total_components);

    const auto t1 = std::chrono::steady_clock::now();
    const TriangleMesh mesh = marching_cubes(grid, isovalue);
    row.mc_seconds = seconds_since(t1);
    (void)mesh;

    const CubeCensus census = count_cubes(grid, isovalue);
    row.active_cubes = census.active_cubes;
    row.total_cubes = census.total_cubes;
    return row;
}

std::vector<StatsRow> sweep_thresholds(const VolumeGrid& grid, const std::string& dataset,
                                       double isovalue, FilterMode mode,
                                       const std::vector<std::uint64_t>& thresholds) {
    for (std::size_t i = 1; i < thresholds.size(); ++i)
        if (thresholds[i] < thresholds[i - 1])
            throw std::invalid_argument("thresholds must be ascending");

    std::vector<StatsRow> rows(thresholds.size());
    run_indexed(thresholds.size(), sweep_parallelism(thresholds.size()),
                [&](std::size_t i) {
                    rows[i] = run_case(grid, dataset, isovalue, thresholds[i], mode);
                });
    return rows;
}

std::vector<StatsRow> sweep_isovalues(const VolumeGrid& grid, const std::string& dataset,
                                      const std::vector<double>& isovalues,
                                      std::uint64_t threshold, FilterMode mode) {
    std::vector<StatsRow> rows(isovalues.size());
    run_indexed(isovalues.size(), sweep_parallelism(isovalues.size()),
                [&](std::size_t i) {
                    rows[i] = run_case(grid, dataset, isovalues[i], threshold, mode);
                });
    return rows;
}

std::string render_stats(const std::vector<StatsRow>& rows, StatsFormat format) {
    if (format == StatsFormat::Csv) {
        std::string out =
            "dataset,isovalue,mode,threshold,total_components,components_removed,"
            "removed_fraction,scalar_values_modified,active_cubes,total_cubes,"
            "label_filter_seconds,mc_seconds\r\n";
        for (const StatsRow& r : rows) {
            out += csv_escape(r.dataset);
            out += ',' + format_real(r.isovalue);
            out += ',';
            out += filter_mode_name(r.mode);
            out += ',' + std::to_string(r.threshold);
            out += ',' + std::to_string(r.total_components);
            out += ',' + std::to_string(r.components_removed);
            out += ',' + format_real(r.removed_fraction);
            out += ',' + std::to_string(r.scalar_values_modified);
            out += ',' + std::to_string(r.active_cubes);
            out += ',' + std::to_string(r.total_cubes);
            out += ',' + format_real(r.label_filter_seconds);
            out += ',' + format_real(r.mc_seconds);
            out += "\r\n";
        }
        return out;
    }

    nlohmann::json arr = nlohmann::json::array();
    for (const StatsRow& r : rows) {
        arr.push_back({{"dataset", r.dataset},
                       {"isovalue", r.isovalue},
                       {"mode", filter_mode_name(r.mode)},
                       {"threshold", r.threshold},
                       {"total_components", r.total_components},
                       {"components_removed", r.components_removed},
                       {"removed_fraction", r.removed_fraction},
                       {"scalar_values_modified", r.scalar_values_modified},
                       {"active_cubes", r.active_cubes},
                       {"total_cubes", r.total_cubes},
                       {"label_filter_seconds", r.label_filter_seconds},
                       {"mc_seconds", r.mc_seconds}});
    }
    return arr.dump(2) + "\n";
}

void emit(const std::vector<StatsRow>& rows, StatsFormat format, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw VolumeError("cannot open stats file for writing: " + path);
    out << render_stats(rows, format);
    out.flush();
    if (!out) throw VolumeError("failed writing stats file: " + path);
}

}  // namespace isoclean
