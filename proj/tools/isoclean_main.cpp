// SPDX-License-Identifier: Apache-2.0

// isoclean: remove small connected components from isosurfaces by rewriting
// the scalar grid, then extract and report.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "isoclean/filtering.hpp"
#include "isoclean/isosurface.hpp"
#include "isoclean/kernels.hpp"
#include "isoclean/report.hpp"
#include "isoclean/volume.hpp"

namespace {

using namespace isoclean;

struct InputSpec {
    std::string path;
    std::string dims;    // "NX,NY,NZ" for headerless raw input
    std::string type;    // uint8|uint16|int16|float32
    std::string endian = "little";
};

void add_input_flags(CLI::App& cmd, InputSpec& in) {
    cmd.add_option("input", in.path, "volume file (.nhdr or raw)")->required();
    cmd.add_option("--dims", in.dims, "raw input dimensions NX,NY,NZ");
    cmd.add_option("--type", in.type, "raw sample type: uint8|uint16|int16|float32");
    cmd.add_option("--endian", in.endian, "raw byte order: little|big")
        ->check(CLI::IsMember({"little", "big"}));
}

bool ends_with(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() &&
           s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

Dims parse_dims(const std::string& text) {
    Dims d{};
    char extra;
    std::istringstream in(text);
    char c1, c2;
    if (!(in >> d.nx >> c1 >> d.ny >> c2 >> d.nz) || c1 != ',' || c2 != ',' ||
        (in >> extra))
        throw VolumeError("--dims expects NX,NY,NZ, got '" + text + "'");
    return d;
}

VolumeGrid load_input(const InputSpec& in) {
    if (ends_with(in.path, ".nhdr")) {
        if (!in.dims.empty() || !in.type.empty())
            throw VolumeError("--dims/--type apply only to headerless raw input");
        return load_nhdr(in.path);
    }
    if (in.dims.empty() || in.type.empty())
        throw VolumeError("raw input needs --dims and --type");
    SampleKind kind;
    if (!parse_sample_kind(in.type, kind))
        throw VolumeError("unknown sample type: " + in.type);
    return load_raw(in.path, parse_dims(in.dims), kind,
                    in.endian == "big" ? ByteOrder::Big : ByteOrder::Little);
}

FilterMode parse_mode(const std::string& name) {
    if (name == "above") return FilterMode::Above;
    if (name == "below") return FilterMode::Below;
    throw VolumeError("unknown mode: " + name);
}

StatsFormat parse_stats_format(const std::string& name) {
    return name == "json" ? StatsFormat::Json : StatsFormat::Csv;
}

void write_volume_output(const VolumeGrid& grid, const std::string& path) {
    if (ends_with(path, ".nhdr"))
        store_nhdr(grid, path);
    else
        store_raw(grid, path);
}

std::string dataset_name(const std::string& path) {
    const std::size_t slash = path.find_last_of("/\\");
    std::string name = slash == std::string::npos ? path : path.substr(slash + 1);
    const std::size_t dot = name.find_last_of('.');
    if (dot != std::string::npos && dot > 0) name = name.substr(0, dot);
    return name;
}

int cmd_info(const InputSpec& in) {
    const VolumeGrid grid = load_input(in);
    const Dims& d = grid.dims();
    const kernels::MinMax mm =
        kernels::minmax(grid.samples().data(), grid.vertex_count());
    const std::string kind_name{sample_kind_name(grid.sample_kind())};

    std::printf("volume: %s\n", in.path.c_str());
    std::printf("dims: %llu x %llu x %llu (%llu vertices)\n",
                static_cast<unsigned long long>(d.nx),
                static_cast<unsigned long long>(d.ny),
                static_cast<unsigned long long>(d.nz),
                static_cast<unsigned long long>(grid.vertex_count()));
    std::printf("spacing: %g %g %g\n", grid.spacing().x, grid.spacing().y,
                grid.spacing().z);
    std::printf("sample kind: %s\n", kind_name.c_str());
    std::printf("value range: [%.17g, %.17g]\n", mm.min, mm.max);
    std::printf("total cubes: %llu\n",
                static_cast<unsigned long long>(d.cube_count()));

    const nlohmann::json j{{"path", in.path},
                           {"nx", d.nx},
                           {"ny", d.ny},
                           {"nz", d.nz},
                           {"sample_kind", kind_name},
                           {"min", mm.min},
                           {"max", mm.max},
                           {"total_cubes", d.cube_count()}};
    std::printf("%s\n", j.dump().c_str());
    return 0;
}

int cmd_filter(const InputSpec& in, double isovalue, std::uint64_t min_size,
               const std::string& mode_name, std::optional<std::uint64_t> above_size,
               std::optional<std::uint64_t> below_size, const std::string& out_volume,
               const std::string& out_stats, const std::string& stats_format) {
    const VolumeGrid grid = load_input(in);
    const std::string name = dataset_name(in.path);
    const CubeCensus census = count_cubes(grid, isovalue);

    // The filter command never runs surface extraction, so mc_seconds
    // stays 0 in its stats rows.
    const auto make_row = [&](const FilterOutcome& pass, double seconds) {
        StatsRow row;
        row.dataset = name;
        row.isovalue = isovalue;
        row.mode = pass.mode;
        row.threshold = pass.threshold;
        row.total_components = pass.total_components;
        row.components_removed = pass.components_removed;
        row.removed_fraction =
            pass.total_components == 0
                ? 0.0
                : static_cast<double>(pass.components_removed) /
                      static_cast<double>(pass.total_components);
        row.scalar_values_modified = pass.scalars_modified;
        row.active_cubes = census.active_cubes;
        row.total_cubes = census.total_cubes;
        row.label_filter_seconds = seconds;
        return row;
    };
    const auto print_pass = [](const FilterOutcome& pass, bool prefix) {
        std::printf("%s%scomponents removed: %llu of %llu, scalar values modified: %llu\n",
                    prefix ? filter_mode_name(pass.mode) : "", prefix ? " pass: " : "",
                    static_cast<unsigned long long>(pass.components_removed),
                    static_cast<unsigned long long>(pass.total_components),
                    static_cast<unsigned long long>(pass.scalars_modified));
    };

    std::vector<StatsRow> rows;
    VolumeGrid result = grid;
    if (mode_name == "both") {
        const std::uint64_t ta = above_size.value_or(min_size);
        const std::uint64_t tb = below_size.value_or(min_size);
        const auto t0 = std::chrono::steady_clock::now();
        BothOutcome both = filter_both(grid, isovalue, ta, tb);
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::fprintf(stderr, "label+filter: %.6f s (both passes)\n", elapsed);

        print_pass(both.above, true);
        print_pass(both.below, true);
        rows.push_back(make_row(both.above, elapsed / 2));
        rows.push_back(make_row(both.below, elapsed / 2));
        std::printf("combined: components removed: %llu, scalar values modified: %llu\n",
                    static_cast<unsigned long long>(both.above.components_removed +
                                                    both.below.components_removed),
                    static_cast<unsigned long long>(both.above.scalars_modified +
                                                    both.below.scalars_modified));
        result = std::move(both.filtered);
    } else {
        const auto t0 = std::chrono::steady_clock::now();
        FilterOutcome outcome =
            filter_components(grid, isovalue, parse_mode(mode_name), min_size);
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::fprintf(stderr, "label+filter: %.6f s\n", elapsed);
        print_pass(outcome, false);
        rows.push_back(make_row(outcome, elapsed));
        result = std::move(outcome.filtered);
    }

    if (!out_volume.empty()) write_volume_output(result, out_volume);
    if (!out_stats.empty()) emit(rows, parse_stats_format(stats_format), out_stats);
    return 0;
}

int cmd_extract(const InputSpec& in, double isovalue, const std::string& out_mesh,
                const std::string& mesh_format) {
    const VolumeGrid grid = load_input(in);

    const auto t0 = std::chrono::steady_clock::now();
    const TriangleMesh mesh = marching_cubes(grid, isovalue);
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::fprintf(stderr, "marching cubes: %.6f s\n", elapsed);

    const CubeCensus census = count_cubes(grid, isovalue);
    std::printf("active cubes: %llu of %llu\n",
                static_cast<unsigned long long>(census.active_cubes),
                static_cast<unsigned long long>(census.total_cubes));
    std::printf("mesh: %zu vertices, %zu triangles, %zu components\n",
                mesh.vertex_count(), mesh.triangle_count(), mesh_component_count(mesh));

    if (!out_mesh.empty()) write_mesh(mesh, out_mesh, mesh_format);
    return 0;
}

int cmd_sweep(const InputSpec& in, const std::string& mode_name, double isovalue,
              std::uint64_t min_size, const std::vector<double>& isovalue_list,
              const std::vector<std::uint64_t>& min_size_list,
              const std::string& out_stats, const std::string& stats_format) {
    if (isovalue_list.empty() == min_size_list.empty())
        throw CLI::ValidationError(
            "sweep needs exactly one of --isovalue-list / --min-size-list");

    const VolumeGrid grid = load_input(in);
    const std::string name = dataset_name(in.path);
    const FilterMode mode = parse_mode(mode_name);

    std::vector<StatsRow> rows;
    if (!min_size_list.empty())
        rows = sweep_thresholds(grid, name, isovalue, mode, min_size_list);
    else
        rows = sweep_isovalues(grid, name, isovalue_list, min_size, mode);

    for (const StatsRow& r : rows) {
        std::printf("iso %.17g threshold %llu: removed %llu of %llu, modified %llu\n",
                    r.isovalue, static_cast<unsigned long long>(r.threshold),
                    static_cast<unsigned long long>(r.components_removed),
                    static_cast<unsigned long long>(r.total_components),
                    static_cast<unsigned long long>(r.scalar_values_modified));
        std::fprintf(stderr, "iso %.17g threshold %llu: label+filter %.6f s, mc %.6f s\n",
                     r.isovalue, static_cast<unsigned long long>(r.threshold),
                     r.label_filter_seconds, r.mc_seconds);
    }
    if (!out_stats.empty()) emit(rows, parse_stats_format(stats_format), out_stats);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"remove small isosurface components by scalar-grid relabeling"};
    app.require_subcommand(1);

    InputSpec info_in;
    CLI::App* info = app.add_subcommand("info", "print volume metadata and value range");
    add_input_flags(*info, info_in);

    InputSpec filter_in;
    double filter_iso = 0.0;
    std::uint64_t filter_min = 0;
    std::string filter_mode = "above";
    std::optional<std::uint64_t> above_size, below_size;
    std::string out_volume, filter_out_stats, filter_stats_format = "csv";
    CLI::App* filter =
        app.add_subcommand("filter", "remove small components and write the new volume");
    add_input_flags(*filter, filter_in);
    filter->add_option("--isovalue", filter_iso, "isovalue")->required();
    filter->add_option("--min-size", filter_min,
                       "remove components with vertex count <= this");
    filter->add_option("--mode", filter_mode, "above|below|both")
        ->check(CLI::IsMember({"above", "below", "both"}));
    filter->add_option("--above-min-size", above_size,
                       "override --min-size for the above pass (mode both)");
    filter->add_option("--below-min-size", below_size,
                       "override --min-size for the below pass (mode both)");
    filter->add_option("--out-volume", out_volume, "output volume (.nhdr or raw)");
    filter->add_option("--out-stats", filter_out_stats, "statistics output path");
    filter->add_option("--stats-format", filter_stats_format, "csv|json")
        ->check(CLI::IsMember({"csv", "json"}));

    InputSpec extract_in;
    double extract_iso = 0.0;
    std::string out_mesh, mesh_format = "obj";
    CLI::App* extract = app.add_subcommand("extract", "marching cubes surface extraction");
    add_input_flags(*extract, extract_in);
    extract->add_option("--isovalue", extract_iso, "isovalue")->required();
    extract->add_option("--out-mesh", out_mesh, "mesh output path");
    extract->add_option("--mesh-format", mesh_format, "obj|ply")
        ->check(CLI::IsMember({"obj", "ply"}));

    InputSpec sweep_in;
    double sweep_iso = 0.0;
    std::uint64_t sweep_min = 0;
    std::string sweep_mode = "above";
    std::vector<double> isovalue_list;
    std::vector<std::uint64_t> min_size_list;
    std::string sweep_out_stats, sweep_stats_format = "csv";
    CLI::App* sweep =
        app.add_subcommand("sweep", "statistics across isovalues or size thresholds");
    add_input_flags(*sweep, sweep_in);
    sweep->add_option("--isovalue", sweep_iso, "fixed isovalue for threshold sweeps");
    sweep->add_option("--min-size", sweep_min, "fixed threshold for isovalue sweeps");
    sweep->add_option("--mode", sweep_mode, "above|below")
        ->check(CLI::IsMember({"above", "below"}));
    sweep->add_option("--isovalue-list", isovalue_list, "isovalues to sweep")
        ->delimiter(',');
    sweep->add_option("--min-size-list", min_size_list, "thresholds to sweep, ascending")
        ->delimiter(',');
    sweep->add_option("--out-stats", sweep_out_stats, "statistics output path");
    sweep->add_option("--stats-format", sweep_stats_format, "csv|json")
        ->check(CLI::IsMember({"csv", "json"}));

    CLI11_PARSE(app, argc, argv);

    try {
        if (info->parsed()) return cmd_info(info_in);
        if (filter->parsed())
            return cmd_filter(filter_in, filter_iso, filter_min, filter_mode, above_size,
                              below_size, out_volume, filter_out_stats,
                              filter_stats_format);
        if (extract->parsed()) return cmd_extract(extract_in, extract_iso, out_mesh,
                                                  mesh_format);
        if (sweep->parsed())
            return cmd_sweep(sweep_in, sweep_mode, sweep_iso, sweep_min, isovalue_list,
                             min_size_list, sweep_out_stats, sweep_stats_format);
    } catch (const CLI::ValidationError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return static_cast<int>(CLI::ExitCodes::ValidationError);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
