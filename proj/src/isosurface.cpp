// SPDX-License-Identifier: Apache-2.0

#include "isoclean/isosurface.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <unordered_map>

#include "isoclean/dsu.hpp"
#include "isoclean/kernels.hpp"
#include "mc_tables.hpp"

namespace isoclean {

namespace {

// Local corner numbering: 0..3 ring the z face counter-clockwise starting
// at (x, y, z), 4..7 repeat it at z+1.
constexpr int kCornerOffset[8][3] = {
    {0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0},
    {0, 0, 1}, {1, 0, 1}, {1, 1, 1}, {0, 1, 1},
};

// Each cube edge is a unit segment from a base corner along +x/+y/+z;
// identifying it by (axis, base vertex) makes the id global to the grid.
constexpr int kEdgeBaseCorner[12] = {0, 1, 3, 0, 4, 5, 7, 4, 0, 1, 2, 3};
constexpr int kEdgeAxis[12] = {0, 1, 0, 1, 0, 1, 0, 1, 2, 2, 2, 2};

std::vector<std::uint8_t> classify_grid(const VolumeGrid& grid, double isovalue) {
    std::vector<std::uint8_t> mask(grid.vertex_count());
    kernels::classify_ge(grid.samples().data(), mask.size(), isovalue, mask.data());
    return mask;
}

}  // namespace

CubeCensus count_cubes(const VolumeGrid& grid, double isovalue) {
    const Dims& d = grid.dims();
    CubeCensus census{d.cube_count(), 0};
    if (census.total_cubes == 0) return census;

    const std::vector<std::uint8_t> mask = classify_grid(grid, isovalue);
    const std::size_t sy = d.nx;
    const std::size_t sz = d.nx * d.ny;
    for (std::size_t z = 0; z + 1 < d.nz; ++z) {
        for (std::size_t y = 0; y + 1 < d.ny; ++y) {
            const std::uint8_t* base = mask.data() + y * sy + z * sz;
            census.active_cubes += kernels::count_active_cubes_row(
                base, base + sy, base + sz, base + sy + sz, d.nx - 1);
        }
    }
    return census;
}

TriangleMesh marching_cubes(const VolumeGrid& grid, double isovalue) {
    const Dims& d = grid.dims();
    const Spacing& sp = grid.spacing();
    const std::vector<double>& f = grid.samples();
    const std::size_t nv = grid.vertex_count();
    const std::size_t sy = d.nx;
    const std::size_t sz = d.nx * d.ny;

    TriangleMesh mesh;
    if (d.cube_count() == 0) return mesh;

    const std::vector<std::uint8_t> mask = classify_grid(grid, isovalue);
    std::unordered_map<std::uint64_t, std::uint32_t> edge_vertex;
    std::vector<std::uint8_t> configs(d.nx - 1);

    // Interpolation always runs from the base corner toward +axis, so a
    // welded vertex's position is a function of the edge alone.
    const auto vertex_on_edge = [&](std::size_t base, int axis) {
        const std::uint64_t key =
            static_cast<std::uint64_t>(axis) * nv + static_cast<std::uint64_t>(base);
        const auto it = edge_vertex.find(key);
        if (it != edge_vertex.end()) return it->second;

        const std::size_t stride = axis == 0 ? 1 : axis == 1 ? sy : sz;
        const double fa = f[base];
        const double fb = f[base + stride];
        const double t = (isovalue - fa) / (fb - fa);
        const auto [bx, by, bz] = grid.coords(base);
        std::array<double, 3> pos{static_cast<double>(bx), static_cast<double>(by),
                                  static_cast<double>(bz)};
        pos[static_cast<std::size_t>(axis)] += t;
        pos[0] *= sp.x;
        pos[1] *= sp.y;
        pos[2] *= sp.z;

        const auto id = static_cast<std::uint32_t>(mesh.vertices.size());
        mesh.vertices.push_back(pos);
        edge_vertex.emplace(key, id);
        return id;
    };

    for (std::size_t z = 0; z + 1 < d.nz; ++z) {
        for (std::size_t y = 0; y + 1 < d.ny; ++y) {
            const std::size_t row = y * sy + z * sz;
            const std::uint8_t* base = mask.data() + row;
            kernels::cube_configs_row(base, base + sy, base + sz, base + sy + sz,
                                      d.nx - 1, configs.data());
            for (std::size_t x = 0; x + 1 < d.nx; ++x) {
                const std::uint8_t config = configs[x];
                if (mc::kEdgeTable[config] == 0) continue;

                const std::size_t cube_origin = row + x;
                std::uint32_t edge_ids[12];
                for (int e = 0; e < 12; ++e) {
                    if (!(mc::kEdgeTable[config] & (1u << e))) continue;
                    const int c = kEdgeBaseCorner[e];
                    const std::size_t corner = cube_origin + kCornerOffset[c][0] +
                                               kCornerOffset[c][1] * sy +
                                               kCornerOffset[c][2] * sz;
                    edge_ids[e] = vertex_on_edge(corner, kEdgeAxis[e]);
                }

                const std::uint64_t cube_index =
                    x + (d.nx - 1) * (y + (d.ny - 1) * z);
                const std::int8_t* tri = mc::kTriTable[config];
                for (int k = 0; tri[k] != -1; k += 3) {
                    mesh.triangles.push_back({edge_ids[tri[k]], edge_ids[tri[k + 1]],
                                              edge_ids[tri[k + 2]]});
                    mesh.triangle_cubes.push_back(cube_index);
                }
            }
        }
    }
    return mesh;
}

std::size_t mesh_component_count(const TriangleMesh& mesh) {
    if (mesh.vertices.empty()) return 0;
    DisjointSetForest dsu(mesh.vertices.size());
    for (std::size_t v = 0; v < mesh.vertices.size(); ++v)
        dsu.make_set(static_cast<std::uint32_t>(v));
    for (const auto& t : mesh.triangles) {
        dsu.unite(t[0], t[1]);
        dsu.unite(t[0], t[2]);
    }
    std::size_t roots = 0;
    for (std::size_t v = 0; v < mesh.vertices.size(); ++v)
        if (dsu.find(static_cast<std::uint32_t>(v)) == v) ++roots;
    return roots;
}

void write_mesh(const TriangleMesh& mesh, const std::string& path,
                const std::string& format) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw VolumeError("cannot open mesh file for writing: " + path);

    char buf[96];
    if (format == "obj") {
        for (const auto& v : mesh.vertices) {
            std::snprintf(buf, sizeof buf, "v %.17g %.17g %.17g\n", v[0], v[1], v[2]);
            out << buf;
        }
        for (const auto& t : mesh.triangles) {
            // 1-based indices
            out << 'f' << ' ' << t[0] + 1 << ' ' << t[1] + 1 << ' ' << t[2] + 1 << '\n';
        }
    } else if (format == "ply") {
        out << "ply\nformat ascii 1.0\n";
        out << "element vertex " << mesh.vertices.size() << '\n';
        out << "property double x\nproperty double y\nproperty double z\n";
        out << "element face " << mesh.triangles.size() << '\n';
        out << "property list uchar int vertex_indices\n";
        out << "end_header\n";
        for (const auto& v : mesh.vertices) {
            std::snprintf(buf, sizeof buf, "%.17g %.17g %.17g\n", v[0], v[1], v[2]);
            out << buf;
        }
        for (const auto& t : mesh.triangles)
            out << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
    } else {
        throw VolumeError("unknown mesh format: " + format);
    }

    out.flush();
    if (!out) throw VolumeError("failed writing mesh file: " + path);
}

}  // namespace isoclean
