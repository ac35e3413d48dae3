// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "isoclean/volume.hpp"

namespace isoclean {

struct TriangleMesh {
    // Positions in physical units (grid coordinates scaled by spacing).
    std::vector<std::array<double, 3>> vertices;
    // Counter-clockwise seen from outside the f >= iso region.
    std::vector<std::array<std::uint32_t, 3>> triangles;
    // Linear cube index that emitted each triangle.
    std::vector<std::uint64_t> triangle_cubes;

    std::size_t vertex_count() const { return vertices.size(); }
    std::size_t triangle_count() const { return triangles.size(); }
};

struct CubeCensus {
    std::uint64_t total_cubes;
    std::uint64_t active_cubes;  // cubes with corners on both sides of iso
};

CubeCensus count_cubes(const VolumeGrid& grid, double isovalue);

// Marching cubes with exact vertex welding: each crossed cube edge yields
// one shared mesh vertex, keyed by its global edge id, so coincident
// vertices are identical rather than merely close.
TriangleMesh marching_cubes(const VolumeGrid& grid, double isovalue);

// Connected components of the triangle mesh; triangles touch when they
// share a welded vertex.
std::size_t mesh_component_count(const TriangleMesh& mesh);

// Writes "obj" or "ply" (ascii).
void write_mesh(const TriangleMesh& mesh, const std::string& path, const std::string& format);

}  // namespace isoclean
