// SPDX-License-Identifier: Apache-2.0

// ----------------------------------------------------------------------------
// In-memory model of a regular scalar grid plus RAW/NHDR file ingestion.
//
// Samples are held as doubles regardless of the source encoding; every
// supported source type (uint8, uint16, int16, float32) is exactly
// representable, so load -> store round-trips bit-identically as long as no
// values were modified in between.
// ----------------------------------------------------------------------------

#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace isoclean {

enum class SampleKind { UInt8, UInt16, Int16, Float32 };
enum class ByteOrder { Little, Big };

std::size_t bytes_per_sample(SampleKind kind);
std::string_view sample_kind_name(SampleKind kind);

// Accepts both CLI spellings (uint8, int16, ...) and NRRD type names
// (uchar, unsigned char, short, ...). Returns false for anything else.
bool parse_sample_kind(std::string_view text, SampleKind& out);

// Raised for malformed files, size mismatches, unsupported header fields and
// non-representable values at store time.
class VolumeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Dims {
    std::uint64_t nx = 0;
    std::uint64_t ny = 0;
    std::uint64_t nz = 0;

    std::uint64_t vertex_count() const { return nx * ny * nz; }
    std::uint64_t cube_count() const {
        if (nx < 2 || ny < 2 || nz < 2) return 0;
        return (nx - 1) * (ny - 1) * (nz - 1);
    }
    bool operator==(const Dims&) const = default;
};

struct Spacing {
    double x = 1.0;
    double y = 1.0;
    double z = 1.0;
    bool operator==(const Spacing&) const = default;
};

class VolumeGrid {
public:
    // Throws std::invalid_argument unless dims are all >= 1 and
    // samples.size() == nx*ny*nz.
    VolumeGrid(Dims dims, std::vector<double> samples, SampleKind kind,
               ByteOrder order = ByteOrder::Little, Spacing spacing = Spacing{});

    const Dims& dims() const { return dims_; }
    SampleKind sample_kind() const { return kind_; }
    ByteOrder byte_order() const { return order_; }
    const Spacing& spacing() const { return spacing_; }

    std::uint64_t vertex_count() const { return dims_.vertex_count(); }
    std::uint64_t cube_count() const { return dims_.cube_count(); }

    const std::vector<double>& samples() const { return samples_; }

    double operator[](std::uint64_t i) const { return samples_[i]; }
    double at(std::uint64_t x, std::uint64_t y, std::uint64_t z) const {
        return samples_[linear_index(x, y, z)];
    }

    // Vertex linearization: x fastest, then y, then z.
    std::uint64_t linear_index(std::uint64_t x, std::uint64_t y, std::uint64_t z) const {
        return x + dims_.nx * (y + dims_.ny * z);
    }
    std::array<std::uint64_t, 3> coords(std::uint64_t i) const {
        const std::uint64_t x = i % dims_.nx;
        const std::uint64_t y = (i / dims_.nx) % dims_.ny;
        const std::uint64_t z = i / (dims_.nx * dims_.ny);
        return {x, y, z};
    }

    // Same metadata, new values. Used by filtering to build modified grids
    // while keeping loaded grids immutable.
    VolumeGrid with_samples(std::vector<double> samples) const;

private:
    Dims dims_;
    std::vector<double> samples_;
    SampleKind kind_;
    ByteOrder order_;
    Spacing spacing_;
};

// Reads a tightly packed sample array in x-fastest order. The file size must
// equal nx*ny*nz*bytes_per_sample exactly.
VolumeGrid load_raw(const std::filesystem::path& path, Dims dims, SampleKind kind,
                    ByteOrder order = ByteOrder::Little);

// Reads a detached NRRD header (.nhdr) and the raw file it references.
// Supported subset: type in {uint8, uint16, int16, float32} spellings,
// dimension 3, encoding raw, optional endian / spacings / space directions.
// Anything else fails with a VolumeError naming the offending header line.
VolumeGrid load_nhdr(const std::filesystem::path& path);

// Inverse of load_raw. Integral kinds are rounded to nearest; values that
// land outside the kind's range are clamped when within one unit of it
// (covers the filter fallback writes) and rejected otherwise, naming the
// vertex and value.
void store_raw(const VolumeGrid& grid, const std::filesystem::path& path);

// Writes a detached NRRD header alongside the raw data file (same stem,
// .raw extension).
void store_nhdr(const VolumeGrid& grid, const std::filesystem::path& header_path);

}  // namespace isoclean
