// SPDX-License-Identifier: Apache-2.0

#include "isoclean/volume.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>
#include <utility>

namespace isoclean {

namespace {

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

}  // namespace

std::size_t bytes_per_sample(SampleKind kind) {
    switch (kind) {
        case SampleKind::UInt8: return 1;
        case SampleKind::UInt16: return 2;
        case SampleKind::Int16: return 2;
        case SampleKind::Float32: return 4;
    }
    return 0;
}

std::string_view sample_kind_name(SampleKind kind) {
    switch (kind) {
        case SampleKind::UInt8: return "uint8";
        case SampleKind::UInt16: return "uint16";
        case SampleKind::Int16: return "int16";
        case SampleKind::Float32: return "float32";
    }
    return "?";
}

bool parse_sample_kind(std::string_view text, SampleKind& out) {
    const std::string t = lower(trim(text));
    if (t == "uint8" || t == "uint8_t" || t == "uchar" || t == "unsigned char") {
        out = SampleKind::UInt8;
    } else if (t == "uint16" || t == "uint16_t" || t == "ushort" || t == "unsigned short" ||
               t == "unsigned short int") {
        out = SampleKind::UInt16;
    } else if (t == "int16" || t == "int16_t" || t == "short" || t == "short int" ||
               t == "signed short" || t == "signed short int") {
        out = SampleKind::Int16;
    } else if (t == "float32" || t == "float") {
        out = SampleKind::Float32;
    } else {
        return false;
    }
    return true;
}

VolumeGrid::VolumeGrid(Dims dims, std::vector<double> samples, SampleKind kind,
                       ByteOrder order, Spacing spacing)
    : dims_(dims), samples_(std::move(samples)), kind_(kind), order_(order), spacing_(spacing) {
    if (dims_.nx < 1 || dims_.ny < 1 || dims_.nz < 1)
        throw std::invalid_argument("VolumeGrid: dims must all be >= 1");
    if (samples_.size() != dims_.vertex_count())
        throw std::invalid_argument("VolumeGrid: sample count does not match dims");
    if (!(spacing_.x > 0.0 && spacing_.y > 0.0 && spacing_.z > 0.0))
        throw std::invalid_argument("VolumeGrid: spacing must be positive");
}

VolumeGrid VolumeGrid::with_samples(std::vector<double> samples) const {
    return VolumeGrid(dims_, std::move(samples), kind_, order_, spacing_);
}

namespace {

std::uint64_t checked_vertex_count(const Dims& d) {
    if (d.nx < 1 || d.ny < 1 || d.nz < 1)
        throw VolumeError("dims must all be >= 1");
    constexpr std::uint64_t cap = std::uint64_t{1} << 40;  // 1T samples
    if (d.nx > cap || d.ny > cap || d.nx * d.ny > cap || d.nx * d.ny * d.nz > cap)
        throw VolumeError("dims too large");
    return d.vertex_count();
}

std::uint16_t assemble16(const unsigned char* p, ByteOrder order) {
    return order == ByteOrder::Little
               ? static_cast<std::uint16_t>(p[0] | (p[1] << 8))
               : static_cast<std::uint16_t>(p[1] | (p[0] << 8));
}

std::uint32_t assemble32(const unsigned char* p, ByteOrder order) {
    if (order == ByteOrder::Little)
        return std::uint32_t{p[0]} | std::uint32_t{p[1]} << 8 | std::uint32_t{p[2]} << 16 |
               std::uint32_t{p[3]} << 24;
    return std::uint32_t{p[3]} | std::uint32_t{p[2]} << 8 | std::uint32_t{p[1]} << 16 |
           std::uint32_t{p[0]} << 24;
}

void split16(std::uint16_t v, unsigned char* p, ByteOrder order) {
    if (order == ByteOrder::Little) {
        p[0] = static_cast<unsigned char>(v & 0xFF);
        p[1] = static_cast<unsigned char>(v >> 8);
    } else {
        p[1] = static_cast<unsigned char>(v & 0xFF);
        p[0] = static_cast<unsigned char>(v >> 8);
    }
}

void split32(std::uint32_t v, unsigned char* p, ByteOrder order) {
    if (order == ByteOrder::Little) {
        for (int i = 0; i < 4; ++i) p[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xFF);
    } else {
        for (int i = 0; i < 4; ++i) p[3 - i] = static_cast<unsigned char>((v >> (8 * i)) & 0xFF);
    }
}

}  // namespace

VolumeGrid load_raw(const std::filesystem::path& path, Dims dims, SampleKind kind,
                    ByteOrder order) {
    const std::uint64_t nv = checked_vertex_count(dims);
    const std::uint64_t expected = nv * bytes_per_sample(kind);

    std::error_code ec;
    const std::uint64_t actual = std::filesystem::file_size(path, ec);
    if (ec) throw VolumeError("cannot stat '" + path.string() + "': " + ec.message());
    if (actual != expected) {
        std::ostringstream msg;
        msg << "size mismatch for '" << path.string() << "': expected " << expected
            << " bytes (" << dims.nx << "x" << dims.ny << "x" << dims.nz << " "
            << sample_kind_name(kind) << "), got " << actual;
        throw VolumeError(msg.str());
    }

    std::ifstream in(path, std::ios::binary);
    if (!in) throw VolumeError("cannot open '" + path.string() + "' for reading");
    std::vector<unsigned char> bytes(expected);
    in.read(reinterpret_cast<char*>(bytes.data()), static_cast<std::streamsize>(expected));
    if (!in) throw VolumeError("short read from '" + path.string() + "'");

    std::vector<double> samples(nv);
    const unsigned char* p = bytes.data();
    switch (kind) {
        case SampleKind::UInt8:
            for (std::uint64_t i = 0; i < nv; ++i) samples[i] = static_cast<double>(p[i]);
            break;
        case SampleKind::UInt16:
            for (std::uint64_t i = 0; i < nv; ++i)
                samples[i] = static_cast<double>(assemble16(p + 2 * i, order));
            break;
        case SampleKind::Int16:
            for (std::uint64_t i = 0; i < nv; ++i)
                samples[i] = static_cast<double>(
                    static_cast<std::int16_t>(assemble16(p + 2 * i, order)));
            break;
        case SampleKind::Float32:
            for (std::uint64_t i = 0; i < nv; ++i)
                samples[i] = static_cast<double>(
                    std::bit_cast<float>(assemble32(p + 4 * i, order)));
            break;
    }
    return VolumeGrid(dims, std::move(samples), kind, order);
}

namespace {

struct EncodeLimits {
    double lo, hi;
};

EncodeLimits integral_limits(SampleKind kind) {
    switch (kind) {
        case SampleKind::UInt8: return {0.0, 255.0};
        case SampleKind::UInt16: return {0.0, 65535.0};
        case SampleKind::Int16: return {-32768.0, 32767.0};
        default: return {0.0, 0.0};
    }
}

[[noreturn]] void non_representable(std::uint64_t vertex, double value, SampleKind kind) {
    std::ostringstream msg;
    msg << "value " << value << " at vertex " << vertex << " is not representable as "
        << sample_kind_name(kind);
    throw VolumeError(msg.str());
}

// Round to nearest for integral kinds. Clamping is limited to a one-unit
// margin past the range: wide enough for the filter's sigma+-1 fallback,
// narrow enough that genuinely foreign values still fail loudly.
long long encode_integral(double v, std::uint64_t vertex, SampleKind kind) {
    if (!std::isfinite(v)) non_representable(vertex, v, kind);
    const auto [lo, hi] = integral_limits(kind);
    if (v < lo - 1.0 || v > hi + 1.0) non_representable(vertex, v, kind);
    const double clamped = std::clamp(v, lo, hi);
    return std::llround(clamped);
}

}  // namespace

void store_raw(const VolumeGrid& grid, const std::filesystem::path& path) {
    const std::uint64_t nv = grid.vertex_count();
    const SampleKind kind = grid.sample_kind();
    const ByteOrder order = grid.byte_order();
    std::vector<unsigned char> bytes(nv * bytes_per_sample(kind));
    unsigned char* p = bytes.data();

    const std::vector<double>& s = grid.samples();
    switch (kind) {
        case SampleKind::UInt8:
            for (std::uint64_t i = 0; i < nv; ++i)
                p[i] = static_cast<unsigned char>(encode_integral(s[i], i, kind));
            break;
        case SampleKind::UInt16:
            for (std::uint64_t i = 0; i < nv; ++i)
                split16(static_cast<std::uint16_t>(encode_integral(s[i], i, kind)), p + 2 * i,
                        order);
            break;
        case SampleKind::Int16:
            for (std::uint64_t i = 0; i < nv; ++i)
                split16(static_cast<std::uint16_t>(
                            static_cast<std::int16_t>(encode_integral(s[i], i, kind))),
                        p + 2 * i, order);
            break;
        case SampleKind::Float32:
            for (std::uint64_t i = 0; i < nv; ++i) {
                const float f = static_cast<float>(s[i]);
                if (std::isinf(f) && std::isfinite(s[i])) non_representable(i, s[i], kind);
                split32(std::bit_cast<std::uint32_t>(f), p + 4 * i, order);
            }
            break;
    }

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw VolumeError("cannot open '" + path.string() + "' for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw VolumeError("short write to '" + path.string() + "'");
}

// ---------------------------------------------------------------------------
// NRRD detached headers
// ---------------------------------------------------------------------------

namespace {

[[noreturn]] void unsupported(const std::string& line) {
    throw VolumeError("unsupported NRRD field: '" + line + "'");
}

std::vector<std::string> split_ws(std::string_view s) {
    std::vector<std::string> out;
    std::istringstream in{std::string(s)};
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

// "(1,0,0) (0,1,0) (0,0,1.4)" -> per-axis vector norms
bool parse_space_directions(std::string_view value, Spacing& out) {
    std::vector<double> norms;
    std::size_t pos = 0;
    const std::string v(value);
    while (pos < v.size()) {
        const std::size_t open = v.find('(', pos);
        if (open == std::string::npos) break;
        const std::size_t close = v.find(')', open);
        if (close == std::string::npos) return false;
        std::string body = v.substr(open + 1, close - open - 1);
        std::replace(body.begin(), body.end(), ',', ' ');
        const auto parts = split_ws(body);
        if (parts.size() != 3) return false;
        double sq = 0.0;
        for (const auto& part : parts) {
            try {
                const double c = std::stod(part);
                sq += c * c;
            } catch (const std::exception&) {
                return false;
            }
        }
        norms.push_back(std::sqrt(sq));
        pos = close + 1;
    }
    if (norms.size() != 3) return false;
    if (!(norms[0] > 0.0 && norms[1] > 0.0 && norms[2] > 0.0)) return false;
    out = {norms[0], norms[1], norms[2]};
    return true;
}

}  // namespace

VolumeGrid load_nhdr(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw VolumeError("cannot open '" + path.string() + "' for reading");

    std::string line;
    if (!std::getline(in, line)) throw VolumeError("empty NRRD header: " + path.string());
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.rfind("NRRD", 0) != 0)
        throw VolumeError("not an NRRD header (bad magic): " + path.string());

    bool have_kind = false, have_dims = false, have_encoding = false;
    SampleKind kind{};
    Dims dims{};
    ByteOrder order = ByteOrder::Little;
    Spacing spacing{};
    bool have_spacing = false;
    std::string data_file;

    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) break;  // header terminator
        if (line[0] == '#') continue;
        if (line.find(":=") != std::string::npos) continue;  // key-value pairs

        const std::size_t colon = line.find(": ");
        if (colon == std::string::npos) {
            // A lone "field:" with empty value is malformed for our subset.
            if (line.back() == ':') unsupported(line);
            throw VolumeError("malformed NRRD header line: '" + line + "'");
        }
        const std::string field = lower(trim(line.substr(0, colon)));
        const std::string value{trim(std::string_view(line).substr(colon + 2))};

        if (field == "type") {
            if (!parse_sample_kind(value, kind)) unsupported(line);
            have_kind = true;
        } else if (field == "dimension") {
            if (value != "3") unsupported(line);
        } else if (field == "sizes") {
            const auto parts = split_ws(value);
            if (parts.size() != 3) unsupported(line);
            try {
                dims.nx = std::stoull(parts[0]);
                dims.ny = std::stoull(parts[1]);
                dims.nz = std::stoull(parts[2]);
            } catch (const std::exception&) {
                unsupported(line);
            }
            have_dims = true;
        } else if (field == "encoding") {
            if (lower(value) != "raw") unsupported(line);
            have_encoding = true;
        } else if (field == "endian") {
            const std::string v = lower(value);
            if (v == "little")
                order = ByteOrder::Little;
            else if (v == "big")
                order = ByteOrder::Big;
            else
                unsupported(line);
        } else if (field == "data file" || field == "datafile") {
            if (value == "LIST" || value.find('%') != std::string::npos) unsupported(line);
            data_file = value;
        } else if (field == "spacings") {
            const auto parts = split_ws(value);
            if (parts.size() != 3) unsupported(line);
            try {
                spacing = {std::stod(parts[0]), std::stod(parts[1]), std::stod(parts[2])};
            } catch (const std::exception&) {
                unsupported(line);
            }
            if (!(spacing.x > 0.0 && spacing.y > 0.0 && spacing.z > 0.0)) unsupported(line);
            have_spacing = true;
        } else if (field == "space directions") {
            if (!parse_space_directions(value, spacing)) unsupported(line);
            have_spacing = true;
        } else if (field == "byte skip" || field == "byteskip" || field == "line skip" ||
                   field == "lineskip") {
            if (value != "0") unsupported(line);
        }
        // Remaining fields (space, space origin, kinds, content, ...) do not
        // affect the sample layout and are ignored.
    }

    if (!have_kind) throw VolumeError("NRRD header missing 'type': " + path.string());
    if (!have_dims) throw VolumeError("NRRD header missing 'sizes': " + path.string());
    if (!have_encoding) throw VolumeError("NRRD header missing 'encoding': " + path.string());
    if (data_file.empty())
        throw VolumeError("NRRD header missing 'data file': " + path.string());

    std::filesystem::path data_path(data_file);
    if (data_path.is_relative()) data_path = path.parent_path() / data_path;

    VolumeGrid grid = load_raw(data_path, dims, kind, order);
    if (have_spacing) {
        return VolumeGrid(grid.dims(), std::vector<double>(grid.samples()), kind, order,
                          spacing);
    }
    return grid;
}

void store_nhdr(const VolumeGrid& grid, const std::filesystem::path& header_path) {
    std::filesystem::path raw_path = header_path;
    raw_path.replace_extension(".raw");
    store_raw(grid, raw_path);

    std::ofstream out(header_path, std::ios::trunc);
    if (!out) throw VolumeError("cannot open '" + header_path.string() + "' for writing");
    out << "NRRD0004\n";
    out << "type: " << sample_kind_name(grid.sample_kind()) << "\n";
    out << "dimension: 3\n";
    out << "sizes: " << grid.dims().nx << " " << grid.dims().ny << " " << grid.dims().nz
        << "\n";
    out << "spacings: " << grid.spacing().x << " " << grid.spacing().y << " "
        << grid.spacing().z << "\n";
    if (bytes_per_sample(grid.sample_kind()) > 1)
        out << "endian: " << (grid.byte_order() == ByteOrder::Little ? "little" : "big")
            << "\n";
    out << "encoding: raw\n";
    out << "data file: " << raw_path.filename().string() << "\n";
    if (!out) throw VolumeError("short write to '" + header_path.string() + "'");
}

}  // namespace isoclean
