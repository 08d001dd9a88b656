// Copyright (c) 2026 glasswarp authors
// SPDX-License-Identifier: Apache-2.0

#include <bit>
#include <cstring>
#include <fstream>

#include "glasswarp/error.hpp"
#include "glasswarp/warpfield.hpp"

namespace glasswarp {

namespace {

constexpr char kMagic[4] = {'S', 'N', 'W', 'F'};
constexpr uint16_t kVersion = 1;

static_assert(std::endian::native == std::endian::little,
              "warp field serialization assumes a little-endian host");

template <typename T>
void write_le(std::ostream &out, T value) {
    out.write(reinterpret_cast<const char *>(&value), sizeof value);
}

template <typename T>
T read_le(std::istream &in, const std::string &path) {
    T value{};
    in.read(reinterpret_cast<char *>(&value), sizeof value);
    if (!in) fail(ErrorKind::Parse, path + ": truncated warp field");
    return value;
}

} // namespace

WarpField WarpField::make_identity(int width, int height) {
    WarpField f;
    f.target_width = width;
    f.target_height = height;
    f.source_space = SourceSpace::Perspective;
    f.coords.resize(static_cast<size_t>(width) * height * 2);
    f.mask.assign(static_cast<size_t>(width) * height, 1);
    for (int y = 0; y < height; ++y)
        for (int x = 0; x < width; ++x) {
            size_t i = static_cast<size_t>(y) * width + x;
            f.coords[2 * i] = static_cast<float>(x);
            f.coords[2 * i + 1] = static_cast<float>(y);
        }
    return f;
}

void save_warp_field(const std::string &path, const WarpField &field) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorKind::Io, "cannot write warp field: " + path);

    out.write(kMagic, 4);
    write_le(out, kVersion);
    write_le(out, static_cast<uint32_t>(field.target_width));
    write_le(out, static_cast<uint32_t>(field.target_height));
    write_le(out, static_cast<uint8_t>(field.source_space));
    out.write(reinterpret_cast<const char *>(field.coords.data()),
              static_cast<std::streamsize>(field.coords.size() * sizeof(float)));

    const size_t n = field.pixel_count();
    std::vector<uint8_t> packed((n + 7) / 8, 0);
    for (size_t i = 0; i < n; ++i)
        if (field.mask[i]) packed[i >> 3] |= uint8_t(1u << (i & 7));
    out.write(reinterpret_cast<const char *>(packed.data()),
              static_cast<std::streamsize>(packed.size()));
    if (!out) fail(ErrorKind::Io, "failed writing warp field: " + path);
}

WarpField load_warp_field(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::Io, "cannot open warp field: " + path);

    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, kMagic, 4) != 0)
        fail(ErrorKind::Parse, path + ": not a warp field file");
    uint16_t version = read_le<uint16_t>(in, path);
    if (version != kVersion)
        fail(ErrorKind::Parse,
             path + ": unsupported warp field version " + std::to_string(version));

    WarpField f;
    f.target_width = static_cast<int>(read_le<uint32_t>(in, path));
    f.target_height = static_cast<int>(read_le<uint32_t>(in, path));
    uint8_t space = read_le<uint8_t>(in, path);
    if (space > 1) fail(ErrorKind::Parse, path + ": bad source space byte");
    f.source_space = static_cast<SourceSpace>(space);
    if (f.target_width <= 0 || f.target_height <= 0)
        fail(ErrorKind::Parse, path + ": bad warp field dimensions");

    const size_t n = f.pixel_count();
    f.coords.resize(2 * n);
    in.read(reinterpret_cast<char *>(f.coords.data()),
            static_cast<std::streamsize>(f.coords.size() * sizeof(float)));
    std::vector<uint8_t> packed((n + 7) / 8);
    in.read(reinterpret_cast<char *>(packed.data()),
            static_cast<std::streamsize>(packed.size()));
    if (!in) fail(ErrorKind::Parse, path + ": truncated warp field");
    f.mask.resize(n);
    for (size_t i = 0; i < n; ++i)
        f.mask[i] = (packed[i >> 3] >> (i & 7)) & 1u;
    return f;
}

} // namespace glasswarp
