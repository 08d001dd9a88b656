// Copyright (c) 2026 glasswarp authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace glasswarp {

enum class SourceSpace : uint8_t {
    Perspective = 0,
    Panorama = 1,
};

// Dense per-pixel map from a target image into continuous coordinates of a
// named source image, with a validity mask. Wherever mask = 1 the stored
// coordinates are meaningful; mask = 0 pixels carry no claim.
struct WarpField {
    int target_width = 0;
    int target_height = 0;
    SourceSpace source_space = SourceSpace::Perspective;
    std::vector<float> coords; // 2 floats (x, y) per pixel, row-major
    std::vector<uint8_t> mask; // 1 byte per pixel, 0 or 1

    static WarpField make_identity(int width, int height);

    size_t pixel_count() const {
        return static_cast<size_t>(target_width) * target_height;
    }
    float x_at(int x, int y) const {
        return coords[2 * (static_cast<size_t>(y) * target_width + x)];
    }
    float y_at(int x, int y) const {
        return coords[2 * (static_cast<size_t>(y) * target_width + x) + 1];
    }
    bool valid_at(int x, int y) const {
        return mask[static_cast<size_t>(y) * target_width + x] != 0;
    }
    void set(int x, int y, float sx, float sy, bool valid) {
        size_t i = static_cast<size_t>(y) * target_width + x;
        coords[2 * i] = sx;
        coords[2 * i + 1] = sy;
        mask[i] = valid ? 1 : 0;
    }
};

// Per-pixel average dielectric reflectance 0.5 * (R_p + R_s), zero outside
// the object silhouette.
struct FresnelWeightMap {
    int width = 0;
    int height = 0;
    std::vector<float> weights;

    float at(int x, int y) const {
        return weights[static_cast<size_t>(y) * width + x];
    }
};

// Binary serialization: magic "SNWF", u16 version, u32 width, u32 height,
// u8 source space, row-major f32 (x, y) pairs, then a row-major packed
// bitmask (LSB first). Everything little-endian.
void save_warp_field(const std::string &path, const WarpField &field);
WarpField load_warp_field(const std::string &path);

} // namespace glasswarp
