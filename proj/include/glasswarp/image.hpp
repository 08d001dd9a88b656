// Copyright (c) 2026 glasswarp authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "glasswarp/vec.hpp"

namespace glasswarp {

enum class ColorSpace : uint8_t {
    Linear = 0,
    Srgb = 1,
};

// Three-channel float raster, row-major RGB interleaved. Pixel centers sit
// at integer coordinates.
struct ImagePlane {
    int width = 0;
    int height = 0;
    ColorSpace space = ColorSpace::Linear;
    std::vector<float> samples; // width * height * 3

    ImagePlane() = default;
    ImagePlane(int w, int h, ColorSpace s = ColorSpace::Linear, float fill = 0.0f)
        : width(w), height(h), space(s),
          samples(static_cast<size_t>(w) * h * 3, fill) {}

    float *px(int x, int y) {
        return samples.data() + 3 * (static_cast<size_t>(y) * width + x);
    }
    const float *px(int x, int y) const {
        return samples.data() + 3 * (static_cast<size_t>(y) * width + x);
    }
    size_t pixel_count() const { return static_cast<size_t>(width) * height; }
    bool same_shape(const ImagePlane &o) const {
        return width == o.width && height == o.height;
    }
};

enum class WrapMode : uint8_t {
    Zero,  // out-of-bounds corners invalidate the sample
    WrapX, // wrap horizontally, clamp vertically (equirectangular sources)
    Clamp, // clamp both axes; always valid
};

struct SampleResult {
    std::array<float, 3> rgb{0.0f, 0.0f, 0.0f};
    bool valid = false;
};

// Standard bilinear interpolation; integer coordinates return the exact
// pixel value.
SampleResult bilinear_sample(const ImagePlane &img, Vec2 coord,
                             WrapMode wrap = WrapMode::Zero);

// IEC 61966-2-1 transfer, applied per sample. Converting an image whose tag
// does not match is an error (guards against double conversion).
ImagePlane srgb_to_linear(const ImagePlane &img);
ImagePlane linear_to_srgb(const ImagePlane &img);
double srgb_encode(double linear);
double srgb_decode(double srgb);

} // namespace glasswarp
