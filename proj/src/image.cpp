// Copyright (c) 2026 glasswarp authors
// SPDX-License-Identifier: Apache-2.0

#include "glasswarp/image.hpp"

#include <cmath>

#include "glasswarp/error.hpp"

namespace glasswarp {

SampleResult bilinear_sample(const ImagePlane &img, Vec2 coord, WrapMode wrap) {
    SampleResult out;
    const int w = img.width, h = img.height;
    if (w <= 0 || h <= 0) return out;

    double fx = std::floor(coord.x);
    double fy = std::floor(coord.y);
    int x0 = static_cast<int>(fx);
    int y0 = static_cast<int>(fy);
    double ax = coord.x - fx;
    double ay = coord.y - fy;

    int x1 = x0 + 1, y1 = y0 + 1;
    if (wrap == WrapMode::Zero) {
        if (x0 < 0 || y0 < 0 || x1 > w - 1 || y1 > h - 1) {
            // Integer coordinates on the far edge still index a single pixel.
            if (ax == 0.0) x1 = x0;
            if (ay == 0.0) y1 = y0;
            if (x0 < 0 || y0 < 0 || x1 > w - 1 || y1 > h - 1) return out;
        }
    } else if (wrap == WrapMode::WrapX) {
        auto wrapx = [w](int x) {
            x %= w;
            return x < 0 ? x + w : x;
        };
        x0 = wrapx(x0);
        x1 = wrapx(x1);
        y0 = std::clamp(y0, 0, h - 1);
        y1 = std::clamp(y1, 0, h - 1);
    } else {
        x0 = std::clamp(x0, 0, w - 1);
        x1 = std::clamp(x1, 0, w - 1);
        y0 = std::clamp(y0, 0, h - 1);
        y1 = std::clamp(y1, 0, h - 1);
    }

    const float *p00 = img.px(x0, y0);
    const float *p10 = img.px(x1, y0);
    const float *p01 = img.px(x0, y1);
    const float *p11 = img.px(x1, y1);
    for (int c = 0; c < 3; ++c) {
        double top = p00[c] + ax * (p10[c] - p00[c]);
        double bot = p01[c] + ax * (p11[c] - p01[c]);
        out.rgb[c] = static_cast<float>(top + ay * (bot - top));
    }
    out.valid = true;
    return out;
}

double srgb_encode(double linear) {
    if (linear <= 0.0031308) return 12.92 * linear;
    return 1.055 * std::pow(linear, 1.0 / 2.4) - 0.055;
}

double srgb_decode(double srgb) {
    if (srgb <= 0.04045) return srgb / 12.92;
    return std::pow((srgb + 0.055) / 1.055, 2.4);
}

ImagePlane srgb_to_linear(const ImagePlane &img) {
    if (img.space != ColorSpace::Srgb)
        fail(ErrorKind::InvalidArgument,
             "srgb_to_linear: image is not tagged sRGB (double conversion?)");
    ImagePlane out(img.width, img.height, ColorSpace::Linear);
    for (size_t i = 0; i < img.samples.size(); ++i)
        out.samples[i] = static_cast<float>(srgb_decode(img.samples[i]));
    return out;
}

ImagePlane linear_to_srgb(const ImagePlane &img) {
    if (img.space != ColorSpace::Linear)
        fail(ErrorKind::InvalidArgument,
             "linear_to_srgb: image is not tagged linear (double conversion?)");
    ImagePlane out(img.width, img.height, ColorSpace::Srgb);
    for (size_t i = 0; i < img.samples.size(); ++i)
        out.samples[i] = static_cast<float>(srgb_encode(img.samples[i]));
    return out;
}

} // namespace glasswarp
