// Copyright (c) 2026 glasswarp authors
// SPDX-License-Identifier: Apache-2.0

#include "glasswarp/pyramid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "glasswarp/error.hpp"

namespace glasswarp {

namespace {

constexpr double kKernel[5] = {1.0 / 16, 4.0 / 16, 6.0 / 16, 4.0 / 16, 1.0 / 16};

inline int reflect101(int i, int n) {
    if (n == 1) return 0;
    while (i < 0 || i >= n) {
        if (i < 0) i = -i;
        if (i >= n) i = 2 * n - 2 - i;
    }
    return i;
}

ImagePlane blur5(const ImagePlane &img) {
    const int w = img.width, h = img.height;
    ImagePlane tmp(w, h, img.space);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            double acc[3] = {0, 0, 0};
            for (int m = -2; m <= 2; ++m) {
                const float *p = img.px(reflect101(x + m, w), y);
                double k = kKernel[m + 2];
                acc[0] += k * p[0];
                acc[1] += k * p[1];
                acc[2] += k * p[2];
            }
            float *q = tmp.px(x, y);
            q[0] = static_cast<float>(acc[0]);
            q[1] = static_cast<float>(acc[1]);
            q[2] = static_cast<float>(acc[2]);
        }
    }
    ImagePlane out(w, h, img.space);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            double acc[3] = {0, 0, 0};
            for (int m = -2; m <= 2; ++m) {
                const float *p = tmp.px(x, reflect101(y + m, h));
                double k = kKernel[m + 2];
                acc[0] += k * p[0];
                acc[1] += k * p[1];
                acc[2] += k * p[2];
            }
            float *q = out.px(x, y);
            q[0] = static_cast<float>(acc[0]);
            q[1] = static_cast<float>(acc[1]);
            q[2] = static_cast<float>(acc[2]);
        }
    }
    return out;
}

inline int half_size(int n) { return (n + 1) / 2; }

} // namespace

ImagePlane pyramid_downsample(const ImagePlane &img) {
    ImagePlane blurred = blur5(img);
    ImagePlane out(half_size(img.width), half_size(img.height), img.space);
    for (int y = 0; y < out.height; ++y)
        for (int x = 0; x < out.width; ++x) {
            const float *p = blurred.px(2 * x, 2 * y);
            float *q = out.px(x, y);
            q[0] = p[0];
            q[1] = p[1];
            q[2] = p[2];
        }
    return out;
}

// Zero-stuffed transpose of the decimation, with the kernel doubled so a
// constant image stays constant.
ImagePlane pyramid_upsample(const ImagePlane &img, int target_width,
                            int target_height) {
    const int cw = img.width, ch = img.height;
    // Horizontal pass: coarse -> target width.
    ImagePlane tmp(target_width, ch, img.space);
    for (int y = 0; y < ch; ++y) {
        for (int x = 0; x < target_width; ++x) {
            double acc[3] = {0, 0, 0};
            if (x % 2 == 0) {
                const int c = x / 2;
                const double wgt[3] = {2 * kKernel[0], 2 * kKernel[2], 2 * kKernel[4]};
                const int idx[3] = {c - 1, c, c + 1};
                for (int k = 0; k < 3; ++k) {
                    const float *p = img.px(reflect101(idx[k], cw), y);
                    acc[0] += wgt[k] * p[0];
                    acc[1] += wgt[k] * p[1];
                    acc[2] += wgt[k] * p[2];
                }
            } else {
                const int c = (x - 1) / 2;
                const double wgt = 2 * kKernel[1];
                const int idx[2] = {c, c + 1};
                for (int k = 0; k < 2; ++k) {
                    const float *p = img.px(reflect101(idx[k], cw), y);
                    acc[0] += wgt * p[0];
                    acc[1] += wgt * p[1];
                    acc[2] += wgt * p[2];
                }
            }
            float *q = tmp.px(x, y);
            q[0] = static_cast<float>(acc[0]);
            q[1] = static_cast<float>(acc[1]);
            q[2] = static_cast<float>(acc[2]);
        }
    }
    // Vertical pass: coarse -> target height.
    ImagePlane out(target_width, target_height, img.space);
    for (int y = 0; y < target_height; ++y) {
        for (int x = 0; x < target_width; ++x) {
            double acc[3] = {0, 0, 0};
            if (y % 2 == 0) {
                const int c = y / 2;
                const double wgt[3] = {2 * kKernel[0], 2 * kKernel[2], 2 * kKernel[4]};
                const int idx[3] = {c - 1, c, c + 1};
                for (int k = 0; k < 3; ++k) {
                    const float *p = tmp.px(x, reflect101(idx[k], ch));
                    acc[0] += wgt[k] * p[0];
                    acc[1] += wgt[k] * p[1];
                    acc[2] += wgt[k] * p[2];
                }
            } else {
                const int c = (y - 1) / 2;
                const double wgt = 2 * kKernel[1];
                const int idx[2] = {c, c + 1};
                for (int k = 0; k < 2; ++k) {
                    const float *p = tmp.px(x, reflect101(idx[k], ch));
                    acc[0] += wgt * p[0];
                    acc[1] += wgt * p[1];
                    acc[2] += wgt * p[2];
                }
            }
            float *q = out.px(x, y);
            q[0] = static_cast<float>(acc[0]);
            q[1] = static_cast<float>(acc[1]);
            q[2] = static_cast<float>(acc[2]);
        }
    }
    return out;
}

namespace {

void check_levels(int width, int height, int levels) {
    if (levels < 1) fail(ErrorKind::InvalidArgument, "pyramid needs levels >= 1");
    const int need = 1 << (levels - 1);
    if (width < need || height < need)
        fail(ErrorKind::InvalidArgument,
             "image " + std::to_string(width) + "x" + std::to_string(height) +
                 " too small for " + std::to_string(levels) + " pyramid levels");
}

} // namespace

LaplacianPyramid build_pyramid(const ImagePlane &img, int levels) {
    check_levels(img.width, img.height, levels);
    LaplacianPyramid pyr;
    pyr.levels = levels;

    ImagePlane current = img;
    for (int k = 0; k + 1 < levels; ++k) {
        ImagePlane down = pyramid_downsample(current);
        ImagePlane up = pyramid_upsample(down, current.width, current.height);
        ImagePlane band(current.width, current.height, img.space);
        for (size_t i = 0; i < band.samples.size(); ++i)
            band.samples[i] = current.samples[i] - up.samples[i];
        pyr.bands.push_back(std::move(band));
        current = std::move(down);
    }
    pyr.bands.push_back(std::move(current));
    return pyr;
}

ImagePlane collapse_pyramid(const LaplacianPyramid &pyr) {
    if (pyr.bands.empty()) fail(ErrorKind::InvalidArgument, "empty pyramid");
    ImagePlane acc = pyr.bands.back();
    for (int k = static_cast<int>(pyr.bands.size()) - 2; k >= 0; --k) {
        const ImagePlane &band = pyr.bands[k];
        ImagePlane up = pyramid_upsample(acc, band.width, band.height);
        for (size_t i = 0; i < up.samples.size(); ++i)
            up.samples[i] += band.samples[i];
        acc = std::move(up);
    }
    return acc;
}

WarpedImage pyramid_warp(const ImagePlane &img, const WarpField &warp, int levels) {
    check_levels(img.width, img.height, levels);
    const int tw = warp.target_width, th = warp.target_height;
    if (tw <= 0 || th <= 0)
        fail(ErrorKind::InvalidArgument, "warp field has empty target");
    check_levels(tw, th, levels);

    // Bands are sampled with border clamping; out-of-domain reads would
    // otherwise inject zeros that the collapse smears back inside. The
    // footprint check below still reports those pixels as invalid.
    const WrapMode wrap =
        warp.source_space == SourceSpace::Panorama ? WrapMode::WrapX : WrapMode::Clamp;

    LaplacianPyramid src = build_pyramid(img, levels);

    // Warp each band at its own scale; level-k target pixel (i, j) reads the
    // full-resolution warp entry at (i << k, j << k) with coordinates / 2^k.
    LaplacianPyramid warped;
    warped.levels = levels;
    int lw = tw, lh = th;
    for (int k = 0; k < levels; ++k) {
        const ImagePlane &band = src.bands[k];
        ImagePlane wband(lw, lh, img.space);
        const double scale = 1.0 / double(1 << k);
        for (int j = 0; j < lh; ++j) {
            for (int i = 0; i < lw; ++i) {
                const int fx = i << k, fy = j << k;
                // Masked pixels are sampled too (their coordinates are
                // nearest-valid fallbacks); leaving holes would corrupt
                // valid neighbors when the collapse smears across them.
                Vec2 c{warp.x_at(fx, fy) * scale, warp.y_at(fx, fy) * scale};
                SampleResult s = bilinear_sample(band, c, wrap);
                float *q = wband.px(i, j);
                q[0] = s.rgb[0];
                q[1] = s.rgb[1];
                q[2] = s.rgb[2];
            }
        }
        warped.bands.push_back(std::move(wband));
        lw = half_size(lw);
        lh = half_size(lh);
    }

    WarpedImage out;
    out.image = collapse_pyramid(warped);
    out.image.space = img.space;

    // Footprint erosion: a target pixel stays valid only if its bilinear
    // footprint lies inside the source image (panorama sources wrap and are
    // always valid). Coarser levels fall back to border clamping, which only
    // perturbs values near the frame instead of invalidating them.
    out.valid.assign(static_cast<size_t>(tw) * th, 0);
    for (int y = 0; y < th; ++y) {
        for (int x = 0; x < tw; ++x) {
            if (!warp.valid_at(x, y)) continue;
            bool ok = true;
            if (warp.source_space == SourceSpace::Perspective) {
                double cx = warp.x_at(x, y), cy = warp.y_at(x, y);
                double fx = std::floor(cx), fy = std::floor(cy);
                int x1 = static_cast<int>(fx) + (cx > fx ? 1 : 0);
                int y1 = static_cast<int>(fy) + (cy > fy ? 1 : 0);
                ok = fx >= 0.0 && fy >= 0.0 && x1 <= img.width - 1 &&
                     y1 <= img.height - 1;
            }
            out.valid[static_cast<size_t>(y) * tw + x] = ok ? 1 : 0;
        }
    }
    return out;
}

} // namespace glasswarp
