// Copyright (c) 2026 glasswarp authors
// SPDX-License-Identifier: Apache-2.0

#include "glasswarp/blend.hpp"

#include <cmath>

#include "glasswarp/error.hpp"

namespace glasswarp {

BlendResult blend_phi(std::span<const ImagePlane *const> images,
                      std::span<const WarpField *const> warps, double lambda,
                      int pyramid_levels) {
    if (images.empty() || images.size() != warps.size())
        fail(ErrorKind::InvalidArgument,
             "blend_phi needs matching non-empty image and warp sequences");
    if (!(lambda >= 0.0 && lambda <= 1.0))
        fail(ErrorKind::InvalidArgument, "blend coefficient must be in [0, 1]");

    // Target dimensions: from the first warp, or the first image when the
    // first warp is the identity.
    int tw = warps[0] ? warps[0]->target_width : images[0]->width;
    int th = warps[0] ? warps[0]->target_height : images[0]->height;

    const size_t n = images.size();
    std::vector<WarpedImage> warped(n);
    for (size_t i = 0; i < n; ++i) {
        if (images[i]->space != ColorSpace::Linear)
            fail(ErrorKind::InvalidArgument, "blend_phi expects linear images");
        if (warps[i] == nullptr) {
            if (images[i]->width != tw || images[i]->height != th)
                fail(ErrorKind::InvalidArgument,
                     "blend_phi: identity source does not match target size");
            warped[i].image = *images[i];
            warped[i].valid.assign(static_cast<size_t>(tw) * th, 1);
        } else {
            if (warps[i]->target_width != tw || warps[i]->target_height != th)
                fail(ErrorKind::InvalidArgument,
                     "blend_phi: warp targets disagree on size");
            warped[i] = pyramid_warp(*images[i], *warps[i], pyramid_levels);
        }
    }

    BlendResult out;
    out.image = ImagePlane(tw, th, ColorSpace::Linear);
    out.passthrough.assign(static_cast<size_t>(tw) * th, 0);

    const ImagePlane &first = *images[0];
    const bool first_matches = first.width == tw && first.height == th;

    for (int y = 0; y < th; ++y) {
        for (int x = 0; x < tw; ++x) {
            const size_t p = static_cast<size_t>(y) * tw + x;
            double mask_sum = 0.0;
            double mean_num[3] = {0, 0, 0};
            double vw_num[3] = {0, 0, 0};
            double vw_den[3] = {0, 0, 0};
            for (size_t i = 0; i < n; ++i) {
                if (!warped[i].valid[p]) continue;
                mask_sum += 1.0;
                const float *w = warped[i].image.px(x, y);
                for (int c = 0; c < 3; ++c) {
                    double v = w[c];
                    mean_num[c] += v;
                    vw_num[c] += std::abs(v) * v;
                    vw_den[c] += std::abs(v);
                }
            }
            float *q = out.image.px(x, y);
            if (mask_sum == 0.0) {
                // No contributor anywhere: the first source passes through.
                if (first_matches) {
                    const float *f = first.px(x, y);
                    q[0] = f[0];
                    q[1] = f[1];
                    q[2] = f[2];
                }
                out.passthrough[p] = 1;
                ++out.passthrough_count;
                continue;
            }
            for (int c = 0; c < 3; ++c) {
                double mean = mean_num[c] / mask_sum;
                double value_weighted = vw_den[c] > 0.0 ? vw_num[c] / vw_den[c] : mean;
                q[c] = static_cast<float>((1.0 - lambda) * mean +
                                          lambda * value_weighted);
            }
        }
    }
    return out;
}

ImagePlane fresnel_composite(const ImagePlane &refracted,
                             const ImagePlane &reflected,
                             const FresnelWeightMap &weights) {
    if (refracted.space != ColorSpace::Linear || reflected.space != ColorSpace::Linear)
        fail(ErrorKind::InvalidArgument, "fresnel_composite expects linear images");
    if (!refracted.same_shape(reflected) || refracted.width != weights.width ||
        refracted.height != weights.height)
        fail(ErrorKind::InvalidArgument, "fresnel_composite: size mismatch");

    ImagePlane out(refracted.width, refracted.height, ColorSpace::Linear);
    for (int y = 0; y < out.height; ++y) {
        for (int x = 0; x < out.width; ++x) {
            const double w = weights.at(x, y);
            const float *a = refracted.px(x, y);
            const float *b = reflected.px(x, y);
            float *q = out.px(x, y);
            if (w == 0.0) {
                q[0] = a[0];
                q[1] = a[1];
                q[2] = a[2];
            } else {
                for (int c = 0; c < 3; ++c)
                    q[c] = static_cast<float>(w * b[c] + (1.0 - w) * a[c]);
            }
        }
    }
    return out;
}

} // namespace glasswarp
