// Copyright (c) 2026 glasswarp authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <vector>

#include "glasswarp/pyramid.hpp"

namespace glasswarp {

struct BlendResult {
    ImagePlane image;
    // Pixels where no warp contributed and the first source passed through
    // unblended.
    std::vector<uint8_t> passthrough;
    size_t passthrough_count = 0;
};

// Occlusion-masked blend with value-weighted averaging. With warped sources
// W_i and masks M_i the output per pixel and channel is
//   (1 - lambda) * sum(M_i W_i) / sum(M_i)
//     + lambda * sum(M_i |W_i| W_i) / sum(M_i |W_i|),
// value weights taken per channel. Pixels with sum(M_i) = 0 pass the first
// image through; a zero value-weight denominator falls back to the plain
// masked mean. A null warp entry stands for the identity warp (mask all
// ones, no resampling).
BlendResult blend_phi(std::span<const ImagePlane *const> images,
                      std::span<const WarpField *const> warps, double lambda,
                      int pyramid_levels);

// c' = w * reflected + (1 - w) * refracted, per pixel. Both images must be
// linear; pixels with w = 0 return the refracted input unchanged.
ImagePlane fresnel_composite(const ImagePlane &refracted,
                             const ImagePlane &reflected,
                             const FresnelWeightMap &weights);

} // namespace glasswarp
