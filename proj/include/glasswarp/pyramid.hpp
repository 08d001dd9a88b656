// Copyright (c) 2026 glasswarp authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "glasswarp/image.hpp"
#include "glasswarp/warpfield.hpp"

namespace glasswarp {

// Burt-Adelson decomposition with the 5-tap binomial kernel (1,4,6,4,1)/16
// and reflect-101 borders. `levels` counts Gaussian levels: levels-1
// difference bands (finest first) plus the coarse residual.
struct LaplacianPyramid {
    int levels = 0;
    std::vector<ImagePlane> bands; // bands[levels-1] is the residual
};

LaplacianPyramid build_pyramid(const ImagePlane &img, int levels);
ImagePlane collapse_pyramid(const LaplacianPyramid &pyr);

struct WarpedImage {
    ImagePlane image;
    std::vector<uint8_t> valid; // warp mask eroded by sampling-footprint validity
};

// Warps every pyramid band at its own resolution (coordinates divided by
// 2^level), then collapses. Panorama sources wrap horizontally and clamp at
// the poles; perspective sources invalidate samples whose footprint leaves
// the image at any level.
WarpedImage pyramid_warp(const ImagePlane &img, const WarpField &warp, int levels);

// Internal resampling primitives, exposed for tests.
ImagePlane pyramid_downsample(const ImagePlane &img);
ImagePlane pyramid_upsample(const ImagePlane &img, int target_width,
                            int target_height);

} // namespace glasswarp
