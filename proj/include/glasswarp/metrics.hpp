// Copyright (c) 2026 glasswarp authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

#include "glasswarp/image.hpp"

namespace glasswarp {

struct MetricReport {
    double masked_psnr_db = 0.0; // capped at 99 dB
    double masked_mae = 0.0;
    uint64_t valid_pixel_count = 0;
};

constexpr double kPsnrCapDb = 99.0;

// Rec. 709 luma of a linear image.
std::vector<float> to_luma(const ImagePlane &linear);

// Maps `values` so their masked histogram matches `reference`'s, using 256
// uniform bins over [0, 1] and linear interpolation between CDF knots.
// Only masked entries are read and written.
std::vector<float> histogram_match(const std::vector<float> &values,
                                   const std::vector<float> &reference,
                                   const std::vector<uint8_t> &mask);

// PSNR (peak 1.0) over masked pixels of the luma images, after histogram
// matching the result to the reference inside the mask.
double masked_psnr(const ImagePlane &result, const ImagePlane &reference,
                   const std::vector<uint8_t> &mask);

// Mean absolute difference over masked pixels, averaged across channels.
double masked_mae(const ImagePlane &result, const ImagePlane &reference,
                  const std::vector<uint8_t> &mask);

MetricReport score_images(const ImagePlane &result, const ImagePlane &reference,
                          const std::vector<uint8_t> &mask);

} // namespace glasswarp
