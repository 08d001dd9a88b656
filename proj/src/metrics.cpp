// Copyright (c) 2026 glasswarp authors
// SPDX-License-Identifier: Apache-2.0

#include "glasswarp/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "glasswarp/error.hpp"

namespace glasswarp {

namespace {

constexpr int kBins = 256;

void check_inputs(const ImagePlane &result, const ImagePlane &reference,
                  const std::vector<uint8_t> &mask) {
    if (!result.same_shape(reference))
        fail(ErrorKind::InvalidArgument, "metric images differ in size");
    if (mask.size() != result.pixel_count())
        fail(ErrorKind::InvalidArgument, "mask size does not match images");
    if (std::find(mask.begin(), mask.end(), uint8_t(1)) == mask.end())
        fail(ErrorKind::InvalidArgument, "metric mask is empty");
}

// Piecewise-linear CDF over kBins uniform bins spanning [0, 1]; knot k holds
// the mass of values below bin edge k / kBins.
struct BinnedCdf {
    std::array<double, kBins + 1> knots{};

    static BinnedCdf from(const std::vector<float> &values,
                          const std::vector<uint8_t> &mask) {
        std::array<double, kBins> hist{};
        double total = 0.0;
        for (size_t i = 0; i < values.size(); ++i) {
            if (!mask[i]) continue;
            double v = std::clamp(static_cast<double>(values[i]), 0.0, 1.0);
            int b = std::min(kBins - 1, static_cast<int>(v * kBins));
            hist[b] += 1.0;
            total += 1.0;
        }
        BinnedCdf cdf;
        double acc = 0.0;
        cdf.knots[0] = 0.0;
        for (int b = 0; b < kBins; ++b) {
            acc += hist[b];
            cdf.knots[b + 1] = acc / total;
        }
        return cdf;
    }

    double forward(double v) const {
        v = std::clamp(v, 0.0, 1.0);
        double pos = v * kBins;
        int b = std::min(kBins - 1, static_cast<int>(pos));
        double frac = pos - b;
        return knots[b] + frac * (knots[b + 1] - knots[b]);
    }

    // Inverse by linear interpolation; plateaus resolve to their left edge.
    double inverse(double q) const {
        q = std::clamp(q, 0.0, 1.0);
        int lo = 0;
        int hi = kBins;
        while (lo < hi) {
            int mid = (lo + hi) / 2;
            if (knots[mid + 1] < q)
                lo = mid + 1;
            else
                hi = mid;
        }
        // knots[lo] <= ... interval [lo, lo+1] crosses q
        double k0 = knots[lo], k1 = knots[lo + 1];
        double frac = k1 > k0 ? (q - k0) / (k1 - k0) : 0.0;
        return (lo + frac) / kBins;
    }
};

} // namespace

std::vector<float> to_luma(const ImagePlane &linear) {
    std::vector<float> luma(linear.pixel_count());
    for (size_t i = 0; i < luma.size(); ++i) {
        const float *p = linear.samples.data() + 3 * i;
        luma[i] = static_cast<float>(0.2126 * p[0] + 0.7152 * p[1] + 0.0722 * p[2]);
    }
    return luma;
}

std::vector<float> histogram_match(const std::vector<float> &values,
                                   const std::vector<float> &reference,
                                   const std::vector<uint8_t> &mask) {
    if (values.size() != reference.size() || values.size() != mask.size())
        fail(ErrorKind::InvalidArgument, "histogram_match: size mismatch");
    BinnedCdf source = BinnedCdf::from(values, mask);
    BinnedCdf target = BinnedCdf::from(reference, mask);
    std::vector<float> out = values;
    for (size_t i = 0; i < values.size(); ++i) {
        if (!mask[i]) continue;
        double q = source.forward(values[i]);
        out[i] = static_cast<float>(target.inverse(q));
    }
    return out;
}

double masked_psnr(const ImagePlane &result, const ImagePlane &reference,
                   const std::vector<uint8_t> &mask) {
    check_inputs(result, reference, mask);
    std::vector<float> luma_result = to_luma(result);
    std::vector<float> luma_reference = to_luma(reference);
    std::vector<float> matched = histogram_match(luma_result, luma_reference, mask);

    double sse = 0.0;
    uint64_t count = 0;
    for (size_t i = 0; i < matched.size(); ++i) {
        if (!mask[i]) continue;
        double d = matched[i] - luma_reference[i];
        sse += d * d;
        ++count;
    }
    double mse = sse / static_cast<double>(count);
    if (mse <= 0.0) return kPsnrCapDb;
    return std::min(kPsnrCapDb, 10.0 * std::log10(1.0 / mse));
}

double masked_mae(const ImagePlane &result, const ImagePlane &reference,
                  const std::vector<uint8_t> &mask) {
    check_inputs(result, reference, mask);
    double acc = 0.0;
    uint64_t count = 0;
    for (size_t i = 0; i < mask.size(); ++i) {
        if (!mask[i]) continue;
        const float *a = result.samples.data() + 3 * i;
        const float *b = reference.samples.data() + 3 * i;
        acc += (std::abs(double(a[0]) - b[0]) + std::abs(double(a[1]) - b[1]) +
                std::abs(double(a[2]) - b[2])) /
               3.0;
        ++count;
    }
    return acc / static_cast<double>(count);
}

MetricReport score_images(const ImagePlane &result, const ImagePlane &reference,
                          const std::vector<uint8_t> &mask) {
    MetricReport report;
    report.masked_psnr_db = masked_psnr(result, reference, mask);
    report.masked_mae = masked_mae(result, reference, mask);
    report.valid_pixel_count = 0;
    for (uint8_t m : mask) report.valid_pixel_count += m ? 1 : 0;
    return report;
}

} // namespace glasswarp
