// Copyright (c) 2026 glasswarp authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>

#include "glasswarp/error.hpp"
#include "glasswarp/metrics.hpp"
#include "glasswarp/rng.hpp"
#include "support/fixtures.hpp"

using namespace glasswarp;
using gwtest::random_image;

namespace {

std::vector<uint8_t> full_mask(const ImagePlane &img) {
    return std::vector<uint8_t>(img.pixel_count(), 1);
}

ImagePlane gray_ramp(int w, int h, double lo, double hi, uint64_t jitter_seed) {
    ImagePlane img(w, h, ColorSpace::Linear);
    Rng rng(jitter_seed);
    for (size_t i = 0; i < img.pixel_count(); ++i) {
        double v = lo + (hi - lo) * ((i + 0.5) / double(img.pixel_count())) +
                   1e-4 * rng.uniform();
        img.samples[3 * i] = img.samples[3 * i + 1] = img.samples[3 * i + 2] =
            static_cast<float>(v);
    }
    return img;
}

} // namespace

TEST_CASE("luma uses Rec. 709 weights") {
    ImagePlane img(1, 1, ColorSpace::Linear);
    img.samples = {1.0f, 0.0f, 0.0f};
    CHECK(to_luma(img)[0] == doctest::Approx(0.2126));
    img.samples = {0.0f, 1.0f, 0.0f};
    CHECK(to_luma(img)[0] == doctest::Approx(0.7152));
    img.samples = {0.0f, 0.0f, 1.0f};
    CHECK(to_luma(img)[0] == doctest::Approx(0.0722));
}

TEST_CASE("identical images hit the 99 dB cap") {
    ImagePlane img = random_image(32, 32, 1, 0.05f, 0.95f);
    CHECK(masked_psnr(img, img, full_mask(img)) == kPsnrCapDb);
}

TEST_CASE("constructed pair with matched histograms scores 20 dB") {
    // Half the masked pixels at 0.45, half at 0.55; the result swaps them so
    // both histograms agree (matching becomes the identity) while the
    // per-pixel MSE is exactly (0.1)^2 = 1e-2.
    const int w = 64, h = 64;
    ImagePlane reference(w, h, ColorSpace::Linear);
    ImagePlane result(w, h, ColorSpace::Linear);
    for (size_t i = 0; i < reference.pixel_count(); ++i) {
        float a = (i % 2 == 0) ? 0.45f : 0.55f;
        float b = (i % 2 == 0) ? 0.55f : 0.45f;
        for (int c = 0; c < 3; ++c) {
            reference.samples[3 * i + c] = a;
            result.samples[3 * i + c] = b;
        }
    }
    double psnr = masked_psnr(result, reference, full_mask(reference));
    CHECK(psnr == doctest::Approx(20.0).epsilon(0.005)); // 20 dB +- 0.1
}

TEST_CASE("histogram matching removes uniform offsets") {
    const int w = 96, h = 96;
    ImagePlane reference = gray_ramp(w, h, 0.0, 0.5, 2);

    SUBCASE("bin-aligned offset is removed exactly") {
        ImagePlane offset = reference;
        for (float &v : offset.samples) v += 0.125f; // 32 bins exactly
        CHECK(masked_psnr(offset, reference, full_mask(reference)) == kPsnrCapDb);
    }
    SUBCASE("fractional-bin offset is removed to the binning limit") {
        // 0.1 spans 25.6 bins; the interpolated 256-bin matcher removes the
        // shift except for sub-bin granularity, far above the unmatched 20 dB.
        ImagePlane offset = reference;
        for (float &v : offset.samples) v += 0.1f;
        double matched = masked_psnr(offset, reference, full_mask(reference));
        CHECK(matched > 80.0);

        double sse = 0.0;
        auto la = to_luma(offset);
        auto lb = to_luma(reference);
        for (size_t i = 0; i < la.size(); ++i) {
            double d = la[i] - lb[i];
            sse += d * d;
        }
        double unmatched = 10.0 * std::log10(1.0 / (sse / la.size()));
        CHECK(unmatched < 21.0);
        CHECK(matched - unmatched > 55.0);
    }
}

TEST_CASE("histogram matching absorbs monotone remaps (gamma fixtures)") {
    const int w = 96, h = 96;
    ImagePlane reference = gray_ramp(w, h, 0.05, 0.75, 3);
    for (double gamma : {0.8, 1.3}) {
        ImagePlane warped = reference;
        for (float &v : warped.samples)
            v = static_cast<float>(std::pow(double(v), gamma));
        double matched = masked_psnr(warped, reference, full_mask(reference));
        CHECK(matched > 60.0);
    }
}

TEST_CASE("metrics read only masked pixels") {
    ImagePlane reference = random_image(24, 24, 4, 0.1f, 0.9f);
    ImagePlane result = reference;
    // Perturb the result slightly so matching is non-trivial.
    Rng rng(5);
    for (float &v : result.samples)
        v = std::clamp(v + 0.02f * float(rng.uniform() - 0.5), 0.0f, 1.0f);

    std::vector<uint8_t> mask(reference.pixel_count(), 0);
    for (size_t i = 0; i < mask.size(); ++i) mask[i] = (i % 3 == 0) ? 1 : 0;

    MetricReport before = score_images(result, reference, mask);

    // Scribble over every masked-out pixel in both images.
    ImagePlane result2 = result;
    ImagePlane reference2 = reference;
    for (size_t i = 0; i < mask.size(); ++i) {
        if (mask[i]) continue;
        for (int c = 0; c < 3; ++c) {
            result2.samples[3 * i + c] = 0.999f;
            reference2.samples[3 * i + c] = 0.001f;
        }
    }
    MetricReport after = score_images(result2, reference2, mask);
    CHECK(after.masked_psnr_db == before.masked_psnr_db);
    CHECK(after.masked_mae == before.masked_mae);
    CHECK(after.valid_pixel_count == before.valid_pixel_count);
}

TEST_CASE("masked MAE") {
    ImagePlane a = random_image(16, 16, 6, 0.2f, 0.8f);

    SUBCASE("identical images give zero") {
        CHECK(masked_mae(a, a, full_mask(a)) == 0.0);
    }
    SUBCASE("constant difference is returned exactly") {
        ImagePlane b = a;
        for (float &v : b.samples) v += 0.1f;
        CHECK(masked_mae(b, a, full_mask(a)) == doctest::Approx(0.1).epsilon(1e-6));
    }
    SUBCASE("random fixture matches a direct summation oracle") {
        ImagePlane b = random_image(16, 16, 7, 0.2f, 0.8f);
        std::vector<uint8_t> mask(a.pixel_count(), 0);
        for (size_t i = 0; i < mask.size(); ++i) mask[i] = (i % 2 == 0) ? 1 : 0;
        double acc = 0.0;
        size_t n = 0;
        for (size_t i = 0; i < mask.size(); ++i) {
            if (!mask[i]) continue;
            double s = 0.0;
            for (int c = 0; c < 3; ++c)
                s += std::abs(double(b.samples[3 * i + c]) - a.samples[3 * i + c]);
            acc += s / 3.0;
            ++n;
        }
        CHECK(masked_mae(b, a, mask) == doctest::Approx(acc / n).epsilon(1e-12));
    }
}

TEST_CASE("metric error paths") {
    ImagePlane a = random_image(8, 8, 8);
    ImagePlane b = random_image(9, 8, 9);
    std::vector<uint8_t> empty_mask(a.pixel_count(), 0);
    CHECK_THROWS_AS(masked_psnr(a, a, empty_mask), Error);
    CHECK_THROWS_AS(masked_mae(a, a, empty_mask), Error);
    CHECK_THROWS_AS(masked_psnr(a, b, full_mask(a)), Error);
}

TEST_CASE("report aggregation counts masked pixels") {
    ImagePlane a = random_image(10, 10, 10, 0.3f, 0.7f);
    std::vector<uint8_t> mask(a.pixel_count(), 0);
    for (int i = 0; i < 37; ++i) mask[i] = 1;
    MetricReport report = score_images(a, a, mask);
    CHECK(report.valid_pixel_count == 37);
    CHECK(report.masked_psnr_db == kPsnrCapDb);
    CHECK(report.masked_mae == 0.0);
}
