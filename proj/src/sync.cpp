// Copyright (c) 2026 glasswarp authors
// SPDX-License-Identifier: Apache-2.0

#include "glasswarp/sync.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "glasswarp/error.hpp"

namespace glasswarp {

// ---------------------------------------------------------------------------
// Tensor / schedule
// ---------------------------------------------------------------------------

Tensor Tensor::zeros(std::vector<int> shape) {
    size_t n = 1;
    for (int d : shape) n *= static_cast<size_t>(d);
    Tensor t;
    t.shape = std::move(shape);
    t.data.assign(n, 0.0);
    return t;
}

namespace {

void require_same_shape(const Tensor &a, const Tensor &b, const char *where) {
    if (!a.same_shape(b))
        fail(ErrorKind::InvalidArgument, std::string(where) + ": shape mismatch");
}

} // namespace

NoiseSchedule NoiseSchedule::linear(int steps) {
    if (steps < 1) fail(ErrorKind::InvalidArgument, "schedule needs steps >= 1");
    NoiseSchedule s;
    s.sigmas.resize(steps + 1);
    for (int t = 0; t <= steps; ++t)
        s.sigmas[t] = static_cast<double>(t) / steps;
    s.sigmas[0] = 0.0;
    s.sigmas[steps] = 1.0;
    return s;
}

NoiseSchedule NoiseSchedule::from_sigmas(std::vector<double> sigmas) {
    NoiseSchedule s;
    s.sigmas = std::move(sigmas);
    s.validate();
    return s;
}

void NoiseSchedule::validate() const {
    if (sigmas.size() < 2)
        fail(ErrorKind::InvalidArgument, "schedule needs at least two sigmas");
    if (sigmas.front() != 0.0 || sigmas.back() != 1.0)
        fail(ErrorKind::InvalidArgument,
             "schedule endpoints must be exactly 0 and 1");
    for (size_t t = 1; t < sigmas.size(); ++t)
        if (!(sigmas[t] > sigmas[t - 1]))
            fail(ErrorKind::InvalidArgument, "schedule must be strictly monotone");
}

void SyncConfig::validate() const {
    if (steps < 1) fail(ErrorKind::InvalidArgument, "steps must be >= 1");
    if (!(lambda >= 0.0 && lambda <= 1.0))
        fail(ErrorKind::InvalidArgument, "lambda must be in [0, 1]");
    if (pyramid_levels < 1)
        fail(ErrorKind::InvalidArgument, "pyramid_levels must be >= 1");
    if (!(tt_window_lo >= 0.0 && tt_window_lo <= 1.0) ||
        !(tt_window_hi >= 0.0 && tt_window_hi <= 1.0))
        fail(ErrorKind::InvalidArgument, "time-travel window must be within [0, 1]");
    if (tt_length < 1) fail(ErrorKind::InvalidArgument, "tt_length must be >= 1");
    if (tt_repeat_main < 1 || tt_repeat_pano < 1)
        fail(ErrorKind::InvalidArgument, "time-travel repeats must be >= 1");
}

// ---------------------------------------------------------------------------
// Codec and toy denoisers
// ---------------------------------------------------------------------------

Tensor IdentityCodec::encode(const ImagePlane &img) {
    Tensor t;
    t.shape = {img.height, img.width, 3};
    t.data.resize(img.samples.size());
    for (size_t i = 0; i < img.samples.size(); ++i)
        t.data[i] = static_cast<double>(img.samples[i]);
    return t;
}

ImagePlane IdentityCodec::decode(const Tensor &latent) {
    if (latent.shape.size() != 3 || latent.shape[2] != 3)
        fail(ErrorKind::InvalidArgument, "identity codec expects [H, W, 3]");
    ImagePlane img(latent.shape[1], latent.shape[0], ColorSpace::Linear);
    for (size_t i = 0; i < latent.data.size(); ++i) {
        double v = latent.data[i];
        if (!std::isfinite(v))
            fail(ErrorKind::InvalidArgument, "identity codec: non-finite sample");
        img.samples[i] = static_cast<float>(v);
    }
    return img;
}

Tensor OracleDenoiser::velocity(const Tensor &z, int, double sigma,
                                std::string_view) {
    require_same_shape(z, target_, "oracle denoiser");
    Tensor v = z;
    const double inv = 1.0 / sigma;
    for (size_t i = 0; i < v.data.size(); ++i)
        v.data[i] = (z.data[i] - target_.data[i]) * inv;
    return v;
}

Tensor DampedOracleDenoiser::velocity(const Tensor &z, int, double sigma,
                                      std::string_view) {
    require_same_shape(z, target_, "damped oracle denoiser");
    Tensor v = z;
    const double inv = pull_ / sigma;
    for (size_t i = 0; i < v.data.size(); ++i)
        v.data[i] = (z.data[i] - target_.data[i]) * inv;
    return v;
}

ConstantDenoiser::ConstantDenoiser(std::vector<int> shape, double r, double g,
                                   double b) {
    target_ = Tensor::zeros(std::move(shape));
    for (size_t i = 0; i + 2 < target_.data.size(); i += 3) {
        target_.data[i] = r;
        target_.data[i + 1] = g;
        target_.data[i + 2] = b;
    }
}

Tensor ConstantDenoiser::velocity(const Tensor &z, int, double sigma,
                                  std::string_view) {
    require_same_shape(z, target_, "constant denoiser");
    Tensor v = z;
    const double inv = 1.0 / sigma;
    for (size_t i = 0; i < v.data.size(); ++i)
        v.data[i] = (z.data[i] - target_.data[i]) * inv;
    return v;
}

// ---------------------------------------------------------------------------
// Sampling primitives
// ---------------------------------------------------------------------------

Tensor euler_estimate(const Tensor &z, const Tensor &v, double sigma) {
    require_same_shape(z, v, "euler_estimate");
    Tensor out = z;
    for (size_t i = 0; i < out.data.size(); ++i)
        out.data[i] = z.data[i] - sigma * v.data[i];
    return out;
}

Tensor cfg_velocity(const Tensor &v_cond, const Tensor &v_uncond, double omega) {
    require_same_shape(v_cond, v_uncond, "cfg_velocity");
    Tensor out = v_cond;
    for (size_t i = 0; i < out.data.size(); ++i)
        out.data[i] = (1.0 + omega) * v_cond.data[i] - omega * v_uncond.data[i];
    return out;
}

namespace {

void require_step_order(double sigma_t, double sigma_next) {
    if (!(sigma_next <= sigma_t))
        fail(ErrorKind::InvalidArgument,
             "sampler step requires sigma_next <= sigma_t");
}

} // namespace

Tensor ode_step(const Tensor &z, const Tensor &v, double sigma_t,
                double sigma_next) {
    require_same_shape(z, v, "ode_step");
    require_step_order(sigma_t, sigma_next);
    Tensor out = z;
    const double ds = sigma_next - sigma_t;
    for (size_t i = 0; i < out.data.size(); ++i)
        out.data[i] = z.data[i] + ds * v.data[i];
    return out;
}

Tensor sde_step(const Tensor &z, const Tensor &v, double sigma_t,
                double sigma_next, Rng &rng) {
    Tensor out = ode_step(z, v, sigma_t, sigma_next);
    const double s = std::abs(sigma_t - sigma_next);
    for (size_t i = 0; i < out.data.size(); ++i)
        out.data[i] += s * rng.normal();
    return out;
}

Tensor guided_step(const Tensor &z, const Tensor &z0_hat, double sigma_t,
                   double sigma_next) {
    require_same_shape(z, z0_hat, "guided_step");
    if (sigma_t <= 0.0)
        fail(ErrorKind::InvalidArgument, "guided_step: already clean (sigma_t = 0)");
    require_step_order(sigma_t, sigma_next);
    if (sigma_next == 0.0) return z0_hat;
    Tensor out = z;
    const double k = (sigma_next - sigma_t) / sigma_t;
    for (size_t i = 0; i < out.data.size(); ++i)
        out.data[i] = z.data[i] + k * (z.data[i] - z0_hat.data[i]);
    return out;
}

Tensor renoise(const Tensor &z, double sigma_t, double sigma_up, Rng &rng) {
    if (!(sigma_up >= sigma_t))
        fail(ErrorKind::InvalidArgument, "renoise requires sigma_up >= sigma_t");
    if (sigma_up == sigma_t) return z;
    if (sigma_t >= 1.0)
        fail(ErrorKind::InvalidArgument, "renoise: sigma_t must be below 1");
    const double a = (1.0 - sigma_up) / (1.0 - sigma_t);
    const double s2 = sigma_up * sigma_up - a * a * sigma_t * sigma_t;
    const double s = std::sqrt(std::max(0.0, s2));
    Tensor out = z;
    for (size_t i = 0; i < out.data.size(); ++i)
        out.data[i] = a * z.data[i] + s * rng.normal();
    return out;
}

// ---------------------------------------------------------------------------
// Synchronization
// ---------------------------------------------------------------------------

void SyncScene::validate() const {
    if (persp_width <= 0 || persp_height <= 0 || pano_width <= 0 || pano_height <= 0)
        fail(ErrorKind::InvalidArgument, "sync scene has empty dimensions");
    auto expect = [](bool ok, const char *what) {
        if (!ok) fail(ErrorKind::InvalidArgument,
                      std::string("sync scene: ") + what + " has wrong dimensions");
    };
    expect(self_warp.target_width == persp_width &&
               self_warp.target_height == persp_height,
           "self warp");
    expect(pano_refraction.target_width == persp_width &&
               pano_refraction.target_height == persp_height,
           "pano refraction warp");
    expect(pano_reflection.target_width == persp_width &&
               pano_reflection.target_height == persp_height,
           "pano reflection warp");
    expect(persp_to_pano.target_width == pano_width &&
               persp_to_pano.target_height == pano_height,
           "perspective-to-pano warp");
    expect(fresnel.width == persp_width && fresnel.height == persp_height,
           "fresnel weight map");
    expect(clean_background.width == persp_width &&
               clean_background.height == persp_height,
           "clean background");
    if (clean_background.space != ColorSpace::Linear)
        fail(ErrorKind::InvalidArgument, "sync scene: clean background must be linear");
}

std::pair<ImagePlane, ImagePlane> synchronize_views(const ImagePlane &persp,
                                                    const ImagePlane &pano,
                                                    const SyncScene &scene,
                                                    double lambda,
                                                    int pyramid_levels) {
    if (persp.width != scene.persp_width || persp.height != scene.persp_height ||
        pano.width != scene.pano_width || pano.height != scene.pano_height)
        fail(ErrorKind::InvalidArgument, "synchronize_views: size mismatch");
    if (persp.space != ColorSpace::Linear || pano.space != ColorSpace::Linear)
        fail(ErrorKind::InvalidArgument, "synchronize_views expects linear images");

    // Perspective branch: identity + warped panorama + warped clean plate.
    const ImagePlane *persp_images[3] = {&persp, &pano, &scene.clean_background};
    const WarpField *persp_warps[3] = {nullptr, &scene.pano_refraction,
                                       &scene.self_warp};
    BlendResult refr = blend_phi(persp_images, persp_warps, lambda, pyramid_levels);

    // Reflection appearance from the panorama estimate, masked by its own
    // sampling validity.
    WarpedImage reflected = pyramid_warp(pano, scene.pano_reflection, pyramid_levels);
    FresnelWeightMap weights = scene.fresnel;
    for (size_t i = 0; i < weights.weights.size(); ++i)
        if (!reflected.valid[i]) weights.weights[i] = 0.0f;
    ImagePlane persp_out = fresnel_composite(refr.image, reflected.image, weights);

    // Panorama branch: identity + warped perspective estimate + warped plate.
    const ImagePlane *pano_images[3] = {&pano, &persp, &scene.clean_background};
    const WarpField *pano_warps[3] = {nullptr, &scene.persp_to_pano,
                                      &scene.persp_to_pano};
    BlendResult pano_blend = blend_phi(pano_images, pano_warps, lambda, pyramid_levels);

    return {std::move(persp_out), std::move(pano_blend.image)};
}

// ---------------------------------------------------------------------------
// Generation loop
// ---------------------------------------------------------------------------

namespace {

struct Branch {
    Tensor z;
    ImagePlane estimate;    // decoded Euler estimate from the last active pass
    Tensor raw_estimate;    // latent-space Euler estimate
    double residual = 0.0;  // rms(encode(synchronized) - raw estimate)
    int repeats_done = 0;
    std::string_view condition;
};

double rms_difference(const Tensor &a, const Tensor &b) {
    double acc = 0.0;
    for (size_t i = 0; i < a.data.size(); ++i) {
        double d = a.data[i] - b.data[i];
        acc += d * d;
    }
    return std::sqrt(acc / static_cast<double>(a.data.size()));
}

Tensor seeded_noise(std::vector<int> shape, Rng &rng) {
    Tensor t = Tensor::zeros(std::move(shape));
    for (double &v : t.data) v = rng.normal();
    return t;
}

} // namespace

GenerationResult run_generation(const SyncConfig &config,
                                const NoiseSchedule &schedule,
                                Denoiser &perspective_denoiser,
                                Denoiser &panorama_denoiser, LatentCodec &codec,
                                const SyncScene &scene) {
    config.validate();
    schedule.validate();
    scene.validate();
    if (schedule.steps() != config.steps)
        fail(ErrorKind::InvalidArgument, "schedule length does not match steps");

    const int T = config.steps;
    Rng init_rng = Rng::derive(config.rng_seed, 0x696e6974); // latent init stream
    Rng sde_rng = Rng::derive(config.rng_seed, 0x736465);    // sde noise stream
    Rng tt_rng = Rng::derive(config.rng_seed, 0x7474);       // time-travel stream

    Denoiser *denoisers[2] = {&perspective_denoiser, &panorama_denoiser};
    Branch branch[2];
    branch[0].z = seeded_noise({scene.persp_height, scene.persp_width, 3}, init_rng);
    branch[1].z = seeded_noise({scene.pano_height, scene.pano_width, 3}, init_rng);
    branch[0].condition = config.condition_perspective;
    branch[1].condition = config.condition_panorama;

    std::string log;
    log.reserve(static_cast<size_t>(T) * 96);

    // One synchronized denoising pass of step s for the active branches;
    // inactive branches keep their cached estimate and latent.
    auto step_once = [&](int s, bool active0, bool active1) {
        const double sigma_t = schedule.sigma(s);
        const double sigma_next = schedule.sigma(s - 1);
        const bool active[2] = {active0, active1};
        for (int b = 0; b < 2; ++b) {
            if (!active[b]) continue;
            Tensor v_cond = denoisers[b]->velocity(branch[b].z, s, sigma_t,
                                                   branch[b].condition);
            if (!v_cond.same_shape(branch[b].z))
                fail(ErrorKind::Plugin,
                     "denoiser output shape mismatch at step " + std::to_string(s));
            Tensor v_hat;
            if (config.guidance != 0.0) {
                Tensor v_uncond =
                    denoisers[b]->velocity_uncond(branch[b].z, s, sigma_t);
                if (!v_uncond.same_shape(branch[b].z))
                    fail(ErrorKind::Plugin,
                         "denoiser output shape mismatch at step " + std::to_string(s));
                v_hat = cfg_velocity(v_cond, v_uncond, config.guidance);
            } else {
                v_hat = std::move(v_cond);
            }
            branch[b].raw_estimate = euler_estimate(branch[b].z, v_hat, sigma_t);
            branch[b].estimate = codec.decode(branch[b].raw_estimate);
        }

        auto [sync_persp, sync_pano] = synchronize_views(
            branch[0].estimate, branch[1].estimate, scene, config.lambda,
            config.pyramid_levels);
        const ImagePlane *synced[2] = {&sync_persp, &sync_pano};

        for (int b = 0; b < 2; ++b) {
            if (!active[b]) continue;
            Tensor z0_hat = codec.encode(*synced[b]);
            branch[b].residual = rms_difference(z0_hat, branch[b].raw_estimate);
            branch[b].z = guided_step(branch[b].z, z0_hat, sigma_t, sigma_next);
            if (config.mode == SampleMode::Sde && sigma_next > 0.0) {
                const double s_noise = sigma_t - sigma_next;
                for (double &x : branch[b].z.data) x += s_noise * sde_rng.normal();
            }
        }
    };

    for (int t = T; t >= 1; --t) {
        const bool in_window = t >= config.tt_window_lo * T - 1e-9 &&
                               t <= config.tt_window_hi * T + 1e-9;
        step_once(t, true, true);
        branch[0].repeats_done = 1;
        branch[1].repeats_done = 1;

        if (in_window) {
            const int extra[2] = {config.tt_repeat_main - 1, config.tt_repeat_pano - 1};
            for (int r = 1; r <= std::max(extra[0], extra[1]); ++r) {
                const bool act[2] = {r <= extra[0], r <= extra[1]};
                // Travel back by tt_length steps, then re-denoise down to t-1.
                const int s_hi = std::min(t - 1 + config.tt_length, T);
                for (int b = 0; b < 2; ++b) {
                    if (!act[b]) continue;
                    branch[b].z = renoise(branch[b].z, schedule.sigma(t - 1),
                                          schedule.sigma(s_hi), tt_rng);
                    branch[b].repeats_done++;
                }
                for (int s = s_hi; s >= t; --s) step_once(s, act[0], act[1]);
            }
        }

        char line[160];
        std::snprintf(line, sizeof line,
                      "step=%d sigma=%.6f persp_residual=%.6e pano_residual=%.6e "
                      "tt_persp=%d tt_pano=%d\n",
                      t, schedule.sigma(t), branch[0].residual, branch[1].residual,
                      branch[0].repeats_done, branch[1].repeats_done);
        log += line;
    }

    GenerationResult result;
    result.perspective = codec.decode(branch[0].z);
    result.panorama = codec.decode(branch[1].z);
    result.trace_log = std::move(log);
    return result;
}

} // namespace glasswarp
