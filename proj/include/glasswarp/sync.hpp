// Copyright (c) 2026 glasswarp authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "glasswarp/blend.hpp"
#include "glasswarp/image.hpp"
#include "glasswarp/rng.hpp"
#include "glasswarp/warpfield.hpp"

namespace glasswarp {

// Dense double tensor; latents and velocities are [height, width, 3].
struct Tensor {
    std::vector<int> shape;
    std::vector<double> data;

    static Tensor zeros(std::vector<int> shape);
    size_t size() const { return data.size(); }
    bool same_shape(const Tensor &o) const { return shape == o.shape; }
};

// sigmas[t] for t = 0..T with sigmas[0] = 0 and sigmas[T] = 1, strictly
// increasing in t (time runs T -> 0 during sampling).
struct NoiseSchedule {
    std::vector<double> sigmas;

    static NoiseSchedule linear(int steps);
    static NoiseSchedule from_sigmas(std::vector<double> sigmas);
    int steps() const { return static_cast<int>(sigmas.size()) - 1; }
    double sigma(int t) const { return sigmas[t]; }
    void validate() const;
};

enum class SampleMode : uint8_t { Ode = 0, Sde = 1 };

struct SyncConfig {
    int steps = 20;
    double guidance = 3.5;         // CFG omega
    double lambda = 0.5;           // blend coefficient
    int pyramid_levels = 5;
    double tt_window_lo = 0.2;     // fractions of T, inclusive
    double tt_window_hi = 0.8;
    int tt_length = 1;             // travel length l, in steps
    int tt_repeat_main = 3;        // total passes per window step, perspective
    int tt_repeat_pano = 1;        // total passes per window step, panorama
    SampleMode mode = SampleMode::Ode;
    uint64_t rng_seed = 0;
    std::string condition_perspective;
    std::string condition_panorama;

    void validate() const;
};

// Velocity predictor contract. Implementations must return a tensor of the
// input shape and be deterministic for fixed inputs.
class Denoiser {
public:
    virtual ~Denoiser() = default;
    virtual Tensor velocity(const Tensor &z, int step, double sigma,
                            std::string_view condition) = 0;
    virtual Tensor velocity_uncond(const Tensor &z, int step, double sigma) {
        return velocity(z, step, sigma, {});
    }
};

class LatentCodec {
public:
    virtual ~LatentCodec() = default;
    virtual Tensor encode(const ImagePlane &img) = 0;
    virtual ImagePlane decode(const Tensor &latent) = 0;
};

// Latent = pixel array; encode/decode are exact (no clamping), so a loop
// without synchronization degenerates to a plain sampler.
class IdentityCodec : public LatentCodec {
public:
    Tensor encode(const ImagePlane &img) override;
    ImagePlane decode(const Tensor &latent) override;
};

// Toy predictors. The oracle's Euler estimate is its target for any input;
// the damped variant keeps a z-dependent component (estimate =
// (1-pull)*z + pull*target), useful for exercising noise propagation.
class OracleDenoiser : public Denoiser {
public:
    explicit OracleDenoiser(Tensor target) : target_(std::move(target)) {}
    Tensor velocity(const Tensor &z, int step, double sigma,
                    std::string_view condition) override;

private:
    Tensor target_;
};

class DampedOracleDenoiser : public Denoiser {
public:
    DampedOracleDenoiser(Tensor target, double pull)
        : target_(std::move(target)), pull_(pull) {}
    Tensor velocity(const Tensor &z, int step, double sigma,
                    std::string_view condition) override;

private:
    Tensor target_;
    double pull_;
};

class ConstantDenoiser : public Denoiser {
public:
    ConstantDenoiser(std::vector<int> shape, double r, double g, double b);
    Tensor velocity(const Tensor &z, int step, double sigma,
                    std::string_view condition) override;

private:
    Tensor target_;
};

// --- sampling primitives -------------------------------------------------

// z_{0|t} = z_t - sigma_t * v.
Tensor euler_estimate(const Tensor &z, const Tensor &v, double sigma);

// (1 + omega) * v_cond - omega * v_uncond.
Tensor cfg_velocity(const Tensor &v_cond, const Tensor &v_uncond, double omega);

// Forward-Euler step z + (sigma_next - sigma_t) * v; requires
// sigma_next <= sigma_t.
Tensor ode_step(const Tensor &z, const Tensor &v, double sigma_t,
                double sigma_next);

// ODE step plus |sigma_t - sigma_next| * eps with eps ~ N(0, I).
Tensor sde_step(const Tensor &z, const Tensor &v, double sigma_t,
                double sigma_next, Rng &rng);

// z_next = z + ((sigma_next - sigma_t) / sigma_t) * (z - z0_hat). Equals
// ode_step when z0_hat is the raw Euler estimate; returns z0_hat when
// sigma_next = 0. sigma_t must be positive.
Tensor guided_step(const Tensor &z, const Tensor &z0_hat, double sigma_t,
                   double sigma_next);

// Marginal-preserving re-noising from sigma_t up to sigma_up under the
// linear interpolant: z' = a z + s eps with a = (1-sigma_up)/(1-sigma_t)
// and s^2 = sigma_up^2 - a^2 sigma_t^2.
Tensor renoise(const Tensor &z, double sigma_t, double sigma_up, Rng &rng);

// --- synchronized generation ----------------------------------------------

// Precompiled warp bundle plus the clean background plate, everything the
// per-step synchronization needs.
struct SyncScene {
    WarpField self_warp;       // perspective -> perspective
    WarpField pano_refraction; // panorama -> perspective
    WarpField pano_reflection; // panorama -> perspective
    WarpField persp_to_pano;   // perspective -> panorama
    FresnelWeightMap fresnel;
    ImagePlane clean_background; // linear
    int persp_width = 0, persp_height = 0;
    int pano_width = 0, pano_height = 0;

    void validate() const;
};

// One synchronization round: blends the perspective estimate with the warped
// panorama estimate and clean plate, re-applies the Fresnel-weighted
// reflection, and blends the panorama estimate with the warped perspective
// content. Inputs and outputs are linear images.
std::pair<ImagePlane, ImagePlane> synchronize_views(const ImagePlane &persp,
                                                    const ImagePlane &pano,
                                                    const SyncScene &scene,
                                                    double lambda,
                                                    int pyramid_levels);

struct GenerationResult {
    ImagePlane perspective; // linear
    ImagePlane panorama;    // linear
    std::string trace_log;  // one line per step
};

GenerationResult run_generation(const SyncConfig &config,
                                const NoiseSchedule &schedule,
                                Denoiser &perspective_denoiser,
                                Denoiser &panorama_denoiser, LatentCodec &codec,
                                const SyncScene &scene);

} // namespace glasswarp
