// Copyright (c) 2026 glasswarp authors
// SPDX-License-Identifier: Apache-2.0
//
// End-to-end acceptance suite. Each criterion prints one PASS/FAIL line with
// its measured values; the process exits nonzero if any executed criterion
// fails. Run a single criterion with --criterion N.

#include <chrono>
#include <thread>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "glasswarp/blend.hpp"
#include "glasswarp/metrics.hpp"
#include "glasswarp/optics.hpp"
#include "glasswarp/pyramid.hpp"
#include "glasswarp/rng.hpp"
#include "glasswarp/shapes.hpp"
#include "glasswarp/sync.hpp"
#include "glasswarp/warp_compile.hpp"
#include "support/fixtures.hpp"
#include "support/naive_fields.hpp"

using namespace glasswarp;
using namespace gwtest;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string &what) {
        if (!ok) {
            pass = false;
            if (!detail.empty()) detail += "; ";
            detail += what;
        }
    }
    void note(const std::string &what) {
        if (!detail.empty()) detail += "; ";
        detail += what;
    }
};

std::string fmt(const char *pattern, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, pattern, v);
    return buf;
}

// --- criterion 1: optics oracle suite --------------------------------------

Outcome criterion_optics() {
    Outcome out;
    auto start = Clock::now();
    Rng rng(101);

    double worst_snell = 0.0, worst_coplanar = 0.0;
    for (int i = 0; i < 10000; ++i) {
        Vec3 n = normalize(Vec3{rng.normal(), rng.normal(), rng.normal()});
        Vec3 d = normalize(Vec3{rng.normal(), rng.normal(), rng.normal()});
        if (dot(d, n) > 0) n = -n;
        if (dot(d, n) > -1e-9) continue;
        double nu_in = 1.0 + 1.4 * rng.uniform();
        double nu_out = 1.0 + 1.4 * rng.uniform();
        RefractionResult r = refract_direction(d, n, nu_in, nu_out);
        worst_coplanar =
            std::max(worst_coplanar, std::abs(dot(cross(d, n), r.direction)));
        if (!r.total_internal_reflection) {
            double sin_in = std::sqrt(std::max(0.0, 1.0 - dot(d, n) * dot(d, n)));
            double cos_out = dot(r.direction, n);
            double sin_out = std::sqrt(std::max(0.0, 1.0 - cos_out * cos_out));
            worst_snell =
                std::max(worst_snell, std::abs(nu_in * sin_in - nu_out * sin_out));
        }
    }
    out.require(worst_snell < 1e-9, "snell " + fmt("%.2e", worst_snell));
    out.require(worst_coplanar < 1e-9, "coplanarity " + fmt("%.2e", worst_coplanar));

    // TIR onset against arcsin(nu_out / nu_in), located by bisection on the
    // returned branch.
    double worst_onset = 0.0;
    for (int i = 0; i < 100; ++i) {
        double nu_out = 1.0 + 1.0 * rng.uniform();
        double nu_in = nu_out + 0.05 + 1.0 * rng.uniform();
        auto is_tir = [&](double theta) {
            Vec3 d{std::sin(theta), 0.0, -std::cos(theta)};
            return refract_direction(d, {0, 0, 1}, nu_in, nu_out)
                .total_internal_reflection;
        };
        double lo = 0.0, hi = std::numbers::pi / 2;
        for (int it = 0; it < 80; ++it) {
            double mid = 0.5 * (lo + hi);
            (is_tir(mid) ? hi : lo) = mid;
        }
        double expected = std::asin(nu_out / nu_in);
        worst_onset = std::max(worst_onset, std::abs(0.5 * (lo + hi) - expected));
    }
    out.require(worst_onset < 1e-9, "tir onset " + fmt("%.2e", worst_onset));

    FresnelCoefficients normal = fresnel_reflectance({0, 0, -1}, {0, 0, 1}, 1.0, 1.5);
    out.require(std::abs(normal.r_parallel - 0.04) < 1e-12 &&
                    std::abs(normal.r_perpendicular - 0.04) < 1e-12,
                "normal incidence off 0.04");
    double critical = std::asin(1.0 / 1.5);
    FresnelCoefficients at_critical = fresnel_reflectance(
        {std::sin(critical + 1e-12), 0, -std::cos(critical + 1e-12)}, {0, 0, 1},
        1.5, 1.0);
    out.require(at_critical.r_parallel == 1.0 && at_critical.r_perpendicular == 1.0,
                "critical angle not total");

    double elapsed = seconds_since(start);
    out.require(elapsed < 5.0, "runtime " + fmt("%.2f s", elapsed));
    out.note("10^4 incidences in " + fmt("%.2f s", elapsed));
    return out;
}

// --- criterion 2: sphere deviation ------------------------------------------

Outcome criterion_sphere_deviation() {
    Outcome out;
    const double radius = 0.7, nu = 1.5;
    const Vec3 center{0, 0, -3};
    Medium glass{nu};
    TraceOptions opts;
    opts.eps_self = 1e-9;

    auto deviation_error = [&](const Surface &sphere, double b) {
        Ray ray{{b, 0, 0}, {0, 0, -1}};
        LightPath path = trace_refraction_path(ray, sphere, glass, {}, opts);
        if (path.terminal != PathTerminal::EscapedWithDirection ||
            path.events.size() != 2)
            return 1e9;
        double theta_i = std::asin(b / radius);
        double theta_t = std::asin(std::sin(theta_i) / nu);
        double expected = 2.0 * (theta_i - theta_t);
        double got = std::acos(
            std::clamp(dot(path.escape_direction, ray.direction), -1.0, 1.0));
        return std::abs(got - expected);
    };

    SphereSurface analytic(center, radius);
    double worst_analytic = 0.0;
    for (int i = 0; i < 100; ++i) {
        double b = radius * 0.95 * (i + 0.5) / 100.0;
        worst_analytic = std::max(worst_analytic, deviation_error(analytic, b));
    }
    out.require(worst_analytic < 1e-6,
                "analytic deviation " + fmt("%.2e rad", worst_analytic));
    out.note("analytic max err " + fmt("%.2e", worst_analytic));

    TriMesh mesh = make_uv_sphere(center, radius, 230, 219);
    out.note("mesh tris " + std::to_string(mesh.triangles.size()));
    MeshSurface surface(std::move(mesh));
    opts.eps_self = 1e-6;
    double worst_mesh = 0.0;
    for (int i = 0; i < 100; ++i) {
        double b = radius * 0.95 * (i + 0.5) / 100.0;
        worst_mesh = std::max(worst_mesh, deviation_error(surface, b));
    }
    out.require(worst_mesh < 2e-3, "mesh deviation " + fmt("%.2e rad", worst_mesh));
    out.note("mesh max err " + fmt("%.2e", worst_mesh));
    return out;
}

// --- criterion 3: warp-field oracle equivalence ------------------------------

Outcome criterion_warp_oracle() {
    Outcome out;
    SphereScene scene = make_sphere_scene();
    TraceScene view = scene.view();

    struct Pair {
        const char *name;
        WarpField got, want;
    };
    Pair pairs[] = {
        {"self", compute_self_warp(view, 2), naive_self_warp(scene)},
        {"pano-refr", compute_pano_to_persp_refraction(view, 2),
         naive_pano_refraction(scene)},
        {"pano-refl", compute_pano_to_persp_reflection(view, 2),
         naive_pano_reflection(scene)},
        {"persp-to-pano", compute_persp_to_pano(view, 2),
         naive_persp_to_pano(scene)},
    };
    for (const Pair &p : pairs) {
        FieldComparison c = compare_fields(p.got, p.want);
        out.require(c.mask_disagreements == 0,
                    std::string(p.name) + " masks differ");
        out.require(c.max_coord_difference < 1e-3,
                    std::string(p.name) + " coords " +
                        fmt("%.2e px", c.max_coord_difference));
    }

    // BVH vs brute force on 1e5 random rays.
    TriMesh sphere = make_uv_sphere({0.1, -0.2, -2.3}, 0.9, 32, 24);
    MeshSurface surface(std::move(sphere));
    Rng rng(31);
    size_t mismatches = 0, hits = 0;
    for (int i = 0; i < 100000; ++i) {
        Vec3 origin{2 * rng.uniform() - 1, 2 * rng.uniform() - 1, rng.uniform()};
        Vec3 dir = normalize(
            Vec3{rng.uniform() - 0.5, rng.uniform() - 0.5, -0.05 - rng.uniform()});
        auto a = surface.intersect({origin, dir}, 1e-9);
        auto b = surface.intersect_brute_force({origin, dir}, 1e-9);
        if (a.has_value() != b.has_value()) {
            ++mismatches;
            continue;
        }
        if (a) {
            ++hits;
            if (a->distance != b->distance ||
                a->triangle_index != b->triangle_index)
                ++mismatches;
        }
    }
    out.require(mismatches == 0,
                "bvh/brute mismatches " + std::to_string(mismatches));
    out.note("bvh hits checked " + std::to_string(hits));
    return out;
}

// --- criterion 4: pyramid reconstruction ------------------------------------

Outcome criterion_pyramid() {
    Outcome out;
    double worst_rebuild = 0.0;
    for (int n = 0; n < 20; ++n) {
        int w = 16 + (n * 13) % 70;
        int h = 16 + (n * 29) % 50;
        ImagePlane img = random_image(w, h, 1000 + n);
        for (int levels = 1; levels <= 5; ++levels) {
            if (std::min(w, h) < (1 << (levels - 1))) continue;
            ImagePlane back = collapse_pyramid(build_pyramid(img, levels));
            worst_rebuild = std::max(worst_rebuild, max_abs_difference(img, back));
        }
    }
    out.require(worst_rebuild < 1e-6,
                "reconstruction " + fmt("%.2e", worst_rebuild));

    ImagePlane img = random_image(64, 48, 77);
    WarpField identity = WarpField::make_identity(64, 48);
    double worst_identity = 0.0;
    for (int levels = 1; levels <= 5; ++levels) {
        WarpedImage warped = pyramid_warp(img, identity, levels);
        worst_identity =
            std::max(worst_identity, max_abs_difference(img, warped.image));
        for (uint8_t v : warped.valid)
            out.require(v == 1, "identity warp eroded a pixel");
    }
    out.require(worst_identity < 1e-6,
                "identity warp " + fmt("%.2e", worst_identity));
    out.note("rebuild " + fmt("%.2e", worst_rebuild) + ", identity " +
             fmt("%.2e", worst_identity));
    return out;
}

// --- criterion 5: phi algebra -------------------------------------------------

Outcome criterion_phi() {
    Outcome out;
    const int w = 24, h = 18;

    ImagePlane single = random_image(w, h, 55);
    WarpField id = WarpField::make_identity(w, h);
    const ImagePlane *one_img[] = {&single};
    const WarpField *one_warp[] = {&id};
    for (double lambda : {0.0, 0.37, 1.0}) {
        BlendResult r = blend_phi(one_img, one_warp, lambda, 1);
        out.require(max_abs_difference(r.image, single) < 1e-7,
                    "single-source identity at lambda " + fmt("%.2f", lambda));
    }

    ImagePlane ones(w, h, ColorSpace::Linear, 1.0f);
    ImagePlane threes(w, h, ColorSpace::Linear, 3.0f);
    const ImagePlane *pair_img[] = {&ones, &threes};
    const WarpField *pair_warp[] = {nullptr, nullptr};
    BlendResult vw = blend_phi(pair_img, pair_warp, 1.0, 1);
    BlendResult mean = blend_phi(pair_img, pair_warp, 0.0, 1);
    for (float v : vw.image.samples)
        out.require(std::abs(v - 2.5f) < 1e-7, "value weighting off 2.5");
    for (float v : mean.image.samples)
        out.require(std::abs(v - 2.0f) < 1e-7, "mean off 2.0");

    ImagePlane a = random_image(w, h, 56);
    ImagePlane b = random_image(w, h, 57);
    ImagePlane c = random_image(w, h, 58);
    const ImagePlane *abc[] = {&a, &b, &c};
    const ImagePlane *bca[] = {&b, &c, &a};
    const WarpField *warps3[] = {nullptr, nullptr, nullptr};
    BlendResult r1 = blend_phi(abc, warps3, 0.5, 1);
    BlendResult r2 = blend_phi(bca, warps3, 0.5, 1);
    out.require(max_abs_difference(r1.image, r2.image) < 1e-7,
                "permutation variance");

    bool bounded = true;
    for (int y = 0; y < h && bounded; ++y)
        for (int x = 0; x < w && bounded; ++x)
            for (int ch = 0; ch < 3; ++ch) {
                float lo =
                    std::min({a.px(x, y)[ch], b.px(x, y)[ch], c.px(x, y)[ch]});
                float hi =
                    std::max({a.px(x, y)[ch], b.px(x, y)[ch], c.px(x, y)[ch]});
                float v = r1.image.px(x, y)[ch];
                if (v < lo - 1e-7f || v > hi + 1e-7f) bounded = false;
            }
    out.require(bounded, "outputs escape the contributor hull");
    return out;
}

// --- criterion 6: sampler algebra ---------------------------------------------

Outcome criterion_samplers() {
    Outcome out;
    Rng seed_rng(42);
    Tensor z = Tensor::zeros({32, 32, 3});
    Tensor v = Tensor::zeros({32, 32, 3});
    for (double &x : z.data) x = seed_rng.normal();
    for (double &x : v.data) x = seed_rng.normal();

    const double sigma_t = 0.7, sigma_next = 0.45;
    Tensor z0 = euler_estimate(z, v, sigma_t);
    Tensor guided = guided_step(z, z0, sigma_t, sigma_next);
    Tensor ode = ode_step(z, v, sigma_t, sigma_next);
    double diff = max_abs_difference(guided, ode);
    out.require(diff < 1e-12, "guided/ode " + fmt("%.2e", diff));

    Tensor z0_random = Tensor::zeros({32, 32, 3});
    for (double &x : z0_random.data) x = seed_rng.normal();
    Tensor final_step = guided_step(z, z0_random, sigma_t, 0.0);
    out.require(max_abs_difference(final_step, z0_random) == 0.0,
                "sigma0 branch not verbatim");

    Tensor vu = Tensor::zeros({32, 32, 3});
    for (double &x : vu.data) x = seed_rng.normal();
    out.require(max_abs_difference(cfg_velocity(v, vu, 0.0), v) == 0.0,
                "cfg omega=0 not identity");

    Tensor zeros = Tensor::zeros({100000});
    Rng noise(7);
    const double s_lo = 0.35, s_hi = 0.55;
    Tensor renoised = renoise(zeros, s_lo, s_hi, noise);
    double mean = 0.0;
    for (double x : renoised.data) mean += x;
    mean /= renoised.data.size();
    double var = 0.0;
    for (double x : renoised.data) var += (x - mean) * (x - mean);
    var /= renoised.data.size() - 1;
    const double a = (1.0 - s_hi) / (1.0 - s_lo);
    const double expect = s_hi * s_hi - a * a * s_lo * s_lo;
    double rel = std::abs(var - expect) / expect;
    out.require(rel < 0.03, "renoise variance off by " + fmt("%.1f%%", 100 * rel));
    out.note("renoise variance rel err " + fmt("%.2f%%", 100 * rel));
    return out;
}

// --- criterion 7: synchronized-loop convergence -------------------------------

Outcome criterion_loop() {
    Outcome out;
    auto start = Clock::now();
    const double amplitude = 0.05;

    SphereSceneParams params;
    params.persp_width = 128;
    params.persp_height = 128;
    params.pano_height = 128;
    params.sphere_segments = 64;
    params.sphere_rings = 48;
    SphereScene scene = make_sphere_scene(params);
    WarpBundle warps = compile_warps(scene.view(), 2);
    SyncScene sync =
        make_sync_scene_from(scene, warps, render_clean_plate(scene, amplitude));
    ConsistentTargets targets = make_consistent_targets(
        sync, 0.5, 5, render_physical_perspective(scene, amplitude),
        render_environment_pano(scene, amplitude));
    out.require(targets.final_change < 1e-6,
                "targets not a fixed point: " + fmt("%.1e", targets.final_change));

    IdentityCodec codec;
    OracleDenoiser persp(codec.encode(targets.perspective));
    OracleDenoiser pano(codec.encode(targets.panorama));
    SyncConfig cfg; // all defaults: T=20, lambda .5, levels 5, repeats 3/1
    cfg.rng_seed = 2026;
    GenerationResult result = run_generation(cfg, NoiseSchedule::linear(cfg.steps),
                                             persp, pano, codec, sync);

    double err_p = max_abs_difference(result.perspective, targets.perspective);
    double err_q = max_abs_difference(result.panorama, targets.panorama);
    out.require(err_p < 2e-3, "perspective err " + fmt("%.2e", err_p));
    out.require(err_q < 2e-3, "panorama err " + fmt("%.2e", err_q));
    out.note("target err persp " + fmt("%.1e", err_p) + " pano " +
             fmt("%.1e", err_q));

    // Refraction constraint: the final image minus its reflection component
    // must reproduce the warped clean plate wherever the self-warp is valid.
    WarpedImage refr_ref = pyramid_warp(sync.clean_background, sync.self_warp, 5);
    WarpedImage refl_ref = pyramid_warp(result.panorama, sync.pano_reflection, 5);
    double worst = 0.0, worst_divided = 0.0;
    size_t checked = 0;
    for (int y = 0; y < 128; ++y)
        for (int x = 0; x < 128; ++x) {
            size_t i = size_t(y) * 128 + x;
            double w = sync.fresnel.at(x, y);
            if (w <= 0.0) continue; // outside the object silhouette
            if (!sync.self_warp.valid_at(x, y) || !refr_ref.valid[i]) continue;
            ++checked;
            for (int ch = 0; ch < 3; ++ch) {
                double lhs = result.perspective.px(x, y)[ch] -
                             w * refl_ref.image.px(x, y)[ch];
                double r = std::abs(lhs - (1.0 - w) * refr_ref.image.px(x, y)[ch]);
                worst = std::max(worst, r);
                if (w < 0.9) worst_divided = std::max(worst_divided, r / (1.0 - w));
            }
        }
    out.require(checked > 1500, "too few constrained pixels");
    out.require(worst < 5e-3, "refraction residual " + fmt("%.2e", worst));
    out.require(worst_divided < 5e-3,
                "normalized refraction residual " + fmt("%.2e", worst_divided));
    out.note("refraction residual " + fmt("%.1e", worst_divided) + " on " +
             std::to_string(checked) + " px");

    double elapsed = seconds_since(start);
    out.require(elapsed < 60.0, "runtime " + fmt("%.1f s", elapsed));
    out.note(fmt("%.1f s", elapsed));
    return out;
}

// --- criterion 8: metrics ------------------------------------------------------

Outcome criterion_metrics() {
    Outcome out;
    const int w = 96, h = 96;
    std::vector<uint8_t> mask(size_t(w) * h, 1);

    ImagePlane ramp(w, h, ColorSpace::Linear);
    Rng rng(91);
    for (size_t i = 0; i < ramp.pixel_count(); ++i) {
        float v = float(0.5 * (i + 0.5) / ramp.pixel_count() + 1e-4 * rng.uniform());
        ramp.samples[3 * i] = ramp.samples[3 * i + 1] = ramp.samples[3 * i + 2] = v;
    }

    out.require(masked_psnr(ramp, ramp, mask) == kPsnrCapDb,
                "identical images below the cap");

    ImagePlane offset = ramp;
    for (float &v : offset.samples) v += 0.125f;
    double off_psnr = masked_psnr(offset, ramp, mask);
    out.require(off_psnr >= kPsnrCapDb,
                "uniform offset only reaches " + fmt("%.1f dB", off_psnr));

    // Swapped 0.45/0.55 pixels: equal histograms, per-pixel MSE 1e-2.
    ImagePlane ref(w, h, ColorSpace::Linear);
    ImagePlane res(w, h, ColorSpace::Linear);
    for (size_t i = 0; i < ref.pixel_count(); ++i) {
        float av = (i % 2 == 0) ? 0.45f : 0.55f;
        float bv = (i % 2 == 0) ? 0.55f : 0.45f;
        for (int c = 0; c < 3; ++c) {
            ref.samples[3 * i + c] = av;
            res.samples[3 * i + c] = bv;
        }
    }
    double db = masked_psnr(res, ref, mask);
    out.require(std::abs(db - 20.0) <= 0.1, "MSE 1e-2 pair: " + fmt("%.3f dB", db));
    out.note("constructed pair " + fmt("%.3f dB", db));

    out.require(masked_mae(ramp, ramp, mask) == 0.0, "identical MAE nonzero");
    ImagePlane shifted = ramp;
    for (float &v : shifted.samples) v += 0.1f;
    double mae = masked_mae(shifted, ramp, mask);
    out.require(std::abs(mae - 0.1) < 1e-6, "constant-diff MAE " + fmt("%.6f", mae));
    return out;
}

// --- criterion 9: performance ---------------------------------------------------

Outcome criterion_performance() {
    Outcome out;
    TriMesh sphere = make_uv_sphere({0, 0, -2}, 0.45, 230, 219);
    out.note("sphere tris " + std::to_string(sphere.triangles.size()));

    PerspectiveCamera cam;
    cam.width = 1280;
    cam.height = 720;
    cam.fx = cam.fy = 1000.0;
    cam.cx = 639.5;
    cam.cy = 359.5;

    DepthMap depth;
    depth.width = 320;
    depth.height = 180;
    depth.depth.resize(size_t(320) * 180);
    for (int y = 0; y < 180; ++y)
        for (int x = 0; x < 320; ++x)
            depth.depth[size_t(y) * 320 + x] =
                float(3.8 + 0.4 * (double(y) / 179) + 0.05 * std::sin(0.1 * x));
    TriMesh bg = depth_to_mesh(depth, cam, 3.0);
    out.note("depth tris " + std::to_string(bg.triangles.size()));

    MeshSurface object(std::move(sphere));
    MeshSurface background(std::move(bg));
    Aabb shell_box = background.bounds();
    Vec3 pad = 0.1 * shell_box.extent();
    double min_pad = 0.05 * shell_box.diagonal();
    pad = max(pad, Vec3{min_pad, min_pad, min_pad});
    shell_box.lo = shell_box.lo - pad;
    shell_box.hi = shell_box.hi + pad;
    MeshSurface shell(make_box(shell_box));

    TraceScene scene;
    scene.object = &object;
    scene.medium.refractive_index = 1.5;
    scene.background = {&background};
    scene.enclosure = &shell;
    scene.camera = cam;
    scene.pano.center = {0, 0, -2};
    scene.pano.width = 2048;
    scene.pano.height = 1024;
    Aabb bounds = background.bounds();
    bounds.expand(object.bounds());
    scene.trace.eps_self = 1e-4 * bounds.diagonal();

    auto t0 = Clock::now();
    WarpBundle single = compile_warps(scene, 1);
    double t_single = seconds_since(t0);
    out.require(t_single < 10.0, "single-thread " + fmt("%.2f s", t_single));
    out.note("single-thread " + fmt("%.2f s", t_single));

    auto t1 = Clock::now();
    WarpBundle threaded = compile_warps(scene, 8);
    double t_threads = seconds_since(t1);
    double speedup = t_single / t_threads;
    out.note("8 threads " + fmt("%.2f s", t_threads) + " -> speedup " +
             fmt("%.2fx", speedup) + " on " +
             std::to_string(std::thread::hardware_concurrency()) +
             " hardware threads");
    out.require(speedup >= 4.0, "speedup " + fmt("%.2fx", speedup) + " < 4x");

    out.require(single.self_warp.coords == threaded.self_warp.coords,
                "thread count changed results");
    return out;
}

// --- criterion 10: CLI determinism ----------------------------------------------

int run_cli(const std::string &args) {
    std::string cmd = std::string(GLASSWARP_CLI_PATH) + " " + args +
                      " > /dev/null 2>&1";
    int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

bool same_bytes(const fs::path &a, const fs::path &b) {
    std::ifstream fa(a, std::ios::binary), fb(b, std::ios::binary);
    if (!fa || !fb) return false;
    std::string sa((std::istreambuf_iterator<char>(fa)),
                   std::istreambuf_iterator<char>());
    std::string sb((std::istreambuf_iterator<char>(fb)),
                   std::istreambuf_iterator<char>());
    return !sa.empty() && sa == sb;
}

Outcome criterion_cli_determinism() {
    Outcome out;
    const std::string fixture = std::string(GLASSWARP_TEST_DATA) + "/golden_scene";
    const std::string config = fixture + "/scene.json";
    fs::path dir = fs::temp_directory_path() / "gw_acceptance_cli";
    fs::remove_all(dir);
    fs::create_directories(dir);

    // compile-warps
    out.require(run_cli("compile-warps -c " + config + " -o " +
                        (dir / "w1").string() + " -j 2") == 0,
                "compile-warps failed");
    out.require(run_cli("compile-warps -c " + config + " -o " +
                        (dir / "w2").string() + " -j 2") == 0,
                "compile-warps rerun failed");
    for (const char *n : {"warp_refraction.snwf", "warp_pano_refraction.snwf",
                          "warp_pano_reflection.snwf",
                          "warp_perspective_to_pano.snwf", "fresnel.pfm",
                          "preview.png"})
        out.require(same_bytes(dir / "w1" / n, dir / "w2" / n),
                    std::string("compile-warps differs: ") + n);

    // render-refraction
    out.require(run_cli("render-refraction -c " + config + " -o " +
                        (dir / "p1.png").string()) == 0,
                "render-refraction failed");
    out.require(run_cli("render-refraction -c " + config + " -o " +
                        (dir / "p2.png").string()) == 0,
                "render-refraction rerun failed");
    out.require(same_bytes(dir / "p1.png", dir / "p2.png"),
                "render-refraction differs");

    // sync-generate (fixed seed comes from the scene config)
    out.require(run_cli("sync-generate -c " + config + " -o " +
                        (dir / "g1").string()) == 0,
                "sync-generate failed");
    out.require(run_cli("sync-generate -c " + config + " -o " +
                        (dir / "g2").string()) == 0,
                "sync-generate rerun failed");
    for (const char *n : {"perspective.png", "panorama.png", "trace.log"})
        out.require(same_bytes(dir / "g1" / n, dir / "g2" / n),
                    std::string("sync-generate differs: ") + n);

    // score
    out.require(run_cli("score --result " + fixture +
                        "/golden/perspective.png --reference " + fixture +
                        "/target_perspective.png --mask " + fixture +
                        "/clean.png --report " + (dir / "r1.json").string()) == 0,
                "score failed");
    out.require(run_cli("score --result " + fixture +
                        "/golden/perspective.png --reference " + fixture +
                        "/target_perspective.png --mask " + fixture +
                        "/clean.png --report " + (dir / "r2.json").string()) == 0,
                "score rerun failed");
    out.require(same_bytes(dir / "r1.json", dir / "r2.json"), "score differs");

    fs::remove_all(dir);
    return out;
}

} // namespace

int main(int argc, char **argv) {
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc)
            only = std::atoi(argv[i + 1]);
    }

    struct Entry {
        int id;
        const char *name;
        std::function<Outcome()> run;
    };
    const Entry entries[] = {
        {1, "optics oracle suite", criterion_optics},
        {2, "sphere deviation", criterion_sphere_deviation},
        {3, "warp-field oracle equivalence", criterion_warp_oracle},
        {4, "pyramid reconstruction", criterion_pyramid},
        {5, "phi algebra", criterion_phi},
        {6, "sampler algebra", criterion_samplers},
        {7, "synchronized-loop convergence", criterion_loop},
        {8, "metrics", criterion_metrics},
        {9, "performance", criterion_performance},
        {10, "CLI determinism", criterion_cli_determinism},
    };

    bool all_pass = true;
    for (const Entry &e : entries) {
        if (only != 0 && e.id != only) continue;
        Outcome o = e.run();
        std::printf("criterion %2d (%s): %s%s%s\n", e.id, e.name,
                    o.pass ? "PASS" : "FAIL", o.detail.empty() ? "" : " — ",
                    o.detail.c_str());
        std::fflush(stdout);
        all_pass = all_pass && o.pass;
    }
    return all_pass ? 0 : 1;
}
