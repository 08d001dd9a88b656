// Copyright (c) 2026 glasswarp authors
// SPDX-License-Identifier: Apache-2.0

#include "glasswarp/pipeline.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>

#include "glasswarp/error.hpp"
#include "glasswarp/io.hpp"
#include "glasswarp/process_denoiser.hpp"

namespace glasswarp {

namespace fs = std::filesystem;

void compile_warps_to_dir(const SceneBundle &scene, const std::string &out_dir) {
    fs::create_directories(out_dir);
    TraceScene view = scene.trace_scene();
    WarpBundle warps = compile_warps(view, scene.threads);

    fs::path dir(out_dir);
    save_warp_field((dir / kSelfWarpFile).string(), warps.self_warp);
    save_warp_field((dir / kPanoRefractionFile).string(), warps.pano_refraction);
    save_warp_field((dir / kPanoReflectionFile).string(), warps.pano_reflection);
    save_warp_field((dir / kPerspToPanoFile).string(), warps.persp_to_pano);
    save_pfm_gray((dir / kFresnelFile).string(), warps.fresnel.weights.data(),
                  warps.fresnel.width, warps.fresnel.height);

    ImagePlane preview = render_refraction_preview(scene, warps);
    save_png8((dir / kPreviewFile).string(), linear_to_srgb(preview));
}

ImagePlane render_refraction_preview(const SceneBundle &scene,
                                     const WarpBundle &warps) {
    const int w = scene.camera.width, h = scene.camera.height;
    WarpedImage refracted =
        pyramid_warp(scene.clean_linear, warps.self_warp, scene.sync.pyramid_levels);

    ImagePlane environment(w, h, ColorSpace::Linear);
    for (size_t i = 0; i < environment.pixel_count(); ++i)
        for (int c = 0; c < 3; ++c)
            environment.samples[3 * i + c] =
                static_cast<float>(scene.preview_environment[c]);

    // Refracted rays that left the observed background show the environment.
    ImagePlane base = environment;
    for (size_t i = 0; i < refracted.valid.size(); ++i) {
        if (!refracted.valid[i]) continue;
        for (int c = 0; c < 3; ++c)
            base.samples[3 * i + c] = refracted.image.samples[3 * i + c];
    }
    return fresnel_composite(base, environment, warps.fresnel);
}

void render_refraction_to_file(const SceneBundle &scene, const std::string &out_png) {
    TraceScene view = scene.trace_scene();
    WarpBundle warps;
    warps.self_warp = compute_self_warp(view, scene.threads);
    warps.fresnel = compute_fresnel_weights(view, scene.threads);
    ImagePlane preview = render_refraction_preview(scene, warps);
    save_png8(out_png, linear_to_srgb(preview));
}

SyncScene make_sync_scene(const SceneBundle &scene, WarpBundle warps) {
    SyncScene sync;
    sync.self_warp = std::move(warps.self_warp);
    sync.pano_refraction = std::move(warps.pano_refraction);
    sync.pano_reflection = std::move(warps.pano_reflection);
    sync.persp_to_pano = std::move(warps.persp_to_pano);
    sync.fresnel = std::move(warps.fresnel);
    sync.clean_background = scene.clean_linear;
    sync.persp_width = scene.camera.width;
    sync.persp_height = scene.camera.height;
    sync.pano_width = scene.pano.width;
    sync.pano_height = scene.pano.height;
    sync.validate();
    return sync;
}

namespace {

Tensor tensor_from_image_file(const std::string &path, int width, int height,
                              const char *what) {
    if (!fs::exists(path))
        fail(ErrorKind::Io, std::string(what) + " image does not exist: " + path);
    ImagePlane img = path.size() >= 4 && path.compare(path.size() - 4, 4, ".pfm") == 0
                         ? load_pfm(path, ColorSpace::Linear)
                         : srgb_to_linear(load_png(path));
    if (img.width != width || img.height != height)
        fail(ErrorKind::InvalidArgument,
             std::string(what) + " image has wrong resolution: " + path);
    IdentityCodec codec;
    return codec.encode(img);
}

struct DenoiserPair {
    std::unique_ptr<Denoiser> perspective;
    std::unique_ptr<Denoiser> panorama;
};

DenoiserPair make_denoisers(const SceneBundle &scene) {
    const DenoiserSpec &spec = scene.denoiser;
    DenoiserPair pair;
    const int pw = scene.camera.width, ph = scene.camera.height;
    const int qw = scene.pano.width, qh = scene.pano.height;
    switch (spec.kind) {
    case DenoiserKind::Oracle: {
        pair.perspective = std::make_unique<OracleDenoiser>(
            tensor_from_image_file(spec.perspective_target, pw, ph, "target"));
        pair.panorama = std::make_unique<OracleDenoiser>(
            tensor_from_image_file(spec.panorama_target, qw, qh, "target"));
        break;
    }
    case DenoiserKind::DampedOracle: {
        pair.perspective = std::make_unique<DampedOracleDenoiser>(
            tensor_from_image_file(spec.perspective_target, pw, ph, "target"),
            spec.pull);
        pair.panorama = std::make_unique<DampedOracleDenoiser>(
            tensor_from_image_file(spec.panorama_target, qw, qh, "target"),
            spec.pull);
        break;
    }
    case DenoiserKind::Constant: {
        pair.perspective = std::make_unique<ConstantDenoiser>(
            std::vector<int>{ph, pw, 3}, spec.color[0], spec.color[1], spec.color[2]);
        pair.panorama = std::make_unique<ConstantDenoiser>(
            std::vector<int>{qh, qw, 3}, spec.color[0], spec.color[1], spec.color[2]);
        break;
    }
    case DenoiserKind::Process: {
        pair.perspective = std::make_unique<ProcessDenoiser>(spec.command, 0);
        pair.panorama = std::make_unique<ProcessDenoiser>(spec.command, 1);
        break;
    }
    }
    return pair;
}

} // namespace

void sync_generate_to_dir(const SceneBundle &scene, const std::string &out_dir) {
    fs::create_directories(out_dir);
    TraceScene view = scene.trace_scene();
    SyncScene sync = make_sync_scene(scene, compile_warps(view, scene.threads));

    DenoiserPair denoisers = make_denoisers(scene);
    IdentityCodec codec;
    NoiseSchedule schedule = scene.schedule();
    GenerationResult result =
        run_generation(scene.sync, schedule, *denoisers.perspective,
                       *denoisers.panorama, codec, sync);

    fs::path dir(out_dir);
    save_png16((dir / "perspective.png").string(), linear_to_srgb(result.perspective));
    save_png16((dir / "panorama.png").string(), linear_to_srgb(result.panorama));
    std::ofstream log((dir / "trace.log").string(), std::ios::binary);
    if (!log) fail(ErrorKind::Io, "cannot write trace log");
    log << result.trace_log;
}

MetricReport score_files(const std::string &result_png,
                         const std::string &reference_png,
                         const std::string &mask_png) {
    for (const std::string &p : {result_png, reference_png, mask_png})
        if (!fs::exists(p)) fail(ErrorKind::Io, "image does not exist: " + p);
    ImagePlane result = srgb_to_linear(load_png(result_png));
    ImagePlane reference = srgb_to_linear(load_png(reference_png));
    ImagePlane mask_img = load_png(mask_png);
    if (!result.same_shape(reference) || !result.same_shape(mask_img))
        fail(ErrorKind::InvalidArgument, "score images differ in resolution");

    std::vector<uint8_t> mask(mask_img.pixel_count());
    for (size_t i = 0; i < mask.size(); ++i) {
        const float *p = mask_img.px(static_cast<int>(i % mask_img.width),
                                     static_cast<int>(i / mask_img.width));
        double luma = 0.2126 * p[0] + 0.7152 * p[1] + 0.0722 * p[2];
        mask[i] = luma >= 0.5 ? 1 : 0;
    }
    return score_images(result, reference, mask);
}

std::string metric_report_to_json(const MetricReport &report) {
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "{\n  \"masked_psnr_db\": %.6f,\n  \"masked_mae\": %.8f,\n"
                  "  \"valid_pixel_count\": %llu,\n  \"extras\": {}\n}\n",
                  report.masked_psnr_db, report.masked_mae,
                  static_cast<unsigned long long>(report.valid_pixel_count));
    return buf;
}

} // namespace glasswarp
