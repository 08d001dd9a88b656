// Copyright (c) 2026 glasswarp authors
// SPDX-License-Identifier: Apache-2.0

#include "glasswarp.h"

#include <filesystem>
#include <fstream>
#include <string>

#include "glasswarp/error.hpp"
#include "glasswarp/pipeline.hpp"
#include "glasswarp/scene.hpp"

using namespace glasswarp;

// Scene handle: the raw JSON text plus a lazily built bundle, invalidated by
// overrides.
struct gw_scene {
    std::string json_text;
    std::string base_dir;
    std::unique_ptr<SceneBundle> bundle;

    SceneBundle &built() {
        if (!bundle)
            bundle = std::make_unique<SceneBundle>(
                load_scene_from_json(json_text, base_dir));
        return *bundle;
    }
};

namespace {

thread_local std::string t_last_error;

gw_status status_of(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::InvalidArgument: return GW_ERROR_INVALID_ARGUMENT;
    case ErrorKind::Io: return GW_ERROR_IO;
    case ErrorKind::Parse: return GW_ERROR_PARSE;
    case ErrorKind::Geometry: return GW_ERROR_GEOMETRY;
    case ErrorKind::Plugin: return GW_ERROR_PLUGIN;
    case ErrorKind::Internal: return GW_ERROR_INTERNAL;
    }
    return GW_ERROR_INTERNAL;
}

template <typename Fn>
gw_status guarded(Fn &&fn) {
    try {
        fn();
        t_last_error.clear();
        return GW_OK;
    } catch (const Error &e) {
        t_last_error = e.what();
        return status_of(e.kind());
    } catch (const std::exception &e) {
        t_last_error = e.what();
        return GW_ERROR_INTERNAL;
    } catch (...) {
        t_last_error = "unknown error";
        return GW_ERROR_INTERNAL;
    }
}

} // namespace

extern "C" {

const char *gw_version(void) { return "0.1.0"; }

const char *gw_status_name(gw_status status) {
    switch (status) {
    case GW_OK: return "ok";
    case GW_ERROR_INVALID_ARGUMENT: return "invalid argument";
    case GW_ERROR_IO: return "i/o error";
    case GW_ERROR_PARSE: return "parse error";
    case GW_ERROR_GEOMETRY: return "geometry error";
    case GW_ERROR_PLUGIN: return "plug-in error";
    case GW_ERROR_INTERNAL: return "internal error";
    }
    return "unknown";
}

const char *gw_last_error(void) { return t_last_error.c_str(); }

gw_status gw_scene_load(const char *config_path, gw_scene **out_scene) {
    if (!config_path || !out_scene) {
        t_last_error = "null argument";
        return GW_ERROR_INVALID_ARGUMENT;
    }
    *out_scene = nullptr;
    auto scene = std::make_unique<gw_scene>();
    gw_status status = guarded([&] {
        std::ifstream in(config_path);
        if (!in) fail(ErrorKind::Io,
                      std::string("cannot open scene config: ") + config_path);
        scene->json_text.assign(std::istreambuf_iterator<char>(in),
                                std::istreambuf_iterator<char>());
        scene->base_dir =
            std::filesystem::path(config_path).parent_path().string();
        scene->built(); // validate eagerly so load reports errors
    });
    if (status == GW_OK) *out_scene = scene.release();
    return status;
}

gw_status gw_scene_override(gw_scene *scene, const char *key_equals_value) {
    if (!scene || !key_equals_value) {
        t_last_error = "null argument";
        return GW_ERROR_INVALID_ARGUMENT;
    }
    return guarded([&] {
        scene->json_text =
            apply_config_overrides(scene->json_text, {key_equals_value});
        scene->bundle.reset(); // rebuild lazily with the new settings
    });
}

void gw_scene_destroy(gw_scene *scene) { delete scene; }

gw_status gw_compile_warps(gw_scene *scene, const char *out_dir, int threads) {
    if (!scene || !out_dir) {
        t_last_error = "null argument";
        return GW_ERROR_INVALID_ARGUMENT;
    }
    return guarded([&] {
        SceneBundle &bundle = scene->built();
        if (threads > 0) bundle.threads = threads;
        compile_warps_to_dir(bundle, out_dir);
    });
}

gw_status gw_render_refraction(gw_scene *scene, const char *out_png, int threads) {
    if (!scene || !out_png) {
        t_last_error = "null argument";
        return GW_ERROR_INVALID_ARGUMENT;
    }
    return guarded([&] {
        SceneBundle &bundle = scene->built();
        if (threads > 0) bundle.threads = threads;
        render_refraction_to_file(bundle, out_png);
    });
}

gw_status gw_sync_generate(gw_scene *scene, const char *out_dir, int threads) {
    if (!scene || !out_dir) {
        t_last_error = "null argument";
        return GW_ERROR_INVALID_ARGUMENT;
    }
    return guarded([&] {
        SceneBundle &bundle = scene->built();
        if (threads > 0) bundle.threads = threads;
        sync_generate_to_dir(bundle, out_dir);
    });
}

gw_status gw_score(const char *result_png, const char *reference_png,
                   const char *mask_png, gw_metrics *out_metrics) {
    if (!result_png || !reference_png || !mask_png || !out_metrics) {
        t_last_error = "null argument";
        return GW_ERROR_INVALID_ARGUMENT;
    }
    return guarded([&] {
        MetricReport report = score_files(result_png, reference_png, mask_png);
        out_metrics->masked_psnr_db = report.masked_psnr_db;
        out_metrics->masked_mae = report.masked_mae;
        out_metrics->valid_pixel_count = report.valid_pixel_count;
    });
}

} // extern "C"
