// Copyright (c) 2026 glasswarp authors
// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end. Talks to the engine exclusively through the C API
// in glasswarp.h. Exit codes: 0 ok, 2 input/config error, 3 geometry or
// physics failure, 4 plug-in protocol failure, 1 anything else.

#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "glasswarp.h"

namespace {

int exit_code_of(gw_status status) {
    switch (status) {
    case GW_OK: return 0;
    case GW_ERROR_INVALID_ARGUMENT:
    case GW_ERROR_IO:
    case GW_ERROR_PARSE: return 2;
    case GW_ERROR_GEOMETRY: return 3;
    case GW_ERROR_PLUGIN: return 4;
    case GW_ERROR_INTERNAL: return 1;
    }
    return 1;
}

int finish(gw_status status) {
    if (status != GW_OK)
        std::fprintf(stderr, "error (%s): %s\n", gw_status_name(status),
                     gw_last_error());
    return exit_code_of(status);
}

struct SceneArgs {
    std::string config;
    std::vector<std::string> overrides;
    int threads = 0;
    long long seed = -1;
    std::string mode;

    void attach(CLI::App *cmd) {
        cmd->add_option("-c,--config", config, "Scene config JSON")->required();
        cmd->add_option("--set", overrides,
                        "Override a config entry, e.g. --set sync.steps=10");
        cmd->add_option("-j,--threads", threads, "Worker threads (0 = all cores)");
        cmd->add_option("--seed", seed, "Generation seed (overrides sync.seed)");
        cmd->add_option("--mode", mode, "Sampler mode: ode or sde")
            ->check(CLI::IsMember({"ode", "sde"}));
    }

    // Returns a loaded scene or null after printing the failure.
    gw_scene *load(gw_status &status) const {
        gw_scene *scene = nullptr;
        status = gw_scene_load(config.c_str(), &scene);
        if (status != GW_OK) return nullptr;
        std::vector<std::string> all = overrides;
        if (seed >= 0) all.push_back("sync.seed=" + std::to_string(seed));
        if (!mode.empty()) all.push_back("sync.mode=\"" + mode + "\"");
        for (const std::string &entry : all) {
            status = gw_scene_override(scene, entry.c_str());
            if (status != GW_OK) {
                gw_scene_destroy(scene);
                return nullptr;
            }
        }
        return scene;
    }
};

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"glasswarp: refraction-aware warp fields and synchronized "
                 "two-view generation"};
    app.require_subcommand(1);
    app.set_version_flag("--version", gw_version());

    SceneArgs compile_args, render_args, generate_args;
    std::string compile_out, render_out = "preview.png", generate_out;

    CLI::App *compile = app.add_subcommand(
        "compile-warps", "Compile warp fields, Fresnel weights and a preview");
    compile_args.attach(compile);
    compile->add_option("-o,--out", compile_out, "Output directory")->required();

    CLI::App *render = app.add_subcommand(
        "render-refraction", "Render the refraction preview image");
    render_args.attach(render);
    render->add_option("-o,--out", render_out, "Output PNG path");

    CLI::App *generate = app.add_subcommand(
        "sync-generate", "Run the synchronized generation loop");
    generate_args.attach(generate);
    generate->add_option("-o,--out", generate_out, "Output directory")->required();

    std::string score_result, score_reference, score_mask, score_report;
    CLI::App *score = app.add_subcommand(
        "score", "Masked PSNR (histogram-matched) and MAE between two images");
    score->add_option("--result", score_result, "Image to evaluate")->required();
    score->add_option("--reference", score_reference, "Reference image")->required();
    score->add_option("--mask", score_mask, "Mask image (luma >= 0.5)")->required();
    score->add_option("--report", score_report, "Also write the JSON report here");

    CLI11_PARSE(app, argc, argv);

    gw_status status = GW_OK;
    if (compile->parsed()) {
        gw_scene *scene = compile_args.load(status);
        if (!scene) return finish(status);
        status = gw_compile_warps(scene, compile_out.c_str(), compile_args.threads);
        gw_scene_destroy(scene);
        return finish(status);
    }
    if (render->parsed()) {
        gw_scene *scene = render_args.load(status);
        if (!scene) return finish(status);
        status = gw_render_refraction(scene, render_out.c_str(), render_args.threads);
        gw_scene_destroy(scene);
        return finish(status);
    }
    if (generate->parsed()) {
        gw_scene *scene = generate_args.load(status);
        if (!scene) return finish(status);
        status = gw_sync_generate(scene, generate_out.c_str(), generate_args.threads);
        gw_scene_destroy(scene);
        return finish(status);
    }
    if (score->parsed()) {
        gw_metrics metrics{};
        status = gw_score(score_result.c_str(), score_reference.c_str(),
                          score_mask.c_str(), &metrics);
        if (status != GW_OK) return finish(status);
        char buf[256];
        std::snprintf(buf, sizeof buf,
                      "{\n  \"masked_psnr_db\": %.6f,\n  \"masked_mae\": %.8f,\n"
                      "  \"valid_pixel_count\": %llu,\n  \"extras\": {}\n}\n",
                      metrics.masked_psnr_db, metrics.masked_mae,
                      static_cast<unsigned long long>(metrics.valid_pixel_count));
        std::fputs(buf, stdout);
        if (!score_report.empty()) {
            std::FILE *f = std::fopen(score_report.c_str(), "wb");
            if (!f) {
                std::fprintf(stderr, "error: cannot write report: %s\n",
                             score_report.c_str());
                return 2;
            }
            std::fputs(buf, f);
            std::fclose(f);
        }
        return 0;
    }
    return 1;
}
