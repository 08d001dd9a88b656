// Copyright (c) 2026 glasswarp authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include "glasswarp/metrics.hpp"
#include "glasswarp/scene.hpp"

namespace glasswarp {

// File names written into a warp artifact directory.
inline constexpr const char *kSelfWarpFile = "warp_refraction.snwf";
inline constexpr const char *kPanoRefractionFile = "warp_pano_refraction.snwf";
inline constexpr const char *kPanoReflectionFile = "warp_pano_reflection.snwf";
inline constexpr const char *kPerspToPanoFile = "warp_perspective_to_pano.snwf";
inline constexpr const char *kFresnelFile = "fresnel.pfm";
inline constexpr const char *kPreviewFile = "preview.png";

// Compiles all warp fields and writes them plus the Fresnel map and a
// refraction preview into out_dir (created if missing).
void compile_warps_to_dir(const SceneBundle &scene, const std::string &out_dir);

// Preview of the compiled refraction: the clean plate seen through the
// object, Fresnel-composited against a constant-color environment.
ImagePlane render_refraction_preview(const SceneBundle &scene,
                                     const WarpBundle &warps);
void render_refraction_to_file(const SceneBundle &scene, const std::string &out_png);

SyncScene make_sync_scene(const SceneBundle &scene, WarpBundle warps);

// Runs the synchronized generation loop with the configured denoiser and
// writes perspective.png, panorama.png (16-bit sRGB) and trace.log.
void sync_generate_to_dir(const SceneBundle &scene, const std::string &out_dir);

// Scores a result image against a reference inside a mask (all PNG paths;
// mask pixels with luma >= 0.5 count). Metrics are computed in linear space.
MetricReport score_files(const std::string &result_png,
                         const std::string &reference_png,
                         const std::string &mask_png);

std::string metric_report_to_json(const MetricReport &report);

} // namespace glasswarp
