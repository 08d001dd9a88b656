/* Copyright (c) 2026 glasswarp authors
 * SPDX-License-Identifier: Apache-2.0
 *
 * C interface to the glasswarp engine: physically based refraction warp
 * compilation and synchronized two-view generation. All functions return a
 * gw_status; on failure gw_last_error() holds a human-readable message for
 * the calling thread. Handles are opaque and must be released with their
 * destroy function.
 */

#ifndef GLASSWARP_H
#define GLASSWARP_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gw_status {
    GW_OK = 0,
    GW_ERROR_INVALID_ARGUMENT = 1,
    GW_ERROR_IO = 2,
    GW_ERROR_PARSE = 3,
    GW_ERROR_GEOMETRY = 4, /* placement / physics failures */
    GW_ERROR_PLUGIN = 5,   /* denoiser plug-in protocol violations */
    GW_ERROR_INTERNAL = 6
} gw_status;

typedef struct gw_scene gw_scene;

typedef struct gw_metrics {
    double masked_psnr_db;
    double masked_mae;
    uint64_t valid_pixel_count;
} gw_metrics;

const char *gw_version(void);
const char *gw_status_name(gw_status status);

/* Message describing the most recent failure on this thread ("" if none). */
const char *gw_last_error(void);

/* Loads a JSON scene description; relative paths resolve against the file's
 * directory. The handle owns all loaded assets. */
gw_status gw_scene_load(const char *config_path, gw_scene **out_scene);

/* Applies "section.key=value" overrides (value parsed as JSON when possible)
 * and reloads the scene's assets. */
gw_status gw_scene_override(gw_scene *scene, const char *key_equals_value);

void gw_scene_destroy(gw_scene *scene);

/* Compiles the four warp fields, writes them plus the Fresnel weight map and
 * a refraction preview into out_dir. threads = 0 uses all cores. */
gw_status gw_compile_warps(gw_scene *scene, const char *out_dir, int threads);

/* Renders only the refraction preview PNG. */
gw_status gw_render_refraction(gw_scene *scene, const char *out_png, int threads);

/* Runs the synchronized generation loop and writes perspective.png,
 * panorama.png and trace.log into out_dir. */
gw_status gw_sync_generate(gw_scene *scene, const char *out_dir, int threads);

/* Scores result against reference inside a mask (PNG paths; mask luma >= 0.5
 * selects pixels). */
gw_status gw_score(const char *result_png, const char *reference_png,
                   const char *mask_png, gw_metrics *out_metrics);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* GLASSWARP_H */
