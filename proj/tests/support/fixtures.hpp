// Copyright (c) 2026 glasswarp authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <memory>

#include "glasswarp/rng.hpp"
#include "glasswarp/shapes.hpp"
#include "glasswarp/sync.hpp"
#include "glasswarp/warp_compile.hpp"

namespace gwtest {

using namespace glasswarp;

// Glass sphere in front of a frontal background plane, camera at the origin
// looking down -z. Owns every surface referenced by view().
struct SphereScene {
    TriMesh object_mesh;
    TriMesh background_mesh;
    TriMesh shell_mesh;
    std::unique_ptr<MeshSurface> object;
    std::unique_ptr<MeshSurface> background;
    std::unique_ptr<MeshSurface> shell;
    PerspectiveCamera camera;
    PanoCamera pano;
    Medium medium;
    TraceOptions trace;

    TraceScene view() const;
};

struct SphereSceneParams {
    int persp_width = 64;
    int persp_height = 64;
    int pano_height = 64; // width = 2 * height
    Vec3 sphere_center{0.0, 0.0, -2.0};
    double sphere_radius = 0.45;
    int sphere_segments = 48;
    int sphere_rings = 32;
    double refractive_index = 1.5;
    double plane_z = -4.0;
    double plane_half = 3.2;
};

SphereScene make_sphere_scene(const SphereSceneParams &params = {});

// Smooth directional environment color with configurable contrast.
Vec3 environment_color(Vec3 direction, double amplitude = 0.08);

// Clean plate: each pixel takes the environment color of the direction from
// the panorama center to the straight-ray background hit.
ImagePlane render_clean_plate(const SphereScene &scene, double amplitude = 0.08);

// Panorama rendered directly from the environment function.
ImagePlane render_environment_pano(const SphereScene &scene,
                                   double amplitude = 0.08);

// Physically composited perspective view (refraction + Fresnel-weighted
// reflection) of the environment.
ImagePlane render_physical_perspective(const SphereScene &scene,
                                       double amplitude = 0.08);

struct ConsistentTargets {
    ImagePlane perspective;
    ImagePlane panorama;
    double final_change = 0.0; // max-abs change of the last iteration
};

// Iterates the synchronization operator from the given starting pair until
// it stops moving, yielding targets that the loop must preserve.
ConsistentTargets make_consistent_targets(const SyncScene &sync, double lambda,
                                          int levels, ImagePlane initial_persp,
                                          ImagePlane initial_pano,
                                          int iterations = 80);

SyncScene make_sync_scene_from(const SphereScene &scene, const WarpBundle &warps,
                               ImagePlane clean_plate);

// Test utilities.
ImagePlane random_image(int width, int height, uint64_t seed, float lo = 0.0f,
                        float hi = 1.0f);
double max_abs_difference(const ImagePlane &a, const ImagePlane &b);
double max_abs_difference(const Tensor &a, const Tensor &b);

} // namespace gwtest
