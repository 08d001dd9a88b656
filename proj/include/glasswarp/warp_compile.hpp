// Copyright (c) 2026 glasswarp authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>

#include "glasswarp/geometry.hpp"
#include "glasswarp/optics.hpp"
#include "glasswarp/warpfield.hpp"

namespace glasswarp {

// Immutable scene view for warp compilation. `background` holds the scene
// geometry straight rays may stop on; `enclosure` optionally catches rays
// that would otherwise leave the scene (only its inside faces count).
struct TraceScene {
    const Surface *object = nullptr;
    Medium medium;
    std::vector<const Surface *> background;
    const Surface *enclosure = nullptr;

    PerspectiveCamera camera;
    PanoCamera pano;

    TraceOptions trace;
    bool restrict_pano_refraction_to_object = false;
    double occlusion_depth_tolerance = 1e-3; // relative, for pi's visibility test

    std::vector<const Surface *> background_with_enclosure() const {
        std::vector<const Surface *> all = background;
        if (enclosure) all.push_back(enclosure);
        return all;
    }
};

// Self-warp: object pixels map to the background location their refracted
// ray hits (perspective source); pixels that miss the object map to
// themselves; refracted rays that leave the observed background are masked.
WarpField compute_self_warp(const TraceScene &scene, int threads = 1);

// Panorama-to-perspective refraction: every perspective pixel maps to the
// equirectangular coordinate of its (refracted) ray's end direction as seen
// from the panorama center.
WarpField compute_pano_to_persp_refraction(const TraceScene &scene, int threads = 1);

// Panorama-to-perspective reflection: object pixels map to the
// equirectangular coordinate of the first-bounce mirror direction.
WarpField compute_pano_to_persp_reflection(const TraceScene &scene, int threads = 1);

// Perspective-to-panorama: straight rays from the panorama center, projected
// into the perspective view; masked where the direction leaves the frustum
// or the hit is occluded in the perspective view.
WarpField compute_persp_to_pano(const TraceScene &scene, int threads = 1);

// Average entry reflectance per pixel, zero off the object.
FresnelWeightMap compute_fresnel_weights(const TraceScene &scene, int threads = 1);

struct WarpBundle {
    WarpField self_warp;            // perspective -> perspective
    WarpField pano_refraction;      // panorama -> perspective
    WarpField pano_reflection;      // panorama -> perspective
    WarpField persp_to_pano;        // perspective -> panorama
    FresnelWeightMap fresnel;
};

WarpBundle compile_warps(const TraceScene &scene, int threads = 1);

} // namespace glasswarp
