// Copyright (c) 2026 glasswarp authors
// SPDX-License-Identifier: Apache-2.0

#include "glasswarp/warp_compile.hpp"

#include <cmath>

#include "glasswarp/error.hpp"
#include "glasswarp/parallel.hpp"

namespace glasswarp {

namespace {

WarpField make_field(int w, int h, SourceSpace space) {
    WarpField f;
    f.target_width = w;
    f.target_height = h;
    f.source_space = space;
    f.coords.assign(static_cast<size_t>(w) * h * 2, 0.0f);
    f.mask.assign(static_cast<size_t>(w) * h, 0);
    return f;
}

void check_scene(const TraceScene &scene) {
    if (!scene.object) fail(ErrorKind::InvalidArgument, "scene has no object");
    scene.camera.validate();
    scene.pano.validate();
    scene.medium.validate();
}

// Masked pixels keep coordinates ("no claim" semantics), but downstream
// pyramid warping samples them as hole filler, so propagate the nearest
// valid pixel's coordinates into masked regions. Two-pass chamfer sweep.
void fill_masked_coords(WarpField &field) {
    const int w = field.target_width, h = field.target_height;
    const size_t n = field.pixel_count();
    std::vector<float> dist(n, 1e30f);
    for (size_t i = 0; i < n; ++i)
        if (field.mask[i]) dist[i] = 0.0f;

    auto relax = [&](size_t p, size_t q, float step) {
        if (dist[q] + step < dist[p]) {
            dist[p] = dist[q] + step;
            field.coords[2 * p] = field.coords[2 * q];
            field.coords[2 * p + 1] = field.coords[2 * q + 1];
        }
    };
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            size_t p = static_cast<size_t>(y) * w + x;
            if (dist[p] == 0.0f) continue;
            if (x > 0) relax(p, p - 1, 1.0f);
            if (y > 0) {
                if (x > 0) relax(p, p - w - 1, 1.4f);
                relax(p, p - w, 1.0f);
                if (x < w - 1) relax(p, p - w + 1, 1.4f);
            }
        }
    }
    for (int y = h - 1; y >= 0; --y) {
        for (int x = w - 1; x >= 0; --x) {
            size_t p = static_cast<size_t>(y) * w + x;
            if (dist[p] == 0.0f) continue;
            if (x < w - 1) relax(p, p + 1, 1.0f);
            if (y < h - 1) {
                if (x < w - 1) relax(p, p + w + 1, 1.4f);
                relax(p, p + w, 1.0f);
                if (x > 0) relax(p, p + w - 1, 1.4f);
            }
        }
    }
}

bool inside_image(Vec2 p, int w, int h) {
    return p.x >= 0.0 && p.x <= w - 1 && p.y >= 0.0 && p.y <= h - 1;
}

} // namespace

WarpField compute_self_warp(const TraceScene &scene, int threads) {
    check_scene(scene);
    const auto &cam = scene.camera;
    WarpField field = make_field(cam.width, cam.height, SourceSpace::Perspective);

    parallel_for(cam.height, threads, [&](int64_t yi) {
        const int y = static_cast<int>(yi);
        for (int x = 0; x < cam.width; ++x) {
            Ray ray = cam.pixel_ray({double(x), double(y)});
            auto first = scene.object->intersect(ray, scene.trace.eps_self);
            auto bg_first =
                intersect_nearest(scene.background, ray, scene.trace.eps_self);
            const bool hits_object =
                first && (!bg_first || first->distance < bg_first->distance);
            if (!hits_object) {
                // Straight-through pixels are the identity.
                field.set(x, y, float(x), float(y), true);
                continue;
            }
            LightPath path = trace_refraction_path(ray, *scene.object, scene.medium,
                                                   scene.background, scene.trace);
            if (!path.hit_background()) continue; // masked
            auto px = cam.project_point(path.hit_point);
            if (!px || !inside_image(*px, cam.width, cam.height)) continue;
            field.set(x, y, static_cast<float>(px->x), static_cast<float>(px->y),
                      true);
        }
    });
    fill_masked_coords(field);
    return field;
}

WarpField compute_pano_to_persp_refraction(const TraceScene &scene, int threads) {
    check_scene(scene);
    const auto &cam = scene.camera;
    WarpField field = make_field(cam.width, cam.height, SourceSpace::Panorama);
    const auto all_background = scene.background_with_enclosure();

    parallel_for(cam.height, threads, [&](int64_t yi) {
        const int y = static_cast<int>(yi);
        for (int x = 0; x < cam.width; ++x) {
            Ray ray = cam.pixel_ray({double(x), double(y)});
            if (scene.restrict_pano_refraction_to_object) {
                auto first = scene.object->intersect(ray, scene.trace.eps_self);
                auto bg = intersect_nearest(scene.background, ray, scene.trace.eps_self);
                if (!first || (bg && bg->distance < first->distance)) continue;
            }
            LightPath path = trace_refraction_path(ray, *scene.object, scene.medium,
                                                   all_background, scene.trace);
            Vec3 direction;
            if (path.terminal == PathTerminal::HitBackground) {
                Vec3 offset = path.hit_point - scene.pano.center;
                if (norm_squared(offset) < 1e-18) continue;
                direction = normalize(offset);
            } else if (path.terminal == PathTerminal::EscapedWithDirection) {
                direction = path.escape_direction;
            } else {
                continue; // absorbed: no direction exists
            }
            Vec2 uv = scene.pano.project_direction(direction);
            field.set(x, y, static_cast<float>(uv.x), static_cast<float>(uv.y), true);
        }
    });
    fill_masked_coords(field);
    return field;
}

WarpField compute_pano_to_persp_reflection(const TraceScene &scene, int threads) {
    check_scene(scene);
    const auto &cam = scene.camera;
    WarpField field = make_field(cam.width, cam.height, SourceSpace::Panorama);

    parallel_for(cam.height, threads, [&](int64_t yi) {
        const int y = static_cast<int>(yi);
        for (int x = 0; x < cam.width; ++x) {
            Ray ray = cam.pixel_ray({double(x), double(y)});
            auto obj = scene.object->intersect(ray, scene.trace.eps_self);
            if (!obj) continue;
            auto bg = intersect_nearest(scene.background, ray, scene.trace.eps_self);
            if (bg && bg->distance < obj->distance) continue; // object occluded
            LightPath path = trace_reflection_path(ray, *scene.object, scene.trace);
            if (path.events.empty()) continue;
            Vec2 uv = scene.pano.project_direction(path.escape_direction);
            field.set(x, y, static_cast<float>(uv.x), static_cast<float>(uv.y), true);
        }
    });
    fill_masked_coords(field);
    return field;
}

WarpField compute_persp_to_pano(const TraceScene &scene, int threads) {
    check_scene(scene);
    const auto &cam = scene.camera;
    const auto &pano = scene.pano;
    WarpField field = make_field(pano.width, pano.height, SourceSpace::Perspective);

    parallel_for(pano.height, threads, [&](int64_t yi) {
        const int y = static_cast<int>(yi);
        for (int x = 0; x < pano.width; ++x) {
            Vec3 dir = pano.pixel_direction({double(x), double(y)});
            Ray ray{pano.center, dir};
            auto hit = intersect_nearest(scene.background, ray, scene.trace.eps_self);

            std::optional<Vec2> px;
            if (hit) {
                px = cam.project_point(hit->point);
            } else {
                px = cam.project_direction(dir);
            }
            if (!px || !inside_image(*px, cam.width, cam.height)) continue;

            // Visibility in the perspective view. The perspective ray toward
            // this pixel must reach the same point: neither the background
            // (within a relative depth tolerance) nor the object may be in
            // front of it.
            Ray view = cam.pixel_ray(*px);
            auto vis_bg = intersect_nearest(scene.background, view, scene.trace.eps_self);
            auto vis_obj = scene.object->intersect(view, scene.trace.eps_self);
            if (hit) {
                double depth = norm(hit->point - view.origin);
                if (vis_bg &&
                    vis_bg->distance < depth * (1.0 - scene.occlusion_depth_tolerance))
                    continue;
                if (vis_obj && vis_obj->distance < depth * (1.0 - scene.occlusion_depth_tolerance))
                    continue;
            } else {
                // A direction at infinity is visible only if the perspective
                // ray escapes too.
                if (vis_bg || vis_obj) continue;
            }
            field.set(x, y, static_cast<float>(px->x), static_cast<float>(px->y),
                      true);
        }
    });
    fill_masked_coords(field);
    return field;
}

FresnelWeightMap compute_fresnel_weights(const TraceScene &scene, int threads) {
    check_scene(scene);
    const auto &cam = scene.camera;
    FresnelWeightMap map;
    map.width = cam.width;
    map.height = cam.height;
    map.weights.assign(static_cast<size_t>(cam.width) * cam.height, 0.0f);

    parallel_for(cam.height, threads, [&](int64_t yi) {
        const int y = static_cast<int>(yi);
        for (int x = 0; x < cam.width; ++x) {
            Ray ray = cam.pixel_ray({double(x), double(y)});
            auto obj = scene.object->intersect(ray, scene.trace.eps_self);
            if (!obj) continue;
            auto bg = intersect_nearest(scene.background, ray, scene.trace.eps_self);
            if (bg && bg->distance < obj->distance) continue;
            FresnelCoefficients f = fresnel_reflectance(ray.direction, obj->normal,
                                                        1.0,
                                                        scene.medium.refractive_index);
            map.weights[static_cast<size_t>(y) * cam.width + x] =
                static_cast<float>(f.average());
        }
    });
    return map;
}

WarpBundle compile_warps(const TraceScene &scene, int threads) {
    WarpBundle bundle;
    bundle.self_warp = compute_self_warp(scene, threads);
    bundle.pano_refraction = compute_pano_to_persp_refraction(scene, threads);
    bundle.pano_reflection = compute_pano_to_persp_reflection(scene, threads);
    bundle.persp_to_pano = compute_persp_to_pano(scene, threads);
    bundle.fresnel = compute_fresnel_weights(scene, threads);
    return bundle;
}

} // namespace glasswarp
