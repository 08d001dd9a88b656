// Copyright (c) 2026 glasswarp authors
// SPDX-License-Identifier: Apache-2.0

#include "support/fixtures.hpp"

#include <cmath>

#include "glasswarp/blend.hpp"
#include "glasswarp/error.hpp"

namespace gwtest {

TraceScene SphereScene::view() const {
    TraceScene s;
    s.object = object.get();
    s.medium = medium;
    s.background.push_back(background.get());
    s.enclosure = shell.get();
    s.camera = camera;
    s.pano = pano;
    s.trace = trace;
    return s;
}

SphereScene make_sphere_scene(const SphereSceneParams &p) {
    SphereScene s;
    s.object_mesh = make_uv_sphere(p.sphere_center, p.sphere_radius,
                                   p.sphere_segments, p.sphere_rings);
    s.background_mesh = make_frontal_quad(-p.plane_half, p.plane_half,
                                          -p.plane_half, p.plane_half, p.plane_z);

    Aabb shell_box = s.background_mesh.bounds();
    shell_box.expand(s.object_mesh.bounds());
    shell_box.expand(Vec3{0, 0, 0}); // camera
    Vec3 pad = 0.1 * shell_box.extent();
    double min_pad = 0.05 * shell_box.diagonal();
    pad = max(pad, Vec3{min_pad, min_pad, min_pad});
    shell_box.lo = shell_box.lo - pad;
    shell_box.hi = shell_box.hi + pad;
    s.shell_mesh = make_box(shell_box, MeshTag::BoundingBox);

    s.object = std::make_unique<MeshSurface>(s.object_mesh);
    s.background = std::make_unique<MeshSurface>(s.background_mesh);
    s.shell = std::make_unique<MeshSurface>(s.shell_mesh);

    s.camera.width = p.persp_width;
    s.camera.height = p.persp_height;
    s.camera.fx = s.camera.fy = 0.9 * p.persp_width;
    s.camera.cx = 0.5 * (p.persp_width - 1);
    s.camera.cy = 0.5 * (p.persp_height - 1);

    s.pano.center = p.sphere_center;
    s.pano.height = p.pano_height;
    s.pano.width = 2 * p.pano_height;

    s.medium.refractive_index = p.refractive_index;
    Aabb bounds = s.background_mesh.bounds();
    bounds.expand(s.object_mesh.bounds());
    s.trace.eps_self = 1e-4 * bounds.diagonal();
    s.trace.max_events = 8;
    return s;
}

Vec3 environment_color(Vec3 d, double amplitude) {
    d = normalize(d);
    return {0.45 + amplitude * d.x, 0.45 + amplitude * d.y,
            0.45 - amplitude * d.z};
}

namespace {

void put(ImagePlane &img, int x, int y, Vec3 c) {
    float *p = img.px(x, y);
    p[0] = static_cast<float>(c.x);
    p[1] = static_cast<float>(c.y);
    p[2] = static_cast<float>(c.z);
}

} // namespace

ImagePlane render_clean_plate(const SphereScene &scene, double amplitude) {
    const auto &cam = scene.camera;
    ImagePlane img(cam.width, cam.height, ColorSpace::Linear);
    for (int y = 0; y < cam.height; ++y) {
        for (int x = 0; x < cam.width; ++x) {
            Ray ray = cam.pixel_ray({double(x), double(y)});
            auto hit = scene.background->intersect(ray, scene.trace.eps_self);
            Vec3 dir = hit ? normalize(hit->point - scene.pano.center) : ray.direction;
            put(img, x, y, environment_color(dir, amplitude));
        }
    }
    return img;
}

ImagePlane render_environment_pano(const SphereScene &scene, double amplitude) {
    const auto &pano = scene.pano;
    ImagePlane img(pano.width, pano.height, ColorSpace::Linear);
    for (int y = 0; y < pano.height; ++y)
        for (int x = 0; x < pano.width; ++x)
            put(img, x, y,
                environment_color(pano.pixel_direction({double(x), double(y)}),
                                  amplitude));
    return img;
}

ImagePlane render_physical_perspective(const SphereScene &scene, double amplitude) {
    const auto &cam = scene.camera;
    TraceScene view = scene.view();
    ImagePlane img(cam.width, cam.height, ColorSpace::Linear);
    std::vector<const Surface *> bg_with_shell = view.background_with_enclosure();
    for (int y = 0; y < cam.height; ++y) {
        for (int x = 0; x < cam.width; ++x) {
            Ray ray = cam.pixel_ray({double(x), double(y)});
            auto obj = scene.object->intersect(ray, scene.trace.eps_self);
            auto bg = scene.background->intersect(ray, scene.trace.eps_self);
            if (!obj || (bg && bg->distance < obj->distance)) {
                Vec3 dir =
                    bg ? normalize(bg->point - scene.pano.center) : ray.direction;
                put(img, x, y, environment_color(dir, amplitude));
                continue;
            }
            LightPath refr = trace_refraction_path(ray, *scene.object, scene.medium,
                                                   bg_with_shell, scene.trace);
            Vec3 c_refr{0.45, 0.45, 0.45};
            if (refr.terminal == PathTerminal::HitBackground)
                c_refr = environment_color(refr.hit_point - scene.pano.center,
                                           amplitude);
            else if (refr.terminal == PathTerminal::EscapedWithDirection)
                c_refr = environment_color(refr.escape_direction, amplitude);
            LightPath refl = trace_reflection_path(ray, *scene.object, scene.trace);
            Vec3 c_refl = environment_color(refl.escape_direction, amplitude);
            double w = fresnel_reflectance(ray.direction, obj->normal, 1.0,
                                           scene.medium.refractive_index)
                           .average();
            put(img, x, y, (1.0 - w) * c_refr + w * c_refl);
        }
    }
    return img;
}

SyncScene make_sync_scene_from(const SphereScene &scene, const WarpBundle &warps,
                               ImagePlane clean_plate) {
    SyncScene sync;
    sync.self_warp = warps.self_warp;
    sync.pano_refraction = warps.pano_refraction;
    sync.pano_reflection = warps.pano_reflection;
    sync.persp_to_pano = warps.persp_to_pano;
    sync.fresnel = warps.fresnel;
    sync.clean_background = std::move(clean_plate);
    sync.persp_width = scene.camera.width;
    sync.persp_height = scene.camera.height;
    sync.pano_width = scene.pano.width;
    sync.pano_height = scene.pano.height;
    sync.validate();
    return sync;
}

ConsistentTargets make_consistent_targets(const SyncScene &sync, double lambda,
                                          int levels, ImagePlane initial_persp,
                                          ImagePlane initial_pano, int iterations) {
    ConsistentTargets out;
    ImagePlane persp = std::move(initial_persp);
    ImagePlane pano = std::move(initial_pano);

    for (int it = 0; it < iterations; ++it) {
        auto [next_persp, next_pano] =
            synchronize_views(persp, pano, sync, lambda, levels);
        out.final_change = std::max(max_abs_difference(next_persp, persp),
                                    max_abs_difference(next_pano, pano));
        persp = std::move(next_persp);
        pano = std::move(next_pano);
        if (out.final_change < 1e-9) break;
    }
    out.perspective = std::move(persp);
    out.panorama = std::move(pano);
    return out;
}

ImagePlane random_image(int width, int height, uint64_t seed, float lo, float hi) {
    ImagePlane img(width, height, ColorSpace::Linear);
    Rng rng(seed);
    for (float &v : img.samples)
        v = lo + static_cast<float>(rng.uniform()) * (hi - lo);
    return img;
}

double max_abs_difference(const ImagePlane &a, const ImagePlane &b) {
    double m = 0.0;
    for (size_t i = 0; i < a.samples.size(); ++i)
        m = std::max(m, std::abs(double(a.samples[i]) - b.samples[i]));
    return m;
}

double max_abs_difference(const Tensor &a, const Tensor &b) {
    double m = 0.0;
    for (size_t i = 0; i < a.data.size(); ++i)
        m = std::max(m, std::abs(a.data[i] - b.data[i]));
    return m;
}

} // namespace gwtest
