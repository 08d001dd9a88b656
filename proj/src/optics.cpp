// Copyright (c) 2026 glasswarp authors
// SPDX-License-Identifier: Apache-2.0

#include "glasswarp/optics.hpp"

#include <cmath>

#include "glasswarp/error.hpp"

namespace glasswarp {

namespace {

constexpr double kUnitTolerance = 1e-6;
// gamma in (-kGrazingClamp, 0) counts as grazing refraction, not TIR,
// keeping the refracted direction continuous at the critical angle.
constexpr double kGrazingClamp = 1e-12;

void require_unit(Vec3 v, const char *what) {
    if (std::abs(norm(v) - 1.0) > kUnitTolerance)
        fail(ErrorKind::InvalidArgument, std::string("non-unit vector: ") + what);
}

} // namespace

void Medium::validate() const {
    if (!(refractive_index >= 1.0))
        fail(ErrorKind::InvalidArgument, "refractive index must be >= 1");
}

Vec3 reflect_direction(Vec3 d, Vec3 n) {
    require_unit(d, "incident direction");
    require_unit(n, "surface normal");
    return d - 2.0 * dot(d, n) * n;
}

RefractionResult refract_direction(Vec3 d, Vec3 n, double nu_in, double nu_out) {
    require_unit(d, "incident direction");
    require_unit(n, "surface normal");
    if (nu_in <= 0.0 || nu_out <= 0.0)
        fail(ErrorKind::InvalidArgument, "refractive indices must be positive");
    // Exact tangency (d.n = 0) is the grazing limit and stays well defined.
    if (dot(d, n) > 0.0)
        fail(ErrorKind::InvalidArgument, "normal must oppose the incident ray");

    const double alpha = nu_in / nu_out;
    const double beta = -dot(d, n);
    double gamma = 1.0 - alpha * alpha * (1.0 - beta * beta);
    if (gamma < 0.0) {
        if (gamma > -kGrazingClamp) {
            gamma = 0.0;
        } else {
            return {reflect_direction(d, n), true};
        }
    }
    Vec3 refracted = alpha * d + (alpha * beta - std::sqrt(gamma)) * n;
    return {normalize(refracted), false};
}

FresnelCoefficients fresnel_reflectance(Vec3 d, Vec3 n, double nu0, double nu1) {
    require_unit(d, "incident direction");
    require_unit(n, "surface normal");
    if (nu0 <= 0.0 || nu1 <= 0.0)
        fail(ErrorKind::InvalidArgument, "refractive indices must be positive");
    if (dot(d, n) > 0.0)
        fail(ErrorKind::InvalidArgument, "normal must oppose the incident ray");

    const double alpha = nu0 / nu1;
    const double beta = -dot(d, n);
    const double gamma = 1.0 - alpha * alpha * (1.0 - beta * beta);
    if (gamma < 0.0) return {1.0, 1.0}; // total reflection
    const double root = std::sqrt(gamma);

    double rp = (nu1 * beta - nu0 * root) / (nu1 * beta + nu0 * root);
    double rs = (nu0 * beta - nu1 * root) / (nu0 * beta + nu1 * root);
    return {rp * rp, rs * rs};
}

namespace {

void append_segment(LightPath &path, Vec3 point, Vec3 next_direction) {
    double seg = norm(point - path.vertices.back());
    path.cumulative_lengths.push_back(path.cumulative_lengths.back() + seg);
    path.vertices.push_back(point);
    path.directions.push_back(next_direction);
}

} // namespace

LightPath trace_refraction_path(const Ray &ray, const Surface &object,
                                const Medium &medium,
                                std::span<const Surface *const> background,
                                const TraceOptions &opts) {
    require_unit(ray.direction, "ray direction");
    medium.validate();
    if (opts.max_events < 2)
        fail(ErrorKind::InvalidArgument, "max_events must be at least 2");

    LightPath path;
    path.vertices.push_back(ray.origin);
    path.directions.push_back(ray.direction);
    path.cumulative_lengths.push_back(0.0);

    Vec3 pos = ray.origin;
    Vec3 dir = ray.direction;
    bool inside = false;

    for (;;) {
        Ray current{pos, dir};
        auto obj_hit = object.intersect(current, opts.eps_self);
        auto bg_hit = intersect_nearest(background, current, opts.eps_self);
        // Bounding-box shells only terminate rays leaving the scene; a
        // front-face shell hit is stepped over.
        while (bg_hit && bg_hit->tag == MeshTag::BoundingBox && bg_hit->front_face) {
            Ray cont{bg_hit->point, dir};
            bg_hit = intersect_nearest(background, cont, opts.eps_self);
            if (bg_hit) bg_hit->distance += norm(cont.origin - pos);
        }

        const bool object_first =
            obj_hit && (!bg_hit || obj_hit->distance < bg_hit->distance);

        if (object_first) {
            if (path.event_count() >= opts.max_events) {
                path.terminal = PathTerminal::Absorbed;
                return path;
            }
            double nu_in = inside ? medium.refractive_index : 1.0;
            double nu_out = inside ? 1.0 : medium.refractive_index;
            RefractionResult r = refract_direction(dir, obj_hit->normal, nu_in, nu_out);
            if (r.total_internal_reflection) {
                path.events.push_back(PathEvent::TotalInternalReflection);
            } else {
                path.events.push_back(PathEvent::Refraction);
                inside = !inside;
            }
            append_segment(path, obj_hit->point, r.direction);
            pos = obj_hit->point;
            dir = r.direction;
            continue;
        }

        if (bg_hit) {
            append_segment(path, bg_hit->point, dir);
            path.terminal = PathTerminal::HitBackground;
            path.hit_point = bg_hit->point;
            path.hit_tag = bg_hit->tag;
            return path;
        }

        path.terminal = PathTerminal::EscapedWithDirection;
        path.escape_direction = dir;
        return path;
    }
}

LightPath trace_reflection_path(const Ray &ray, const Surface &object,
                                const TraceOptions &opts) {
    require_unit(ray.direction, "ray direction");

    LightPath path;
    path.vertices.push_back(ray.origin);
    path.directions.push_back(ray.direction);
    path.cumulative_lengths.push_back(0.0);

    auto hit = object.intersect(ray, opts.eps_self);
    if (!hit) {
        path.terminal = PathTerminal::EscapedWithDirection;
        path.escape_direction = ray.direction;
        return path;
    }
    Vec3 reflected = reflect_direction(ray.direction, hit->normal);
    path.events.push_back(PathEvent::Reflection);
    append_segment(path, hit->point, reflected);
    path.terminal = PathTerminal::EscapedWithDirection;
    path.escape_direction = reflected;
    return path;
}

} // namespace glasswarp
