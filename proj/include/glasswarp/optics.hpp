// Copyright (c) 2026 glasswarp authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <vector>

#include "glasswarp/geometry.hpp"

namespace glasswarp {

struct Medium {
    double refractive_index = 1.0; // must be >= 1

    void validate() const;
};

enum class PathEvent : uint8_t {
    Refraction,
    TotalInternalReflection,
    Reflection,
};

enum class PathTerminal : uint8_t {
    EscapedWithDirection, // left the scene; escape_direction is set
    HitBackground,        // stopped on background/bounding-box geometry
    Absorbed,             // event budget exhausted
};

// Piecewise-linear light path. vertices[i+1] = vertices[i] +
// (lengths[i+1] - lengths[i]) * directions[i]; lengths strictly increase
// from 0. events[k] describes what happened at vertices[k+1].
struct LightPath {
    std::vector<Vec3> vertices;
    std::vector<Vec3> directions;
    std::vector<double> cumulative_lengths;
    std::vector<PathEvent> events;

    PathTerminal terminal = PathTerminal::EscapedWithDirection;
    Vec3 escape_direction;
    Vec3 hit_point;                // valid for HitBackground
    MeshTag hit_tag = MeshTag::Background;
    Vec2 hit_pixel{-1.0, -1.0};    // filled by callers that know the camera

    int event_count() const { return static_cast<int>(events.size()); }
    bool hit_background() const {
        return terminal == PathTerminal::HitBackground && hit_tag == MeshTag::Background;
    }
};

struct RefractionResult {
    Vec3 direction; // unit
    bool total_internal_reflection = false;
};

// Snell refraction of d at a surface with normal n oriented against d
// (d.n < 0), from index nu_in into nu_out. Falls back to the mirror
// direction when the refracted ray does not exist (TIR).
RefractionResult refract_direction(Vec3 d, Vec3 n, double nu_in, double nu_out);

// Mirror reflection d - 2(d.n)n.
Vec3 reflect_direction(Vec3 d, Vec3 n);

struct FresnelCoefficients {
    double r_parallel = 0.0;      // R_p
    double r_perpendicular = 0.0; // R_s

    double average() const { return 0.5 * (r_parallel + r_perpendicular); }
};

// Dielectric power reflectances for light arriving along d at an interface
// with normal n (d.n < 0), from index nu0 into nu1. Both coefficients are 1
// at and beyond the critical angle.
FresnelCoefficients fresnel_reflectance(Vec3 d, Vec3 n, double nu0, double nu1);

struct TraceOptions {
    int max_events = 8;     // refraction/TIR budget; must be >= 2
    double eps_self = 1e-7; // self-intersection offset along the ray
};

// Traces a ray through a transparent object embedded in an ambient medium of
// index 1. Object boundary crossings refract (or totally reflect); the path
// terminates on background geometry, on escape, or when the event budget
// runs out. Front-face hits on BoundingBox-tagged geometry are stepped over,
// so an enclosing shell only catches rays on the way out.
LightPath trace_refraction_path(const Ray &ray, const Surface &object,
                                const Medium &medium,
                                std::span<const Surface *const> background,
                                const TraceOptions &opts);

// Single dominant mirror bounce off the object; rays that miss escape along
// their own direction with an empty event list.
LightPath trace_reflection_path(const Ray &ray, const Surface &object,
                                const TraceOptions &opts);

} // namespace glasswarp
