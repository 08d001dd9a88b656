// Copyright (c) 2026 glasswarp authors
// SPDX-License-Identifier: Apache-2.0
//
// From-scratch reference tracer for oracle tests. No acceleration structure,
// no code shared with the production intersect/refraction path: plain
// all-triangle scans and a direct transcription of the refraction formulas.

#pragma once

#include <optional>
#include <vector>

#include "glasswarp/geometry.hpp"

namespace gwtest {

using glasswarp::TriMesh;
using glasswarp::Vec2;
using glasswarp::Vec3;

struct NaiveHit {
    Vec3 point;
    Vec3 normal; // oriented against the ray
    double t = 0.0;
    int mesh = -1; // index into the scene's mesh list
    int triangle = -1;
    bool front = true;
};

struct NaiveScene {
    // mesh 0 = object, others = background; bounding-box shells are marked.
    std::vector<const TriMesh *> meshes;
    std::vector<bool> is_shell;
    double refractive_index = 1.5;
    double eps = 1e-7;
    int max_events = 8;
};

std::optional<NaiveHit> naive_intersect(const NaiveScene &scene, Vec3 origin,
                                        Vec3 dir, bool skip_object,
                                        bool skip_shell_front);

struct NaiveRefractionResult {
    bool has_end = false; // stopped on background (or shell) geometry
    Vec3 end_point;       // valid when has_end
    bool escaped = false; // left the scene along end_direction
    Vec3 end_direction;
    bool absorbed = false;
    bool entered_object = false;
    bool shell_hit = false; // endpoint is on a bounding shell
};

// Traces pixel rays through the object with Snell's law / TIR, stopping on
// non-object geometry.
NaiveRefractionResult naive_trace_refraction(const NaiveScene &scene, Vec3 origin,
                                             Vec3 dir);

struct NaiveReflectionResult {
    bool hit_object = false;
    Vec3 direction; // mirror direction when hit, original otherwise
};

NaiveReflectionResult naive_trace_reflection(const NaiveScene &scene, Vec3 origin,
                                             Vec3 dir);

// Projection helpers, re-derived rather than reused.
Vec3 naive_pixel_direction(double px, double py, double fx, double fy, double cx,
                           double cy);
std::optional<Vec2> naive_project(Vec3 p, double fx, double fy, double cx,
                                  double cy);
Vec2 naive_equirect(Vec3 dir, int width, int height);

} // namespace gwtest
