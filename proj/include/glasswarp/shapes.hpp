// Copyright (c) 2026 glasswarp authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "glasswarp/geometry.hpp"

namespace glasswarp {

// Axis-aligned rectangle in the y = level plane spanning [x0, x1] x [z0, z1].
// With normal_plus_y=false the winding faces -y, which is "up" in the default
// camera frame (y points down).
TriMesh make_horizontal_quad(double x0, double x1, double z0, double z1,
                             double level, bool normal_plus_y = true,
                             MeshTag tag = MeshTag::Background);

// Rectangle perpendicular to -z at the given depth, covering [x0,x1] x [y0,y1],
// facing +z (toward a camera at the origin).
TriMesh make_frontal_quad(double x0, double x1, double y0, double y1, double z,
                          MeshTag tag = MeshTag::Background);

// Closed axis-aligned box with outward-facing windings.
TriMesh make_box(const Aabb &box, MeshTag tag = MeshTag::BoundingBox);

// Latitude-longitude sphere with exact per-vertex normals;
// triangle count is 2 * segments * (rings - 1).
TriMesh make_uv_sphere(Vec3 center, double radius, int segments, int rings,
                       MeshTag tag = MeshTag::Object);

} // namespace glasswarp
