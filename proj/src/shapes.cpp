// Copyright (c) 2026 glasswarp authors
// SPDX-License-Identifier: Apache-2.0

#include "glasswarp/shapes.hpp"

#include <cmath>
#include <numbers>

namespace glasswarp {

TriMesh make_horizontal_quad(double x0, double x1, double z0, double z1,
                             double level, bool normal_plus_y, MeshTag tag) {
    TriMesh m;
    m.tag = tag;
    m.vertices = {{x0, level, z0}, {x1, level, z0}, {x1, level, z1}, {x0, level, z1}};
    if (normal_plus_y) {
        m.triangles = {{0, 2, 1}, {0, 3, 2}};
    } else {
        m.triangles = {{0, 1, 2}, {0, 2, 3}};
    }
    return m;
}

TriMesh make_frontal_quad(double x0, double x1, double y0, double y1, double z,
                          MeshTag tag) {
    TriMesh m;
    m.tag = tag;
    m.vertices = {{x0, y0, z}, {x1, y0, z}, {x1, y1, z}, {x0, y1, z}};
    m.triangles = {{0, 1, 2}, {0, 2, 3}};
    return m;
}

TriMesh make_box(const Aabb &box, MeshTag tag) {
    TriMesh m;
    m.tag = tag;
    const Vec3 &l = box.lo;
    const Vec3 &h = box.hi;
    m.vertices = {{l.x, l.y, l.z}, {h.x, l.y, l.z}, {h.x, h.y, l.z}, {l.x, h.y, l.z},
                  {l.x, l.y, h.z}, {h.x, l.y, h.z}, {h.x, h.y, h.z}, {l.x, h.y, h.z}};
    m.triangles = {
        {0, 2, 1}, {0, 3, 2}, // z = lo, outward -z
        {4, 5, 6}, {4, 6, 7}, // z = hi, outward +z
        {0, 1, 5}, {0, 5, 4}, // y = lo, outward -y
        {3, 7, 6}, {3, 6, 2}, // y = hi, outward +y
        {0, 4, 7}, {0, 7, 3}, // x = lo, outward -x
        {1, 2, 6}, {1, 6, 5}, // x = hi, outward +x
    };
    return m;
}

TriMesh make_uv_sphere(Vec3 center, double radius, int segments, int rings,
                       MeshTag tag) {
    TriMesh m;
    m.tag = tag;
    // rings latitudinal bands -> rings+1 rows of vertices; poles are rows of
    // duplicated positions so the index arithmetic stays regular.
    for (int r = 0; r <= rings; ++r) {
        double theta = std::numbers::pi * r / rings; // 0 at +y pole
        double sy = std::cos(theta);
        double sr = std::sin(theta);
        for (int s = 0; s <= segments; ++s) {
            double phi = 2.0 * std::numbers::pi * s / segments;
            Vec3 n{sr * std::cos(phi), sy, sr * std::sin(phi)};
            m.vertices.push_back(center + radius * n);
            m.normals.push_back(n);
        }
    }
    auto vid = [&](int r, int s) { return r * (segments + 1) + s; };
    for (int r = 0; r < rings; ++r) {
        for (int s = 0; s < segments; ++s) {
            int a = vid(r, s), b = vid(r + 1, s), c = vid(r + 1, s + 1),
                d = vid(r, s + 1);
            if (r > 0) m.triangles.push_back({a, d, b});
            if (r + 1 < rings) m.triangles.push_back({d, c, b});
        }
    }
    return m;
}

} // namespace glasswarp
