// Copyright (c) 2026 glasswarp authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "glasswarp/vec.hpp"

namespace glasswarp {

struct Ray {
    Vec3 origin;
    Vec3 direction; // unit length
};

enum class MeshTag : uint8_t {
    Object = 0,
    Background = 1,
    BoundingBox = 2,
};

struct TriMesh {
    std::vector<Vec3> vertices;
    std::vector<std::array<int, 3>> triangles;
    std::vector<Vec3> normals; // per-vertex, optional (empty = flat shading)
    MeshTag tag = MeshTag::Background;

    Aabb bounds() const;
    // Throws on out-of-range indices, degenerate triangles (area <= 1e-12)
    // or a normal array that does not match the vertex count.
    void validate() const;

    void transform(double scale, const RigidTransform &xf);
};

struct Hit {
    Vec3 point;
    Vec3 normal; // unit, oriented against the incoming ray
    double distance = 0.0;
    MeshTag tag = MeshTag::Background;
    int triangle_index = -1;
    bool front_face = true; // geometric winding faced the ray origin
};

// Intersectable scene element; mesh-with-BVH and an analytic sphere both
// implement it so path tracing is independent of the representation.
class Surface {
public:
    virtual ~Surface() = default;
    virtual std::optional<Hit> intersect(const Ray &ray, double t_min) const = 0;
    virtual Aabb bounds() const = 0;
    virtual MeshTag tag() const = 0;
};

namespace bvh_detail {
struct Node {
    Aabb box;
    int32_t left = -1;   // interior: left child (right = left + 1)
    int32_t start = 0;   // leaf: first primitive
    int32_t count = 0;   // leaf: primitive count (0 for interior)
    uint8_t axis = 0;
};
} // namespace bvh_detail

// Binned-SAH BVH over one mesh. Nearest-hit ties at shared edges break
// toward the lowest triangle index, identically to the brute-force scan.
class MeshSurface : public Surface {
public:
    MeshSurface() = default;
    explicit MeshSurface(TriMesh mesh);

    std::optional<Hit> intersect(const Ray &ray, double t_min) const override;
    Aabb bounds() const override { return bounds_; }
    MeshTag tag() const override { return mesh_.tag; }

    // All-triangle scan with the same per-triangle test and tie rule;
    // the reference the BVH must agree with exactly.
    std::optional<Hit> intersect_brute_force(const Ray &ray, double t_min) const;

    const TriMesh &mesh() const { return mesh_; }

private:
    std::optional<Hit> finish_hit(const Ray &ray, int tri, double t, double u,
                                  double v) const;

    TriMesh mesh_;
    Aabb bounds_;
    std::vector<bvh_detail::Node> nodes_;
    std::vector<int32_t> order_; // triangle indices, leaf-contiguous
};

// Exact sphere, used where analytic normals are required.
class SphereSurface : public Surface {
public:
    SphereSurface(Vec3 center, double radius, MeshTag tag = MeshTag::Object)
        : center_(center), radius_(radius), tag_(tag) {}

    std::optional<Hit> intersect(const Ray &ray, double t_min) const override;
    Aabb bounds() const override;
    MeshTag tag() const override { return tag_; }

private:
    Vec3 center_;
    double radius_;
    MeshTag tag_;
};

// Nearest hit over a set of surfaces. Ties across surfaces keep the earlier
// entry in the span.
std::optional<Hit> intersect_nearest(std::span<const Surface *const> surfaces,
                                     const Ray &ray, double t_min);

struct PerspectiveCamera {
    int width = 0;
    int height = 0;
    double fx = 0.0, fy = 0.0; // focal lengths, pixels
    double cx = 0.0, cy = 0.0; // principal point, pixels
    RigidTransform pose;       // camera -> world

    void validate() const;

    // Pixel centers sit at integer coordinates; the camera looks along -z
    // with +x right and +y down in its own frame.
    Ray pixel_ray(Vec2 pixel) const;
    std::optional<Vec2> project_point(Vec3 world_point) const;
    std::optional<Vec2> project_direction(Vec3 world_direction) const;

    Vec3 position() const { return pose.translation; }
    Vec3 forward() const { return pose.apply_direction({0, 0, -1}); }
};

struct PanoCamera {
    Vec3 center;
    int width = 0;  // must equal 2 * height
    int height = 0;

    void validate() const;

    Vec3 pixel_direction(Vec2 pixel) const;
    Vec2 project_direction(Vec3 direction) const;
};

// Fixed equirectangular convention (+y up in the direction frame):
//   u = (atan2(d.x, -d.z) / (2 pi) + 0.5) * width
//   v = (0.5 - asin(d.y) / pi) * height
Vec2 direction_to_equirect(Vec3 direction, int width, int height);
Vec3 equirect_to_direction(Vec2 pixel, int width, int height);

struct DepthMap {
    int width = 0;
    int height = 0;
    std::vector<float> depth; // z-depth in meters; invalid where <= 0 or non-finite

    bool valid_at(int x, int y) const {
        float d = depth[static_cast<size_t>(y) * width + x];
        return std::isfinite(d) && d > 0.0f;
    }
    float at(int x, int y) const { return depth[static_cast<size_t>(y) * width + x]; }
};

// One vertex per valid pixel, two triangles per quad of valid pixels; quads
// whose max/min depth ratio exceeds discontinuity_ratio are dropped.
TriMesh depth_to_mesh(const DepthMap &depth, const PerspectiveCamera &cam,
                      double discontinuity_ratio = 3.0);

struct Placement {
    double scale = 1.0;   // uniform, applied about the object origin
    Vec3 translation;     // applied after scaling
    Vec3 support_point;   // where the object's lowest point lands
    double support_level = 0.0; // plane offset along `up`
};

struct PlacementOptions {
    Vec3 up{0, -1, 0};                  // world up (camera -y by default)
    double horizontal_tolerance_deg = 15.0;
    double max_drop_below_axis = 1.5;   // meters below the optical axis
    double object_size = 0.5;           // target largest extent, meters; <= 0 keeps scale
    double cluster_gap = 0.02;          // meters between height clusters
};

// Finds the nearest near-horizontal supported surface and computes the
// transform that rests the (scaled) object on it at the point closest to
// the optical axis. Throws ErrorKind::Geometry when nothing qualifies.
Placement place_object(const TriMesh &object, const TriMesh &background,
                       const PerspectiveCamera &cam, const PlacementOptions &opts);

} // namespace glasswarp
