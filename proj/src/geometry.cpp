// Copyright (c) 2026 glasswarp authors
// SPDX-License-Identifier: Apache-2.0

#include "glasswarp/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "glasswarp/error.hpp"

namespace glasswarp {

// ---------------------------------------------------------------------------
// TriMesh
// ---------------------------------------------------------------------------

Aabb TriMesh::bounds() const {
    Aabb box;
    for (const Vec3 &v : vertices) box.expand(v);
    return box;
}

void TriMesh::validate() const {
    if (triangles.empty()) fail(ErrorKind::Geometry, "empty geometry");
    const int n = static_cast<int>(vertices.size());
    for (size_t t = 0; t < triangles.size(); ++t) {
        const auto &tri = triangles[t];
        for (int k = 0; k < 3; ++k) {
            if (tri[k] < 0 || tri[k] >= n)
                fail(ErrorKind::Geometry,
                     "triangle " + std::to_string(t) + " references vertex " +
                         std::to_string(tri[k]) + " out of range");
        }
        Vec3 e1 = vertices[tri[1]] - vertices[tri[0]];
        Vec3 e2 = vertices[tri[2]] - vertices[tri[0]];
        if (0.5 * norm(cross(e1, e2)) <= 1e-12)
            fail(ErrorKind::Geometry,
                 "triangle " + std::to_string(t) + " is degenerate");
    }
    if (!normals.empty() && normals.size() != vertices.size())
        fail(ErrorKind::Geometry, "normal count does not match vertex count");
}

void TriMesh::transform(double scale, const RigidTransform &xf) {
    for (Vec3 &v : vertices) v = xf.apply_point(scale * v);
    for (Vec3 &n : normals) n = xf.apply_direction(n);
}

// ---------------------------------------------------------------------------
// Ray-triangle test (Moller-Trumbore, double precision, edge-inclusive).
// ---------------------------------------------------------------------------

namespace {

struct TriHit {
    double t, u, v;
};

inline bool intersect_triangle(const Ray &ray, Vec3 v0, Vec3 v1, Vec3 v2,
                               double t_min, double t_max, TriHit &out) {
    Vec3 e1 = v1 - v0;
    Vec3 e2 = v2 - v0;
    Vec3 p = cross(ray.direction, e2);
    double det = dot(e1, p);
    if (det > -1e-15 && det < 1e-15) return false;
    double inv = 1.0 / det;
    Vec3 s = ray.origin - v0;
    double u = dot(s, p) * inv;
    if (u < 0.0 || u > 1.0) return false;
    Vec3 q = cross(s, e1);
    double v = dot(ray.direction, q) * inv;
    if (v < 0.0 || u + v > 1.0) return false;
    double t = dot(e2, q) * inv;
    if (t <= t_min || t > t_max) return false;
    out = {t, u, v};
    return true;
}

inline bool intersect_aabb(const Aabb &box, Vec3 origin, Vec3 inv_dir,
                           double t_min, double t_max) {
    double t0 = t_min, t1 = t_max;
    for (int a = 0; a < 3; ++a) {
        double lo = (box.lo[a] - origin[a]) * inv_dir[a];
        double hi = (box.hi[a] - origin[a]) * inv_dir[a];
        if (inv_dir[a] < 0.0) std::swap(lo, hi);
        t0 = lo > t0 ? lo : t0;
        t1 = hi < t1 ? hi : t1;
        if (t0 > t1) return false;
    }
    return true;
}

// Better hit under the deterministic ordering: strictly closer wins, equal
// distances break toward the lower triangle index.
inline bool better(double t, int idx, double best_t, int best_idx) {
    return t < best_t || (t == best_t && idx < best_idx);
}

} // namespace

// ---------------------------------------------------------------------------
// MeshSurface / BVH
// ---------------------------------------------------------------------------

MeshSurface::MeshSurface(TriMesh mesh) : mesh_(std::move(mesh)) {
    mesh_.validate();
    bounds_ = mesh_.bounds();

    const int n = static_cast<int>(mesh_.triangles.size());
    std::vector<Aabb> boxes(n);
    std::vector<Vec3> centroids(n);
    for (int i = 0; i < n; ++i) {
        const auto &tri = mesh_.triangles[i];
        Aabb b;
        b.expand(mesh_.vertices[tri[0]]);
        b.expand(mesh_.vertices[tri[1]]);
        b.expand(mesh_.vertices[tri[2]]);
        boxes[i] = b;
        centroids[i] = b.center();
    }
    order_.resize(n);
    for (int i = 0; i < n; ++i) order_[i] = i;

    constexpr int kLeafSize = 4;
    constexpr int kBins = 16;

    struct Range {
        int begin, end, node;
    };
    nodes_.reserve(static_cast<size_t>(2 * n));
    nodes_.push_back({});
    std::vector<Range> stack{{0, n, 0}};

    while (!stack.empty()) {
        auto [begin, end, node_idx] = stack.back();
        stack.pop_back();

        Aabb node_box, centroid_box;
        for (int i = begin; i < end; ++i) {
            node_box.expand(boxes[order_[i]]);
            centroid_box.expand(centroids[order_[i]]);
        }
        bvh_detail::Node node;
        node.box = node_box;

        const int count = end - begin;
        Vec3 cext = centroid_box.extent();
        int axis = 0;
        if (cext.y > cext[axis]) axis = 1;
        if (cext.z > cext[axis]) axis = 2;

        bool make_leaf = count <= kLeafSize || cext[axis] <= 0.0;
        int mid = begin;
        if (!make_leaf) {
            // Binned SAH along the widest centroid axis.
            double k0 = centroid_box.lo[axis];
            double k1 = kBins / cext[axis];
            struct Bin {
                Aabb box;
                int count = 0;
            };
            Bin bins[kBins];
            for (int i = begin; i < end; ++i) {
                int tri = order_[i];
                int b = std::min(kBins - 1,
                                 static_cast<int>((centroids[tri][axis] - k0) * k1));
                bins[b].box.expand(boxes[tri]);
                bins[b].count++;
            }
            double right_area[kBins];
            Aabb acc;
            int right_count[kBins];
            int rc = 0;
            for (int b = kBins - 1; b > 0; --b) {
                acc.expand(bins[b].box);
                rc += bins[b].count;
                right_area[b] = acc.surface_area();
                right_count[b] = rc;
            }
            acc = Aabb{};
            int lc = 0;
            double best_cost = 1e300;
            int best_split = -1;
            for (int b = 0; b < kBins - 1; ++b) {
                acc.expand(bins[b].box);
                lc += bins[b].count;
                if (lc == 0 || lc == count) continue;
                double cost = lc * acc.surface_area() +
                              right_count[b + 1] * right_area[b + 1];
                if (cost < best_cost) {
                    best_cost = cost;
                    best_split = b;
                }
            }
            if (best_split < 0) {
                make_leaf = true;
            } else {
                auto it = std::partition(
                    order_.begin() + begin, order_.begin() + end, [&](int tri) {
                        int b = std::min(
                            kBins - 1,
                            static_cast<int>((centroids[tri][axis] - k0) * k1));
                        return b <= best_split;
                    });
                mid = static_cast<int>(it - order_.begin());
                if (mid == begin || mid == end) mid = begin + count / 2;
            }
        }

        if (make_leaf) {
            node.start = begin;
            node.count = count;
            nodes_[node_idx] = node;
            continue;
        }

        // Keep leaf triangle order ascending so equal-t ties resolve the
        // same way as the brute-force scan.
        node.left = static_cast<int32_t>(nodes_.size());
        node.axis = static_cast<uint8_t>(axis);
        node.count = 0;
        nodes_[node_idx] = node;
        nodes_.push_back({});
        nodes_.push_back({});
        stack.push_back({mid, end, node.left + 1});
        stack.push_back({begin, mid, node.left});
    }

    // Ascending triangle order inside each leaf keeps equal-t ties identical
    // to the brute-force scan.
    for (const auto &node : nodes_) {
        if (node.count > 0)
            std::sort(order_.begin() + node.start,
                      order_.begin() + node.start + node.count);
    }
}

std::optional<Hit> MeshSurface::finish_hit(const Ray &ray, int tri, double t,
                                           double u, double v) const {
    const auto &idx = mesh_.triangles[tri];
    Vec3 v0 = mesh_.vertices[idx[0]];
    Vec3 v1 = mesh_.vertices[idx[1]];
    Vec3 v2 = mesh_.vertices[idx[2]];

    Hit hit;
    hit.point = ray.origin + t * ray.direction;
    hit.distance = t;
    hit.tag = mesh_.tag;
    hit.triangle_index = tri;

    Vec3 geo = normalize(cross(v1 - v0, v2 - v0));
    hit.front_face = dot(geo, ray.direction) < 0.0;

    Vec3 n = geo;
    if (!mesh_.normals.empty()) {
        Vec3 sn = (1.0 - u - v) * mesh_.normals[idx[0]] +
                  u * mesh_.normals[idx[1]] + v * mesh_.normals[idx[2]];
        double len = norm(sn);
        if (len > 1e-12) n = sn / len;
    }
    if (dot(n, ray.direction) > 0.0) n = -n;
    hit.normal = n;
    return hit;
}

std::optional<Hit> MeshSurface::intersect(const Ray &ray, double t_min) const {
    if (nodes_.empty()) return std::nullopt;
    Vec3 inv_dir{1.0 / ray.direction.x, 1.0 / ray.direction.y,
                 1.0 / ray.direction.z};

    double best_t = 1e300;
    int best_tri = -1;
    TriHit best_hit{};

    int stack[64];
    int sp = 0;
    stack[sp++] = 0;
    while (sp > 0) {
        const auto &node = nodes_[stack[--sp]];
        if (!intersect_aabb(node.box, ray.origin, inv_dir, t_min, best_t))
            continue;
        if (node.count > 0) {
            for (int i = node.start; i < node.start + node.count; ++i) {
                int tri = order_[i];
                const auto &idx = mesh_.triangles[tri];
                TriHit h;
                if (intersect_triangle(ray, mesh_.vertices[idx[0]],
                                       mesh_.vertices[idx[1]],
                                       mesh_.vertices[idx[2]], t_min, best_t, h)) {
                    if (better(h.t, tri, best_t, best_tri)) {
                        best_t = h.t;
                        best_tri = tri;
                        best_hit = h;
                    }
                }
            }
        } else {
            // Near child first so the far subtree gets pruned by best_t.
            int near = node.left, far = node.left + 1;
            if (ray.direction[node.axis] < 0.0) std::swap(near, far);
            stack[sp++] = far;
            stack[sp++] = near;
        }
    }
    if (best_tri < 0) return std::nullopt;
    return finish_hit(ray, best_tri, best_t, best_hit.u, best_hit.v);
}

std::optional<Hit> MeshSurface::intersect_brute_force(const Ray &ray,
                                                      double t_min) const {
    double best_t = 1e300;
    int best_tri = -1;
    TriHit best_hit{};
    for (int tri = 0; tri < static_cast<int>(mesh_.triangles.size()); ++tri) {
        const auto &idx = mesh_.triangles[tri];
        TriHit h;
        if (intersect_triangle(ray, mesh_.vertices[idx[0]], mesh_.vertices[idx[1]],
                               mesh_.vertices[idx[2]], t_min, 1e300, h)) {
            if (better(h.t, tri, best_t, best_tri)) {
                best_t = h.t;
                best_tri = tri;
                best_hit = h;
            }
        }
    }
    if (best_tri < 0) return std::nullopt;
    return finish_hit(ray, best_tri, best_t, best_hit.u, best_hit.v);
}

// ---------------------------------------------------------------------------
// SphereSurface
// ---------------------------------------------------------------------------

std::optional<Hit> SphereSurface::intersect(const Ray &ray, double t_min) const {
    Vec3 oc = ray.origin - center_;
    double b = dot(oc, ray.direction);
    double c = dot(oc, oc) - radius_ * radius_;
    double disc = b * b - c;
    if (disc < 0.0) return std::nullopt;
    double s = std::sqrt(disc);
    double t = -b - s;
    if (t <= t_min) t = -b + s;
    if (t <= t_min) return std::nullopt;

    Hit hit;
    hit.point = ray.origin + t * ray.direction;
    hit.distance = t;
    hit.tag = tag_;
    hit.triangle_index = -1;
    Vec3 n = (hit.point - center_) / radius_;
    hit.front_face = dot(n, ray.direction) < 0.0;
    if (!hit.front_face) n = -n;
    hit.normal = n;
    return hit;
}

Aabb SphereSurface::bounds() const {
    Aabb b;
    b.expand(center_ - Vec3{radius_, radius_, radius_});
    b.expand(center_ + Vec3{radius_, radius_, radius_});
    return b;
}

std::optional<Hit> intersect_nearest(std::span<const Surface *const> surfaces,
                                     const Ray &ray, double t_min) {
    std::optional<Hit> best;
    for (const Surface *s : surfaces) {
        auto h = s->intersect(ray, t_min);
        if (h && (!best || h->distance < best->distance)) best = h;
    }
    return best;
}

// ---------------------------------------------------------------------------
// Cameras and projections
// ---------------------------------------------------------------------------

void PerspectiveCamera::validate() const {
    if (width <= 0 || height <= 0)
        fail(ErrorKind::InvalidArgument, "camera resolution must be positive");
    if (fx <= 0.0 || fy <= 0.0)
        fail(ErrorKind::InvalidArgument, "focal lengths must be positive");
    if (cx < 0.0 || cx > width - 1 || cy < 0.0 || cy > height - 1)
        fail(ErrorKind::InvalidArgument, "principal point outside the image");
}

Ray PerspectiveCamera::pixel_ray(Vec2 pixel) const {
    Vec3 d{(pixel.x - cx) / fx, (pixel.y - cy) / fy, -1.0};
    return {pose.translation, normalize(pose.apply_direction(d))};
}

std::optional<Vec2> PerspectiveCamera::project_direction(Vec3 world_direction) const {
    Vec3 d = pose.rotation.transposed() * world_direction;
    if (d.z >= -1e-12) return std::nullopt; // behind the camera
    double s = -1.0 / d.z;
    return Vec2{cx + fx * d.x * s, cy + fy * d.y * s};
}

std::optional<Vec2> PerspectiveCamera::project_point(Vec3 world_point) const {
    return project_direction(world_point - pose.translation);
}

void PanoCamera::validate() const {
    if (width <= 0 || height <= 0)
        fail(ErrorKind::InvalidArgument, "panorama resolution must be positive");
    if (width != 2 * height)
        fail(ErrorKind::InvalidArgument,
             "equirectangular panorama requires width = 2 * height");
}

Vec2 direction_to_equirect(Vec3 d, int width, int height) {
    d = normalize(d);
    double u = (std::atan2(d.x, -d.z) / (2.0 * std::numbers::pi) + 0.5) * width;
    double v = (0.5 - std::asin(std::clamp(d.y, -1.0, 1.0)) / std::numbers::pi) *
               height;
    return {u, v};
}

Vec3 equirect_to_direction(Vec2 pixel, int width, int height) {
    double lon = (pixel.x / width - 0.5) * 2.0 * std::numbers::pi;
    double lat = (0.5 - pixel.y / height) * std::numbers::pi;
    double cl = std::cos(lat);
    return {cl * std::sin(lon), std::sin(lat), -cl * std::cos(lon)};
}

Vec3 PanoCamera::pixel_direction(Vec2 pixel) const {
    return equirect_to_direction(pixel, width, height);
}

Vec2 PanoCamera::project_direction(Vec3 direction) const {
    return direction_to_equirect(direction, width, height);
}

// ---------------------------------------------------------------------------
// Depth unprojection
// ---------------------------------------------------------------------------

TriMesh depth_to_mesh(const DepthMap &depth, const PerspectiveCamera &cam,
                      double discontinuity_ratio) {
    cam.validate();
    if (depth.width <= 0 || depth.height <= 0)
        fail(ErrorKind::InvalidArgument, "empty depth map");

    TriMesh mesh;
    mesh.tag = MeshTag::Background;

    const int w = depth.width, h = depth.height;
    std::vector<int> vertex_of(static_cast<size_t>(w) * h, -1);

    // Depth pixels are mapped onto camera pixel coordinates; when the depth
    // map resolution differs from the camera's, pixel (x, y) corresponds to
    // camera pixel (x * sx, y * sy).
    const double sx = w > 1 ? double(cam.width - 1) / (w - 1) : 0.0;
    const double sy = h > 1 ? double(cam.height - 1) / (h - 1) : 0.0;

    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            if (!depth.valid_at(x, y)) continue;
            double d = depth.at(x, y);
            double px = x * sx, py = y * sy;
            Vec3 p_cam{(px - cam.cx) / cam.fx * d, (py - cam.cy) / cam.fy * d, -d};
            vertex_of[static_cast<size_t>(y) * w + x] =
                static_cast<int>(mesh.vertices.size());
            mesh.vertices.push_back(cam.pose.apply_point(p_cam));
        }
    }
    if (mesh.vertices.empty())
        fail(ErrorKind::Geometry, "no reconstructable surface");

    for (int y = 0; y + 1 < h; ++y) {
        for (int x = 0; x + 1 < w; ++x) {
            int i00 = vertex_of[static_cast<size_t>(y) * w + x];
            int i10 = vertex_of[static_cast<size_t>(y) * w + x + 1];
            int i01 = vertex_of[static_cast<size_t>(y + 1) * w + x];
            int i11 = vertex_of[static_cast<size_t>(y + 1) * w + x + 1];
            if (i00 < 0 || i10 < 0 || i01 < 0 || i11 < 0) continue;
            double d00 = depth.at(x, y), d10 = depth.at(x + 1, y);
            double d01 = depth.at(x, y + 1), d11 = depth.at(x + 1, y + 1);
            double dmin = std::min(std::min(d00, d10), std::min(d01, d11));
            double dmax = std::max(std::max(d00, d10), std::max(d01, d11));
            if (dmax / dmin > discontinuity_ratio) continue;
            // Winding chosen so the face normal points back at the camera.
            mesh.triangles.push_back({i00, i10, i01});
            mesh.triangles.push_back({i10, i11, i01});
        }
    }
    return mesh;
}

// ---------------------------------------------------------------------------
// Object placement
// ---------------------------------------------------------------------------

Placement place_object(const TriMesh &object, const TriMesh &background,
                       const PerspectiveCamera &cam, const PlacementOptions &opts) {
    if (object.vertices.empty()) fail(ErrorKind::Geometry, "empty geometry");
    if (background.triangles.empty()) fail(ErrorKind::Geometry, "empty geometry");

    const Vec3 up = normalize(opts.up);
    const Vec3 origin = cam.position();
    const Vec3 forward = cam.forward();
    Vec3 right = cross(up, forward);
    double rlen = norm(right);
    if (rlen < 1e-9)
        fail(ErrorKind::InvalidArgument, "camera forward is parallel to up");
    right = right / rlen;

    const double cos_tol =
        std::cos(opts.horizontal_tolerance_deg * std::numbers::pi / 180.0);

    struct Candidate {
        Vec3 centroid;
        double area;
        double level; // dot(centroid, up)
    };
    std::vector<Candidate> cands;
    for (const auto &tri : background.triangles) {
        Vec3 v0 = background.vertices[tri[0]];
        Vec3 v1 = background.vertices[tri[1]];
        Vec3 v2 = background.vertices[tri[2]];
        Vec3 n = cross(v1 - v0, v2 - v0);
        double area = 0.5 * norm(n);
        if (area <= 0.0) continue;
        if (dot(normalize(n), up) < cos_tol) continue; // not facing up
        Vec3 c = (v0 + v1 + v2) / 3.0;
        double drop = dot(origin - c, up);
        if (drop > opts.max_drop_below_axis) continue; // too far below the axis
        cands.push_back({c, area, dot(c, up)});
    }
    if (cands.empty()) fail(ErrorKind::Geometry, "no supporting surface");

    // Cluster by height, then pick the cluster nearest the camera.
    std::sort(cands.begin(), cands.end(),
              [](const Candidate &a, const Candidate &b) { return a.level < b.level; });
    struct Cluster {
        Vec3 centroid_sum{};
        double area = 0.0;
        double level_sum = 0.0;
    };
    std::vector<Cluster> clusters;
    double prev_level = 0.0;
    for (const auto &c : cands) {
        if (clusters.empty() || c.level - prev_level > opts.cluster_gap)
            clusters.push_back({});
        Cluster &cl = clusters.back();
        cl.centroid_sum += c.area * c.centroid;
        cl.area += c.area;
        cl.level_sum += c.area * c.level;
        prev_level = c.level;
    }
    const Cluster *best = nullptr;
    double best_dist = 1e300;
    Vec3 best_centroid;
    double best_level = 0.0;
    for (const auto &cl : clusters) {
        Vec3 c = cl.centroid_sum / cl.area;
        double d = norm(c - origin);
        if (d < best_dist) {
            best_dist = d;
            best = &cl;
            best_centroid = c;
            best_level = cl.level_sum / cl.area;
        }
    }
    (void)best;

    // Support point: the cluster centroid pulled onto the vertical plane that
    // contains the optical axis, at the cluster's height.
    Vec3 target = best_centroid - right * dot(best_centroid - origin, right);
    target = target + up * (best_level - dot(target, up));

    Placement placement;
    Aabb box = object.bounds();
    double extent = std::max({box.extent().x, box.extent().y, box.extent().z});
    placement.scale =
        (opts.object_size > 0.0 && extent > 0.0) ? opts.object_size / extent : 1.0;

    // Lowest point of the scaled object along `up`, under the bbox center.
    Vec3 center = placement.scale * box.center();
    double lowest = 1e300;
    for (const Vec3 &v : object.vertices)
        lowest = std::min(lowest, dot(placement.scale * v, up));
    Vec3 bottom_center = center + up * (lowest - dot(center, up));

    placement.translation = target - bottom_center;
    placement.support_point = target;
    placement.support_level = best_level;
    return placement;
}

} // namespace glasswarp
