// Copyright (c) 2026 glasswarp authors
// SPDX-License-Identifier: Apache-2.0

#include <cstdio>
#include <fstream>
#include <sstream>

#include "glasswarp/error.hpp"
#include "glasswarp/io.hpp"

namespace glasswarp {

namespace {

// "3", "3/1", "3//2", "3/1/2" -> vertex index (and normal index when given).
void parse_face_corner(const std::string &token, const std::string &path,
                       int &v_idx, int &n_idx) {
    v_idx = -1;
    n_idx = -1;
    size_t s1 = token.find('/');
    try {
        v_idx = std::stoi(token.substr(0, s1));
    } catch (...) {
        fail(ErrorKind::Parse, path + ": bad face token '" + token + "'");
    }
    if (s1 == std::string::npos) return;
    size_t s2 = token.find('/', s1 + 1);
    if (s2 == std::string::npos) return; // v/vt, no normal
    std::string n = token.substr(s2 + 1);
    if (!n.empty()) {
        try {
            n_idx = std::stoi(n);
        } catch (...) {
            fail(ErrorKind::Parse, path + ": bad face token '" + token + "'");
        }
    }
}

} // namespace

TriMesh load_obj(const std::string &path, MeshTag tag) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::Io, "cannot open mesh file: " + path);

    TriMesh mesh;
    mesh.tag = tag;
    std::vector<Vec3> raw_normals;
    std::vector<Vec3> vertex_normals; // indexed like vertices
    bool any_normal = false;

    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ss(line);
        std::string kw;
        ss >> kw;
        if (kw == "v") {
            Vec3 v;
            if (!(ss >> v.x >> v.y >> v.z))
                fail(ErrorKind::Parse, path + ": bad vertex line: " + line);
            mesh.vertices.push_back(v);
        } else if (kw == "vn") {
            Vec3 n;
            if (!(ss >> n.x >> n.y >> n.z))
                fail(ErrorKind::Parse, path + ": bad normal line: " + line);
            raw_normals.push_back(n);
        } else if (kw == "f") {
            std::vector<int> vidx, nidx;
            std::string token;
            while (ss >> token) {
                int v, n;
                parse_face_corner(token, path, v, n);
                if (v < 0) v = static_cast<int>(mesh.vertices.size()) + v + 1;
                if (n < 0 && n != -1)
                    n = static_cast<int>(raw_normals.size()) + n + 1;
                vidx.push_back(v - 1);
                nidx.push_back(n - 1);
            }
            if (vidx.size() < 3)
                fail(ErrorKind::Parse, path + ": face with fewer than 3 vertices");
            for (size_t k = 1; k + 1 < vidx.size(); ++k) {
                mesh.triangles.push_back({vidx[0], vidx[k], vidx[k + 1]});
            }
            for (size_t k = 0; k < vidx.size(); ++k) {
                if (nidx[k] >= 0) {
                    any_normal = true;
                    if (vertex_normals.size() < mesh.vertices.size())
                        vertex_normals.resize(mesh.vertices.size());
                    if (vidx[k] >= 0 &&
                        vidx[k] < static_cast<int>(vertex_normals.size()) &&
                        nidx[k] < static_cast<int>(raw_normals.size()))
                        vertex_normals[vidx[k]] = raw_normals[nidx[k]];
                }
            }
        }
        // Other keywords (vt, o, g, s, mtllib, usemtl) are ignored.
    }

    if (any_normal) {
        vertex_normals.resize(mesh.vertices.size());
        for (Vec3 &n : vertex_normals) {
            double len = norm(n);
            n = len > 1e-12 ? n / len : Vec3{0, 0, 1};
        }
        mesh.normals = std::move(vertex_normals);
    }
    mesh.validate();
    return mesh;
}

void save_obj(const std::string &path, const TriMesh &mesh) {
    std::ofstream out(path);
    if (!out) fail(ErrorKind::Io, "cannot write mesh file: " + path);
    char buf[128];
    for (const Vec3 &v : mesh.vertices) {
        std::snprintf(buf, sizeof buf, "v %.9g %.9g %.9g\n", v.x, v.y, v.z);
        out << buf;
    }
    for (const Vec3 &n : mesh.normals) {
        std::snprintf(buf, sizeof buf, "vn %.9g %.9g %.9g\n", n.x, n.y, n.z);
        out << buf;
    }
    const bool has_normals = !mesh.normals.empty();
    for (const auto &t : mesh.triangles) {
        if (has_normals)
            std::snprintf(buf, sizeof buf, "f %d//%d %d//%d %d//%d\n", t[0] + 1,
                          t[0] + 1, t[1] + 1, t[1] + 1, t[2] + 1, t[2] + 1);
        else
            std::snprintf(buf, sizeof buf, "f %d %d %d\n", t[0] + 1, t[1] + 1,
                          t[2] + 1);
        out << buf;
    }
    if (!out) fail(ErrorKind::Io, "failed writing mesh file: " + path);
}

} // namespace glasswarp
