// Copyright (c) 2026 glasswarp authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "glasswarp/sync.hpp"
#include "glasswarp/warp_compile.hpp"

namespace glasswarp {

enum class DenoiserKind : uint8_t {
    Oracle,       // drives estimates to target images
    DampedOracle, // oracle with a z-dependent component
    Constant,     // drives estimates to a flat color
    Process,      // external plug-in over stdin/stdout
};

struct DenoiserSpec {
    DenoiserKind kind = DenoiserKind::Constant;
    std::string perspective_target; // image path (oracle variants)
    std::string panorama_target;
    double pull = 0.9;                          // damped oracle
    std::array<double, 3> color{0.5, 0.5, 0.5}; // constant
    std::vector<std::string> command;           // process plug-in argv
};

// Fully loaded scene: placed geometry, cameras, clean plate and loop
// configuration. Owns every surface the TraceScene view points into.
struct SceneBundle {
    TriMesh object_mesh; // after placement
    std::unique_ptr<MeshSurface> object;
    std::unique_ptr<MeshSurface> background;
    std::unique_ptr<MeshSurface> enclosure;

    PerspectiveCamera camera;
    PanoCamera pano;
    Medium medium;
    TraceOptions trace;
    bool restrict_pano_refraction_to_object = false;

    ImagePlane clean_linear; // I with the object absent, linear space

    SyncConfig sync;
    std::optional<std::vector<double>> explicit_sigmas;
    DenoiserSpec denoiser;
    std::array<double, 3> preview_environment{0.5, 0.5, 0.5};
    int threads = 0;

    TraceScene trace_scene() const;
    NoiseSchedule schedule() const;
};

// Parses a JSON scene description and loads all referenced assets. Relative
// paths resolve against the config file's directory. The full schema is
// documented in docs/formats.md.
SceneBundle load_scene(const std::string &config_path);

// Same, from an in-memory JSON document (base_dir resolves relative paths).
SceneBundle load_scene_from_json(const std::string &json_text,
                                 const std::string &base_dir);

// Applies "dotted.key=value" overrides to a JSON document (values parsed as
// JSON when possible, else kept as strings). Returns the modified text.
std::string apply_config_overrides(const std::string &json_text,
                                   const std::vector<std::string> &overrides);

} // namespace glasswarp
