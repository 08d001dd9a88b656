// Copyright (c) 2026 glasswarp authors
// SPDX-License-Identifier: Apache-2.0

#include "glasswarp/scene.hpp"

#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "glasswarp/error.hpp"
#include "glasswarp/io.hpp"
#include "glasswarp/shapes.hpp"

namespace glasswarp {

using nlohmann::json;

namespace {

std::string resolve_path(const std::string &base_dir, const std::string &path) {
    std::filesystem::path p(path);
    if (p.is_absolute() || base_dir.empty()) return path;
    return (std::filesystem::path(base_dir) / p).string();
}

const json *find(const json &j, const char *key) {
    auto it = j.find(key);
    return it == j.end() ? nullptr : &*it;
}

double get_number(const json &j, const char *key, double fallback) {
    const json *v = find(j, key);
    if (!v) return fallback;
    if (!v->is_number())
        fail(ErrorKind::Parse, std::string("config: '") + key + "' must be a number");
    return v->get<double>();
}

int get_int(const json &j, const char *key, int fallback) {
    return static_cast<int>(get_number(j, key, fallback));
}

bool get_bool(const json &j, const char *key, bool fallback) {
    const json *v = find(j, key);
    if (!v) return fallback;
    if (!v->is_boolean())
        fail(ErrorKind::Parse, std::string("config: '") + key + "' must be a boolean");
    return v->get<bool>();
}

std::string get_string(const json &j, const char *key, const std::string &fallback) {
    const json *v = find(j, key);
    if (!v) return fallback;
    if (!v->is_string())
        fail(ErrorKind::Parse, std::string("config: '") + key + "' must be a string");
    return v->get<std::string>();
}

std::string require_string(const json &j, const char *key, const char *section) {
    std::string s = get_string(j, key, "");
    if (s.empty())
        fail(ErrorKind::Parse,
             std::string("config: missing required '") + section + "." + key + "'");
    return s;
}

Vec3 get_vec3(const json &j, const char *key, Vec3 fallback) {
    const json *v = find(j, key);
    if (!v) return fallback;
    if (!v->is_array() || v->size() != 3)
        fail(ErrorKind::Parse,
             std::string("config: '") + key + "' must be a 3-element array");
    return {(*v)[0].get<double>(), (*v)[1].get<double>(), (*v)[2].get<double>()};
}

ImagePlane load_image_linear(const std::string &path) {
    if (path.size() >= 4 && path.compare(path.size() - 4, 4, ".pfm") == 0)
        return load_pfm(path, ColorSpace::Linear);
    return srgb_to_linear(load_png(path));
}

} // namespace

TraceScene SceneBundle::trace_scene() const {
    TraceScene s;
    s.object = object.get();
    s.medium = medium;
    s.background.push_back(background.get());
    s.enclosure = enclosure.get();
    s.camera = camera;
    s.pano = pano;
    s.trace = trace;
    s.restrict_pano_refraction_to_object = restrict_pano_refraction_to_object;
    return s;
}

NoiseSchedule SceneBundle::schedule() const {
    if (explicit_sigmas) {
        auto s = NoiseSchedule::from_sigmas(*explicit_sigmas);
        if (s.steps() != sync.steps)
            fail(ErrorKind::Parse, "config: sigmas length must equal steps + 1");
        return s;
    }
    return NoiseSchedule::linear(sync.steps);
}

SceneBundle load_scene(const std::string &config_path) {
    std::ifstream in(config_path);
    if (!in) fail(ErrorKind::Io, "cannot open scene config: " + config_path);
    std::string text((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    std::string base = std::filesystem::path(config_path).parent_path().string();
    return load_scene_from_json(text, base);
}

SceneBundle load_scene_from_json(const std::string &json_text,
                                 const std::string &base_dir) {
    json cfg;
    try {
        cfg = json::parse(json_text);
    } catch (const json::exception &e) {
        fail(ErrorKind::Parse, std::string("scene config is not valid JSON: ") + e.what());
    }

    SceneBundle scene;

    // --- camera -------------------------------------------------------------
    const json *cam_cfg = find(cfg, "camera");
    if (!cam_cfg) fail(ErrorKind::Parse, "config: missing 'camera' section");
    scene.camera.width = get_int(*cam_cfg, "width", 0);
    scene.camera.height = get_int(*cam_cfg, "height", 0);
    double default_focal = 0.9 * scene.camera.width;
    scene.camera.fx = get_number(*cam_cfg, "fx", default_focal);
    scene.camera.fy = get_number(*cam_cfg, "fy", scene.camera.fx);
    scene.camera.cx = get_number(*cam_cfg, "cx", 0.5 * (scene.camera.width - 1));
    scene.camera.cy = get_number(*cam_cfg, "cy", 0.5 * (scene.camera.height - 1));
    scene.camera.validate();

    const json *pano_cfg = find(cfg, "panorama");
    scene.pano.height = pano_cfg ? get_int(*pano_cfg, "height", 512) : 512;
    scene.pano.width =
        pano_cfg ? get_int(*pano_cfg, "width", 2 * scene.pano.height)
                 : 2 * scene.pano.height;
    scene.pano.validate();

    // --- options ------------------------------------------------------------
    json empty = json::object();
    const json &opt = find(cfg, "options") ? *find(cfg, "options") : empty;
    PlacementOptions placement_opts;
    placement_opts.up = normalize(get_vec3(opt, "up", {0, -1, 0}));
    placement_opts.horizontal_tolerance_deg =
        get_number(opt, "horizontal_tolerance_deg", 15.0);
    placement_opts.max_drop_below_axis = get_number(opt, "max_drop_below_axis", 1.5);
    scene.trace.max_events = get_int(opt, "max_events", 8);
    scene.restrict_pano_refraction_to_object =
        get_bool(opt, "restrict_pano_refraction_to_object", false);
    double inflation = get_number(opt, "enclosure_inflation", 0.1);
    Vec3 env = get_vec3(opt, "preview_environment", {0.5, 0.5, 0.5});
    scene.preview_environment = {env.x, env.y, env.z};
    scene.threads = get_int(opt, "threads", 0);

    // --- background ---------------------------------------------------------
    const json *bg_cfg = find(cfg, "background");
    if (!bg_cfg) fail(ErrorKind::Parse, "config: missing 'background' section");
    std::string depth_path =
        resolve_path(base_dir, require_string(*bg_cfg, "depth", "background"));
    if (!std::filesystem::exists(depth_path))
        fail(ErrorKind::Io, "depth file does not exist: " + depth_path);
    DepthMap depth = load_depth(depth_path, get_number(*bg_cfg, "depth_scale", 1.0));
    TriMesh background_mesh = depth_to_mesh(
        depth, scene.camera, get_number(*bg_cfg, "discontinuity_ratio", 3.0));

    std::string image_path =
        resolve_path(base_dir, require_string(*bg_cfg, "image", "background"));
    if (!std::filesystem::exists(image_path))
        fail(ErrorKind::Io, "clean image does not exist: " + image_path);
    scene.clean_linear = load_image_linear(image_path);
    if (scene.clean_linear.width != scene.camera.width ||
        scene.clean_linear.height != scene.camera.height)
        fail(ErrorKind::Parse, "clean image resolution does not match the camera");

    // --- object -------------------------------------------------------------
    const json *obj_cfg = find(cfg, "object");
    if (!obj_cfg) fail(ErrorKind::Parse, "config: missing 'object' section");
    std::string mesh_path =
        resolve_path(base_dir, require_string(*obj_cfg, "mesh", "object"));
    if (!std::filesystem::exists(mesh_path))
        fail(ErrorKind::Io, "object mesh does not exist: " + mesh_path);
    scene.object_mesh = load_obj(mesh_path, MeshTag::Object);
    scene.medium.refractive_index = get_number(*obj_cfg, "refractive_index", 1.5);
    if (!(scene.medium.refractive_index >= 1.0))
        fail(ErrorKind::Parse, "config: refractive_index must be >= 1");
    placement_opts.object_size = get_number(*obj_cfg, "size", 0.5);

    const json *placement_cfg = find(*obj_cfg, "placement");
    bool auto_place = placement_cfg ? get_bool(*placement_cfg, "auto", true) : true;
    if (auto_place) {
        Placement p =
            place_object(scene.object_mesh, background_mesh, scene.camera,
                         placement_opts);
        scene.object_mesh.transform(p.scale, {Mat3::identity(), p.translation});
    } else {
        double s = get_number(*placement_cfg, "scale", 1.0);
        Vec3 t = get_vec3(*placement_cfg, "translation", {0, 0, 0});
        scene.object_mesh.transform(s, {Mat3::identity(), t});
    }

    // --- derived geometry -----------------------------------------------------
    Aabb scene_bounds = background_mesh.bounds();
    scene_bounds.expand(scene.object_mesh.bounds());
    scene.trace.eps_self = 1e-4 * scene_bounds.diagonal();

    Aabb shell = background_mesh.bounds();
    Vec3 pad = inflation * shell.extent();
    double min_pad = 0.05 * shell.diagonal();
    pad = max(pad, Vec3{min_pad, min_pad, min_pad});
    shell.lo = shell.lo - pad;
    shell.hi = shell.hi + pad;
    scene.enclosure =
        std::make_unique<MeshSurface>(make_box(shell, MeshTag::BoundingBox));

    scene.pano.center = scene.object_mesh.bounds().center();
    scene.object = std::make_unique<MeshSurface>(scene.object_mesh);
    scene.background = std::make_unique<MeshSurface>(std::move(background_mesh));

    // --- sync ---------------------------------------------------------------
    const json &sync_cfg = find(cfg, "sync") ? *find(cfg, "sync") : empty;
    scene.sync.steps = get_int(sync_cfg, "steps", 20);
    scene.sync.guidance = get_number(sync_cfg, "guidance", 3.5);
    scene.sync.lambda = get_number(sync_cfg, "lambda", 0.5);
    scene.sync.pyramid_levels = get_int(sync_cfg, "pyramid_levels", 5);
    if (const json *w = find(sync_cfg, "tt_window")) {
        if (!w->is_array() || w->size() != 2)
            fail(ErrorKind::Parse, "config: tt_window must be [lo, hi]");
        scene.sync.tt_window_lo = (*w)[0].get<double>();
        scene.sync.tt_window_hi = (*w)[1].get<double>();
    }
    scene.sync.tt_length = get_int(sync_cfg, "tt_length", 1);
    scene.sync.tt_repeat_main = get_int(sync_cfg, "tt_repeat_main", 3);
    scene.sync.tt_repeat_pano = get_int(sync_cfg, "tt_repeat_pano", 1);
    std::string mode = get_string(sync_cfg, "mode", "ode");
    if (mode == "ode")
        scene.sync.mode = SampleMode::Ode;
    else if (mode == "sde")
        scene.sync.mode = SampleMode::Sde;
    else
        fail(ErrorKind::Parse, "config: mode must be 'ode' or 'sde'");
    scene.sync.rng_seed = static_cast<uint64_t>(get_number(sync_cfg, "seed", 0));
    if (const json *sig = find(sync_cfg, "sigmas")) {
        if (!sig->is_array())
            fail(ErrorKind::Parse, "config: sigmas must be an array");
        scene.explicit_sigmas = sig->get<std::vector<double>>();
    }
    scene.sync.validate();

    // --- denoiser -------------------------------------------------------------
    const json &den = find(cfg, "denoiser") ? *find(cfg, "denoiser") : empty;
    std::string kind = get_string(den, "type", "constant");
    if (kind == "oracle" || kind == "damped-oracle") {
        scene.denoiser.kind =
            kind == "oracle" ? DenoiserKind::Oracle : DenoiserKind::DampedOracle;
        scene.denoiser.perspective_target =
            resolve_path(base_dir, require_string(den, "perspective_target", "denoiser"));
        scene.denoiser.panorama_target =
            resolve_path(base_dir, require_string(den, "panorama_target", "denoiser"));
        scene.denoiser.pull = get_number(den, "pull", 0.9);
    } else if (kind == "constant") {
        scene.denoiser.kind = DenoiserKind::Constant;
        Vec3 c = get_vec3(den, "color", {0.5, 0.5, 0.5});
        scene.denoiser.color = {c.x, c.y, c.z};
    } else if (kind == "process") {
        scene.denoiser.kind = DenoiserKind::Process;
        const json *cmd = find(den, "command");
        if (!cmd || !cmd->is_array() || cmd->empty())
            fail(ErrorKind::Parse, "config: denoiser.command must be a non-empty array");
        for (const auto &c : *cmd)
            scene.denoiser.command.push_back(c.get<std::string>());
    } else {
        fail(ErrorKind::Parse, "config: unknown denoiser type '" + kind + "'");
    }
    scene.sync.condition_perspective = get_string(den, "condition_perspective", "");
    scene.sync.condition_panorama = get_string(den, "condition_panorama", "");

    return scene;
}

std::string apply_config_overrides(const std::string &json_text,
                                   const std::vector<std::string> &overrides) {
    json cfg;
    try {
        cfg = json::parse(json_text);
    } catch (const json::exception &e) {
        fail(ErrorKind::Parse, std::string("scene config is not valid JSON: ") + e.what());
    }
    for (const std::string &entry : overrides) {
        size_t eq = entry.find('=');
        if (eq == std::string::npos)
            fail(ErrorKind::InvalidArgument,
                 "override must look like section.key=value: " + entry);
        std::string key = entry.substr(0, eq);
        std::string value = entry.substr(eq + 1);

        json *node = &cfg;
        size_t start = 0;
        for (;;) {
            size_t dot = key.find('.', start);
            std::string part = key.substr(start, dot - start);
            if (part.empty())
                fail(ErrorKind::InvalidArgument, "bad override key: " + key);
            if (dot == std::string::npos) {
                json parsed = json::parse(value, nullptr, false);
                (*node)[part] = parsed.is_discarded() ? json(value) : parsed;
                break;
            }
            node = &(*node)[part];
            start = dot + 1;
        }
    }
    return cfg.dump(2);
}

} // namespace glasswarp
