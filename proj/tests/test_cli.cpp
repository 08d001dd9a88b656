// Copyright (c) 2026 glasswarp authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "glasswarp/io.hpp"
#include "support/fixtures.hpp"

using namespace glasswarp;
namespace fs = std::filesystem;

namespace {

const std::string kCli = GLASSWARP_CLI_PATH;
const std::string kPlugin = GLASSWARP_PLUGIN_PATH;
const std::string kFixture = std::string(GLASSWARP_TEST_DATA) + "/golden_scene";

struct RunResult {
    int exit_code = -1;
    std::string output; // stdout + stderr
};

RunResult run(const std::string &args) {
    fs::path log = fs::temp_directory_path() /
                   ("gw_cli_out_" + std::to_string(::getpid()) + ".txt");
    std::string command = kCli + " " + args + " > " + log.string() + " 2>&1";
    int rc = std::system(command.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    std::ifstream in(log);
    r.output.assign(std::istreambuf_iterator<char>(in),
                    std::istreambuf_iterator<char>());
    fs::remove(log);
    return r;
}

std::string file_bytes(const fs::path &p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

} // namespace

TEST_CASE("cli: compile-warps writes all artifacts and re-runs byte-identically") {
    fs::path dir = fs::temp_directory_path() / "gw_cli_warps";
    fs::remove_all(dir);
    RunResult first = run("compile-warps -c " + kFixture + "/scene.json -o " +
                          (dir / "a").string() + " -j 2");
    CHECK(first.exit_code == 0);
    const char *names[] = {"warp_refraction.snwf", "warp_pano_refraction.snwf",
                           "warp_pano_reflection.snwf",
                           "warp_perspective_to_pano.snwf", "fresnel.pfm",
                           "preview.png"};
    for (const char *n : names) CHECK(fs::exists(dir / "a" / n));

    RunResult second = run("compile-warps -c " + kFixture + "/scene.json -o " +
                           (dir / "b").string() + " -j 1");
    CHECK(second.exit_code == 0);
    for (const char *n : names)
        CHECK(file_bytes(dir / "a" / n) == file_bytes(dir / "b" / n));
    fs::remove_all(dir);
}

TEST_CASE("cli: missing input exits with code 2 and names the path") {
    fs::path dir = fs::temp_directory_path() / "gw_cli_missing";
    fs::create_directories(dir);
    // Point the config at a depth file that does not exist.
    std::ifstream in(kFixture + "/scene.json");
    std::string text((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    std::ofstream out(dir / "scene.json");
    out << text;
    out.close();
    RunResult r = run("compile-warps -c " + (dir / "scene.json").string() +
                      " -o " + (dir / "out").string());
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("depth.pfm") != std::string::npos);
    fs::remove_all(dir);
}

TEST_CASE("cli: placement failure exits with code 3") {
    RunResult r = run("render-refraction -c " + kFixture + "/scene.json" +
                      " --set object.placement.auto=true -o /tmp/gw_never.png");
    CHECK(r.exit_code == 3);
    CHECK(r.output.find("no supporting surface") != std::string::npos);
}

TEST_CASE("cli: sync-generate reproduces the golden images") {
    fs::path dir = fs::temp_directory_path() / "gw_cli_generate";
    fs::remove_all(dir);
    RunResult r = run("sync-generate -c " + kFixture + "/scene.json -o " +
                      dir.string() + " -j 2");
    REQUIRE(r.exit_code == 0);

    ImagePlane got = srgb_to_linear(load_png((dir / "perspective.png").string()));
    ImagePlane want =
        srgb_to_linear(load_png(kFixture + "/golden/perspective.png"));
    CHECK(gwtest::max_abs_difference(got, want) < 2e-3);
    ImagePlane got_pano = srgb_to_linear(load_png((dir / "panorama.png").string()));
    ImagePlane want_pano =
        srgb_to_linear(load_png(kFixture + "/golden/panorama.png"));
    CHECK(gwtest::max_abs_difference(got_pano, want_pano) < 2e-3);
    CHECK(file_bytes(dir / "trace.log") ==
          file_bytes(fs::path(kFixture) / "golden" / "trace.log"));
    fs::remove_all(dir);
}

TEST_CASE("cli: T=1 writes a single synchronized estimate") {
    fs::path dir = fs::temp_directory_path() / "gw_cli_t1";
    fs::remove_all(dir);
    RunResult r = run("sync-generate -c " + kFixture + "/scene.json -o " +
                      dir.string() + " --set sync.steps=1");
    REQUIRE(r.exit_code == 0);
    std::string trace = file_bytes(dir / "trace.log");
    CHECK(std::count(trace.begin(), trace.end(), '\n') == 1);
    CHECK(fs::exists(dir / "perspective.png"));
    fs::remove_all(dir);
}

TEST_CASE("cli: seed changes alter sde outputs but not ode oracle outputs") {
    fs::path dir = fs::temp_directory_path() / "gw_cli_seeds";
    fs::remove_all(dir);
    std::string base = "sync-generate -c " + kFixture +
                       "/scene.json --set sync.steps=4 -o ";

    REQUIRE(run(base + (dir / "ode1").string() + " --seed 1").exit_code == 0);
    REQUIRE(run(base + (dir / "ode2").string() + " --seed 2").exit_code == 0);
    ImagePlane a = srgb_to_linear(load_png((dir / "ode1/perspective.png").string()));
    ImagePlane b = srgb_to_linear(load_png((dir / "ode2/perspective.png").string()));
    CHECK(gwtest::max_abs_difference(a, b) < 1e-6); // oracle: seed-independent

    std::string sde = base + (dir / "sde1").string() +
                      " --mode sde --seed 1 --set denoiser.type=\"damped-oracle\"";
    std::string sde2 = base + (dir / "sde2").string() +
                       " --mode sde --seed 2 --set denoiser.type=\"damped-oracle\"";
    REQUIRE(run(sde).exit_code == 0);
    REQUIRE(run(sde2).exit_code == 0);
    ImagePlane c = srgb_to_linear(load_png((dir / "sde1/perspective.png").string()));
    ImagePlane d = srgb_to_linear(load_png((dir / "sde2/perspective.png").string()));
    CHECK(gwtest::max_abs_difference(c, d) > 1e-4);
    fs::remove_all(dir);
}

TEST_CASE("cli: external process denoiser matches the builtin oracle") {
    fs::path dir = fs::temp_directory_path() / "gw_cli_plugin";
    fs::remove_all(dir);
    std::string plugin_cmd =
        "[\"" + kPlugin + "\",\"" + kFixture + "/target_perspective.png\",\"" +
        kFixture + "/target_panorama.png\"]";
    RunResult r = run("sync-generate -c " + kFixture + "/scene.json -o " +
                      (dir / "plugin").string() + " --set sync.steps=4" +
                      " --set denoiser.type=\"process\"" +
                      " --set 'denoiser.command=" + plugin_cmd + "'");
    REQUIRE(r.exit_code == 0);
    RunResult builtin = run("sync-generate -c " + kFixture + "/scene.json -o " +
                            (dir / "builtin").string() + " --set sync.steps=4");
    REQUIRE(builtin.exit_code == 0);
    ImagePlane a =
        srgb_to_linear(load_png((dir / "plugin/perspective.png").string()));
    ImagePlane b =
        srgb_to_linear(load_png((dir / "builtin/perspective.png").string()));
    // The plug-in exchanges f32 tensors; quantization stays tiny.
    CHECK(gwtest::max_abs_difference(a, b) < 1e-4);
    fs::remove_all(dir);
}

TEST_CASE("cli: a violated plug-in protocol exits with code 4") {
    fs::path dir = fs::temp_directory_path() / "gw_cli_badplugin";
    fs::remove_all(dir);
    RunResult r = run("sync-generate -c " + kFixture + "/scene.json -o " +
                      dir.string() + " --set sync.steps=2" +
                      " --set denoiser.type=\"process\"" +
                      " --set 'denoiser.command=[\"/bin/cat\",\"/dev/null\"]'");
    CHECK(r.exit_code == 4);
    fs::remove_all(dir);
}

TEST_CASE("cli: score reports capped psnr for identical images") {
    fs::path dir = fs::temp_directory_path() / "gw_cli_score";
    fs::remove_all(dir);
    fs::create_directories(dir);
    ImagePlane white(32, 32, ColorSpace::Srgb, 1.0f);
    save_png8((dir / "mask.png").string(), white);
    std::string img = kFixture + "/clean.png";
    RunResult r = run("score --result " + img + " --reference " + img +
                      " --mask " + (dir / "mask.png").string() + " --report " +
                      (dir / "report.json").string());
    CHECK(r.exit_code == 2); // resolution mismatch: mask is 32x32
    ImagePlane big(96, 96, ColorSpace::Srgb, 1.0f);
    save_png8((dir / "mask96.png").string(), big);
    RunResult ok = run("score --result " + img + " --reference " + img +
                       " --mask " + (dir / "mask96.png").string() + " --report " +
                       (dir / "report.json").string());
    CHECK(ok.exit_code == 0);
    CHECK(ok.output.find("\"masked_psnr_db\": 99.0") != std::string::npos);
    CHECK(ok.output.find("\"masked_mae\": 0.0") != std::string::npos);
    CHECK(ok.output.find("\"valid_pixel_count\": 9216") != std::string::npos);
    CHECK(file_bytes(dir / "report.json") == ok.output);
    fs::remove_all(dir);
}

TEST_CASE("cli: render-refraction equals the compile-warps preview byte for byte") {
    fs::path dir = fs::temp_directory_path() / "gw_cli_preview_eq";
    fs::remove_all(dir);
    REQUIRE(run("compile-warps -c " + kFixture + "/scene.json -o " +
                (dir / "warps").string() + " -j 2")
                .exit_code == 0);
    REQUIRE(run("render-refraction -c " + kFixture + "/scene.json -o " +
                (dir / "solo.png").string() + " -j 2")
                .exit_code == 0);
    CHECK(file_bytes(dir / "warps" / "preview.png") ==
          file_bytes(dir / "solo.png"));
    fs::remove_all(dir);
}
