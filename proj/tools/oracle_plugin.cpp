// Copyright (c) 2026 glasswarp authors
// SPDX-License-Identifier: Apache-2.0
//
// Reference denoiser plug-in. Speaks the stdin/stdout tensor protocol from
// docs/formats.md and predicts velocities that drive Euler estimates toward
// fixed target images:
//
//   oracle_plugin <perspective_target> <panorama_target> [pull]
//
// With pull < 1 the estimate keeps a z-dependent component, mimicking an
// imperfect predictor.

#include <cstdint>
#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#include "glasswarp/image.hpp"
#include "glasswarp/io.hpp"

using namespace glasswarp;

namespace {

bool read_exact(void *data, size_t n) {
    return std::fread(data, 1, n, stdin) == n;
}

void write_exact(const void *data, size_t n) {
    if (std::fwrite(data, 1, n, stdout) != n) std::exit(3);
}

template <typename T>
T read_value() {
    T v{};
    if (!read_exact(&v, sizeof v)) std::exit(2);
    return v;
}

template <typename T>
void write_value(T v) {
    write_exact(&v, sizeof v);
}

std::vector<float> flatten_linear(const std::string &path, uint32_t &w, uint32_t &h) {
    ImagePlane img = srgb_to_linear(load_png(path));
    w = static_cast<uint32_t>(img.width);
    h = static_cast<uint32_t>(img.height);
    return img.samples;
}

} // namespace

int main(int argc, char **argv) {
    if (argc < 3) {
        std::fprintf(stderr,
                     "usage: oracle_plugin <persp_target.png> <pano_target.png> "
                     "[pull]\n");
        return 1;
    }
    float pull = argc > 3 ? std::strtof(argv[3], nullptr) : 1.0f;

    uint32_t tw[2], th[2];
    std::vector<float> target[2];
    target[0] = flatten_linear(argv[1], tw[0], th[0]);
    target[1] = flatten_linear(argv[2], tw[1], th[1]);

    for (;;) {
        char magic[4];
        if (!read_exact(magic, 4)) return 0; // EOF = host is done
        if (std::memcmp(magic, "GWDN", 4) != 0) return 2;
        uint8_t msg = read_value<uint8_t>();
        if (msg == 0) return 0; // shutdown
        if (msg != 1) return 2;
        uint8_t branch = read_value<uint8_t>();
        read_value<uint8_t>(); // conditional flag (targets ignore conditioning)
        read_value<uint8_t>(); // reserved
        read_value<uint32_t>(); // step index
        double sigma = read_value<double>();
        uint32_t cond_len = read_value<uint32_t>();
        std::vector<char> cond(cond_len);
        if (cond_len > 0 && !read_exact(cond.data(), cond_len)) return 2;

        uint32_t ndim = read_value<uint32_t>();
        std::vector<uint32_t> dims(ndim);
        size_t n = 1;
        for (uint32_t i = 0; i < ndim; ++i) {
            dims[i] = read_value<uint32_t>();
            n *= dims[i];
        }
        std::vector<float> z(n);
        if (!read_exact(z.data(), n * sizeof(float))) return 2;

        if (branch > 1 || ndim != 3 || dims[0] != th[branch] ||
            dims[1] != tw[branch] || dims[2] != 3) {
            const char *message = "unexpected tensor shape";
            write_value<uint8_t>(1);
            write_value<uint32_t>(static_cast<uint32_t>(std::strlen(message)));
            write_exact(message, std::strlen(message));
            std::fflush(stdout);
            continue;
        }

        const std::vector<float> &t = target[branch];
        const float scale = static_cast<float>(pull / sigma);
        std::vector<float> v(n);
        for (size_t i = 0; i < n; ++i) v[i] = (z[i] - t[i]) * scale;

        write_value<uint8_t>(0);
        write_value<uint32_t>(ndim);
        for (uint32_t d : dims) write_value<uint32_t>(d);
        write_exact(v.data(), n * sizeof(float));
        std::fflush(stdout);
    }
}
