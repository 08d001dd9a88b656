// Copyright (c) 2026 glasswarp authors
// SPDX-License-Identifier: Apache-2.0

#include <fstream>
#include <sstream>

#include "glasswarp/error.hpp"
#include "glasswarp/io.hpp"

namespace glasswarp {

namespace {

struct PfmHeader {
    int width = 0, height = 0, channels = 0;
};

PfmHeader read_pfm_header(std::istream &in, const std::string &path) {
    std::string magic;
    in >> magic;
    PfmHeader h;
    if (magic == "PF")
        h.channels = 3;
    else if (magic == "Pf")
        h.channels = 1;
    else
        fail(ErrorKind::Parse, path + ": not a PFM file");
    double scale = 0.0;
    if (!(in >> h.width >> h.height >> scale) || h.width <= 0 || h.height <= 0)
        fail(ErrorKind::Parse, path + ": bad PFM header");
    if (scale >= 0.0)
        fail(ErrorKind::Parse, path + ": big-endian PFM is not supported");
    in.get(); // single whitespace after the scale
    return h;
}

void read_pfm_rows(std::istream &in, const std::string &path, float *dst,
                   int width, int height, int channels) {
    // PFM stores rows bottom-up.
    const size_t row_floats = static_cast<size_t>(width) * channels;
    for (int y = height - 1; y >= 0; --y) {
        in.read(reinterpret_cast<char *>(dst + row_floats * y),
                static_cast<std::streamsize>(row_floats * sizeof(float)));
        if (!in) fail(ErrorKind::Parse, path + ": truncated PFM data");
    }
}

void write_pfm(const std::string &path, const float *data, int width, int height,
               int channels) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorKind::Io, "cannot write PFM file: " + path);
    out << (channels == 3 ? "PF" : "Pf") << "\n"
        << width << " " << height << "\n-1.0\n";
    const size_t row_floats = static_cast<size_t>(width) * channels;
    for (int y = height - 1; y >= 0; --y) {
        out.write(reinterpret_cast<const char *>(data + row_floats * y),
                  static_cast<std::streamsize>(row_floats * sizeof(float)));
    }
    if (!out) fail(ErrorKind::Io, "failed writing PFM file: " + path);
}

} // namespace

ImagePlane load_pfm(const std::string &path, ColorSpace space) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::Io, "cannot open PFM file: " + path);
    PfmHeader h = read_pfm_header(in, path);
    ImagePlane img(h.width, h.height, space);
    if (h.channels == 3) {
        read_pfm_rows(in, path, img.samples.data(), h.width, h.height, 3);
    } else {
        std::vector<float> gray(static_cast<size_t>(h.width) * h.height);
        read_pfm_rows(in, path, gray.data(), h.width, h.height, 1);
        for (size_t i = 0; i < gray.size(); ++i) {
            img.samples[3 * i] = gray[i];
            img.samples[3 * i + 1] = gray[i];
            img.samples[3 * i + 2] = gray[i];
        }
    }
    return img;
}

void save_pfm(const std::string &path, const ImagePlane &img) {
    write_pfm(path, img.samples.data(), img.width, img.height, 3);
}

std::vector<float> load_pfm_gray(const std::string &path, int &width, int &height) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::Io, "cannot open PFM file: " + path);
    PfmHeader h = read_pfm_header(in, path);
    width = h.width;
    height = h.height;
    std::vector<float> data(static_cast<size_t>(h.width) * h.height * h.channels);
    read_pfm_rows(in, path, data.data(), h.width, h.height, h.channels);
    if (h.channels == 3) {
        std::vector<float> gray(static_cast<size_t>(h.width) * h.height);
        for (size_t i = 0; i < gray.size(); ++i) gray[i] = data[3 * i];
        return gray;
    }
    return data;
}

void save_pfm_gray(const std::string &path, const float *data, int width,
                   int height) {
    write_pfm(path, data, width, height, 1);
}

DepthMap load_depth(const std::string &path, double meters_per_unit) {
    DepthMap d;
    if (path.size() >= 4 && path.compare(path.size() - 4, 4, ".pfm") == 0) {
        d.depth = load_pfm_gray(path, d.width, d.height);
        if (meters_per_unit != 1.0)
            for (float &v : d.depth) v = static_cast<float>(v * meters_per_unit);
        return d;
    }
    int w = 0, h = 0;
    std::vector<uint16_t> units = load_png_gray16(path, w, h);
    d.width = w;
    d.height = h;
    d.depth.resize(units.size());
    for (size_t i = 0; i < units.size(); ++i)
        d.depth[i] = static_cast<float>(units[i] * meters_per_unit);
    return d;
}

} // namespace glasswarp
