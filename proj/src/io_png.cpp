// Copyright (c) 2026 glasswarp authors
// SPDX-License-Identifier: Apache-2.0

#include <cstdio>
#include <memory>

#include <png.h>

#include "glasswarp/error.hpp"
#include "glasswarp/io.hpp"

namespace glasswarp {

namespace {

struct FileCloser {
    void operator()(std::FILE *f) const {
        if (f) std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

struct PngReader {
    png_structp png = nullptr;
    png_infop info = nullptr;
    ~PngReader() {
        if (png) png_destroy_read_struct(&png, info ? &info : nullptr, nullptr);
    }
};

struct PngWriter {
    png_structp png = nullptr;
    png_infop info = nullptr;
    ~PngWriter() {
        if (png) png_destroy_write_struct(&png, info ? &info : nullptr);
    }
};

void read_rows(png_structp png, std::vector<png_bytep> &rows) {
    png_read_image(png, rows.data());
}

} // namespace

ImagePlane load_png(const std::string &path) {
    FilePtr file(std::fopen(path.c_str(), "rb"));
    if (!file) fail(ErrorKind::Io, "cannot open image file: " + path);

    PngReader r;
    r.png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!r.png) fail(ErrorKind::Internal, "png_create_read_struct failed");
    r.info = png_create_info_struct(r.png);
    if (!r.info) fail(ErrorKind::Internal, "png_create_info_struct failed");
    if (setjmp(png_jmpbuf(r.png)))
        fail(ErrorKind::Parse, path + ": corrupt PNG");

    png_init_io(r.png, file.get());
    png_read_info(r.png, r.info);

    png_uint_32 w = png_get_image_width(r.png, r.info);
    png_uint_32 h = png_get_image_height(r.png, r.info);
    int bit_depth = png_get_bit_depth(r.png, r.info);
    int color_type = png_get_color_type(r.png, r.info);

    if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(r.png);
    if (color_type == PNG_COLOR_TYPE_GRAY && bit_depth < 8)
        png_set_expand_gray_1_2_4_to_8(r.png);
    if (png_get_valid(r.png, r.info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(r.png);
    if (color_type == PNG_COLOR_TYPE_GRAY || color_type == PNG_COLOR_TYPE_GRAY_ALPHA)
        png_set_gray_to_rgb(r.png);
    png_set_strip_alpha(r.png);
    if (bit_depth == 16) png_set_swap(r.png); // file is big-endian
    png_read_update_info(r.png, r.info);
    bit_depth = png_get_bit_depth(r.png, r.info);

    ImagePlane img(static_cast<int>(w), static_cast<int>(h), ColorSpace::Srgb);
    if (bit_depth == 16) {
        std::vector<uint16_t> row_data(static_cast<size_t>(w) * h * 3);
        std::vector<png_bytep> rows(h);
        for (png_uint_32 y = 0; y < h; ++y)
            rows[y] = reinterpret_cast<png_bytep>(row_data.data() +
                                                  static_cast<size_t>(y) * w * 3);
        read_rows(r.png, rows);
        for (size_t i = 0; i < row_data.size(); ++i)
            img.samples[i] = static_cast<float>(row_data[i] / 65535.0);
    } else {
        std::vector<uint8_t> row_data(static_cast<size_t>(w) * h * 3);
        std::vector<png_bytep> rows(h);
        for (png_uint_32 y = 0; y < h; ++y)
            rows[y] = row_data.data() + static_cast<size_t>(y) * w * 3;
        read_rows(r.png, rows);
        for (size_t i = 0; i < row_data.size(); ++i)
            img.samples[i] = static_cast<float>(row_data[i] / 255.0);
    }
    png_read_end(r.png, nullptr);
    return img;
}

std::vector<uint16_t> load_png_gray16(const std::string &path, int &width,
                                      int &height) {
    FilePtr file(std::fopen(path.c_str(), "rb"));
    if (!file) fail(ErrorKind::Io, "cannot open image file: " + path);

    PngReader r;
    r.png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!r.png) fail(ErrorKind::Internal, "png_create_read_struct failed");
    r.info = png_create_info_struct(r.png);
    if (!r.info) fail(ErrorKind::Internal, "png_create_info_struct failed");
    if (setjmp(png_jmpbuf(r.png)))
        fail(ErrorKind::Parse, path + ": corrupt PNG");

    png_init_io(r.png, file.get());
    png_read_info(r.png, r.info);
    png_uint_32 w = png_get_image_width(r.png, r.info);
    png_uint_32 h = png_get_image_height(r.png, r.info);
    int color_type = png_get_color_type(r.png, r.info);
    int bit_depth = png_get_bit_depth(r.png, r.info);
    if (color_type != PNG_COLOR_TYPE_GRAY || bit_depth != 16)
        fail(ErrorKind::Parse, path + ": expected 16-bit grayscale PNG");
    png_set_swap(r.png);
    png_read_update_info(r.png, r.info);

    std::vector<uint16_t> data(static_cast<size_t>(w) * h);
    std::vector<png_bytep> rows(h);
    for (png_uint_32 y = 0; y < h; ++y)
        rows[y] =
            reinterpret_cast<png_bytep>(data.data() + static_cast<size_t>(y) * w);
    read_rows(r.png, rows);
    png_read_end(r.png, nullptr);
    width = static_cast<int>(w);
    height = static_cast<int>(h);
    return data;
}

namespace {

void save_png_impl(const std::string &path, const ImagePlane &img, int bit_depth) {
    if (img.space != ColorSpace::Srgb)
        fail(ErrorKind::InvalidArgument,
             "PNG output expects an sRGB-tagged image: " + path);
    FilePtr file(std::fopen(path.c_str(), "wb"));
    if (!file) fail(ErrorKind::Io, "cannot write image file: " + path);

    PngWriter wtr;
    wtr.png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!wtr.png) fail(ErrorKind::Internal, "png_create_write_struct failed");
    wtr.info = png_create_info_struct(wtr.png);
    if (!wtr.info) fail(ErrorKind::Internal, "png_create_info_struct failed");
    if (setjmp(png_jmpbuf(wtr.png)))
        fail(ErrorKind::Io, path + ": PNG write failed");

    png_init_io(wtr.png, file.get());
    // Fixed settings keep re-runs byte-identical.
    png_set_compression_level(wtr.png, 6);
    png_set_IHDR(wtr.png, wtr.info, img.width, img.height, bit_depth,
                 PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_BASE,
                 PNG_FILTER_TYPE_BASE);
    png_set_sRGB_gAMA_and_cHRM(wtr.png, wtr.info, PNG_sRGB_INTENT_PERCEPTUAL);
    png_write_info(wtr.png, wtr.info);

    const size_t n = img.pixel_count() * 3;
    if (bit_depth == 16) {
        png_set_swap(wtr.png);
        std::vector<uint16_t> data(n);
        for (size_t i = 0; i < n; ++i) {
            double v = std::clamp(static_cast<double>(img.samples[i]), 0.0, 1.0);
            data[i] = static_cast<uint16_t>(v * 65535.0 + 0.5);
        }
        std::vector<png_bytep> rows(img.height);
        for (int y = 0; y < img.height; ++y)
            rows[y] = reinterpret_cast<png_bytep>(
                data.data() + static_cast<size_t>(y) * img.width * 3);
        png_write_image(wtr.png, rows.data());
        png_write_end(wtr.png, nullptr);
    } else {
        std::vector<uint8_t> data(n);
        for (size_t i = 0; i < n; ++i) {
            double v = std::clamp(static_cast<double>(img.samples[i]), 0.0, 1.0);
            data[i] = static_cast<uint8_t>(v * 255.0 + 0.5);
        }
        std::vector<png_bytep> rows(img.height);
        for (int y = 0; y < img.height; ++y)
            rows[y] = data.data() + static_cast<size_t>(y) * img.width * 3;
        png_write_image(wtr.png, rows.data());
        png_write_end(wtr.png, nullptr);
    }
}

} // namespace

void save_png_gray16(const std::string &path, const uint16_t *data, int width,
                     int height) {
    FilePtr file(std::fopen(path.c_str(), "wb"));
    if (!file) fail(ErrorKind::Io, "cannot write image file: " + path);

    PngWriter wtr;
    wtr.png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!wtr.png) fail(ErrorKind::Internal, "png_create_write_struct failed");
    wtr.info = png_create_info_struct(wtr.png);
    if (!wtr.info) fail(ErrorKind::Internal, "png_create_info_struct failed");
    if (setjmp(png_jmpbuf(wtr.png)))
        fail(ErrorKind::Io, path + ": PNG write failed");

    png_init_io(wtr.png, file.get());
    png_set_compression_level(wtr.png, 6);
    png_set_IHDR(wtr.png, wtr.info, width, height, 16, PNG_COLOR_TYPE_GRAY,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_BASE,
                 PNG_FILTER_TYPE_BASE);
    png_write_info(wtr.png, wtr.info);
    png_set_swap(wtr.png);
    std::vector<png_bytep> rows(height);
    for (int y = 0; y < height; ++y)
        rows[y] = reinterpret_cast<png_bytep>(
            const_cast<uint16_t *>(data + static_cast<size_t>(y) * width));
    png_write_image(wtr.png, rows.data());
    png_write_end(wtr.png, nullptr);
}

void save_png8(const std::string &path, const ImagePlane &srgb_img) {
    save_png_impl(path, srgb_img, 8);
}

void save_png16(const std::string &path, const ImagePlane &srgb_img) {
    save_png_impl(path, srgb_img, 16);
}

} // namespace glasswarp
