// Copyright (c) 2026 glasswarp authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include "glasswarp/geometry.hpp"
#include "glasswarp/image.hpp"

namespace glasswarp {

// Wavefront OBJ subset: v, vn, f (triangles and fan-triangulated polygons,
// 1-based indices, optional //vn normal references).
TriMesh load_obj(const std::string &path, MeshTag tag = MeshTag::Object);
void save_obj(const std::string &path, const TriMesh &mesh);

// Portable FloatMap. Little-endian files (negative scale) only; rows are
// stored bottom-up. "PF" = 3 channels, "Pf" = 1 channel.
ImagePlane load_pfm(const std::string &path, ColorSpace space = ColorSpace::Linear);
void save_pfm(const std::string &path, const ImagePlane &img);
std::vector<float> load_pfm_gray(const std::string &path, int &width, int &height);
void save_pfm_gray(const std::string &path, const float *data, int width,
                   int height);

// PNG, 8- or 16-bit; samples are mapped to [0, 1] and tagged sRGB.
ImagePlane load_png(const std::string &path);
void save_png8(const std::string &path, const ImagePlane &srgb_img);
void save_png16(const std::string &path, const ImagePlane &srgb_img);
// 16-bit grayscale PNG as raw units (for depth maps with a declared scale).
std::vector<uint16_t> load_png_gray16(const std::string &path, int &width,
                                      int &height);
void save_png_gray16(const std::string &path, const uint16_t *data, int width,
                     int height);

DepthMap load_depth(const std::string &path, double meters_per_unit);

} // namespace glasswarp
