#pragma once

#include <filesystem>

#include "depthbench/camera.h"
#include "depthbench/depth_map.h"

namespace depthbench {

/// Single-channel 16-bit PNG. depth = stored / scale; stored 0 is invalid.
/// Throws FormatError (with path and found-vs-expected) for other layouts.
DepthMap read_depth_png16(const std::filesystem::path& path, int scale);

/// Writes round(depth * scale) clamped to [1, 65535]; invalid pixels store 0.
void write_depth_png16(const std::filesystem::path& path, const DepthMap& depth, int scale);

/// Grayscale "Pf" PFM in meters. Byte order follows the sign of the scale
/// field (negative = little-endian); rows are stored bottom-to-top on disk.
/// Non-positive and non-finite values become invalid pixels.
DepthMap read_depth_pfm(const std::filesystem::path& path);

/// Little-endian PFM. Invalid pixels are written as 0.
void write_depth_pfm(const std::filesystem::path& path, const DepthMap& depth);

/// Picks the reader from the extension (.png or .pfm).
DepthMap read_depth(const std::filesystem::path& path, int png_scale);

/// Either "fx fy cx cy" or a row-major 3x3 matrix (fx = m00, fy = m11,
/// cx = m02, cy = m12), whitespace separated. ParseError carries line and
/// column of the offending token.
CameraIntrinsics read_intrinsics(const std::filesystem::path& path);

void write_intrinsics(const std::filesystem::path& path, const CameraIntrinsics& intrinsics);

}  // namespace depthbench
