#include "depthbench/depth_io.h"

#include <png.h>

#include <algorithm>
#include <array>
#include <csetjmp>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "depthbench/errors.h"

namespace depthbench {
namespace fs = std::filesystem;

namespace {

struct FileCloser {
  void operator()(std::FILE* f) const { std::fclose(f); }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

FilePtr open_file(const fs::path& path, const char* mode) {
  FilePtr f(std::fopen(path.c_str(), mode));
  if (!f) throw IoError("cannot open '" + path.string() + "': " + std::strerror(errno));
  return f;
}

struct PngErrorState {
  char message[256] = {};
};

void png_error_handler(png_structp png, png_const_charp message) {
  auto* state = static_cast<PngErrorState*>(png_get_error_ptr(png));
  std::snprintf(state->message, sizeof state->message, "%s", message);
  longjmp(png_jmpbuf(png), 1);
}

void png_warning_handler(png_structp, png_const_charp) {}

std::string color_type_name(int type) {
  switch (type) {
    case PNG_COLOR_TYPE_GRAY:
      return "gray";
    case PNG_COLOR_TYPE_GRAY_ALPHA:
      return "gray+alpha";
    case PNG_COLOR_TYPE_RGB:
      return "RGB";
    case PNG_COLOR_TYPE_RGB_ALPHA:
      return "RGBA";
    case PNG_COLOR_TYPE_PALETTE:
      return "palette";
    default:
      return "unknown";
  }
}

// libpng reports errors by longjmp. The functions below keep only trivially
// destructible locals between setjmp and any libpng call, and translate
// failures into return codes that the callers turn into exceptions.

struct PngHeader {
  png_uint_32 width = 0;
  png_uint_32 height = 0;
  int bit_depth = 0;
  int color_type = 0;
};

bool png_read_header(png_structp png, png_infop info, std::FILE* file, PngHeader* header) {
  if (setjmp(png_jmpbuf(png))) return false;
  png_init_io(png, file);
  png_read_info(png, info);
  header->width = png_get_image_width(png, info);
  header->height = png_get_image_height(png, info);
  header->bit_depth = png_get_bit_depth(png, info);
  header->color_type = png_get_color_type(png, info);
  return true;
}

bool png_read_rows(png_structp png, png_bytepp rows) {
  if (setjmp(png_jmpbuf(png))) return false;
  if (std::endian::native == std::endian::little) png_set_swap(png);
  png_read_image(png, rows);
  png_read_end(png, nullptr);
  return true;
}

bool png_write_all(png_structp png, png_infop info, std::FILE* file, png_uint_32 width, png_uint_32 height,
                   png_bytepp rows) {
  if (setjmp(png_jmpbuf(png))) return false;
  png_init_io(png, file);
  png_set_IHDR(png, info, width, height, 16, PNG_COLOR_TYPE_GRAY, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  if (std::endian::native == std::endian::little) png_set_swap(png);
  png_write_image(png, rows);
  png_write_end(png, nullptr);
  return true;
}

}  // namespace

DepthMap read_depth_png16(const fs::path& path, int scale) {
  if (scale <= 0) throw InvalidArgument("read_depth_png16: scale must be positive");
  auto file = open_file(path, "rb");
  std::array<unsigned char, 8> signature{};
  if (std::fread(signature.data(), 1, signature.size(), file.get()) != signature.size() ||
      png_sig_cmp(signature.data(), 0, signature.size()) != 0) {
    throw FormatError("'" + path.string() + "': not a PNG file");
  }
  std::rewind(file.get());

  PngErrorState errors;
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, &errors, png_error_handler, png_warning_handler);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  struct Guard {
    png_structp* p;
    png_infop* i;
    ~Guard() { png_destroy_read_struct(p, i, nullptr); }
  } guard{&png, &info};
  if (!info) throw IoError("libpng: out of memory");

  PngHeader header;
  if (!png_read_header(png, info, file.get(), &header)) {
    throw FormatError("'" + path.string() + "': " + errors.message);
  }
  if (header.bit_depth != 16 || header.color_type != PNG_COLOR_TYPE_GRAY) {
    throw FormatError("'" + path.string() + "': expected 16-bit single-channel gray PNG, found " +
                      std::to_string(header.bit_depth) + "-bit " + color_type_name(header.color_type));
  }
  const std::size_t width = header.width;
  const std::size_t height = header.height;
  std::vector<std::uint16_t> raw(width * height);
  std::vector<png_bytep> rows(height);
  for (std::size_t v = 0; v < height; ++v) rows[v] = reinterpret_cast<png_bytep>(raw.data() + v * width);
  if (!png_read_rows(png, rows.data())) throw FormatError("'" + path.string() + "': " + errors.message);

  std::vector<double> values(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    values[i] = raw[i] == 0 ? 0.0 : static_cast<double>(raw[i]) / static_cast<double>(scale);
  }
  return DepthMap(width, height, std::move(values));
}

void write_depth_png16(const fs::path& path, const DepthMap& depth, int scale) {
  if (scale <= 0) throw InvalidArgument("write_depth_png16: scale must be positive");
  std::vector<std::uint16_t> raw(depth.size(), 0);
  const auto values = depth.values();
  const auto mask = depth.valid_mask();
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (!mask[i]) continue;
    const double stored = std::round(values[i] * scale);
    raw[i] = static_cast<std::uint16_t>(std::clamp(stored, 1.0, 65535.0));
  }
  std::vector<png_bytep> rows(depth.height());
  for (std::size_t v = 0; v < depth.height(); ++v) {
    rows[v] = reinterpret_cast<png_bytep>(raw.data() + v * depth.width());
  }

  auto file = open_file(path, "wb");
  PngErrorState errors;
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, &errors, png_error_handler, png_warning_handler);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  struct Guard {
    png_structp* p;
    png_infop* i;
    ~Guard() { png_destroy_write_struct(p, i); }
  } guard{&png, &info};
  if (!info) throw IoError("libpng: out of memory");
  if (!png_write_all(png, info, file.get(), static_cast<png_uint_32>(depth.width()),
                     static_cast<png_uint_32>(depth.height()), rows.data())) {
    throw IoError("'" + path.string() + "': " + errors.message);
  }
}

namespace {

// Reads one whitespace-delimited header token; PFM headers are text.
std::string header_token(std::istream& in, const fs::path& path) {
  std::string token;
  if (!(in >> token)) throw FormatError("'" + path.string() + "': truncated PFM header");
  return token;
}

float decode_float(const unsigned char* bytes, bool little_endian) {
  std::uint32_t bits = 0;
  for (int k = 0; k < 4; ++k) {
    const int shift = little_endian ? 8 * k : 8 * (3 - k);
    bits |= static_cast<std::uint32_t>(bytes[k]) << shift;
  }
  return std::bit_cast<float>(bits);
}

}  // namespace

DepthMap read_depth_pfm(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");

  const std::string magic = header_token(in, path);
  if (magic != "Pf") {
    throw FormatError("'" + path.string() + "': expected grayscale PFM magic 'Pf', found '" + magic + "'");
  }
  std::size_t width = 0;
  std::size_t height = 0;
  double scale = 0.0;
  try {
    width = std::stoul(header_token(in, path));
    height = std::stoul(header_token(in, path));
    scale = std::stod(header_token(in, path));
  } catch (const std::logic_error&) {
    throw FormatError("'" + path.string() + "': malformed PFM header");
  }
  if (width == 0 || height == 0 || scale == 0.0 || !std::isfinite(scale)) {
    throw FormatError("'" + path.string() + "': malformed PFM header (zero size or scale)");
  }
  // Exactly one whitespace byte separates the header from the raster.
  if (!std::isspace(in.get())) throw FormatError("'" + path.string() + "': malformed PFM header");

  const bool little_endian = scale < 0.0;
  std::vector<unsigned char> raster(width * height * 4);
  if (!in.read(reinterpret_cast<char*>(raster.data()), static_cast<std::streamsize>(raster.size()))) {
    throw FormatError("'" + path.string() + "': PFM raster shorter than " + std::to_string(width) + "x" +
                      std::to_string(height) + " floats");
  }

  std::vector<double> values(width * height);
  for (std::size_t file_row = 0; file_row < height; ++file_row) {
    const std::size_t v = height - 1 - file_row;
    for (std::size_t u = 0; u < width; ++u) {
      values[v * width + u] = decode_float(&raster[(file_row * width + u) * 4], little_endian);
    }
  }
  return DepthMap(width, height, std::move(values));
}

void write_depth_pfm(const fs::path& path, const DepthMap& depth) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << "Pf\n" << depth.width() << ' ' << depth.height() << "\n-1.0\n";
  std::vector<unsigned char> row(depth.width() * 4);
  for (std::size_t file_row = 0; file_row < depth.height(); ++file_row) {
    const std::size_t v = depth.height() - 1 - file_row;
    for (std::size_t u = 0; u < depth.width(); ++u) {
      const float value = depth.valid(u, v) ? static_cast<float>(depth.at(u, v)) : 0.0f;
      const auto bits = std::bit_cast<std::uint32_t>(value);
      for (int k = 0; k < 4; ++k) row[u * 4 + k] = static_cast<unsigned char>(bits >> (8 * k));
    }
    out.write(reinterpret_cast<const char*>(row.data()), static_cast<std::streamsize>(row.size()));
  }
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

DepthMap read_depth(const fs::path& path, int png_scale) {
  const auto ext = path.extension().string();
  if (ext == ".png" || ext == ".PNG") return read_depth_png16(path, png_scale);
  if (ext == ".pfm" || ext == ".PFM") return read_depth_pfm(path);
  throw FormatError("'" + path.string() + "': unsupported depth file extension '" + ext + "' (expected .png or .pfm)");
}

CameraIntrinsics read_intrinsics(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "'");

  std::vector<double> numbers;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::size_t pos = 0;
    while (pos < line.size()) {
      while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
      if (pos >= line.size()) break;
      std::size_t end = pos;
      while (end < line.size() && !std::isspace(static_cast<unsigned char>(line[end]))) ++end;
      const std::string token = line.substr(pos, end - pos);
      std::size_t used = 0;
      double value = 0.0;
      try {
        value = std::stod(token, &used);
      } catch (const std::logic_error&) {
        used = 0;
      }
      if (used != token.size() || !std::isfinite(value)) {
        throw ParseError(path.string() + ":" + std::to_string(line_no) + ":" + std::to_string(pos + 1) +
                         ": expected a number, found '" + token + "'");
      }
      numbers.push_back(value);
      pos = end;
    }
  }

  CameraIntrinsics k;
  if (numbers.size() == 4) {
    k = {numbers[0], numbers[1], numbers[2], numbers[3]};
  } else if (numbers.size() == 9) {
    k = {numbers[0], numbers[4], numbers[2], numbers[5]};
  } else {
    throw ParseError(path.string() + ":" + std::to_string(line_no) + ":1: expected 4 numbers (fx fy cx cy) or 9 " +
                     "(3x3 matrix), found " + std::to_string(numbers.size()));
  }
  try {
    k.validate();
  } catch (const InvalidArgument& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  return k;
}

void write_intrinsics(const fs::path& path, const CameraIntrinsics& k) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out.precision(17);
  out << k.fx << ' ' << k.fy << ' ' << k.cx << ' ' << k.cy << '\n';
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

}  // namespace depthbench
