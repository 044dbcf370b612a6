#include "sidebench/io.hpp"

#include <png.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <memory>
#include <sstream>
#include <vector>

namespace sidebench {

namespace {

struct FileCloser {
  void operator()(std::FILE* f) const { std::fclose(f); }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

FilePtr open_file(const std::filesystem::path& path, const char* mode) {
  FilePtr f(std::fopen(path.c_str(), mode));
  if (!f) throw Error("cannot open " + path.string());
  return f;
}

std::string lower_ext(const std::filesystem::path& path) {
  auto ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  return ext;
}

[[noreturn]] void png_fail(png_structp, png_const_charp msg) {
  throw Error(std::string("png: ") + msg);
}

void png_warn(png_structp, png_const_charp) {}

struct DecodedPng {
  png_uint_32 width = 0;
  png_uint_32 height = 0;
  int bit_depth = 0;
  int channels = 0;
  std::vector<unsigned char> bytes;  // rows packed, 16-bit samples big-endian
  std::size_t row_bytes = 0;
};

DecodedPng decode_png(const std::filesystem::path& path) {
  auto file = open_file(path, "rb");
  unsigned char sig[8];
  if (std::fread(sig, 1, 8, file.get()) != 8 || png_sig_cmp(sig, 0, 8) != 0) {
    throw Error("not a PNG file: " + path.string());
  }
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, png_fail, png_warn);
  png_infop info = png_create_info_struct(png);
  DecodedPng out;
  try {
    png_init_io(png, file.get());
    png_set_sig_bytes(png, 8);
    png_read_info(png, info);
    out.width = png_get_image_width(png, info);
    out.height = png_get_image_height(png, info);
    out.bit_depth = png_get_bit_depth(png, info);
    const int color = png_get_color_type(png, info);
    if (color == PNG_COLOR_TYPE_PALETTE) {
      png_set_palette_to_rgb(png);
      out.bit_depth = 8;
    }
    if (color == PNG_COLOR_TYPE_GRAY && out.bit_depth < 8) {
      png_set_expand_gray_1_2_4_to_8(png);
      out.bit_depth = 8;
    }
    png_read_update_info(png, info);
    out.channels = png_get_channels(png, info);
    out.row_bytes = png_get_rowbytes(png, info);
    if (out.width == 0 || out.height == 0) throw Error("PNG has zero dimension: " + path.string());
    out.bytes.resize(out.row_bytes * out.height);
    std::vector<png_bytep> rows(out.height);
    for (png_uint_32 r = 0; r < out.height; ++r) rows[r] = out.bytes.data() + r * out.row_bytes;
    png_read_image(png, rows.data());
    png_read_end(png, nullptr);
  } catch (...) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw;
  }
  png_destroy_read_struct(&png, &info, nullptr);
  return out;
}

void encode_png(const std::filesystem::path& path, png_uint_32 width, png_uint_32 height,
                int bit_depth, int color_type, const std::vector<unsigned char>& bytes,
                std::size_t row_bytes) {
  auto file = open_file(path, "wb");
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, png_fail, png_warn);
  png_infop info = png_create_info_struct(png);
  try {
    png_init_io(png, file.get());
    png_set_IHDR(png, info, width, height, bit_depth, color_type, PNG_INTERLACE_NONE,
                 PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    std::vector<png_bytep> rows(height);
    for (png_uint_32 r = 0; r < height; ++r) {
      rows[r] = const_cast<png_bytep>(bytes.data() + r * row_bytes);
    }
    png_write_image(png, rows.data());
    png_write_end(png, nullptr);
  } catch (...) {
    png_destroy_write_struct(&png, &info);
    throw;
  }
  png_destroy_write_struct(&png, &info);
}

Image<unsigned char> read_png_gray8(const std::filesystem::path& path) {
  auto png = decode_png(path);
  if (png.bit_depth != 8 || png.channels != 1) {
    throw Error("expected 8-bit grayscale PNG: " + path.string());
  }
  Image<unsigned char> out(png.height, png.width);
  std::memcpy(out.data(), png.bytes.data(), png.bytes.size());
  return out;
}

// PFM: "Pf" header, width height, scale (negative = little endian), rows
// stored bottom to top.
DepthMap load_pfm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::string magic;
  long width = 0;
  long height = 0;
  double scale = 0.0;
  in >> magic >> width >> height >> scale;
  if (!in || (magic != "Pf" && magic != "PF")) throw Error("malformed PFM header: " + path.string());
  if (width <= 0 || height <= 0) throw Error("PFM has zero dimension: " + path.string());
  in.get();
  const int channels = magic == "PF" ? 3 : 1;
  const bool little = scale < 0.0;
  std::vector<std::uint32_t> raw(static_cast<std::size_t>(width * height * channels));
  in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size() * 4));
  if (in.gcount() != static_cast<std::streamsize>(raw.size() * 4)) {
    throw Error("truncated PFM data: " + path.string());
  }
  const bool host_little = std::endian::native == std::endian::little;
  Image<double> values(height, width);
  for (long r = 0; r < height; ++r) {
    for (long c = 0; c < width; ++c) {
      std::uint32_t bits = raw[static_cast<std::size_t>(((height - 1 - r) * width + c) * channels)];
      if (little != host_little) bits = __builtin_bswap32(bits);
      values(r, c) = static_cast<double>(std::bit_cast<float>(bits));
    }
  }
  return DepthMap(std::move(values));
}

void save_pfm(const std::filesystem::path& path, const DepthMap& depth) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path.string());
  const bool host_little = std::endian::native == std::endian::little;
  out << "Pf\n" << depth.width() << ' ' << depth.height() << '\n' << (host_little ? "-1.0" : "1.0") << '\n';
  std::vector<float> row(static_cast<std::size_t>(depth.width()));
  for (Eigen::Index r = depth.height() - 1; r >= 0; --r) {
    for (Eigen::Index c = 0; c < depth.width(); ++c) {
      row[static_cast<std::size_t>(c)] = depth.valid(r, c) ? static_cast<float>(depth(r, c)) : 0.0f;
    }
    out.write(reinterpret_cast<const char*>(row.data()), static_cast<std::streamsize>(row.size() * 4));
  }
  if (!out) throw Error("write failed: " + path.string());
}

}  // namespace

Image<std::uint16_t> read_png_gray16(const std::filesystem::path& path) {
  auto png = decode_png(path);
  if (png.bit_depth != 16 || png.channels != 1) {
    throw Error("expected 16-bit grayscale PNG: " + path.string());
  }
  Image<std::uint16_t> out(png.height, png.width);
  for (png_uint_32 r = 0; r < png.height; ++r) {
    const unsigned char* row = png.bytes.data() + r * png.row_bytes;
    for (png_uint_32 c = 0; c < png.width; ++c) {
      out(r, c) = static_cast<std::uint16_t>((row[2 * c] << 8) | row[2 * c + 1]);
    }
  }
  return out;
}

void write_png_gray16(const std::filesystem::path& path, const Image<std::uint16_t>& raw) {
  const auto w = static_cast<std::size_t>(raw.cols());
  std::vector<unsigned char> bytes(w * 2 * static_cast<std::size_t>(raw.rows()));
  for (Eigen::Index r = 0; r < raw.rows(); ++r) {
    for (Eigen::Index c = 0; c < raw.cols(); ++c) {
      const std::size_t i = (static_cast<std::size_t>(r) * w + static_cast<std::size_t>(c)) * 2;
      bytes[i] = static_cast<unsigned char>(raw(r, c) >> 8);
      bytes[i + 1] = static_cast<unsigned char>(raw(r, c) & 0xff);
    }
  }
  encode_png(path, static_cast<png_uint_32>(raw.cols()), static_cast<png_uint_32>(raw.rows()), 16,
             PNG_COLOR_TYPE_GRAY, bytes, w * 2);
}

DepthMap load_depth(const std::filesystem::path& path, const MetricConfig& cfg) {
  return load_depth(path, cfg.max_depth);
}

DepthMap load_depth(const std::filesystem::path& path, double max_depth) {
  const auto ext = lower_ext(path);
  if (ext == ".pfm") return load_pfm(path);
  if (ext != ".png") throw Error("unsupported depth format: " + path.string());
  const auto raw = read_png_gray16(path);
  // raw 0 maps to 0 m, which DepthMap normalizes to invalid.
  return DepthMap(raw.cast<double>() / 65535.0 * max_depth);
}

void save_depth(const std::filesystem::path& path, const DepthMap& depth, double max_depth) {
  const auto ext = lower_ext(path);
  if (ext == ".pfm") return save_pfm(path, depth);
  if (ext != ".png") throw Error("unsupported depth format: " + path.string());
  Image<std::uint16_t> raw(depth.height(), depth.width());
  for (Eigen::Index r = 0; r < depth.height(); ++r) {
    for (Eigen::Index c = 0; c < depth.width(); ++c) {
      if (!depth.valid(r, c)) {
        raw(r, c) = 0;
        continue;
      }
      const double z = depth(r, c);
      if (z > max_depth) throw Error("depth exceeds max_depth in " + path.string());
      // Valid depths never encode to the invalid code 0.
      raw(r, c) = static_cast<std::uint16_t>(std::clamp(std::lround(z / max_depth * 65535.0), 1L, 65535L));
    }
  }
  write_png_gray16(path, raw);
}

Mask load_binary_png(const std::filesystem::path& path) { return read_png_gray8(path) > 0; }

void save_binary_png(const std::filesystem::path& path, const Mask& bits) {
  std::vector<unsigned char> bytes(static_cast<std::size_t>(bits.size()));
  for (Eigen::Index i = 0; i < bits.size(); ++i) bytes[static_cast<std::size_t>(i)] = bits.data()[i] ? 255 : 0;
  encode_png(path, static_cast<png_uint_32>(bits.cols()), static_cast<png_uint_32>(bits.rows()), 8,
             PNG_COLOR_TYPE_GRAY, bytes, static_cast<std::size_t>(bits.cols()));
}

SemanticMask load_mask(const std::filesystem::path& path, MaskLabel label, int instance_id) {
  return SemanticMask{label, instance_id, load_binary_png(path)};
}

EdgeMap load_edges(const std::filesystem::path& path) { return EdgeMap{load_binary_png(path)}; }

RgbImage load_rgb(const std::filesystem::path& path) {
  auto png = decode_png(path);
  if (png.bit_depth != 8 || png.channels < 3) throw Error("expected 8-bit RGB PNG: " + path.string());
  Image<double> ch[3];
  for (auto& c : ch) c.resize(png.height, png.width);
  for (png_uint_32 r = 0; r < png.height; ++r) {
    const unsigned char* row = png.bytes.data() + r * png.row_bytes;
    for (png_uint_32 c = 0; c < png.width; ++c) {
      for (int k = 0; k < 3; ++k) ch[k](r, c) = row[c * png.channels + k] / 255.0;
    }
  }
  return RgbImage(std::move(ch[0]), std::move(ch[1]), std::move(ch[2]));
}

void save_rgb(const std::filesystem::path& path, const RgbImage& img) {
  const auto w = static_cast<std::size_t>(img.width());
  std::vector<unsigned char> bytes(w * 3 * static_cast<std::size_t>(img.height()));
  for (Eigen::Index r = 0; r < img.height(); ++r) {
    for (Eigen::Index c = 0; c < img.width(); ++c) {
      for (int k = 0; k < 3; ++k) {
        const double v = std::clamp(img.channel(k)(r, c), 0.0, 1.0);
        bytes[(static_cast<std::size_t>(r) * w + static_cast<std::size_t>(c)) * 3 + k] =
            static_cast<unsigned char>(std::lround(v * 255.0));
      }
    }
  }
  encode_png(path, static_cast<png_uint_32>(img.width()), static_cast<png_uint_32>(img.height()), 8,
             PNG_COLOR_TYPE_RGB, bytes, w * 3);
}

}  // namespace sidebench
