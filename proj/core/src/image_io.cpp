#include "rriqa/image_io.hpp"

#include <png.h>

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iterator>
#include <string>
#include <vector>

#include "rriqa/error.hpp"

namespace rriqa {

namespace {

namespace fs = std::filesystem;

std::vector<std::uint8_t> read_file(const fs::path& path) {
  std::error_code ec;
  if (!fs::is_regular_file(path, ec)) {
    throw Error(Errc::FileNotFound, path.string());
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(Errc::FileNotFound, path.string());
  }
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::uint32_t le32(const std::vector<std::uint8_t>& buf, std::size_t off) {
  return static_cast<std::uint32_t>(buf[off]) | (static_cast<std::uint32_t>(buf[off + 1]) << 8) |
         (static_cast<std::uint32_t>(buf[off + 2]) << 16) |
         (static_cast<std::uint32_t>(buf[off + 3]) << 24);
}

std::uint16_t le16(const std::vector<std::uint8_t>& buf, std::size_t off) {
  return static_cast<std::uint16_t>(buf[off] | (buf[off + 1] << 8));
}

int channel_shift(std::uint32_t mask) {
  if (mask == 0) return -1;
  int shift = 0;
  while ((mask & 1u) == 0) {
    mask >>= 1;
    ++shift;
  }
  return shift;
}

RgbImage decode_bmp(const std::vector<std::uint8_t>& buf, const fs::path& path) {
  const std::string name = path.string();
  if (buf.size() < 26) throw Error(Errc::CorruptImage, name + ": truncated BMP header");
  const std::uint32_t pixel_offset = le32(buf, 10);
  const std::uint32_t header_size = le32(buf, 14);

  std::int64_t width = 0;
  std::int64_t height = 0;
  std::uint16_t bpp = 0;
  std::uint32_t compression = 0;
  std::uint32_t palette_count = 0;
  std::size_t palette_entry = 4;
  std::array<std::uint32_t, 3> masks{0x00ff0000u, 0x0000ff00u, 0x000000ffu};

  if (header_size == 12) {
    width = le16(buf, 18);
    height = static_cast<std::int16_t>(le16(buf, 20));
    bpp = le16(buf, 24);
    palette_entry = 3;
  } else if (header_size >= 40) {
    if (buf.size() < 14 + 40) throw Error(Errc::CorruptImage, name + ": truncated BMP info header");
    width = static_cast<std::int32_t>(le32(buf, 18));
    height = static_cast<std::int32_t>(le32(buf, 22));
    bpp = le16(buf, 28);
    compression = le32(buf, 30);
    palette_count = le32(buf, 46);
    if (compression == 3) {
      const std::size_t mask_off = header_size >= 52 ? 54 : 14 + header_size;
      if (buf.size() < mask_off + 12) throw Error(Errc::CorruptImage, name + ": truncated masks");
      masks = {le32(buf, mask_off), le32(buf, mask_off + 4), le32(buf, mask_off + 8)};
    }
  } else {
    throw Error(Errc::UnsupportedFormat, name + ": unknown BMP header size");
  }

  if (compression != 0 && compression != 3) {
    throw Error(Errc::UnsupportedFormat, name + ": compressed BMP not supported");
  }
  if (bpp != 8 && bpp != 24 && bpp != 32) {
    throw Error(Errc::UnsupportedFormat, name + ": " + std::to_string(bpp) + "-bit BMP not supported");
  }
  if (compression == 3 && bpp != 32) {
    throw Error(Errc::UnsupportedFormat, name + ": bitfields only supported for 32-bit BMP");
  }
  const bool top_down = height < 0;
  height = std::abs(height);
  if (width <= 0 || height <= 0 || width > 1 << 16 || height > 1 << 16) {
    throw Error(Errc::CorruptImage, name + ": invalid BMP dimensions");
  }

  std::vector<std::array<std::uint8_t, 3>> palette;
  if (bpp == 8) {
    if (palette_count == 0) palette_count = 256;
    const std::size_t pal_off = 14 + header_size + (compression == 3 && header_size == 40 ? 12 : 0);
    if (palette_count > 256 || pal_off + palette_count * palette_entry > buf.size()) {
      throw Error(Errc::CorruptImage, name + ": BMP palette out of range");
    }
    palette.resize(palette_count);
    for (std::uint32_t i = 0; i < palette_count; ++i) {
      const std::size_t o = pal_off + i * palette_entry;
      palette[i] = {buf[o + 2], buf[o + 1], buf[o]};
    }
  }

  const std::size_t row_bytes = ((static_cast<std::size_t>(width) * bpp + 31) / 32) * 4;
  if (pixel_offset + row_bytes * static_cast<std::size_t>(height) > buf.size()) {
    throw Error(Errc::CorruptImage, name + ": truncated BMP pixel data");
  }

  const int w = static_cast<int>(width);
  const int h = static_cast<int>(height);
  ImagePlane r(w, h), g(w, h), b(w, h);
  const std::array<int, 3> shifts{channel_shift(masks[0]), channel_shift(masks[1]),
                                  channel_shift(masks[2])};
  for (int row = 0; row < h; ++row) {
    const int y = top_down ? row : h - 1 - row;
    const std::uint8_t* src = buf.data() + pixel_offset + row_bytes * static_cast<std::size_t>(row);
    for (int x = 0; x < w; ++x) {
      std::array<std::uint8_t, 3> rgb{};
      if (bpp == 8) {
        const std::uint8_t idx = src[x];
        if (idx >= palette.size()) throw Error(Errc::CorruptImage, name + ": palette index");
        rgb = palette[idx];
      } else if (bpp == 24) {
        rgb = {src[3 * x + 2], src[3 * x + 1], src[3 * x]};
      } else {
        const std::uint32_t px = static_cast<std::uint32_t>(src[4 * x]) |
                                 (static_cast<std::uint32_t>(src[4 * x + 1]) << 8) |
                                 (static_cast<std::uint32_t>(src[4 * x + 2]) << 16) |
                                 (static_cast<std::uint32_t>(src[4 * x + 3]) << 24);
        for (int c = 0; c < 3; ++c) {
          rgb[c] = shifts[c] < 0 ? 0 : static_cast<std::uint8_t>((px & masks[c]) >> shifts[c]);
        }
      }
      r(x, y) = rgb[0];
      g(x, y) = rgb[1];
      b(x, y) = rgb[2];
    }
  }
  return RgbImage(std::move(r), std::move(g), std::move(b));
}

RgbImage decode_png(const fs::path& path) {
  png_image image{};
  image.version = PNG_IMAGE_VERSION;
  if (png_image_begin_read_from_file(&image, path.c_str()) == 0) {
    const std::string msg = image.message;
    png_image_free(&image);
    throw Error(Errc::CorruptImage, path.string() + ": " + msg);
  }
  image.format = PNG_FORMAT_RGB;
  std::vector<png_byte> pixels(PNG_IMAGE_SIZE(image));
  if (png_image_finish_read(&image, nullptr, pixels.data(), 0, nullptr) == 0) {
    const std::string msg = image.message;
    png_image_free(&image);
    throw Error(Errc::CorruptImage, path.string() + ": " + msg);
  }
  const int w = static_cast<int>(image.width);
  const int h = static_cast<int>(image.height);
  ImagePlane r(w, h), g(w, h), b(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const std::size_t o = (static_cast<std::size_t>(y) * w + x) * 3;
      r(x, y) = pixels[o];
      g(x, y) = pixels[o + 1];
      b(x, y) = pixels[o + 2];
    }
  }
  return RgbImage(std::move(r), std::move(g), std::move(b));
}

std::uint8_t to_byte(double v) {
  return static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L));
}

void put_le32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>((v >> (8 * i)) & 0xffu));
}

void put_le16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v & 0xffu));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}

std::string lower_extension(const fs::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext;
}

}  // namespace

RgbImage load_image(const fs::path& path) {
  const std::vector<std::uint8_t> buf = read_file(path);
  if (buf.size() >= 2 && buf[0] == 'B' && buf[1] == 'M') {
    return decode_bmp(buf, path);
  }
  static constexpr std::array<std::uint8_t, 8> kPngMagic{0x89, 'P', 'N', 'G', 0x0d, 0x0a, 0x1a, 0x0a};
  if (buf.size() >= kPngMagic.size() && std::equal(kPngMagic.begin(), kPngMagic.end(), buf.begin())) {
    return decode_png(path);
  }
  throw Error(Errc::UnsupportedFormat, path.string() + ": not a BMP or PNG file");
}

void save_bmp(const RgbImage& image, const fs::path& path) {
  const int w = image.width();
  const int h = image.height();
  const std::uint32_t row_bytes = static_cast<std::uint32_t>((w * 3 + 3) / 4 * 4);
  const std::uint32_t data_size = row_bytes * static_cast<std::uint32_t>(h);

  std::vector<std::uint8_t> out;
  out.reserve(54 + data_size);
  out.push_back('B');
  out.push_back('M');
  put_le32(out, 54 + data_size);
  put_le32(out, 0);
  put_le32(out, 54);
  put_le32(out, 40);
  put_le32(out, static_cast<std::uint32_t>(w));
  put_le32(out, static_cast<std::uint32_t>(h));
  put_le16(out, 1);
  put_le16(out, 24);
  put_le32(out, 0);
  put_le32(out, data_size);
  put_le32(out, 2835);
  put_le32(out, 2835);
  put_le32(out, 0);
  put_le32(out, 0);
  for (int row = 0; row < h; ++row) {
    const int y = h - 1 - row;
    for (int x = 0; x < w; ++x) {
      out.push_back(to_byte(image.b(x, y)));
      out.push_back(to_byte(image.g(x, y)));
      out.push_back(to_byte(image.r(x, y)));
    }
    for (std::uint32_t pad = static_cast<std::uint32_t>(w) * 3; pad < row_bytes; ++pad) {
      out.push_back(0);
    }
  }
  std::ofstream file(path, std::ios::binary);
  file.write(reinterpret_cast<const char*>(out.data()), static_cast<std::streamsize>(out.size()));
  if (!file) throw Error(Errc::Io, "cannot write " + path.string());
}

void save_png(const RgbImage& image, const fs::path& path) {
  const int w = image.width();
  const int h = image.height();
  std::vector<png_byte> pixels(static_cast<std::size_t>(w) * h * 3);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const std::size_t o = (static_cast<std::size_t>(y) * w + x) * 3;
      pixels[o] = to_byte(image.r(x, y));
      pixels[o + 1] = to_byte(image.g(x, y));
      pixels[o + 2] = to_byte(image.b(x, y));
    }
  }
  png_image png{};
  png.version = PNG_IMAGE_VERSION;
  png.width = static_cast<png_uint_32>(w);
  png.height = static_cast<png_uint_32>(h);
  png.format = PNG_FORMAT_RGB;
  if (png_image_write_to_file(&png, path.c_str(), 0, pixels.data(), 0, nullptr) == 0) {
    const std::string msg = png.message;
    png_image_free(&png);
    throw Error(Errc::Io, "cannot write " + path.string() + ": " + msg);
  }
}

void save_image(const RgbImage& image, const fs::path& path) {
  const std::string ext = lower_extension(path);
  if (ext == ".bmp") {
    save_bmp(image, path);
  } else if (ext == ".png") {
    save_png(image, path);
  } else {
    throw Error(Errc::UnsupportedFormat, "cannot infer image format from " + path.string());
  }
}

}  // namespace rriqa
