#include "mantlevis/render/png.hpp"

#include <png.h>

#include "mantlevis/core/error.hpp"

namespace mantlevis::render {

Bytes encode_png(const Image& img) {
  if (img.rgba.size() != img.pixel_count() * 4 || img.width == 0 || img.height == 0) {
    throw Error(ErrorCode::InvalidArgument, "image buffer does not match its size");
  }
  png_image desc{};
  desc.version = PNG_IMAGE_VERSION;
  desc.width = img.width;
  desc.height = img.height;
  desc.format = PNG_FORMAT_RGBA;
  png_alloc_size_t size = 0;
  if (!png_image_write_to_memory(&desc, nullptr, &size, 0, img.rgba.data(), 0, nullptr)) {
    throw Error(ErrorCode::Io, std::string("png: ") + desc.message);
  }
  Bytes out(size);
  if (!png_image_write_to_memory(&desc, out.data(), &size, 0, img.rgba.data(), 0, nullptr)) {
    throw Error(ErrorCode::Io, std::string("png: ") + desc.message);
  }
  out.resize(size);
  return out;
}

Image decode_png(std::span<const std::uint8_t> data) {
  png_image desc{};
  desc.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_memory(&desc, data.data(), data.size())) {
    throw Error(ErrorCode::BadPayload, std::string("png: ") + desc.message);
  }
  desc.format = PNG_FORMAT_RGBA;
  Image img{desc.width, desc.height, {}};
  img.rgba.resize(PNG_IMAGE_SIZE(desc));
  if (!png_image_finish_read(&desc, nullptr, img.rgba.data(), 0, nullptr)) {
    png_image_free(&desc);
    throw Error(ErrorCode::BadPayload, std::string("png: ") + desc.message);
  }
  return img;
}

void write_png_file(const std::string& path, const Image& straight) { write_file(path, encode_png(straight)); }

Image read_png_file(const std::string& path) {
  const Bytes data = read_file(path);
  return decode_png(data);
}

}  // namespace mantlevis::render
