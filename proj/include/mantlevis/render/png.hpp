#pragma once

#include "mantlevis/core/bytes.hpp"
#include "mantlevis/render/frame.hpp"

namespace mantlevis::render {

/// 8-bit RGBA PNG of a straight-alpha image.
Bytes encode_png(const Image& straight);
/// Any 8-bit PNG, expanded to RGBA. Throws BadPayload.
Image decode_png(std::span<const std::uint8_t> data);

void write_png_file(const std::string& path, const Image& straight);
Image read_png_file(const std::string& path);

}  // namespace mantlevis::render
