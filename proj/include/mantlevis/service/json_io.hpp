#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "mantlevis/core/bytes.hpp"
#include "mantlevis/render/render_state.hpp"

namespace mantlevis::service {

/// {"time_step", "brush", "transfer_function", "camera", "passes", "generation"}
nlohmann::json to_json(const render::RenderState& state);

inline constexpr std::size_t kFrameHeaderSize = 16;

/// "MFRM" then width, height and the low 32 bits of generation, all u32 LE.
Bytes frame_header(std::uint32_t width, std::uint32_t height, std::uint64_t generation);

struct FrameHeader {
  std::uint32_t width;
  std::uint32_t height;
  std::uint32_t generation;
};

/// Throws BadPayload when the magic is wrong or fewer than 16 bytes are given.
FrameHeader parse_frame_header(std::span<const std::uint8_t> message);

/// {"type", "id", "payload"}; id is echoed verbatim (null when absent).
nlohmann::json envelope(const std::string& type, const nlohmann::json& id, nlohmann::json payload);

}  // namespace mantlevis::service
