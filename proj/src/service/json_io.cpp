#include "mantlevis/service/json_io.hpp"

#include <cstring>

#include "mantlevis/core/error.hpp"

namespace mantlevis::service {

nlohmann::json to_json(const render::RenderState& s) {
  return {{"time_step", s.time_step()},
          {"brush", brush::to_json(s.brush())},
          {"transfer_function", render::to_json(s.transfer_function())},
          {"camera", render::to_json(s.camera())},
          {"passes", s.pass_budget()},
          {"generation", s.generation()}};
}

Bytes frame_header(std::uint32_t width, std::uint32_t height, std::uint64_t generation) {
  ByteWriter w;
  w.put_raw("MFRM");
  w.put<std::uint32_t>(width);
  w.put<std::uint32_t>(height);
  w.put<std::uint32_t>(std::uint32_t(generation & 0xFFFFFFFFu));
  return w.take();
}

FrameHeader parse_frame_header(std::span<const std::uint8_t> message) {
  if (message.size() < kFrameHeaderSize || std::memcmp(message.data(), "MFRM", 4) != 0) {
    throw Error(ErrorCode::BadPayload, "not a frame message");
  }
  ByteReader r(message.subspan(4, 12));
  FrameHeader h{};
  h.width = r.get<std::uint32_t>();
  h.height = r.get<std::uint32_t>();
  h.generation = r.get<std::uint32_t>();
  return h;
}

nlohmann::json envelope(const std::string& type, const nlohmann::json& id, nlohmann::json payload) {
  return {{"type", type}, {"id", id}, {"payload", std::move(payload)}};
}

}  // namespace mantlevis::service
