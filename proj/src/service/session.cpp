#include "mantlevis/service/session.hpp"

#include "mantlevis/brush/presets.hpp"
#include "mantlevis/render/png.hpp"

namespace mantlevis::service {

namespace {

const nlohmann::json& field(const nlohmann::json& payload, const char* key) {
  if (!payload.is_object() || !payload.contains(key)) {
    throw Error(ErrorCode::BadPayload, std::string("payload needs '") + key + "'");
  }
  return payload[key];
}

std::size_t unsigned_field(const nlohmann::json& payload, const char* key) {
  const auto& v = field(payload, key);
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    throw Error(ErrorCode::BadPayload, std::string("'") + key + "' must be a non-negative integer");
  }
  return v.get<std::size_t>();
}

}  // namespace

Session::Session(SessionOptions options) : options_(options) {}

Session::~Session() = default;

const render::RenderState& Session::state() const {
  if (!state_) throw Error(ErrorCode::NoDatasetLoaded, "no dataset loaded");
  return *state_;
}

const Dataset& Session::require_dataset() const {
  if (!dataset_) throw Error(ErrorCode::NoDatasetLoaded, "no dataset loaded");
  return *dataset_;
}

void Session::bind(std::shared_ptr<const Dataset> dataset) {
  server_.reset();
  dataset_ = std::move(dataset);
  state_ = default_state(*dataset_, options_.width, options_.height);
  pathline_brush_ = brush::BrushSet();
  server_ = std::make_unique<frameserver::FrameServer>(dataset_->series, options_.frameserver);
  submit();
}

std::uint64_t Session::submit() { return server_->submit_state(*state_); }

std::vector<Reply> Session::handle(const std::string& text) {
  nlohmann::json msg;
  try {
    msg = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    return {{envelope("error", nullptr,
                      {{"code", std::string(to_string(ErrorCode::BadPayload))}, {"message", std::string("malformed JSON: ") + e.what()}}),
             std::nullopt}};
  }
  return handle_message(msg);
}

std::vector<Reply> Session::handle_message(const nlohmann::json& msg) {
  const nlohmann::json id = msg.is_object() && msg.contains("id") ? msg["id"] : nlohmann::json();
  std::vector<Reply> extra;
  try {
    if (!msg.is_object() || !msg.contains("type") || !msg["type"].is_string()) {
      throw Error(ErrorCode::BadPayload, "message needs a string 'type'");
    }
    const nlohmann::json payload = msg.contains("payload") ? msg["payload"] : nlohmann::json::object();
    std::string reply_type = "ack";
    nlohmann::json body = dispatch(msg["type"].get<std::string>(), payload, extra, reply_type);
    std::vector<Reply> out{{envelope(reply_type, id, std::move(body)), std::nullopt}};
    for (auto& r : extra) out.push_back(std::move(r));
    return out;
  } catch (const Error& e) {
    return {{envelope("error", id, {{"code", std::string(to_string(e.code()))}, {"message", e.what()}}), std::nullopt}};
  } catch (const nlohmann::json::exception& e) {
    return {{envelope("error", id, {{"code", std::string(to_string(ErrorCode::BadPayload))}, {"message", e.what()}}),
             std::nullopt}};
  } catch (const std::exception& e) {
    return {{envelope("error", id, {{"code", std::string(to_string(ErrorCode::Io))}, {"message", e.what()}}), std::nullopt}};
  }
}

nlohmann::json Session::dispatch(const std::string& type, const nlohmann::json& payload,
                                 std::vector<Reply>& extra, std::string& reply_type) {
  if (type == "load_dataset") {
    const auto& path = field(payload, "path");
    if (!path.is_string()) throw Error(ErrorCode::BadPayload, "'path' must be a string");
    bind(load_dataset(path.get<std::string>()));
    return {{"generation", state_->generation()}, {"steps", dataset_->step_count()}};
  }
  if (type == "echo") {
    reply_type = "echo";
    nlohmann::json out = nlohmann::json::object();
    if (payload.contains("brush")) out["brush"] = brush::to_json(brush::brush_from_json(payload["brush"]));
    if (payload.contains("transfer_function")) {
      out["transfer_function"] = render::to_json(render::transfer_function_from_json(payload["transfer_function"]));
    }
    if (payload.contains("camera")) out["camera"] = render::to_json(render::camera_from_json(payload["camera"]));
    return out;
  }
  const bool known = type == "set_brush" || type == "set_transfer_function" || type == "set_camera" ||
                     type == "set_timestep" || type == "set_pathline_brush" || type == "apply_preset" ||
                     type == "request_frame" || type == "get_samples" || type == "get_variables" ||
                     type == "get_pathline_count" || type == "get_state";
  if (!known) throw Error(ErrorCode::UnknownType, "unknown message type '" + type + "'");
  const Dataset& ds = require_dataset();

  if (type == "set_brush") {
    brush::BrushSet b = brush::brush_from_json(payload);
    check_brush_variables(ds, b);
    state_->set_brush(std::move(b));
    return {{"generation", submit()}};
  }
  if (type == "set_transfer_function") {
    render::TransferFunction tf = render::transfer_function_from_json(payload);
    if (!ds.has_variable(tf.variable())) {
      throw Error(ErrorCode::UnknownVariable, "unknown variable '" + tf.variable() + "'");
    }
    state_->set_transfer_function(std::move(tf));
    return {{"generation", submit()}};
  }
  if (type == "set_camera") {
    state_->set_camera(render::camera_from_json(payload, state_->camera()));
    return {{"generation", submit()}};
  }
  if (type == "set_timestep") {
    const std::size_t step = unsigned_field(payload, "step");
    if (step >= ds.step_count()) {
      throw Error(ErrorCode::TimeOutOfRange, "step " + std::to_string(step) + " is outside [0, " +
                                                 std::to_string(ds.step_count()) + ")");
    }
    state_->set_time_step(step);
    return {{"generation", submit()}};
  }
  if (type == "set_pathline_brush") {
    // Either a bare brush object or {"brush": {...}, "show": bool}; "show" alone toggles the lines.
    nlohmann::json entries = payload;
    std::optional<bool> show;
    if (entries.is_object() && entries.contains("show")) {
      if (!entries["show"].is_boolean()) throw Error(ErrorCode::BadPayload, "'show' must be a boolean");
      show = entries["show"].get<bool>();
      entries.erase("show");
    }
    const bool show_only = show && entries.empty();
    if (entries.is_object() && entries.contains("brush")) entries = entries["brush"];
    if (!show_only) {
      brush::BrushSet b = brush::brush_from_json(entries);
      check_pathline_brush_variables(ds, b);
      pathline_brush_ = std::move(b);
    }
    if (show) show_pathlines_ = *show;
    return {{"generation", pathline_brush_.generation()},
            {"count", visible_pathlines(ds, *state_, pathline_brush_).size()},
            {"show", show_pathlines_}};
  }
  if (type == "apply_preset") {
    const auto& name = field(payload, "name");
    if (!name.is_string()) throw Error(ErrorCode::BadPayload, "'name' must be a string");
    const brush::TaskPreset p = brush::preset(name.get<std::string>());
    check_brush_variables(ds, p.brush);
    render::TransferFunction tf = transfer_function_for(ds, p.color_variable);
    state_->set_brush(p.brush);
    state_->set_transfer_function(std::move(tf));
    return {{"generation", submit()}, {"preset", brush::to_json(p)}};
  }
  if (type == "get_state") {
    reply_type = "state";
    nlohmann::json s = to_json(*state_);
    s["pathline_brush"] = brush::to_json(pathline_brush_);
    s["show_pathlines"] = show_pathlines_;
    return s;
  }
  if (type == "get_variables") {
    reply_type = "variables";
    nlohmann::json ranges = nlohmann::json::object();
    for (const auto& [name, r] : ds.ranges) ranges[name] = {r.first, r.second};
    return {{"names", ds.variable_names()}, {"ranges", ranges}};
  }
  if (type == "get_samples") {
    reply_type = "samples";
    const std::size_t step = payload.is_object() && payload.contains("step") ? unsigned_field(payload, "step")
                                                                             : state_->time_step();
    if (step >= ds.step_count()) throw Error(ErrorCode::TimeOutOfRange, "step " + std::to_string(step) + " is out of range");
    return {{"step", step}, {"csv", ds.samples_csv[step]}};
  }
  if (type == "get_pathline_count") {
    return {{"generation", pathline_brush_.generation()},
            {"count", visible_pathlines(ds, *state_, pathline_brush_).size()}};
  }

  // request_frame
  reply_type = "frame";
  const render::Camera& cam = state_->camera();
  if (payload.is_object() && payload.contains("min_passes")) {
    const auto passes = std::uint32_t(unsigned_field(payload, "min_passes"));
    auto timeout = options_.max_frame_wait;
    if (payload.contains("timeout_ms")) {
      timeout = std::min(timeout, std::chrono::milliseconds(unsigned_field(payload, "timeout_ms")));
    }
    server_->wait_for(state_->generation(), passes, timeout);
  }
  const frameserver::WarpResult warp = server_->get_display_frame({cam});
  const render::Image image =
      compose_frame(ds, *state_, pathline_brush_, show_pathlines_, warp.image, warp.depth);
  Bytes body = frame_header(image.width, image.height, warp.generation);
  const Bytes png = render::encode_png(image);
  body.insert(body.end(), png.begin(), png.end());
  extra.push_back({nlohmann::json(), std::move(body)});
  return {{"width", image.width},
          {"height", image.height},
          {"generation", warp.generation},
          {"passes", warp.passes},
          {"valid", warp.valid_count()}};
}

}  // namespace mantlevis::service
