#include "mantlevis/service/cli.hpp"

#include <csignal>
#include <cstdlib>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "mantlevis/brush/presets.hpp"
#include "mantlevis/core/bytes.hpp"
#include "mantlevis/ingest/series.hpp"
#include "mantlevis/ingest/synthetic.hpp"
#include "mantlevis/preprocess/pipeline.hpp"
#include "mantlevis/render/png.hpp"
#include "mantlevis/service/server.hpp"

namespace mantlevis::service {

namespace {

std::vector<std::uint32_t> parse_list(const std::string& text, char sep, std::size_t count, const char* what) {
  std::vector<std::uint32_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) {
    std::size_t used = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size() || v == 0 || v > 1u << 20) {
      throw Error(ErrorCode::InvalidArgument, std::string("bad ") + what + " '" + text + "'");
    }
    out.push_back(std::uint32_t(v));
  }
  if (out.size() != count) throw Error(ErrorCode::InvalidArgument, std::string("bad ") + what + " '" + text + "'");
  return out;
}

nlohmann::json read_json(const std::string& path) {
  const std::string text = read_text_file(path);
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::BadPayload, "'" + path + "' is not valid JSON: " + e.what());
  }
}

std::string default_data_dir() {
  const char* env = std::getenv("MANTLEVIS_DATA");
  return env ? env : "";
}

Server* g_server = nullptr;

void on_signal(int) {
  if (g_server) g_server->stop();
}

}  // namespace

int run_cli(int argc, char** argv) {
  CLI::App app{"mantlevis: mantle volume preprocessing, rendering and serving"};
  app.require_subcommand(1);

  struct {
    std::string scenario{"plume"};
    std::uint64_t seed{1};
    std::string dims{"32,32,64"};
    std::size_t steps{12};
    double spacing{2.0};
    std::string out;
  } gen;
  auto* generate = app.add_subcommand("generate", "write a synthetic time series");
  generate->add_option("--scenario", gen.scenario, "plume, slab, rigid_rotation or convection_cells");
  generate->add_option("--seed", gen.seed);
  generate->add_option("--dims", gen.dims, "R,LAT,LON node counts");
  generate->add_option("--steps", gen.steps);
  generate->add_option("--spacing", gen.spacing, "Myr between steps");
  generate->add_option("--out", gen.out)->required();

  struct {
    std::string input, output;
    std::size_t levels{preprocess::kDefaultExtraLevels};
    std::size_t samples{preprocess::kDefaultSampleCap};
    std::uint64_t seed{preprocess::kDefaultSampleSeed};
  } pre;
  auto* preprocess_cmd = app.add_subcommand("preprocess", "build LOD levels, derived variables, samples and pathlines");
  preprocess_cmd->add_option("--input", pre.input)->required();
  preprocess_cmd->add_option("--output", pre.output)->required();
  preprocess_cmd->add_option("--levels", pre.levels, "coarse levels below the source");
  preprocess_cmd->add_option("--samples", pre.samples, "sample cap per step");
  preprocess_cmd->add_option("--seed", pre.seed);

  struct {
    std::string data{default_data_dir()};
    std::size_t step{0};
    std::string preset, brush, camera, tf;
    std::uint32_t passes{render::kDefaultPassBudget};
    std::string size{"512x512"};
    std::string out;
    bool no_pathlines{false};
  } ren;
  auto* render_cmd = app.add_subcommand("render", "batch still render of one step");
  render_cmd->add_option("--data", ren.data, "preprocessed directory (default $MANTLEVIS_DATA)");
  render_cmd->add_option("--step", ren.step);
  auto* preset_opt = render_cmd->add_option("--preset", ren.preset, "task preset id");
  auto* brush_opt = render_cmd->add_option("--brush", ren.brush, "brush or preset JSON file");
  preset_opt->excludes(brush_opt);
  render_cmd->add_option("--camera", ren.camera, "camera JSON file");
  render_cmd->add_option("--tf", ren.tf, "transfer function JSON file");
  render_cmd->add_option("--passes", ren.passes)->check(CLI::PositiveNumber);
  render_cmd->add_option("--size", ren.size, "WxH");
  render_cmd->add_option("--out", ren.out)->required();
  render_cmd->add_flag("--no-pathlines", ren.no_pathlines);

  struct {
    std::string data{default_data_dir()};
    std::uint16_t port{8080};
    std::string address{"127.0.0.1"};
    std::string ui;
  } srv;
  auto* serve = app.add_subcommand("serve", "start the WebSocket endpoint");
  serve->add_option("--data", srv.data, "preprocessed directory (default $MANTLEVIS_DATA)");
  serve->add_option("--port", srv.port);
  serve->add_option("--address", srv.address);
  serve->add_option("--ui", srv.ui, "static files served under /ui");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*generate) {
      const auto d = parse_list(gen.dims, ',', 3, "dims");
      ingest::SyntheticScenario sc;
      sc.kind = ingest::scenario_from_string(gen.scenario);
      sc.seed = gen.seed;
      const ShellGrid grid{d[0], d[1], d[2], kCoreMantleBoundaryKm, kEarthRadiusKm};
      ingest::save_series(gen.out, ingest::generate_synthetic(sc, grid, ingest::uniform_times(gen.steps, gen.spacing)));
      std::cout << "wrote " << gen.steps << " steps to " << gen.out << "\n";
    } else if (*preprocess_cmd) {
      preprocess::PipelineOptions opts;
      opts.extra_levels = pre.levels;
      opts.sample_cap = pre.samples;
      opts.seed = pre.seed;
      const auto report = preprocess::run_pipeline(pre.input, pre.output, opts);
      std::cout << "preprocessed " << report.steps << " steps, " << report.pathlines << " pathlines, "
                << report.samples_per_step << " samples per step\n";
    } else if (*render_cmd) {
      if (ren.data.empty()) throw Error(ErrorCode::InvalidArgument, "--data is required (or set MANTLEVIS_DATA)");
      const auto size = parse_list(ren.size, 'x', 2, "size");
      const auto ds = load_dataset(ren.data);
      render::RenderState state = default_state(*ds, size[0], size[1]);
      if (ren.step >= ds->step_count()) {
        throw Error(ErrorCode::TimeOutOfRange, "step " + std::to_string(ren.step) + " is outside [0, " +
                                                   std::to_string(ds->step_count()) + ")");
      }
      state.set_time_step(ren.step);
      std::optional<brush::TaskPreset> preset;
      if (!ren.preset.empty()) preset = brush::preset(ren.preset);
      if (!ren.brush.empty()) {
        const nlohmann::json j = read_json(ren.brush);
        if (j.is_object() && j.contains("brush")) {
          preset = brush::preset_from_json(j);
        } else {
          state.set_brush(brush::brush_from_json(j));
        }
      }
      if (preset) {
        state.set_brush(preset->brush);
        state.set_transfer_function(transfer_function_for(*ds, preset->color_variable));
      }
      check_brush_variables(*ds, state.brush());
      if (!ren.tf.empty()) state.set_transfer_function(render::transfer_function_from_json(read_json(ren.tf)));
      if (!ren.camera.empty()) {
        render::Camera cam = render::camera_from_json(read_json(ren.camera), state.camera());
        cam.width = size[0];
        cam.height = size[1];
        state.set_camera(cam);
      }
      state.set_pass_budget(ren.passes);
      const render::FrameSlot frame = render::render_progressive(state, (*ds->series)[ren.step]);
      const render::Image image =
          compose_frame(*ds, state, brush::BrushSet(), !ren.no_pathlines, frame.display, frame.depth);
      render::write_png_file(ren.out, image);
      std::size_t covered = 0;
      for (std::size_t i = 0; i < image.pixel_count(); ++i) covered += image.rgba[4 * i + 3] > 0;
      std::cout << "wrote " << ren.out << " (" << image.width << "x" << image.height << ", " << frame.passes
                << " passes at level " << frame.level << ", " << covered << " covered pixels)\n";
    } else if (*serve) {
      ServerOptions opts;
      opts.address = srv.address;
      opts.port = srv.port;
      opts.data_dir = srv.data;
      opts.ui_dir = srv.ui;
      Server server(opts);
      g_server = &server;
      std::signal(SIGINT, on_signal);
      std::signal(SIGTERM, on_signal);
      std::cout << "listening on ws://" << srv.address << ":" << server.port() << "/" << std::endl;
      server.run();
      g_server = nullptr;
    }
  } catch (const std::exception& e) {
    std::cerr << "mantlevis: error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace mantlevis::service
