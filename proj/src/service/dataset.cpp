#include "mantlevis/service/dataset.hpp"

#include <algorithm>
#include <filesystem>

#include "mantlevis/core/bytes.hpp"
#include "mantlevis/ingest/mvol.hpp"
#include "mantlevis/ingest/series.hpp"
#include "mantlevis/pathlines/mpath.hpp"
#include "mantlevis/preprocess/pipeline.hpp"
#include "mantlevis/render/pathline_overlay.hpp"

namespace mantlevis::service {

namespace fs = std::filesystem;

std::vector<std::string> Dataset::variable_names() const {
  std::vector<std::string> names;
  for (const auto& [name, range] : ranges) names.push_back(name);
  return names;
}

std::shared_ptr<const Dataset> load_dataset(const std::string& directory) {
  const fs::path dir(directory);
  if (!fs::exists(dir / ingest::kSeriesIndexName)) {
    throw Error(ErrorCode::Io, "'" + directory + "' is not a preprocessed data directory");
  }
  const auto entries = ingest::read_series_index(directory);
  if (entries.empty()) throw Error(ErrorCode::Io, "'" + directory + "' lists no time steps");

  auto ds = std::make_shared<Dataset>();
  ds->directory = directory;
  auto series = std::make_shared<frameserver::Series>();
  for (const auto& e : entries) {
    std::vector<VolumeTimeStep> levels;
    for (std::size_t l = 0;; ++l) {
      const fs::path p = dir / preprocess::level_filename(e.filename, l);
      if (!fs::exists(p)) break;
      levels.push_back(ingest::read_volume_file(p.string()));
    }
    if (levels.empty()) throw Error(ErrorCode::Io, "missing volume '" + (dir / e.filename).string() + "'");
    series->emplace_back(std::move(levels));
    const fs::path samples = dir / preprocess::samples_filename(e.filename);
    ds->samples_csv.push_back(fs::exists(samples) ? read_text_file(samples.string()) : std::string());
  }
  for (const auto& pyramid : *series) {
    const VolumeTimeStep& v = pyramid.finest();
    for (const std::string& name : v.variable_names()) {
      const ScalarField* f = v.find_field(name);
      auto [it, inserted] = ds->ranges.try_emplace(name, f->min(), f->max());
      if (!inserted) {
        it->second.first = std::min<double>(it->second.first, f->min());
        it->second.second = std::max<double>(it->second.second, f->max());
      }
    }
  }
  const ShellGrid& grid = series->front().finest().grid();
  for (const char* axis : {"x", "y", "z"}) ds->ranges[axis] = {-grid.r_outer, grid.r_outer};
  ds->ranges.try_emplace("depth", 0.0, grid.thickness());
  const fs::path lines = dir / preprocess::kPathlinesFile;
  if (fs::exists(lines)) ds->pathlines = pathlines::read_pathlines_file(lines.string());
  ds->series = std::move(series);
  return ds;
}

void check_brush_variables(const Dataset& dataset, const brush::BrushSet& brush) {
  for (const auto& [name, iv] : brush.entries()) {
    if (!dataset.has_variable(name)) throw Error(ErrorCode::UnknownVariable, "unknown variable '" + name + "'");
  }
}

void check_pathline_brush_variables(const Dataset& dataset, const brush::BrushSet& brush) {
  check_brush_variables(dataset, brush);
  if (dataset.pathlines.empty()) return;
  const auto& names = dataset.pathlines.front().scalar_names;
  for (const auto& [name, iv] : brush.entries()) {
    if (brush::is_spatial_axis(name) || std::find(names.begin(), names.end(), name) != names.end()) {
      continue;
    }
    throw Error(ErrorCode::UnknownVariable, "pathlines carry no '" + name + "'");
  }
}

render::TransferFunction transfer_function_for(const Dataset& dataset, const std::string& variable) {
  const auto it = dataset.ranges.find(variable);
  if (it == dataset.ranges.end()) throw Error(ErrorCode::UnknownVariable, "unknown variable '" + variable + "'");
  return render::diverging_transfer_function(variable, it->second.first, it->second.second);
}

render::RenderState default_state(const Dataset& dataset, std::uint32_t width, std::uint32_t height) {
  std::string variable = "temp_anomaly";
  if (!dataset.has_variable(variable)) variable = dataset.variable_names().front();
  return render::RenderState(transfer_function_for(dataset, variable),
                             render::default_camera(dataset.grid().r_outer, width, height));
}

std::vector<std::size_t> visible_pathlines(const Dataset& dataset, const render::RenderState& state,
                                           const brush::BrushSet& pathline_brush) {
  if (dataset.pathlines.empty()) return {};
  // Seeds carry the scalars only; velocity components restrict the volume
  // but not the lines.
  const auto& names = dataset.pathlines.front().scalar_names;
  std::map<std::string, brush::Interval> kept;
  for (const auto& [name, iv] : state.brush().entries()) {
    if (brush::is_spatial_axis(name) || std::find(names.begin(), names.end(), name) != names.end()) {
      kept.emplace(name, iv);
    }
  }
  return brush::filter_pathlines(dataset.pathlines, brush::BrushSet(std::move(kept)), pathline_brush,
                                 state.time_step(), dataset.grid().r_outer);
}

render::Image compose_frame(const Dataset& dataset, const render::RenderState& state,
                            const brush::BrushSet& pathline_brush, bool show_pathlines,
                            render::Image premultiplied, std::span<const float> depth) {
  if (show_pathlines && !dataset.pathlines.empty()) {
    const auto visible = visible_pathlines(dataset, state, pathline_brush);
    const render::Camera& cam = state.camera();
    if (cam.width == premultiplied.width && cam.height == premultiplied.height) {
      render::composite_overlay(premultiplied,
                                render::render_pathlines(dataset.pathlines, visible, cam, depth));
    }
  }
  return render::to_straight_alpha(premultiplied);
}

}  // namespace mantlevis::service
