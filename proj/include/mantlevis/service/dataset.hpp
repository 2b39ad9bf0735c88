#pragma once

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "mantlevis/brush/brush.hpp"
#include "mantlevis/frameserver/frame_server.hpp"
#include "mantlevis/pathlines/pathline.hpp"

namespace mantlevis::service {

/// A preprocessed directory held in memory: one pyramid per step, the MSAMP
/// text per step and every pathline.
struct Dataset {
  std::string directory;
  std::shared_ptr<const frameserver::Series> series;
  std::vector<std::string> samples_csv;
  std::vector<pathlines::Pathline> pathlines;
  /// Stored variables plus x, y, z, with [min, max] over every step.
  std::map<std::string, std::pair<double, double>> ranges;

  std::size_t step_count() const { return series->size(); }
  const ShellGrid& grid() const { return (*series)[0].finest().grid(); }
  bool has_variable(const std::string& name) const { return ranges.count(name) != 0; }
  std::vector<std::string> variable_names() const;
};

/// Throws Io naming the directory when it holds no preprocessed series.
std::shared_ptr<const Dataset> load_dataset(const std::string& directory);

/// Throws UnknownVariable for the first brush entry the dataset lacks.
void check_brush_variables(const Dataset& dataset, const brush::BrushSet& brush);
/// Also rejects variables the stored pathlines carry no value for.
void check_pathline_brush_variables(const Dataset& dataset, const brush::BrushSet& brush);

/// Diverging map on `variable` over its dataset range. Throws UnknownVariable.
render::TransferFunction transfer_function_for(const Dataset& dataset, const std::string& variable);

/// The initial state of a session or batch render.
render::RenderState default_state(const Dataset& dataset, std::uint32_t width, std::uint32_t height);

/// Straight-alpha frame: the premultiplied volume image with the lines
/// visible at the state's step drawn on top, depth-tested against `depth`.
render::Image compose_frame(const Dataset& dataset, const render::RenderState& state,
                            const brush::BrushSet& pathline_brush, bool show_pathlines,
                            render::Image premultiplied, std::span<const float> depth);

/// Indices of the lines shown at the state's step.
std::vector<std::size_t> visible_pathlines(const Dataset& dataset, const render::RenderState& state,
                                           const brush::BrushSet& pathline_brush);

}  // namespace mantlevis::service
