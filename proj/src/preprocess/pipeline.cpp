#include "mantlevis/preprocess/pipeline.hpp"

#include <filesystem>

#include "mantlevis/core/bytes.hpp"
#include "mantlevis/ingest/mvol.hpp"
#include "mantlevis/ingest/series.hpp"
#include "mantlevis/pathlines/mpath.hpp"
#include "mantlevis/preprocess/derived.hpp"

namespace mantlevis::preprocess {

namespace fs = std::filesystem;

std::string level_filename(const std::string& step_file, std::size_t level) {
  return level == 0 ? step_file : step_file + ".L" + std::to_string(level);
}

std::string samples_filename(const std::string& step_file) { return step_file + ".msamp"; }

PipelineReport run_pipeline(const std::string& input_dir, const std::string& output_dir,
                            const PipelineOptions& options) {
  if (!fs::is_directory(input_dir)) {
    throw Error(ErrorCode::Io, "input directory '" + input_dir + "' does not exist");
  }
  if (!fs::exists(fs::path(input_dir) / ingest::kSeriesIndexName)) {
    throw Error(ErrorCode::Io, "input directory '" + input_dir + "' has no " +
                                   ingest::kSeriesIndexName);
  }
  const auto entries = ingest::read_series_index(input_dir);
  if (entries.empty()) {
    throw Error(ErrorCode::Io, "input directory '" + input_dir + "' lists no time steps");
  }
  fs::create_directories(output_dir);

  std::vector<VolumeTimeStep> series;
  std::vector<ingest::SeriesEntry> out_entries;
  PipelineReport report;
  for (std::size_t s = 0; s < entries.size(); ++s) {
    VolumeTimeStep step = add_derived_variables(
        ingest::read_volume_file((fs::path(input_dir) / entries[s].filename).string()));
    const std::string name = ingest::step_filename(s);
    const LodPyramid pyramid = build_lod(step, options.extra_levels);
    for (std::size_t l = 0; l < pyramid.level_count(); ++l) {
      ingest::write_volume_file((fs::path(output_dir) / level_filename(name, l)).string(),
                                pyramid.level(l));
    }
    const SampleTable table = extract_samples(step, options.sample_cap, options.seed + s);
    write_text_file((fs::path(output_dir) / samples_filename(name)).string(), format_msamp(table));
    report.samples_per_step = table.rows();
    out_entries.push_back({step.time(), name});
    series.push_back(std::move(step));
  }
  ingest::write_series_index(output_dir, out_entries);

  std::vector<pathlines::Pathline> lines;
  if (series.front().has_scalar(options.seed_variable) && series.front().velocity()) {
    lines = pathlines::generate_pathlines(series, options.seed_variable, options.pathline_window,
                                          options.pathline_substeps);
  }
  pathlines::write_pathlines_file((fs::path(output_dir) / kPathlinesFile).string(), lines);

  report.steps = series.size();
  report.pathlines = lines.size();
  return report;
}

}  // namespace mantlevis::preprocess
