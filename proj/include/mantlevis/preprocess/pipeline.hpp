#pragma once

#include <cstdint>
#include <string>

#include "mantlevis/pathlines/pathline.hpp"
#include "mantlevis/preprocess/lod.hpp"
#include "mantlevis/preprocess/samples.hpp"

namespace mantlevis::preprocess {

struct PipelineOptions {
  std::size_t extra_levels{kDefaultExtraLevels};
  std::size_t sample_cap{kDefaultSampleCap};
  std::uint64_t seed{kDefaultSampleSeed};
  std::size_t pathline_window{pathlines::kDefaultWindowSteps};
  int pathline_substeps{pathlines::kDefaultSubsteps};
  std::string seed_variable{"temp_anomaly"};
};

struct PipelineReport {
  std::size_t steps{0};
  std::size_t pathlines{0};
  std::size_t samples_per_step{0};
};

/// Output file names inside a preprocessed dataset directory.
inline constexpr const char* kPathlinesFile = "pathlines.mpath";
std::string level_filename(const std::string& step_file, std::size_t level);
std::string samples_filename(const std::string& step_file);

/// Reads the series in `input_dir` and writes, per step, level 0 with derived
/// variables, the coarse levels (".L1", ".L2"), the MSAMP table (".msamp"),
/// plus one MPATH file for all pathlines and the series index.
/// Throws Io when the input has no readable series.
PipelineReport run_pipeline(const std::string& input_dir, const std::string& output_dir,
                            const PipelineOptions& options = {});

}  // namespace mantlevis::preprocess
