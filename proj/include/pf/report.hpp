#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "pf/ablation.hpp"
#include "pf/analysis.hpp"

namespace pf {

/// Writes `tables/*.csv`, `plots/*.json` and `report.md` under `out_dir`.
///
/// Output is a pure function of the inputs: numbers use fixed formatting and
/// nothing time-dependent is written. `ablation` may be null or empty, in
/// which case only the analysis sections appear. Returns the written paths,
/// relative to `out_dir`. Throws IoError when a file cannot be written.
std::vector<std::string> emit_report(const std::filesystem::path& out_dir, const AnalysisResults& analysis,
                                     const AblationReport* ablation);

/// Writes `content` to `path` byte for byte, creating parent directories.
void write_text_file(const std::filesystem::path& path, const std::string& content);

}  // namespace pf
