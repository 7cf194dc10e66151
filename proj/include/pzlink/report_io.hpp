#pragma once

// Serialization of experiment results: report.json for scalar metrics
// (with units, config echo, and tool version), one CSV per series, and
// shapes.csv for node-position snapshots.

#include <string>

#include "pzlink/config.hpp"
#include "pzlink/harness.hpp"

namespace pzlink {

/// Writes report.json, <series>.csv per series, and shapes.csv (when the
/// report carries snapshots) into `directory`, creating it if needed.
/// Returns the list of files written (relative to `directory`).
std::vector<std::string> write_outputs(const ExperimentReport& report,
                                       const RunConfig& config,
                                       const std::string& directory);

}  // namespace pzlink
