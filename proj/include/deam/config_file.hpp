#pragma once

#include <filesystem>
#include <vector>

#include "deam/harness.hpp"

namespace deam {

// Loads one experiment from a JSON config file. Unknown keys are rejected;
// dataset paths are resolved relative to the config file's directory.
// Schema errors raise ConfigError, unreadable files raise IoError.
ExperimentConfig load_run_config(const std::filesystem::path& path);

struct CompareConfig {
    std::vector<ExperimentConfig> runs;
    MetricSpec metric;
};

// Loads a comparison set: shared "base" experiment fields plus one optimizer
// entry per row and a metric declaration.
CompareConfig load_compare_config(const std::filesystem::path& path);

} // namespace deam
