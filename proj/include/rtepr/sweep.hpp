#pragma once

#include "rtepr/output.hpp"

namespace rtepr {

// Runs the configured experiment and writes its output files into
// config.out_dir. Returns the paths written. Work items (sweep values,
// field points) execute on config.workers threads; the output bytes do not
// depend on the worker count.
std::vector<std::string> run_experiment(const ExperimentConfig& config);

} // namespace rtepr
