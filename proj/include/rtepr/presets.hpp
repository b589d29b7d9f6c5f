#pragma once

#include "rtepr/config.hpp"

namespace rtepr {

// Ready-made experiment families (fig2a..fig7b; the a/b suffix selects
// SRTS/DRTS): population series over pumping parameters, spectrum series
// over exchange and relaxation, and the time-resolved surface.
std::vector<std::string> preset_names();
ExperimentConfig preset_config(const std::string& name);

} // namespace rtepr
