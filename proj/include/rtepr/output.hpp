#pragma once

#include <string>
#include <vector>

#include "rtepr/config.hpp"

namespace rtepr {

// One output series: a swept parameter value (or a single unnamed run).
struct SeriesTag {
    std::string parameter; // empty for single runs
    double value = 0.0;
};

struct PopulationSeries {
    SeriesTag tag;
    Trajectory trajectory;
};

struct SpectrumSeries {
    SeriesTag tag;
    SpectrumResult result;
};

// Metadata lines (without the leading '#') embedded in every output file:
// effective config, unit conversion constant, response sign convention.
std::vector<std::string> metadata_lines(const ExperimentConfig& config, const UnitSystem& units);

std::string format_number(double v);

void write_populations(const std::string& path, const ExperimentConfig& config, const UnitSystem& units,
                       const std::vector<PopulationSeries>& series);
void write_spectrum(const std::string& path, const ExperimentConfig& config, const UnitSystem& units,
                    const std::vector<SpectrumSeries>& series);
void write_trepr(const std::string& path, const ExperimentConfig& config, const UnitSystem& units,
                 const TreprSurface& surface);

} // namespace rtepr
