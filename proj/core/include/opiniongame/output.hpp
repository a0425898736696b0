#pragma once

#include <span>
#include <string>

#include "opiniongame/simulator.hpp"

namespace opiniongame {

/// Comma-separated time series: t, m_F, m_L^1..M, E_F, E_L^1..M.
/// Floating point written with 17 significant digits so values round-trip
/// bit-faithfully.
void write_timeseries(std::span<const MomentState> moments,
                      const std::string& path);

/// Columns: bin_center, density.
void write_histogram(const Histogram& hist, const std::string& path);

/// Row-major grid with a header line giving both axes.
void write_grid(const Grid2D& grid, const std::string& path);

/// Tabulated density: columns w, density (for plotting against histograms).
void write_density_table(std::span<const double> grid_w,
                         std::span<const double> values,
                         const std::string& path);

}  // namespace opiniongame
