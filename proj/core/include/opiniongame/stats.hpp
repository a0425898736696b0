#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace opiniongame {

/// Normalized 1-D histogram: density values per bin, integrating to 1 over
/// [lo, hi].
struct Histogram {
    double lo;
    double hi;
    std::vector<double> density;
    std::size_t samples = 0;

    double bin_width() const {
        return (hi - lo) / static_cast<double>(density.size());
    }
    double bin_center(std::size_t i) const {
        return lo + (static_cast<double>(i) + 0.5) * bin_width();
    }
};

/// Values outside [lo, hi] are clamped into the edge bins.
Histogram histogram(std::span<const double> values, std::size_t bins,
                    double lo, double hi);

/// Row-major 2-D density grid (x = knowledge rows, w = opinion columns),
/// normalized to integrate to 1 over the rectangle.
struct Grid2D {
    double x_lo, x_hi;  // knowledge axis
    double w_lo, w_hi;  // opinion axis
    std::size_t nx, nw;
    std::vector<double> density;  // nx * nw

    double& at(std::size_t ix, std::size_t iw) { return density[ix * nw + iw]; }
    double at(std::size_t ix, std::size_t iw) const {
        return density[ix * nw + iw];
    }
};

Grid2D density_grid(std::span<const double> opinions,
                    std::span<const double> knowledge, std::size_t nx,
                    std::size_t nw, double x_max);

struct SampleMoments {
    double mean;
    double second;  // raw second moment
};

SampleMoments sample_moments(std::span<const double> values);

}  // namespace opiniongame
