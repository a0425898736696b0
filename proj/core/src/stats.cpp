#include "opiniongame/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace opiniongame {

Histogram histogram(std::span<const double> values, std::size_t bins,
                    double lo, double hi) {
    if (bins == 0 || hi <= lo) throw std::invalid_argument("bad histogram axes");
    Histogram h{lo, hi, std::vector<double>(bins, 0.0), values.size()};
    if (values.empty()) return h;
    const double width = h.bin_width();
    for (double v : values) {
        auto i = static_cast<std::ptrdiff_t>((v - lo) / width);
        i = std::clamp<std::ptrdiff_t>(i, 0, static_cast<std::ptrdiff_t>(bins) - 1);
        h.density[static_cast<std::size_t>(i)] += 1.0;
    }
    const double norm = 1.0 / (static_cast<double>(values.size()) * width);
    for (double& d : h.density) d *= norm;
    return h;
}

Grid2D density_grid(std::span<const double> opinions,
                    std::span<const double> knowledge, std::size_t nx,
                    std::size_t nw, double x_max) {
    if (opinions.size() != knowledge.size()) {
        throw std::invalid_argument("opinion/knowledge size mismatch");
    }
    if (nx == 0 || nw == 0 || x_max <= 0.0) {
        throw std::invalid_argument("bad grid axes");
    }
    Grid2D g{0.0, x_max, -1.0, 1.0, nx, nw,
             std::vector<double>(nx * nw, 0.0)};
    const double dx = x_max / static_cast<double>(nx);
    const double dw = 2.0 / static_cast<double>(nw);
    for (std::size_t i = 0; i < opinions.size(); ++i) {
        // knowledge overflow lands in the last bin
        auto ix = static_cast<std::ptrdiff_t>(knowledge[i] / dx);
        ix = std::clamp<std::ptrdiff_t>(ix, 0, static_cast<std::ptrdiff_t>(nx) - 1);
        auto iw = static_cast<std::ptrdiff_t>((opinions[i] + 1.0) / dw);
        iw = std::clamp<std::ptrdiff_t>(iw, 0, static_cast<std::ptrdiff_t>(nw) - 1);
        g.at(static_cast<std::size_t>(ix), static_cast<std::size_t>(iw)) += 1.0;
    }
    if (!opinions.empty()) {
        const double norm =
            1.0 / (static_cast<double>(opinions.size()) * dx * dw);
        for (double& d : g.density) d *= norm;
    }
    return g;
}

SampleMoments sample_moments(std::span<const double> values) {
    if (values.empty()) throw std::invalid_argument("empty sample");
    double m = 0.0, s = 0.0;
    for (double v : values) {
        m += v;
        s += v * v;
    }
    const auto n = static_cast<double>(values.size());
    return {m / n, s / n};
}

}  // namespace opiniongame
