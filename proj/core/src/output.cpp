#include "opiniongame/output.hpp"

#include <fstream>
#include <stdexcept>

namespace opiniongame {

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write output file: " + path);
    out.precision(17);
    return out;
}

}  // namespace

void write_timeseries(std::span<const MomentState> moments,
                      const std::string& path) {
    auto out = open_out(path);
    const std::size_t m = moments.empty() ? 0 : moments.front().m_l.size();
    out << "t,m_F";
    for (std::size_t k = 1; k <= m; ++k) out << ",m_L" << k;
    out << ",E_F";
    for (std::size_t k = 1; k <= m; ++k) out << ",E_L" << k;
    out << "\n";
    for (const auto& s : moments) {
        out << s.t << "," << s.m_f;
        for (double v : s.m_l) out << "," << v;
        out << "," << s.e_f;
        for (double v : s.e_l) out << "," << v;
        out << "\n";
    }
}

void write_histogram(const Histogram& hist, const std::string& path) {
    auto out = open_out(path);
    out << "bin_center,density\n";
    for (std::size_t i = 0; i < hist.density.size(); ++i) {
        out << hist.bin_center(i) << "," << hist.density[i] << "\n";
    }
}

void write_grid(const Grid2D& grid, const std::string& path) {
    auto out = open_out(path);
    out << "# knowledge: [" << grid.x_lo << "," << grid.x_hi << "] rows=" << grid.nx
        << "; opinion: [" << grid.w_lo << "," << grid.w_hi << "] cols=" << grid.nw
        << "\n";
    for (std::size_t ix = 0; ix < grid.nx; ++ix) {
        for (std::size_t iw = 0; iw < grid.nw; ++iw) {
            out << (iw ? "," : "") << grid.at(ix, iw);
        }
        out << "\n";
    }
}

void write_density_table(std::span<const double> grid_w,
                         std::span<const double> values,
                         const std::string& path) {
    if (grid_w.size() != values.size()) {
        throw std::invalid_argument("grid/value size mismatch");
    }
    auto out = open_out(path);
    out << "w,density\n";
    for (std::size_t i = 0; i < grid_w.size(); ++i) {
        out << grid_w[i] << "," << values[i] << "\n";
    }
}

}  // namespace opiniongame
