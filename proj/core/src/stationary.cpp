#include "opiniongame/stationary.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace opiniongame {

double StationaryDensity::log_unnormalized(double w) const {
    const double exponent = b / (2.0 * sigma2);
    return (-2.0 + exponent) * std::log1p(w) + (-2.0 - exponent) * std::log1p(-w) -
           (1.0 - b * w) / (sigma2 * (1.0 - w * w));
}

double StationaryDensity::unnormalized(double w) const {
    return std::exp(log_unnormalized(w));
}

namespace {

// adaptive Simpson on f, standard error-halving recursion
double simpson(const std::function<double(double)>& f, double a, double b,
               double fa, double fm, double fb, double whole, double tol,
               int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol) {
        return left + right + (left + right - whole) / 15.0;
    }
    return simpson(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
           simpson(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, double tol) {
    if (b <= a) return 0.0;
    // seed with a composite pass so narrow peaks are not stepped over
    const int n = 64;
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
        const double lo = a + (b - a) * i / n;
        const double hi = a + (b - a) * (i + 1) / n;
        const double flo = f(lo), fhi = f(hi), fm = f(0.5 * (lo + hi));
        const double whole = (hi - lo) / 6.0 * (flo + 4.0 * fm + fhi);
        total += simpson(f, lo, hi, flo, fm, fhi, whole, tol / n, 40);
    }
    return total;
}

}  // namespace

NormalizedStationary::NormalizedStationary(StationaryDensity density,
                                           double delta, double tol)
    : density_(density), delta_(delta), tol_(tol) {
    if (!(density.sigma2 > 0.0)) throw std::invalid_argument("sigma2 must be positive");
    if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("bad truncation delta");

    // locate max of the log density on a fine grid, then refine locally
    const int n = 20001;
    double best_w = 0.0, best = -1e308;
    for (int i = 0; i < n; ++i) {
        const double w = -1.0 + delta_ + (2.0 - 2.0 * delta_) * i / (n - 1);
        const double lg = density_.log_unnormalized(w);
        if (lg > best) {
            best = lg;
            best_w = w;
        }
    }
    double lo = std::max(-1.0 + delta_, best_w - 2e-4);
    double hi = std::min(1.0 - delta_, best_w + 2e-4);
    for (int iter = 0; iter < 200; ++iter) {
        const double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
        if (density_.log_unnormalized(m1) < density_.log_unnormalized(m2)) {
            lo = m1;
        } else {
            hi = m2;
        }
    }
    log_shift_ = density_.log_unnormalized(0.5 * (lo + hi));

    auto shifted = [this](double w) {
        return std::exp(density_.log_unnormalized(w) - log_shift_);
    };
    norm_ = integrate_adaptive(shifted, -1.0 + delta_, 1.0 - delta_, tol_);
    if (!(norm_ > 0.0) || !std::isfinite(norm_)) {
        throw std::runtime_error("stationary density normalization failed");
    }
}

double NormalizedStationary::operator()(double w) const {
    if (w <= -1.0 || w >= 1.0) return 0.0;
    return std::exp(density_.log_unnormalized(w) - log_shift_) / norm_;
}

double NormalizedStationary::integrate(double lo, double hi) const {
    lo = std::max(lo, -1.0 + delta_);
    hi = std::min(hi, 1.0 - delta_);
    if (hi <= lo) return 0.0;
    auto f = [this](double w) { return (*this)(w); };
    return integrate_adaptive(f, lo, hi, tol_);
}

double NormalizedStationary::mean() const {
    auto f = [this](double w) { return w * (*this)(w); };
    return integrate_adaptive(f, -1.0 + delta_, 1.0 - delta_, tol_);
}

double leader_shift(double m_l_inf, std::span<const double> psi,
                    std::span<const double> targets, double vbar) {
    if (psi.size() != targets.size()) throw std::invalid_argument("size mismatch");
    double acc = 0.0;
    for (std::size_t l = 0; l < psi.size(); ++l) {
        acc += psi[l] * (targets[l] - vbar);
    }
    return m_l_inf + acc / static_cast<double>(psi.size());
}

double l1_distance(const Histogram& hist, const NormalizedStationary& density) {
    double acc = 0.0;
    const double width = hist.bin_width();
    for (std::size_t i = 0; i < hist.density.size(); ++i) {
        const double lo = hist.lo + width * static_cast<double>(i);
        const double empirical = hist.density[i] * width;
        acc += std::abs(empirical - density.integrate(lo, lo + width));
    }
    return acc;
}

}  // namespace opiniongame
