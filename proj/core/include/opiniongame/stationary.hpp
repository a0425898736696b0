#pragma once

#include <functional>
#include <span>

#include "opiniongame/stats.hpp"

namespace opiniongame {

/// One stationary Fokker-Planck density on (-1,1):
///   f(w) = gamma (1+w)^(-2 + b/(2 s^2)) (1-w)^(-2 - b/(2 s^2))
///          exp(-(1 - b w) / (s^2 (1-w^2)))
/// Followers use b = vbar and s^2 = sigma_F^2 = (sigma_xi^2 + sum sigma_xl^2)/2;
/// leader group k uses b = b_L^k and s^2 = sigma_eta_k^2.
struct StationaryDensity {
    double b;       // drift center
    double sigma2;  // the s^2 above

    /// log of the unnormalized density; finite on the open interval.
    double log_unnormalized(double w) const;

    /// Unnormalized value (may underflow to 0 for sharp densities; prefer
    /// the normalized evaluator below for quantitative work).
    double unnormalized(double w) const;
};

/// Normalized density with numerically safe evaluation: the normalization
/// integrates exp(log f - max log f) by adaptive quadrature on
/// [-1+delta, 1-delta].
class NormalizedStationary {
  public:
    explicit NormalizedStationary(StationaryDensity density, double delta = 1e-3,
                                  double tol = 1e-12);

    double operator()(double w) const;

    /// Integral of the normalized density over [lo, hi].
    double integrate(double lo, double hi) const;

    /// Mean opinion of the normalized density.
    double mean() const;

    double normalization() const { return norm_; }
    const StationaryDensity& density() const { return density_; }

  private:
    StationaryDensity density_;
    double delta_;
    double tol_;
    double log_shift_;  // max of log_unnormalized over the domain
    double norm_;       // integral of exp(log f - shift)
};

/// Shift b_L^k = m_L_inf^k + (1/M) sum_l psi^l (vbar^l - vbar).
double leader_shift(double m_l_inf, std::span<const double> psi,
                    std::span<const double> targets, double vbar);

/// Sum over bins of |empirical bin mass - analytic bin mass|.
double l1_distance(const Histogram& hist, const NormalizedStationary& density);

}  // namespace opiniongame
