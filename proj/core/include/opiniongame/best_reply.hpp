#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace opiniongame {

/// Per-group strategy: convex mix of the radical pull toward the fixed
/// target and the populist pull toward the followers' running mean.
struct StrategyParams {
    double psi;     // radical weight, in [0,1]
    double mu;      // populist weight, psi + mu = 1
    double nu;      // control penalization, > 0
    double target;  // desired opinion, in [-1,1]
};

/// The M x M coupled best-reply system. Row k has a unit diagonal and
/// beta^k off-diagonal; the inverse and its column sums are cached since
/// the matrix does not change over a run.
class ControlSystem {
  public:
    ControlSystem(std::span<const StrategyParams> strategies, double alpha);

    bool well_posed() const { return well_posed_; }
    double alpha() const { return alpha_; }
    std::size_t size() const { return betas_.size(); }
    const std::vector<double>& betas() const { return betas_; }
    const std::vector<double>& col_sums() const { return col_sums_; }

    /// Solve for all M controls given the drifts F^k. Requires well_posed().
    std::vector<double> solve_controls(std::span<const double> drifts) const;

    /// Sum of all controls: (1/2a) sum_l beta^l Bbar_l F^l. Requires
    /// well_posed().
    double total_control(std::span<const double> drifts) const;

  private:
    double alpha_;
    bool well_posed_ = false;
    std::vector<double> betas_;
    std::vector<double> inverse_;  // row-major M x M
    std::vector<double> col_sums_;
};

/// Drifts F^k = psi^k vbar^k + mu^k m_F - m_L^k.
std::vector<double> strategy_drifts(std::span<const StrategyParams> strategies,
                                    double m_f, std::span<const double> m_l);

/// Total control from global population means.
double total_control(const ControlSystem& sys,
                     std::span<const StrategyParams> strategies, double m_f,
                     std::span<const double> m_l);

/// Closed form for a common penalization nu (common beta):
/// ubar = beta / (2a (1 + (M-1) beta)) * sum_l F^l.
double equal_penalty_control(double beta, double alpha,
                             std::span<const double> drifts);

/// Total control with the per-interaction local averages (v_h + v_p)/2 in
/// place of the global leader means.
double total_control_local(const ControlSystem& sys,
                           std::span<const StrategyParams> strategies,
                           double m_f,
                           std::span<const std::pair<double, double>> pairs);

/// Quasi-invariant limit of the total control: sum_l (2/nu^l) F^l.
double limit_control(std::span<const StrategyParams> strategies, double m_f,
                     std::span<const double> m_l);

}  // namespace opiniongame
