#pragma once

#include <optional>
#include <span>
#include <vector>

#include "opiniongame/best_reply.hpp"

namespace opiniongame {

/// Parameters of the analytic mean-opinion system. Valid under the
/// simplifying assumptions: symmetric P and S^k, R^l == 1, and the
/// equal-penalty (common beta) control.
struct MeanSystemParams {
    std::vector<double> c_fl;  // follower-leader frequencies
    std::vector<double> c_l;   // leader-leader frequencies
    std::vector<double> rho;   // group masses
    double beta;               // common beta
    double alpha;
    std::vector<StrategyParams> strategies;

    std::size_t groups() const { return strategies.size(); }
};

struct MeanState {
    double m_f;
    std::vector<double> m_l;
};

/// Right-hand side of the mean-opinion ODE system:
///   dm_F/dt   = sum_l c_FL^l rho^l a (m_L^l - m_F)
///   dm_L^k/dt = beta/(1+(M-1)beta) c_L^k rho^k
///               sum_l (psi^l vbar^l + mu^l m_F - m_L^l)
MeanState mean_rhs(const MeanState& state, const MeanSystemParams& params);

struct MeanTrajectory {
    std::vector<double> times;
    std::vector<MeanState> states;
};

/// Classical fourth-order fixed-step integration.
MeanTrajectory integrate_means(const MeanState& initial,
                               const MeanSystemParams& params, double horizon,
                               double dt);

/// Asymptotic consensus vbar = sum psi^l vbar^l / sum psi^l. Empty when all
/// groups are purely populist (sum psi = 0): the consensus is then set by
/// the initial data, not by the targets.
std::optional<double> asymptotic_consensus(
    std::span<const StrategyParams> strategies);

}  // namespace opiniongame
