#include "opiniongame/moments_oracle.hpp"

#include <cmath>
#include <stdexcept>

namespace opiniongame {

MeanState mean_rhs(const MeanState& state, const MeanSystemParams& params) {
    const std::size_t m = params.groups();
    if (state.m_l.size() != m) throw std::invalid_argument("state size mismatch");

    MeanState d;
    d.m_l.resize(m);
    d.m_f = 0.0;
    for (std::size_t l = 0; l < m; ++l) {
        d.m_f += params.c_fl[l] * params.rho[l] * params.alpha *
                 (state.m_l[l] - state.m_f);
    }
    double drift_sum = 0.0;
    for (std::size_t l = 0; l < m; ++l) {
        const auto& s = params.strategies[l];
        drift_sum += s.psi * s.target + s.mu * state.m_f - state.m_l[l];
    }
    const double gain =
        params.beta / (1.0 + (static_cast<double>(m) - 1.0) * params.beta);
    for (std::size_t k = 0; k < m; ++k) {
        d.m_l[k] = gain * params.c_l[k] * params.rho[k] * drift_sum;
    }
    return d;
}

namespace {

MeanState axpy(const MeanState& a, double h, const MeanState& b) {
    MeanState out = a;
    out.m_f += h * b.m_f;
    for (std::size_t i = 0; i < out.m_l.size(); ++i) out.m_l[i] += h * b.m_l[i];
    return out;
}

}  // namespace

MeanTrajectory integrate_means(const MeanState& initial,
                               const MeanSystemParams& params, double horizon,
                               double dt) {
    if (dt <= 0.0 || horizon < 0.0) throw std::invalid_argument("bad integration window");
    const auto n = static_cast<std::size_t>(std::llround(horizon / dt));
    MeanTrajectory traj;
    traj.times.reserve(n + 1);
    traj.states.reserve(n + 1);
    MeanState y = initial;
    traj.times.push_back(0.0);
    traj.states.push_back(y);
    for (std::size_t i = 0; i < n; ++i) {
        const MeanState k1 = mean_rhs(y, params);
        const MeanState k2 = mean_rhs(axpy(y, dt / 2.0, k1), params);
        const MeanState k3 = mean_rhs(axpy(y, dt / 2.0, k2), params);
        const MeanState k4 = mean_rhs(axpy(y, dt, k3), params);
        y.m_f += dt / 6.0 * (k1.m_f + 2.0 * k2.m_f + 2.0 * k3.m_f + k4.m_f);
        for (std::size_t j = 0; j < y.m_l.size(); ++j) {
            y.m_l[j] +=
                dt / 6.0 * (k1.m_l[j] + 2.0 * k2.m_l[j] + 2.0 * k3.m_l[j] + k4.m_l[j]);
        }
        traj.times.push_back(static_cast<double>(i + 1) * dt);
        traj.states.push_back(y);
    }
    return traj;
}

std::optional<double> asymptotic_consensus(
    std::span<const StrategyParams> strategies) {
    double num = 0.0, den = 0.0;
    for (const auto& s : strategies) {
        num += s.psi * s.target;
        den += s.psi;
    }
    if (den <= 0.0) return std::nullopt;
    return num / den;
}

}  // namespace opiniongame
