#include "opiniongame/best_reply.hpp"

#include <cmath>
#include <stdexcept>

namespace opiniongame {

namespace {

// In-place Gauss-Jordan with partial pivoting; M is small (a handful of
// leader groups), direct elimination is the right tool.
bool invert(std::vector<double>& a, std::size_t n) {
    std::vector<double> inv(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) inv[i * n + i] = 1.0;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r) {
            if (std::abs(a[r * n + col]) > std::abs(a[pivot * n + col])) pivot = r;
        }
        if (a[pivot * n + col] == 0.0) return false;
        if (pivot != col) {
            for (std::size_t c = 0; c < n; ++c) {
                std::swap(a[pivot * n + c], a[col * n + c]);
                std::swap(inv[pivot * n + c], inv[col * n + c]);
            }
        }
        double d = a[col * n + col];
        for (std::size_t c = 0; c < n; ++c) {
            a[col * n + c] /= d;
            inv[col * n + c] /= d;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            double f = a[r * n + col];
            if (f == 0.0) continue;
            for (std::size_t c = 0; c < n; ++c) {
                a[r * n + c] -= f * a[col * n + c];
                inv[r * n + c] -= f * inv[col * n + c];
            }
        }
    }
    a = std::move(inv);
    return true;
}

}  // namespace

ControlSystem::ControlSystem(std::span<const StrategyParams> strategies,
                             double alpha)
    : alpha_(alpha) {
    const std::size_t m = strategies.size();
    if (m == 0) throw std::invalid_argument("need at least one leader group");
    if (alpha <= 0.0) throw std::invalid_argument("alpha must be positive");

    betas_.reserve(m);
    const double a2 = 4.0 * alpha * alpha;
    well_posed_ = true;
    for (const auto& s : strategies) {
        betas_.push_back(a2 / (s.nu + a2));
        // strict inequality; equality counts as ill-posed
        if (!(s.nu > (static_cast<double>(m) - 2.0) * a2)) well_posed_ = false;
    }
    if (!well_posed_) return;

    std::vector<double> mat(m * m);
    for (std::size_t k = 0; k < m; ++k) {
        for (std::size_t l = 0; l < m; ++l) {
            mat[k * m + l] = (k == l) ? 1.0 : betas_[k];
        }
    }
    if (!invert(mat, m)) {
        well_posed_ = false;
        return;
    }
    inverse_ = std::move(mat);
    col_sums_.assign(m, 0.0);
    for (std::size_t l = 0; l < m; ++l) {
        for (std::size_t k = 0; k < m; ++k) col_sums_[l] += inverse_[k * m + l];
    }
}

std::vector<double> ControlSystem::solve_controls(
    std::span<const double> drifts) const {
    if (!well_posed_) throw std::logic_error("control system is not well-posed");
    const std::size_t m = betas_.size();
    if (drifts.size() != m) throw std::invalid_argument("drift size mismatch");
    std::vector<double> u(m, 0.0);
    for (std::size_t k = 0; k < m; ++k) {
        double acc = 0.0;
        for (std::size_t l = 0; l < m; ++l) {
            acc += betas_[l] * inverse_[k * m + l] * drifts[l];
        }
        u[k] = acc / (2.0 * alpha_);
    }
    return u;
}

double ControlSystem::total_control(std::span<const double> drifts) const {
    if (!well_posed_) throw std::logic_error("control system is not well-posed");
    const std::size_t m = betas_.size();
    if (drifts.size() != m) throw std::invalid_argument("drift size mismatch");
    double acc = 0.0;
    for (std::size_t l = 0; l < m; ++l) {
        acc += betas_[l] * col_sums_[l] * drifts[l];
    }
    return acc / (2.0 * alpha_);
}

std::vector<double> strategy_drifts(std::span<const StrategyParams> strategies,
                                    double m_f, std::span<const double> m_l) {
    std::vector<double> f(strategies.size());
    for (std::size_t k = 0; k < strategies.size(); ++k) {
        const auto& s = strategies[k];
        f[k] = s.psi * s.target + s.mu * m_f - m_l[k];
    }
    return f;
}

double total_control(const ControlSystem& sys,
                     std::span<const StrategyParams> strategies, double m_f,
                     std::span<const double> m_l) {
    return sys.total_control(strategy_drifts(strategies, m_f, m_l));
}

double equal_penalty_control(double beta, double alpha,
                             std::span<const double> drifts) {
    double sum = 0.0;
    for (double f : drifts) sum += f;
    const auto m = static_cast<double>(drifts.size());
    return beta / (2.0 * alpha * (1.0 + (m - 1.0) * beta)) * sum;
}

double total_control_local(const ControlSystem& sys,
                           std::span<const StrategyParams> strategies,
                           double m_f,
                           std::span<const std::pair<double, double>> pairs) {
    std::vector<double> local_means(pairs.size());
    for (std::size_t l = 0; l < pairs.size(); ++l) {
        local_means[l] = 0.5 * (pairs[l].first + pairs[l].second);
    }
    return sys.total_control(strategy_drifts(strategies, m_f, local_means));
}

double limit_control(std::span<const StrategyParams> strategies, double m_f,
                     std::span<const double> m_l) {
    double acc = 0.0;
    for (std::size_t l = 0; l < strategies.size(); ++l) {
        const auto& s = strategies[l];
        acc += 2.0 / s.nu * (s.psi * s.target + s.mu * m_f - m_l[l]);
    }
    return acc;
}

}  // namespace opiniongame
