#include "opiniongame/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace opiniongame {

double CredibilitySpec::psi(double d) const {
    return std::pow(varsigma + d, -gamma);
}

DiffusionSpec DiffusionSpec::tabulated(std::vector<double> values) {
    if (values.size() < 2) {
        throw std::invalid_argument("tabulated diffusion needs >= 2 nodes");
    }
    DiffusionSpec spec;
    spec.kind = Kind::custom_tabulated;
    spec.table = std::move(values);
    return spec;
}

double eval_H(double w, double w_star, const KernelSpec& spec) {
    switch (spec.kind) {
        case KernelSpec::Kind::unit:
        case KernelSpec::Kind::knowledge_gap:
            return 1.0;
        case KernelSpec::Kind::bounded_confidence:
        case KernelSpec::Kind::product:
            // strict inequality, matching the indicator chi(|w-w*| < delta)
            return std::abs(w - w_star) < spec.delta ? 1.0 : 0.0;
    }
    return 1.0;
}

double eval_K(double x, double x_star, double a) {
    double arg = a * (x - x_star);
    // exponents past +-500 are indistinguishable from 0/1 in double precision
    arg = std::clamp(arg, -500.0, 500.0);
    return 1.0 / (1.0 + std::exp(arg));
}

double eval_P(double w, double w_star, double x, double x_star,
              const KernelSpec& spec) {
    double h = eval_H(w, w_star, spec);
    if (!spec.has_knowledge_part()) return h;
    return h * eval_K(x, x_star, spec.a);
}

double eval_R(double w, double v, double x,
              const std::optional<CredibilitySpec>& cred,
              const KernelSpec& spec) {
    double h = eval_H(w, v, spec);
    if (!cred || !spec.has_knowledge_part()) return h;
    return h * eval_K(x, cred->psi(std::abs(v - cred->anchor)), spec.a);
}

double eval_D(double w, const DiffusionSpec& spec) {
    if (spec.kind == DiffusionSpec::Kind::quadratic_cap) {
        return 1.0 - w * w;
    }
    const auto& tab = spec.table;
    const auto n = static_cast<std::ptrdiff_t>(tab.size());
    double s = (w + 1.0) / 2.0 * static_cast<double>(n - 1);
    auto i = std::clamp<std::ptrdiff_t>(static_cast<std::ptrdiff_t>(s), 0, n - 2);
    double frac = s - static_cast<double>(i);
    return tab[i] + frac * (tab[i + 1] - tab[i]);
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// inf over the domain of (1 -+ w)/D(w) where D(w) != 0.
// For the quadratic cap both infima equal 1/2 exactly:
// (1-w)/(1-w^2) = 1/(1+w) -> 1/2 as w -> 1, and symmetrically.
std::pair<double, double> margin_infima(const DiffusionSpec& spec) {
    if (spec.kind == DiffusionSpec::Kind::quadratic_cap) {
        return {0.5, 0.5};
    }
    double plus = kInf;   // inf (1-w)/D
    double minus = kInf;  // inf (1+w)/D
    const int n = 4001;
    bool any = false;
    for (int i = 0; i < n; ++i) {
        double w = -1.0 + 2.0 * i / (n - 1);
        double d = eval_D(w, spec);
        if (d <= 0.0) continue;
        any = true;
        plus = std::min(plus, (1.0 - w) / d);
        minus = std::min(minus, (1.0 + w) / d);
    }
    if (!any) return {kInf, kInf};  // D == 0: noise never acts
    return {plus, minus};
}

}  // namespace

NoiseInterval admissible_noise_bounds(const DiffusionSpec& spec, double alpha,
                                      double control_bound, NoiseRule rule) {
    auto [plus, minus] = margin_infima(spec);
    if (std::isinf(plus) && std::isinf(minus)) return {-kInf, kInf};
    switch (rule) {
        case NoiseRule::follower:
        case NoiseRule::follower_leader:
            return {-(1.0 - alpha) * minus, (1.0 - alpha) * plus};
        case NoiseRule::leader:
            return {-(minus - control_bound), plus - control_bound};
    }
    return {0.0, 0.0};
}

}  // namespace opiniongame
