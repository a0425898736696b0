#pragma once

#include <optional>
#include <vector>

namespace opiniongame {

/// Compromise kernel families used by the interaction rules. Every
/// evaluation lies in [0,1].
struct KernelSpec {
    enum class Kind {
        unit,                // constant 1
        bounded_confidence,  // indicator |w - w*| < delta
        knowledge_gap,       // logistic in the knowledge gap x - x*
        product              // bounded_confidence(delta) * knowledge_gap(a)
    };

    Kind kind = Kind::unit;
    double delta = 2.0;  // bounded-confidence threshold, in [0,2]
    double a = 50.0;     // logistic steepness, > 1

    static KernelSpec unit() { return {Kind::unit, 2.0, 50.0}; }
    static KernelSpec bounded_confidence(double delta) {
        return {Kind::bounded_confidence, delta, 50.0};
    }
    static KernelSpec knowledge_gap(double a) {
        return {Kind::knowledge_gap, 2.0, a};
    }
    static KernelSpec product(double delta, double a) {
        return {Kind::product, delta, a};
    }

    bool has_knowledge_part() const {
        return kind == Kind::knowledge_gap || kind == Kind::product;
    }
};

/// Credibility index parameters: Psi(d) = (varsigma + d)^(-gamma), strictly
/// decreasing in the leader's displacement d from its initial mean opinion.
struct CredibilitySpec {
    double varsigma = 0.001;
    double gamma = 0.75;
    double anchor = 0.0;  // the group's initial mean opinion m_L(0)

    double psi(double d) const;
};

/// Local diffusion function D(w) on [-1,1] with 0 <= D <= 1 and D(+-1) = 0
/// for the quadratic cap family.
struct DiffusionSpec {
    enum class Kind { quadratic_cap, custom_tabulated };

    Kind kind = Kind::quadratic_cap;
    // Tabulated values on a uniform grid over [-1,1]; evaluated by linear
    // interpolation. Unused for quadratic_cap.
    std::vector<double> table;

    static DiffusionSpec quadratic_cap() { return {}; }
    static DiffusionSpec tabulated(std::vector<double> values);
};

/// Opinion-only part H(w,w*) of a compromise kernel.
double eval_H(double w, double w_star, const KernelSpec& spec);

/// Logistic knowledge-gap kernel K(x,x*) = 1/(1 + exp(a(x-x*))).
/// Saturates cleanly to 0/1 for large gaps.
double eval_K(double x, double x_star, double a);

/// Full compromise propensity P = H(w,w*) * K(x,x*); reduces to H when the
/// spec has no knowledge part.
double eval_P(double w, double w_star, double x, double x_star,
              const KernelSpec& spec);

/// Follower-leader interaction propensity
/// R(w,v;x) = H(w,v) * K(x, Psi(|v - anchor|)).
/// Without a credibility spec (homogeneous mode) this is just H(w,v).
double eval_R(double w, double v, double x,
              const std::optional<CredibilitySpec>& cred,
              const KernelSpec& spec);

double eval_D(double w, const DiffusionSpec& spec);

/// Which binary rule a noise term enters; the admissible support differs.
enum class NoiseRule { follower, follower_leader, leader };

/// Interval of noise values mapping the opinion domain into itself.
/// Infinite endpoints mean "unconstrained" (no diffusion anywhere).
struct NoiseInterval {
    double lo;
    double hi;
    bool empty() const { return lo > hi; }
    bool contains(double half_width) const {
        return -half_width >= lo && half_width <= hi;
    }
};

/// Support bounds preserving the opinion bounds for the given rule.
/// For the leader rule, control_bound is an upper bound on |2*alpha*u|;
/// follower rules ignore it.
NoiseInterval admissible_noise_bounds(const DiffusionSpec& spec, double alpha,
                                      double control_bound, NoiseRule rule);

}  // namespace opiniongame
