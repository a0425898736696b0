#pragma once

#include <optional>

#include "opiniongame/kernels.hpp"

namespace opiniongame {

/// Zero-mean symmetric uniform noise with the stated variance; the half
/// width is sqrt(3 sigma^2).
struct NoiseSpec {
    double sigma2 = 0.0;

    double half_width() const;
    static NoiseSpec from_sigma(double sigma) {
        return {sigma * sigma};
    }
};

/// Result of one binary interaction. A rejected interaction leaves the
/// pre-states untouched; post states are only meaningful when accepted.
struct InteractionOutcome {
    bool accepted;
    double first;
    double second;
};

/// Follower-follower opinion exchange:
/// w' = w + a P(w,w*)(w*-w) + xi D(w), symmetric for w*.
/// Accepted iff both post-opinions lie in [-1,1]; x, x* only enter through
/// a knowledge-dependent kernel.
InteractionOutcome follower_follower(double w, double w_star, double x,
                                     double x_star, double alpha,
                                     const KernelSpec& kernel,
                                     const DiffusionSpec& diffusion, double xi,
                                     double xi_star);

/// Follower-leader exchange: the leader opinion is unchanged,
/// w'' = w + a R(w,v;x)(v-w) + xi D(w). Accepted iff w'' in [-1,1].
InteractionOutcome follower_leader(double w, double v, double x, double alpha,
                                   const KernelSpec& kernel,
                                   const std::optional<CredibilitySpec>& cred,
                                   const DiffusionSpec& diffusion, double xi);

/// Leader-leader exchange within one group, with the shared best-reply
/// drift: v' = v + a S(v,v*)(v*-v) + 2a u_total + eta D(v).
InteractionOutcome leader_leader(double v, double v_star, double alpha,
                                 const KernelSpec& kernel,
                                 const DiffusionSpec& diffusion, double eta,
                                 double eta_star, double u_total);

/// Knowledge exchange with a shared background sample z:
/// x' = (1 - a lambda) x + a lambda_C x* + a lambda_B z + kappa x.
/// Accepted iff both post-knowledge values stay nonnegative.
InteractionOutcome knowledge_exchange(double x, double x_star, double z,
                                      double alpha, double lambda,
                                      double lambda_c, double lambda_b,
                                      double kappa, double kappa_star);

}  // namespace opiniongame
