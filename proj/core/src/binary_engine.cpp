#include "opiniongame/binary_engine.hpp"

#include <cmath>

namespace opiniongame {

double NoiseSpec::half_width() const { return std::sqrt(3.0 * sigma2); }

namespace {

bool in_opinion_domain(double w) { return w >= -1.0 && w <= 1.0; }

}  // namespace

InteractionOutcome follower_follower(double w, double w_star, double x,
                                     double x_star, double alpha,
                                     const KernelSpec& kernel,
                                     const DiffusionSpec& diffusion, double xi,
                                     double xi_star) {
    double p = eval_P(w, w_star, x, x_star, kernel);
    double p_star = eval_P(w_star, w, x_star, x, kernel);
    double w_post = w + alpha * p * (w_star - w) + xi * eval_D(w, diffusion);
    double ws_post =
        w_star + alpha * p_star * (w - w_star) + xi_star * eval_D(w_star, diffusion);
    if (in_opinion_domain(w_post) && in_opinion_domain(ws_post)) {
        return {true, w_post, ws_post};
    }
    return {false, w, w_star};
}

InteractionOutcome follower_leader(double w, double v, double x, double alpha,
                                   const KernelSpec& kernel,
                                   const std::optional<CredibilitySpec>& cred,
                                   const DiffusionSpec& diffusion, double xi) {
    double r = eval_R(w, v, x, cred, kernel);
    double w_post = w + alpha * r * (v - w) + xi * eval_D(w, diffusion);
    if (in_opinion_domain(w_post)) {
        return {true, w_post, v};
    }
    return {false, w, v};
}

InteractionOutcome leader_leader(double v, double v_star, double alpha,
                                 const KernelSpec& kernel,
                                 const DiffusionSpec& diffusion, double eta,
                                 double eta_star, double u_total) {
    double s = eval_H(v, v_star, kernel);
    double s_star = eval_H(v_star, v, kernel);
    double drift = 2.0 * alpha * u_total;
    double v_post = v + alpha * s * (v_star - v) + drift + eta * eval_D(v, diffusion);
    double vs_post =
        v_star + alpha * s_star * (v - v_star) + drift + eta_star * eval_D(v_star, diffusion);
    if (in_opinion_domain(v_post) && in_opinion_domain(vs_post)) {
        return {true, v_post, vs_post};
    }
    return {false, v, v_star};
}

InteractionOutcome knowledge_exchange(double x, double x_star, double z,
                                      double alpha, double lambda,
                                      double lambda_c, double lambda_b,
                                      double kappa, double kappa_star) {
    double x_post = (1.0 - alpha * lambda) * x + alpha * lambda_c * x_star +
                    alpha * lambda_b * z + kappa * x;
    double xs_post = (1.0 - alpha * lambda) * x_star + alpha * lambda_c * x +
                     alpha * lambda_b * z + kappa_star * x_star;
    if (x_post >= 0.0 && xs_post >= 0.0) {
        return {true, x_post, xs_post};
    }
    return {false, x, x_star};
}

}  // namespace opiniongame
