#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "opiniongame/best_reply.hpp"
#include "opiniongame/kernels.hpp"

namespace opiniongame {

enum class Mode { homogeneous, heterogeneous };

enum class ControlVariant {
    game,           // shared total control from the coupled system
    control_only,   // each group applies only its own decoupled control
    local_average,  // total control from per-interaction local averages
    limit           // quasi-invariant limit controller
};

/// Initial law for a particle coordinate.
struct InitLaw {
    enum class Kind { uniform, normal, constant };
    Kind kind = Kind::uniform;
    double a = -1.0;  // uniform lo / normal mean / constant value
    double b = 1.0;   // uniform hi / normal stddev

    static InitLaw uniform(double lo, double hi) {
        return {Kind::uniform, lo, hi};
    }
    static InitLaw normal(double mean, double sd) {
        return {Kind::normal, mean, sd};
    }
    static InitLaw constant(double v) { return {Kind::constant, v, 0.0}; }
};

struct LeaderConfig {
    StrategyParams strategy;  // psi, mu = 1 - psi, nu, target
    KernelSpec s_kernel;      // leader-leader compromise S^k
    KernelSpec r_kernel;      // follower-leader compromise R^k
    double c_fl = 0.1;        // follower-leader frequency, pre-scaling
    double sigma_eta = 0.01;  // leader noise std, pre-scaling
    double sigma_fl = 0.01;   // follower-leader noise std, pre-scaling
    InitLaw init = InitLaw::normal(0.0, 0.05);
};

struct KnowledgeConfig {
    double lambda = 0.01;
    double lambda_c = 0.005;
    double lambda_b = 0.005;
    double lambda_minus = 0.01;  // admissible range of lambda
    double lambda_plus = 0.01;
    double sigma_kappa = 2.5e-3;  // pre-scaling; scaled as eps * sigma
    double z_max = 10.0;          // background z ~ uniform(0, z_max)
    double a = 50.0;              // knowledge-gap steepness
    double gamma = 0.75;          // credibility exponent
    double varsigma = 0.001;      // credibility offset
    InitLaw init = InitLaw::uniform(0.0, 0.1);

    double background_mean() const { return 0.5 * z_max; }
};

/// Quasi-invariant scaling: alpha = eps, frequencies go up as 1/eps and
/// variances down as eps so per-step probabilities stay in [0,1].
struct ScalingConfig {
    double epsilon = 0.01;

    double alpha() const { return epsilon; }
    double dt() const { return epsilon; }
    double scaled_nu(double nu) const { return epsilon * nu; }
    double scaled_sigma2(double sigma) const {
        return epsilon * sigma * sigma;
    }
    // sigma_kappa rescales by eps (not sqrt(eps)) in heterogeneous mode
    double scaled_sigma2_kappa(double sigma) const {
        return epsilon * epsilon * sigma * sigma;
    }
};

struct Scenario {
    Mode mode = Mode::homogeneous;
    ControlVariant control = ControlVariant::game;
    double epsilon = 0.01;
    double horizon = 10.0;
    std::size_t n_followers = 100000;
    double leader_fraction = 0.1;  // share of total population, split equally
    KernelSpec p_kernel;           // follower-follower compromise
    double sigma_xi = 0.01;        // follower noise std, pre-scaling
    InitLaw follower_init = InitLaw::uniform(-1.0, 1.0);
    std::vector<LeaderConfig> leaders;
    std::optional<KnowledgeConfig> knowledge;
    std::vector<double> snapshot_times;
    std::size_t bins = 50;
    std::uint64_t seed = 0;
    int threads = 1;

    ScalingConfig scaling() const { return {epsilon}; }
    std::vector<StrategyParams> strategies() const;
};

/// Validate every field against the constraints of the owning modules,
/// including the well-posedness condition and noise-support bounds under
/// the scaled parameters. Returns one message per violation; empty = valid.
std::vector<std::string> validate(const Scenario& sc);

/// Parse a key = value scenario file. Throws std::runtime_error with the
/// offending line/field on parse or constraint errors.
Scenario load_scenario(const std::string& path);

/// Write a scenario in the same key = value format; round-trips through
/// load_scenario.
void save_scenario(const Scenario& sc, const std::string& path);

/// Paper test-case presets: test1, test2a, test2b, test3.
Scenario preset(const std::string& name);
std::vector<std::string> preset_names();

}  // namespace opiniongame
