#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "opiniongame/best_reply.hpp"
#include "opiniongame/binary_engine.hpp"
#include "opiniongame/scenario.hpp"
#include "opiniongame/stats.hpp"

namespace opiniongame {

struct FollowerEnsemble {
    std::vector<double> opinions;
    std::vector<double> knowledge;  // empty in homogeneous mode
};

struct LeaderGroup {
    std::vector<double> opinions;
    StrategyParams strategy;
    double rho;   // group mass relative to the follower population
    double m_l0;  // initial mean opinion, anchors the credibility index
};

struct MomentState {
    double t;
    double m_f;
    double e_f;  // raw second moment
    std::vector<double> m_l;
    std::vector<double> e_l;
    double mean_knowledge = 0.0;
};

struct Snapshot {
    double t;
    Histogram follower_hist;
    std::vector<Histogram> leader_hists;
    std::optional<Grid2D> grid;  // knowledge x opinion, heterogeneous mode
};

struct RunRecord {
    std::vector<MomentState> moments;
    std::vector<Snapshot> snapshots;
    std::uint64_t interactions = 0;
    std::uint64_t rejections = 0;
};

/// Per-quartile mean opinion, followers partitioned by knowledge.
/// quartile_means[0] is the lowest-knowledge quartile.
struct QuartileStats {
    std::array<double, 4> quartile_means;
};
QuartileStats knowledge_quartile_stats(const FollowerEnsemble& ensemble);

/// Monte Carlo time loop over the binary interaction rules: disjoint random
/// pairs each step, follower-leader encounters against uniformly drawn
/// partners, best-reply control frozen at the start of each step.
class Simulator {
  public:
    explicit Simulator(const Scenario& scenario);

    /// Advance one time step of size dt = epsilon.
    void step();

    /// Run the full horizon, recording moments each step and histograms at
    /// the scheduled snapshot times. Throws on an invariant violation
    /// (out-of-domain particle).
    RunRecord run();

    MomentState estimate_moments() const;

    double time() const { return static_cast<double>(step_index_) * scaling_.dt(); }
    const FollowerEnsemble& followers() const { return followers_; }
    const std::vector<LeaderGroup>& leader_groups() const { return groups_; }
    const ControlSystem& control_system() const { return control_system_; }
    std::uint64_t interactions() const { return interactions_; }
    std::uint64_t rejections() const { return rejections_; }

    /// The control value a leader pair interaction will apply this step,
    /// given start-of-step moments (variants other than local_average).
    double frozen_control(const MomentState& m, std::size_t group) const;

  private:
    void follower_phase();
    void follower_leader_phase();
    void leader_phase(const MomentState& frozen);
    void check_domains() const;

    Scenario scenario_;
    ScalingConfig scaling_;
    ControlSystem control_system_;
    std::vector<StrategyParams> scaled_strategies_;
    FollowerEnsemble followers_;
    std::vector<LeaderGroup> groups_;
    std::uint64_t step_index_ = 0;
    std::uint64_t interactions_ = 0;
    std::uint64_t rejections_ = 0;

    // scaled per-step quantities
    double alpha_;
    NoiseSpec follower_noise_;
    std::vector<NoiseSpec> leader_noise_;
    std::vector<NoiseSpec> fl_noise_;
    NoiseSpec kappa_noise_;
    DiffusionSpec diffusion_;
    std::optional<CredibilitySpec> cred_base_;  // anchor filled per group
};

}  // namespace opiniongame
