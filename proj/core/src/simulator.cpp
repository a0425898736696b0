#include "opiniongame/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "opiniongame/rng.hpp"

namespace opiniongame {

namespace {

// stream phase tags; every (step, phase, index) names one random stream
constexpr std::uint64_t kInitPhase = 777;
constexpr std::uint64_t kShuffleFollowers = 1;
constexpr std::uint64_t kFollowerPairs = 2;
constexpr std::uint64_t kFollowerLeader = 3;
constexpr std::uint64_t kShuffleLeaders = 1000;
constexpr std::uint64_t kLeaderPairs = 2000;

double draw_init(const InitLaw& law, Stream& rng, bool opinion_domain) {
    switch (law.kind) {
        case InitLaw::Kind::uniform:
            return rng.uniform(law.a, law.b);
        case InitLaw::Kind::normal: {
            for (int tries = 0; tries < 1000; ++tries) {
                double v = law.a + law.b * rng.normal();
                if (!opinion_domain || (v >= -1.0 && v <= 1.0)) return v;
            }
            return std::clamp(law.a, -1.0, 1.0);
        }
        case InitLaw::Kind::constant:
            return law.a;
    }
    return law.a;
}

template <class Fn>
void parallel_for(std::size_t n, int threads, Fn&& fn) {
    if (threads <= 1 || n < 1024) {
        fn(std::size_t{0}, n);
        return;
    }
    const auto t = static_cast<std::size_t>(threads);
    std::vector<std::thread> pool;
    pool.reserve(t);
    const std::size_t chunk = (n + t - 1) / t;
    for (std::size_t i = 0; i < t; ++i) {
        std::size_t lo = std::min(i * chunk, n);
        std::size_t hi = std::min(lo + chunk, n);
        if (lo == hi) break;
        pool.emplace_back([&fn, lo, hi] { fn(lo, hi); });
    }
    for (auto& th : pool) th.join();
}

}  // namespace

QuartileStats knowledge_quartile_stats(const FollowerEnsemble& ensemble) {
    const std::size_t n = ensemble.opinions.size();
    if (n < 4 || ensemble.knowledge.size() != n) {
        throw std::invalid_argument("quartile stats need a heterogeneous ensemble");
    }
    std::vector<std::uint32_t> order(n);
    std::iota(order.begin(), order.end(), 0u);
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        return ensemble.knowledge[a] < ensemble.knowledge[b];
    });
    QuartileStats stats{};
    for (int q = 0; q < 4; ++q) {
        std::size_t lo = q * n / 4;
        std::size_t hi = (q + 1) * n / 4;
        double acc = 0.0;
        for (std::size_t i = lo; i < hi; ++i) acc += ensemble.opinions[order[i]];
        stats.quartile_means[q] = acc / static_cast<double>(hi - lo);
    }
    return stats;
}

Simulator::Simulator(const Scenario& scenario)
    : scenario_(scenario),
      scaling_(scenario.scaling()),
      control_system_([&] {
          auto s = scenario.strategies();
          for (auto& p : s) p.nu = scenario.scaling().scaled_nu(p.nu);
          return ControlSystem(s, scenario.scaling().alpha());
      }()),
      alpha_(scenario.scaling().alpha()) {
    auto errors = validate(scenario_);
    if (!errors.empty()) {
        std::string msg = "invalid scenario:";
        for (const auto& e : errors) msg += "\n  " + e;
        throw std::invalid_argument(msg);
    }

    scaled_strategies_ = scenario_.strategies();
    for (auto& s : scaled_strategies_) s.nu = scaling_.scaled_nu(s.nu);

    follower_noise_ = NoiseSpec{scaling_.scaled_sigma2(scenario_.sigma_xi)};
    diffusion_ = DiffusionSpec::quadratic_cap();
    for (const auto& l : scenario_.leaders) {
        leader_noise_.push_back(NoiseSpec{scaling_.scaled_sigma2(l.sigma_eta)});
        fl_noise_.push_back(NoiseSpec{scaling_.scaled_sigma2(l.sigma_fl)});
    }
    if (scenario_.mode == Mode::heterogeneous) {
        const auto& kc = *scenario_.knowledge;
        kappa_noise_ = NoiseSpec{scaling_.scaled_sigma2_kappa(kc.sigma_kappa)};
        cred_base_ = CredibilitySpec{kc.varsigma, kc.gamma, 0.0};
    }

    // populations: leader_fraction of the total population, split equally
    const std::size_t n_f = scenario_.n_followers;
    const auto m = scenario_.leaders.size();
    const auto n_lead_total = static_cast<std::size_t>(std::llround(
        static_cast<double>(n_f) * scenario_.leader_fraction /
        (1.0 - scenario_.leader_fraction)));
    const std::size_t n_per_group = std::max<std::size_t>(2, n_lead_total / m);

    Stream init(scenario_.seed, 0, kInitPhase, 0);
    followers_.opinions.resize(n_f);
    for (auto& w : followers_.opinions) {
        w = draw_init(scenario_.follower_init, init, true);
    }
    if (scenario_.mode == Mode::heterogeneous) {
        followers_.knowledge.resize(n_f);
        for (auto& x : followers_.knowledge) {
            x = std::max(0.0, draw_init(scenario_.knowledge->init, init, false));
        }
    }
    for (std::size_t k = 0; k < m; ++k) {
        LeaderGroup g;
        g.strategy = scenario_.leaders[k].strategy;
        g.rho = static_cast<double>(n_per_group) / static_cast<double>(n_f);
        g.opinions.resize(n_per_group);
        for (auto& v : g.opinions) {
            v = draw_init(scenario_.leaders[k].init, init, true);
        }
        g.m_l0 = sample_moments(g.opinions).mean;
        groups_.push_back(std::move(g));
    }
}

MomentState Simulator::estimate_moments() const {
    MomentState m;
    m.t = time();
    auto f = sample_moments(followers_.opinions);
    m.m_f = f.mean;
    m.e_f = f.second;
    for (const auto& g : groups_) {
        auto s = sample_moments(g.opinions);
        m.m_l.push_back(s.mean);
        m.e_l.push_back(s.second);
    }
    if (!followers_.knowledge.empty()) {
        m.mean_knowledge = sample_moments(followers_.knowledge).mean;
    }
    return m;
}

double Simulator::frozen_control(const MomentState& m, std::size_t group) const {
    switch (scenario_.control) {
        case ControlVariant::game:
        case ControlVariant::local_average:
            return total_control(control_system_, scaled_strategies_, m.m_f, m.m_l);
        case ControlVariant::control_only: {
            // decoupled single-strategy control: u^k = (beta^k / 2a) F^k
            const auto& s = scaled_strategies_[group];
            double drift = s.psi * s.target + s.mu * m.m_f - m.m_l[group];
            return control_system_.betas()[group] / (2.0 * alpha_) * drift;
        }
        case ControlVariant::limit: {
            auto unscaled = scenario_.strategies();
            return limit_control(unscaled, m.m_f, m.m_l);
        }
    }
    return 0.0;
}

void Simulator::follower_phase() {
    const std::size_t n = followers_.opinions.size();
    std::vector<std::uint32_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0u);
    Stream shuffler(scenario_.seed, step_index_, kShuffleFollowers, 0);
    shuffle(perm, shuffler);

    const bool hetero = scenario_.mode == Mode::heterogeneous;
    const std::size_t n_pairs = n / 2;  // an odd particle idles this step
    std::atomic<std::uint64_t> rejected{0};

    parallel_for(n_pairs, scenario_.threads, [&](std::size_t lo, std::size_t hi) {
        std::uint64_t local_rej = 0;
        for (std::size_t p = lo; p < hi; ++p) {
            const std::uint32_t i = perm[2 * p];
            const std::uint32_t j = perm[2 * p + 1];
            Stream rng(scenario_.seed, step_index_, kFollowerPairs, p);
            const double xi = rng.symmetric(follower_noise_.half_width());
            const double xi_s = rng.symmetric(follower_noise_.half_width());
            double& w = followers_.opinions[i];
            double& ws = followers_.opinions[j];
            if (!hetero) {
                auto out = follower_follower(w, ws, 0.0, 0.0, alpha_,
                                             scenario_.p_kernel, diffusion_, xi, xi_s);
                if (out.accepted) {
                    w = out.first;
                    ws = out.second;
                } else {
                    ++local_rej;
                }
                continue;
            }
            // heterogeneous: opinion and knowledge posts derive jointly from
            // the pre-interaction states; one background sample per pair;
            // admissibility is a single joint accept/reject
            const auto& kc = *scenario_.knowledge;
            const double z = rng.uniform(0.0, kc.z_max);
            const double kap = rng.symmetric(kappa_noise_.half_width());
            const double kap_s = rng.symmetric(kappa_noise_.half_width());
            double& x = followers_.knowledge[i];
            double& xs = followers_.knowledge[j];
            auto op = follower_follower(w, ws, x, xs, alpha_, scenario_.p_kernel,
                                        diffusion_, xi, xi_s);
            auto kn = knowledge_exchange(x, xs, z, alpha_, kc.lambda, kc.lambda_c,
                                         kc.lambda_b, kap, kap_s);
            if (op.accepted && kn.accepted) {
                w = op.first;
                ws = op.second;
                x = kn.first;
                xs = kn.second;
            } else {
                ++local_rej;
            }
        }
        rejected.fetch_add(local_rej, std::memory_order_relaxed);
    });
    interactions_ += n_pairs;
    rejections_ += rejected.load();
}

void Simulator::follower_leader_phase() {
    const std::size_t n = followers_.opinions.size();
    const std::size_t m = groups_.size();
    const bool hetero = scenario_.mode == Mode::heterogeneous;
    std::atomic<std::uint64_t> rejected{0};
    std::atomic<std::uint64_t> attempted{0};

    parallel_for(n, scenario_.threads, [&](std::size_t lo, std::size_t hi) {
        std::uint64_t local_rej = 0, local_att = 0;
        for (std::size_t i = lo; i < hi; ++i) {
            Stream rng(scenario_.seed, step_index_, kFollowerLeader, i);
            double& w = followers_.opinions[i];
            const double x = hetero ? followers_.knowledge[i] : 0.0;
            for (std::size_t k = 0; k < m; ++k) {
                if (rng.uniform01() >= scenario_.leaders[k].c_fl) continue;
                const auto& g = groups_[k];
                const double v = g.opinions[rng.bounded(g.opinions.size())];
                const double xi = rng.symmetric(fl_noise_[k].half_width());
                std::optional<CredibilitySpec> cred;
                if (cred_base_) {
                    cred = *cred_base_;
                    cred->anchor = g.m_l0;
                }
                auto out = follower_leader(w, v, x, alpha_,
                                           scenario_.leaders[k].r_kernel, cred,
                                           diffusion_, xi);
                ++local_att;
                if (out.accepted) {
                    w = out.first;
                } else {
                    ++local_rej;
                }
            }
        }
        rejected.fetch_add(local_rej, std::memory_order_relaxed);
        attempted.fetch_add(local_att, std::memory_order_relaxed);
    });
    interactions_ += attempted.load();
    rejections_ += rejected.load();
}

void Simulator::leader_phase(const MomentState& frozen) {
    const std::size_t m = groups_.size();
    const bool local = scenario_.control == ControlVariant::local_average;

    std::vector<std::vector<std::uint32_t>> perms(m);
    std::size_t max_pairs = 0;
    for (std::size_t k = 0; k < m; ++k) {
        perms[k].resize(groups_[k].opinions.size());
        std::iota(perms[k].begin(), perms[k].end(), 0u);
        Stream shuffler(scenario_.seed, step_index_, kShuffleLeaders + k, 0);
        shuffle(perms[k], shuffler);
        max_pairs = std::max(max_pairs, perms[k].size() / 2);
    }

    std::vector<double> group_control(m, 0.0);
    if (!local) {
        for (std::size_t k = 0; k < m; ++k) {
            group_control[k] = frozen_control(frozen, k);
        }
    }

    // rounds across groups so the local-average variant can assemble one
    // pair per group; groups without a pair this round contribute their
    // start-of-step mean
    for (std::size_t round = 0; round < max_pairs; ++round) {
        double u_round = 0.0;
        if (local) {
            std::vector<std::pair<double, double>> pairs(m);
            for (std::size_t k = 0; k < m; ++k) {
                if (round < perms[k].size() / 2) {
                    const auto& g = groups_[k];
                    pairs[k] = {g.opinions[perms[k][2 * round]],
                                g.opinions[perms[k][2 * round + 1]]};
                } else {
                    pairs[k] = {frozen.m_l[k], frozen.m_l[k]};
                }
            }
            u_round = total_control_local(control_system_, scaled_strategies_,
                                          frozen.m_f, pairs);
        }
        for (std::size_t k = 0; k < m; ++k) {
            if (round >= perms[k].size() / 2) continue;
            auto& g = groups_[k];
            double& v = g.opinions[perms[k][2 * round]];
            double& vs = g.opinions[perms[k][2 * round + 1]];
            Stream rng(scenario_.seed, step_index_, kLeaderPairs + k, round);
            const double eta = rng.symmetric(leader_noise_[k].half_width());
            const double eta_s = rng.symmetric(leader_noise_[k].half_width());
            const double u = local ? u_round : group_control[k];
            auto out = leader_leader(v, vs, alpha_, scenario_.leaders[k].s_kernel,
                                     diffusion_, eta, eta_s, u);
            ++interactions_;
            if (out.accepted) {
                v = out.first;
                vs = out.second;
            } else {
                ++rejections_;
            }
        }
    }
}

void Simulator::check_domains() const {
    for (double w : followers_.opinions) {
        if (!(w >= -1.0 && w <= 1.0)) {
            throw std::runtime_error("invariant violation: follower opinion out of [-1,1]");
        }
    }
    for (double x : followers_.knowledge) {
        if (!(x >= 0.0)) {
            throw std::runtime_error("invariant violation: negative knowledge");
        }
    }
    for (const auto& g : groups_) {
        for (double v : g.opinions) {
            if (!(v >= -1.0 && v <= 1.0)) {
                throw std::runtime_error("invariant violation: leader opinion out of [-1,1]");
            }
        }
    }
}

void Simulator::step() {
    const MomentState frozen = estimate_moments();
    follower_phase();
    follower_leader_phase();
    leader_phase(frozen);
    ++step_index_;
}

RunRecord Simulator::run() {
    const auto n_steps = static_cast<std::uint64_t>(
        std::llround(scenario_.horizon / scaling_.dt()));
    std::vector<std::uint64_t> snap_steps;
    for (double t : scenario_.snapshot_times) {
        snap_steps.push_back(static_cast<std::uint64_t>(std::llround(t / scaling_.dt())));
    }

    RunRecord record;
    auto maybe_snapshot = [&](std::uint64_t s) {
        if (std::find(snap_steps.begin(), snap_steps.end(), s) == snap_steps.end()) {
            return;
        }
        Snapshot snap;
        snap.t = static_cast<double>(s) * scaling_.dt();
        snap.follower_hist =
            histogram(followers_.opinions, scenario_.bins, -1.0, 1.0);
        for (const auto& g : groups_) {
            snap.leader_hists.push_back(histogram(g.opinions, scenario_.bins, -1.0, 1.0));
        }
        if (scenario_.mode == Mode::heterogeneous) {
            const auto& kc = *scenario_.knowledge;
            double x_max = kc.lambda > kc.lambda_c
                               ? 2.0 * kc.lambda_b * kc.background_mean() /
                                     (kc.lambda - kc.lambda_c)
                               : kc.z_max;
            snap.grid = density_grid(followers_.opinions, followers_.knowledge,
                                     scenario_.bins, scenario_.bins, x_max);
        }
        record.snapshots.push_back(std::move(snap));
    };

    record.moments.push_back(estimate_moments());
    maybe_snapshot(0);
    for (std::uint64_t s = 0; s < n_steps; ++s) {
        step();
        check_domains();
        record.moments.push_back(estimate_moments());
        maybe_snapshot(s + 1);
    }
    record.interactions = interactions_;
    record.rejections = rejections_;
    return record;
}

}  // namespace opiniongame
