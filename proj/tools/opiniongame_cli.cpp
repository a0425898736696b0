// Command-line front end: scenario validation, preset runs, oracle
// comparison, and analytic stationary density tables.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "opiniongame/moments_oracle.hpp"
#include "opiniongame/output.hpp"
#include "opiniongame/scenario.hpp"
#include "opiniongame/simulator.hpp"
#include "opiniongame/stationary.hpp"

namespace og = opiniongame;
namespace fs = std::filesystem;

namespace {

struct ScenarioSource {
    std::string scenario_path;
    std::string preset_name;
    std::optional<std::uint64_t> seed;
    std::optional<int> threads;
    std::optional<double> horizon;
    std::optional<std::size_t> n_followers;
    std::optional<std::string> control;

    void attach(CLI::App* cmd) {
        auto* group = cmd->add_option_group("scenario source");
        group->add_option("--scenario", scenario_path, "scenario file path");
        group->add_option("--preset", preset_name,
                          "preset name (test1|test2a|test2b|test3)");
        group->require_option(1);
        cmd->add_option("--seed", seed, "random seed");
        cmd->add_option("--threads", threads, "worker threads (deterministic at any count)");
        cmd->add_option("--horizon", horizon, "override time horizon T");
        cmd->add_option("--n-followers", n_followers, "override follower count");
        cmd->add_option("--control", control,
                        "override control variant (game|control_only|local_average|limit)");
    }

    og::Scenario resolve() const {
        og::Scenario sc = scenario_path.empty() ? og::preset(preset_name)
                                                : og::load_scenario(scenario_path);
        if (seed) sc.seed = *seed;
        if (threads) sc.threads = *threads;
        if (horizon) sc.horizon = *horizon;
        if (n_followers) sc.n_followers = *n_followers;
        if (control) {
            if (*control == "game") sc.control = og::ControlVariant::game;
            else if (*control == "control_only") sc.control = og::ControlVariant::control_only;
            else if (*control == "local_average") sc.control = og::ControlVariant::local_average;
            else if (*control == "limit") sc.control = og::ControlVariant::limit;
            else throw std::runtime_error("control: unknown variant '" + *control + "'");
        }
        auto errors = og::validate(sc);
        if (!errors.empty()) {
            std::string msg = "scenario constraint violations:";
            for (const auto& e : errors) msg += "\n  " + e;
            throw std::runtime_error(msg);
        }
        return sc;
    }
};

void write_snapshots(const og::RunRecord& record, const fs::path& out) {
    for (const auto& snap : record.snapshots) {
        std::string stamp = std::to_string(snap.t);
        og::write_histogram(snap.follower_hist,
                            (out / ("followers_t" + stamp + ".csv")).string());
        for (std::size_t k = 0; k < snap.leader_hists.size(); ++k) {
            og::write_histogram(
                snap.leader_hists[k],
                (out / ("leaders" + std::to_string(k + 1) + "_t" + stamp + ".csv")).string());
        }
        if (snap.grid) {
            og::write_grid(*snap.grid, (out / ("grid_t" + stamp + ".csv")).string());
        }
    }
}

og::MeanSystemParams oracle_params(const og::Scenario& sc) {
    // scaled quantities; valid for the equal-penalty control form
    og::MeanSystemParams p;
    const auto scaling = sc.scaling();
    p.alpha = scaling.alpha();
    p.strategies = sc.strategies();
    const double nu0 = scaling.scaled_nu(sc.leaders.front().strategy.nu);
    p.beta = 4.0 * p.alpha * p.alpha / (nu0 + 4.0 * p.alpha * p.alpha);
    for (const auto& l : sc.leaders) {
        const double rho =
            sc.leader_fraction / (1.0 - sc.leader_fraction) /
            static_cast<double>(sc.leaders.size());
        p.rho.push_back(rho);
        p.c_fl.push_back(l.c_fl / (scaling.epsilon * rho));
        p.c_l.push_back(1.0 / (scaling.epsilon * rho));
    }
    return p;
}

int run_cmd(const ScenarioSource& src, const std::string& out_dir) {
    og::Scenario sc = src.resolve();
    fs::path out(out_dir);
    fs::create_directories(out);

    og::Simulator sim(sc);
    og::RunRecord record = sim.run();
    og::write_timeseries(record.moments, (out / "moments.csv").string());
    write_snapshots(record, out);
    og::save_scenario(sc, (out / "scenario.cfg").string());

    const auto& last = record.moments.back();
    std::cout << "steps: " << record.moments.size() - 1
              << "  interactions: " << record.interactions
              << "  rejections: " << record.rejections << "\n";
    std::cout << "final t = " << last.t << "  m_F = " << last.m_f;
    for (std::size_t k = 0; k < last.m_l.size(); ++k) {
        std::cout << "  m_L" << k + 1 << " = " << last.m_l[k];
    }
    std::cout << "\n";
    if (sc.mode == og::Mode::heterogeneous) {
        std::cout << "mean knowledge = " << last.mean_knowledge << "\n";
        auto q = og::knowledge_quartile_stats(sim.followers());
        std::cout << "quartile opinion means (low->high knowledge):";
        for (double v : q.quartile_means) std::cout << " " << v;
        std::cout << "\n";
    }
    std::cout << "wrote " << (out / "moments.csv").string() << "\n";
    return 0;
}

int validate_cmd(const std::string& path) {
    og::Scenario sc;
    try {
        sc = og::load_scenario(path);
    } catch (const std::exception& e) {
        std::cerr << "invalid: " << e.what() << "\n";
        return 2;
    }
    std::cout << "scenario valid: " << sc.leaders.size() << " leader group(s), "
              << sc.n_followers << " followers\n";
    return 0;
}

int compare_cmd(const ScenarioSource& src, const std::string& out_dir) {
    og::Scenario sc = src.resolve();
    fs::path out(out_dir);
    fs::create_directories(out);

    og::Simulator sim(sc);
    const auto init = sim.estimate_moments();
    og::RunRecord record = sim.run();
    og::write_timeseries(record.moments, (out / "mc_moments.csv").string());

    auto params = oracle_params(sc);
    og::MeanState y0{init.m_f, init.m_l};
    auto traj = og::integrate_means(y0, params, sc.horizon, sc.epsilon / 10.0);

    // oracle sampled at every MC step (dt = eps, oracle dt = eps/10)
    std::vector<og::MomentState> oracle_series;
    double sup_gap = 0.0;
    for (std::size_t i = 0; i < record.moments.size(); ++i) {
        const std::size_t j = std::min(i * 10, traj.states.size() - 1);
        og::MomentState s;
        s.t = traj.times[j];
        s.m_f = traj.states[j].m_f;
        s.m_l = traj.states[j].m_l;
        s.e_f = std::nan("");
        s.e_l.assign(s.m_l.size(), std::nan(""));
        oracle_series.push_back(s);
        sup_gap = std::max(sup_gap, std::abs(record.moments[i].m_f - s.m_f));
    }
    og::write_timeseries(oracle_series, (out / "oracle_moments.csv").string());
    std::cout << "sup |m_F(MC) - m_F(oracle)| = " << sup_gap << "\n";
    std::cout << "wrote " << (out / "mc_moments.csv").string() << " and "
              << (out / "oracle_moments.csv").string() << "\n";
    return 0;
}

int stationary_cmd(const ScenarioSource& src, const std::string& out_dir,
                   std::size_t points) {
    og::Scenario sc = src.resolve();
    fs::path out(out_dir);
    fs::create_directories(out);

    auto strategies = sc.strategies();
    auto vbar_opt = og::asymptotic_consensus(strategies);
    if (!vbar_opt) {
        std::cerr << "all-populist configuration: consensus determined by "
                     "initial data, no closed-form stationary state\n";
        return 2;
    }
    const double vbar = *vbar_opt;

    double sigma_f2 = sc.sigma_xi * sc.sigma_xi;
    for (const auto& l : sc.leaders) sigma_f2 += l.sigma_fl * l.sigma_fl;
    sigma_f2 /= 2.0;

    // m_L_inf from the mean ODE integrated to a long horizon
    auto params = oracle_params(sc);
    og::MeanState y0{0.0, {}};
    og::Simulator sim(sc);
    auto init = sim.estimate_moments();
    y0.m_f = init.m_f;
    y0.m_l = init.m_l;
    auto traj = og::integrate_means(y0, params, 200.0, 0.01);
    const auto& fin = traj.states.back();

    std::vector<double> grid(points);
    for (std::size_t i = 0; i < points; ++i) {
        grid[i] = -1.0 + 2.0 * (static_cast<double>(i) + 0.5) / static_cast<double>(points);
    }

    og::NormalizedStationary f({vbar, sigma_f2});
    std::vector<double> fv(points);
    for (std::size_t i = 0; i < points; ++i) fv[i] = f(grid[i]);
    og::write_density_table(grid, fv, (out / "stationary_followers.csv").string());
    std::cout << "followers: vbar = " << vbar << "  sigma_F^2 = " << sigma_f2
              << "  mean = " << f.mean() << "\n";

    std::vector<double> psi, targets;
    for (const auto& s : strategies) {
        psi.push_back(s.psi);
        targets.push_back(s.target);
    }
    for (std::size_t k = 0; k < sc.leaders.size(); ++k) {
        const double b = og::leader_shift(fin.m_l[k], psi, targets, vbar);
        const double s2 = sc.leaders[k].sigma_eta * sc.leaders[k].sigma_eta;
        og::NormalizedStationary g({b, s2});
        std::vector<double> gv(points);
        for (std::size_t i = 0; i < points; ++i) gv[i] = g(grid[i]);
        og::write_density_table(
            grid, gv,
            (out / ("stationary_leaders" + std::to_string(k + 1) + ".csv")).string());
        std::cout << "leaders " << k + 1 << ": b_L = " << b << "  sigma^2 = " << s2
                  << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Boltzmann-type opinion game Monte Carlo simulator"};
    app.require_subcommand(1);

    ScenarioSource run_src, compare_src, stationary_src;
    std::string run_out = "out", compare_out = "out", stationary_out = "out";
    std::string validate_path;
    std::size_t stationary_points = 400;

    auto* run = app.add_subcommand("run", "run a scenario and write results");
    run_src.attach(run);
    run->add_option("--out", run_out, "output directory");

    auto* validate = app.add_subcommand("validate", "validate a scenario file");
    validate->add_option("--scenario", validate_path, "scenario file path")->required();

    auto* presets = app.add_subcommand("presets", "list built-in presets");

    auto* compare = app.add_subcommand(
        "compare", "overlay Monte Carlo moments against the mean-opinion oracle");
    compare_src.attach(compare);
    compare->add_option("--out", compare_out, "output directory");

    auto* stationary = app.add_subcommand(
        "stationary", "emit analytic stationary density tables");
    stationary_src.attach(stationary);
    stationary->add_option("--out", stationary_out, "output directory");
    stationary->add_option("--points", stationary_points, "grid points per table");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return run_cmd(run_src, run_out);
        if (validate->parsed()) return validate_cmd(validate_path);
        if (presets->parsed()) {
            for (const auto& name : og::preset_names()) std::cout << name << "\n";
            return 0;
        }
        if (compare->parsed()) return compare_cmd(compare_src, compare_out);
        if (stationary->parsed()) {
            return stationary_cmd(stationary_src, stationary_out, stationary_points);
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
