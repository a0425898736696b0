#include <benchmark/benchmark.h>

#include <vector>

#include "opiniongame/best_reply.hpp"
#include "opiniongame/binary_engine.hpp"
#include "opiniongame/rng.hpp"
#include "opiniongame/simulator.hpp"
#include "opiniongame/stationary.hpp"

using namespace opiniongame;

namespace {

std::vector<StrategyParams> random_strategies(std::size_t m, Stream& rng) {
    std::vector<StrategyParams> s;
    for (std::size_t k = 0; k < m; ++k) {
        double psi = rng.uniform(0.0, 1.0);
        double nu = 4.0 * (static_cast<double>(m) - 2.0) * 0.01 +
                    rng.uniform(0.1, 2.0);
        s.push_back({psi, 1.0 - psi, nu, rng.uniform(-1.0, 1.0)});
    }
    return s;
}

void bm_solve_controls(benchmark::State& state) {
    const auto m = static_cast<std::size_t>(state.range(0));
    Stream rng(17, m, 0, 0);
    ControlSystem sys(random_strategies(m, rng), 0.1);
    std::vector<double> f(m);
    for (auto& v : f) v = rng.uniform(-2.0, 2.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(sys.solve_controls(f));
    }
}
BENCHMARK(bm_solve_controls)->Arg(1)->Arg(2)->Arg(4)->Arg(8);

void bm_follower_follower(benchmark::State& state) {
    const auto kernel = KernelSpec::bounded_confidence(0.5);
    const auto diff = DiffusionSpec::quadratic_cap();
    Stream rng(23, 0, 0, 0);
    for (auto _ : state) {
        double w = rng.uniform(-1.0, 1.0);
        double ws = rng.uniform(-1.0, 1.0);
        benchmark::DoNotOptimize(
            follower_follower(w, ws, 0.0, 0.0, 0.01, kernel, diff, 0.0, 0.0));
    }
}
BENCHMARK(bm_follower_follower);

void bm_simulator_step(benchmark::State& state) {
    auto sc = preset(state.range(1) == 0 ? "test1" : "test3");
    sc.n_followers = static_cast<std::size_t>(state.range(0));
    Simulator sim(sc);
    for (auto _ : state) {
        sim.step();
    }
    state.SetItemsProcessed(state.iterations() *
                            static_cast<std::int64_t>(sc.n_followers));
}
BENCHMARK(bm_simulator_step)
    ->Args({10000, 0})
    ->Args({100000, 0})
    ->Args({10000, 1})
    ->Args({100000, 1});

void bm_stationary_density(benchmark::State& state) {
    NormalizedStationary dens({0.3, 0.01});
    for (auto _ : state) {
        double s = 0.0;
        for (int i = 0; i < 1000; ++i) {
            s += dens(-0.999 + 1.998 * i / 999.0);
        }
        benchmark::DoNotOptimize(s);
    }
}
BENCHMARK(bm_stationary_density);

}  // namespace

BENCHMARK_MAIN();
