#include "opiniongame/scenario.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "opiniongame/binary_engine.hpp"

namespace opiniongame {

std::vector<StrategyParams> Scenario::strategies() const {
    std::vector<StrategyParams> out;
    out.reserve(leaders.size());
    for (const auto& l : leaders) out.push_back(l.strategy);
    return out;
}

namespace {

std::string kernel_to_string(const KernelSpec& k) {
    std::ostringstream os;
    os.precision(17);
    switch (k.kind) {
        case KernelSpec::Kind::unit: os << "unit"; break;
        case KernelSpec::Kind::bounded_confidence: os << "bc " << k.delta; break;
        case KernelSpec::Kind::knowledge_gap: os << "kgap " << k.a; break;
        case KernelSpec::Kind::product:
            os << "product " << k.delta << " " << k.a;
            break;
    }
    return os.str();
}

KernelSpec kernel_from_string(const std::string& s, const std::string& field) {
    std::istringstream is(s);
    std::string tag;
    is >> tag;
    if (tag == "unit") return KernelSpec::unit();
    if (tag == "bc") {
        double delta;
        if (is >> delta) return KernelSpec::bounded_confidence(delta);
    } else if (tag == "kgap") {
        double a;
        if (is >> a) return KernelSpec::knowledge_gap(a);
    } else if (tag == "product") {
        double delta, a;
        if (is >> delta >> a) return KernelSpec::product(delta, a);
    }
    throw std::runtime_error(field + ": unknown kernel '" + s + "'");
}

std::string init_to_string(const InitLaw& l) {
    std::ostringstream os;
    os.precision(17);
    switch (l.kind) {
        case InitLaw::Kind::uniform: os << "uniform " << l.a << " " << l.b; break;
        case InitLaw::Kind::normal: os << "normal " << l.a << " " << l.b; break;
        case InitLaw::Kind::constant: os << "constant " << l.a; break;
    }
    return os.str();
}

InitLaw init_from_string(const std::string& s, const std::string& field) {
    std::istringstream is(s);
    std::string tag;
    is >> tag;
    if (tag == "uniform") {
        double a, b;
        if (is >> a >> b) return InitLaw::uniform(a, b);
    } else if (tag == "normal") {
        double a, b;
        if (is >> a >> b) return InitLaw::normal(a, b);
    } else if (tag == "constant") {
        double a;
        if (is >> a) return InitLaw::constant(a);
    }
    throw std::runtime_error(field + ": unknown initial law '" + s + "'");
}

void check_kernel(const KernelSpec& k, const std::string& field,
                  std::vector<std::string>& errors) {
    if (k.kind == KernelSpec::Kind::bounded_confidence ||
        k.kind == KernelSpec::Kind::product) {
        if (k.delta < 0.0 || k.delta > 2.0) {
            errors.push_back(field + ": bounded-confidence threshold must be in [0,2]");
        }
    }
    if (k.has_knowledge_part() && !(k.a > 1.0)) {
        errors.push_back(field + ": knowledge-gap steepness requires a > 1");
    }
}

void check_opinion_init(const InitLaw& l, const std::string& field,
                        std::vector<std::string>& errors) {
    switch (l.kind) {
        case InitLaw::Kind::uniform:
            if (l.a >= l.b || l.a < -1.0 || l.b > 1.0) {
                errors.push_back(field + ": uniform law must satisfy -1 <= lo < hi <= 1");
            }
            break;
        case InitLaw::Kind::normal:
            if (l.b < 0.0 || l.a < -1.0 || l.a > 1.0) {
                errors.push_back(field + ": normal law needs mean in [-1,1], sd >= 0");
            }
            break;
        case InitLaw::Kind::constant:
            if (l.a < -1.0 || l.a > 1.0) {
                errors.push_back(field + ": constant opinion must lie in [-1,1]");
            }
            break;
    }
}

}  // namespace

std::vector<std::string> validate(const Scenario& sc) {
    std::vector<std::string> errors;
    const auto m = sc.leaders.size();

    if (!(sc.epsilon > 0.0 && sc.epsilon <= 1.0)) {
        errors.push_back("epsilon: must lie in (0,1]");
    }
    if (!(sc.horizon > 0.0)) errors.push_back("horizon: must be positive");
    if (sc.n_followers < 2) errors.push_back("n_followers: need at least 2");
    if (!(sc.leader_fraction > 0.0 && sc.leader_fraction < 1.0)) {
        errors.push_back("leader_fraction: must lie in (0,1)");
    }
    if (m == 0) errors.push_back("groups: need at least one leader group");
    if (sc.bins == 0) errors.push_back("bins: must be positive");
    if (sc.threads < 1) errors.push_back("threads: must be >= 1");
    if (sc.sigma_xi < 0.0) errors.push_back("follower.sigma: must be >= 0");
    check_kernel(sc.p_kernel, "follower.kernel", errors);
    check_opinion_init(sc.follower_init, "follower.init", errors);

    const ScalingConfig scaling = sc.scaling();
    const double alpha = scaling.alpha();

    for (std::size_t k = 0; k < m; ++k) {
        const auto& l = sc.leaders[k];
        const std::string tag = "leader" + std::to_string(k + 1);
        if (!(l.strategy.psi >= 0.0 && l.strategy.psi <= 1.0)) {
            errors.push_back(tag + ".psi: must lie in [0,1]");
        }
        if (std::abs(l.strategy.psi + l.strategy.mu - 1.0) > 1e-12) {
            errors.push_back(tag + ": psi + mu must equal 1");
        }
        if (!(l.strategy.nu > 0.0)) errors.push_back(tag + ".nu: must be positive");
        if (l.strategy.target < -1.0 || l.strategy.target > 1.0) {
            errors.push_back(tag + ".target: must lie in [-1,1]");
        }
        if (!(l.c_fl > 0.0 && l.c_fl <= 1.0)) {
            errors.push_back(tag + ".c_fl: per-step probability must lie in (0,1]");
        }
        if (l.sigma_eta < 0.0) errors.push_back(tag + ".sigma: must be >= 0");
        if (l.sigma_fl < 0.0) errors.push_back(tag + ".sigma_fl: must be >= 0");
        check_kernel(l.s_kernel, tag + ".kernel", errors);
        check_kernel(l.r_kernel, tag + ".r_kernel", errors);
        check_opinion_init(l.init, tag + ".init", errors);
    }
    if (!errors.empty()) return errors;

    // Well-posedness of the best-reply system under the scaled parameters
    // (suffcondm), and the equivalent time-step bound (suffcond2).
    std::vector<StrategyParams> scaled = sc.strategies();
    for (auto& s : scaled) s.nu = scaling.scaled_nu(s.nu);
    ControlSystem sys(scaled, alpha);
    if (!sys.well_posed()) {
        errors.push_back(
            "control system: nu^k > 4(M-2)alpha^2 violated under scaling; "
            "best-reply system is not well-posed");
    }
    if (m >= 2) {
        for (std::size_t k = 0; k < m; ++k) {
            const double bound =
                std::sqrt(scaled[k].nu / static_cast<double>(m - 1));
            if (!(scaling.dt() < bound)) {
                errors.push_back("leader" + std::to_string(k + 1) +
                                 ".nu: time step dt = epsilon violates dt < "
                                 "sqrt(nu/(M-1)) under scaling");
            }
        }
    }

    const DiffusionSpec diffusion = DiffusionSpec::quadratic_cap();
    auto check_noise = [&](double sigma, NoiseRule rule, double control_bound,
                           const std::string& field) {
        const double hw = NoiseSpec{scaling.scaled_sigma2(sigma)}.half_width();
        auto interval = admissible_noise_bounds(diffusion, alpha, control_bound, rule);
        if (interval.empty() || !interval.contains(hw)) {
            errors.push_back(field + ": noise support incompatible with bound preservation");
        }
    };
    check_noise(sc.sigma_xi, NoiseRule::follower, 0.0, "follower.sigma");

    for (std::size_t k = 0; k < m; ++k) {
        const std::string tag = "leader" + std::to_string(k + 1);
        check_noise(sc.leaders[k].sigma_fl, NoiseRule::follower_leader, 0.0,
                    tag + ".sigma_fl");
        // control_bound = 0: the noise alone must be admissible; the control
        // shift is handled by rejection of out-of-domain interactions.
        check_noise(sc.leaders[k].sigma_eta, NoiseRule::leader, 0.0,
                    tag + ".sigma");
    }

    if (sc.mode == Mode::heterogeneous) {
        if (!sc.knowledge) {
            errors.push_back("knowledge: required in heterogeneous mode");
        } else {
            const auto& kc = *sc.knowledge;
            if (!(kc.lambda_minus > 0.0 && kc.lambda_plus < 1.0 &&
                  kc.lambda_minus <= kc.lambda_plus)) {
                errors.push_back("knowledge.lambda bounds: need 0 < lambda- <= lambda+ < 1");
            }
            if (kc.lambda < kc.lambda_minus || kc.lambda > kc.lambda_plus) {
                errors.push_back("knowledge.lambda: must lie in [lambda-, lambda+]");
            }
            if (kc.lambda_c < 0.0 || kc.lambda_c > 1.0 || kc.lambda_b < 0.0 ||
                kc.lambda_b > 1.0) {
                errors.push_back("knowledge.lambda_c/lambda_b: must lie in [0,1]");
            }
            if (!(kc.z_max > 0.0)) errors.push_back("knowledge.z_max: must be positive");
            if (!(kc.a > 1.0)) errors.push_back("knowledge.a: requires a > 1");
            if (!(kc.gamma > 0.0) || !(kc.varsigma > 0.0)) {
                errors.push_back("knowledge.gamma/varsigma: must be positive");
            }
            const double hw =
                std::sqrt(3.0 * scaling.scaled_sigma2_kappa(kc.sigma_kappa));
            if (!(-hw >= -1.0 + kc.lambda_plus)) {
                errors.push_back(
                    "knowledge.sigma_kappa: noise support violates kappa >= -1 + lambda+");
            }
            if (kc.init.kind != InitLaw::Kind::constant && kc.init.a < 0.0) {
                errors.push_back("knowledge.init: knowledge must be nonnegative");
            }
        }
    }
    return errors;
}

namespace {

std::map<std::string, std::string> read_kv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open scenario file: " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto strip = [](std::string s) {
            auto b = s.find_first_not_of(" \t\r");
            auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
        };
        if (strip(line).empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::runtime_error("parse error at line " +
                                     std::to_string(lineno) + ": expected key = value");
        }
        kv[strip(line.substr(0, eq))] = strip(line.substr(eq + 1));
    }
    return kv;
}

double to_double(const std::map<std::string, std::string>& kv,
                 const std::string& key, double fallback) {
    auto it = kv.find(key);
    if (it == kv.end()) return fallback;
    try {
        return std::stod(it->second);
    } catch (const std::exception&) {
        throw std::runtime_error(key + ": not a number: '" + it->second + "'");
    }
}

std::string get(const std::map<std::string, std::string>& kv,
                const std::string& key, const std::string& fallback) {
    auto it = kv.find(key);
    return it == kv.end() ? fallback : it->second;
}

}  // namespace

Scenario load_scenario(const std::string& path) {
    auto kv = read_kv(path);
    Scenario sc;

    std::string mode = get(kv, "mode", "homogeneous");
    if (mode == "homogeneous") sc.mode = Mode::homogeneous;
    else if (mode == "heterogeneous") sc.mode = Mode::heterogeneous;
    else throw std::runtime_error("mode: expected homogeneous|heterogeneous");

    std::string control = get(kv, "control", "game");
    if (control == "game") sc.control = ControlVariant::game;
    else if (control == "control_only") sc.control = ControlVariant::control_only;
    else if (control == "local_average") sc.control = ControlVariant::local_average;
    else if (control == "limit") sc.control = ControlVariant::limit;
    else throw std::runtime_error("control: expected game|control_only|local_average|limit");

    sc.epsilon = to_double(kv, "epsilon", sc.epsilon);
    sc.horizon = to_double(kv, "horizon", sc.horizon);
    sc.n_followers = static_cast<std::size_t>(to_double(kv, "n_followers", 100000));
    sc.leader_fraction = to_double(kv, "leader_fraction", sc.leader_fraction);
    sc.bins = static_cast<std::size_t>(to_double(kv, "bins", 50));
    sc.seed = static_cast<std::uint64_t>(to_double(kv, "seed", 0));
    sc.threads = static_cast<int>(to_double(kv, "threads", 1));
    sc.sigma_xi = to_double(kv, "follower.sigma", sc.sigma_xi);
    sc.p_kernel = kernel_from_string(get(kv, "follower.kernel", "unit"),
                                     "follower.kernel");
    sc.follower_init =
        init_from_string(get(kv, "follower.init", "uniform -1 1"), "follower.init");

    if (auto it = kv.find("snapshots"); it != kv.end()) {
        std::istringstream is(it->second);
        std::string tok;
        while (std::getline(is, tok, ',')) {
            sc.snapshot_times.push_back(std::stod(tok));
        }
    }

    auto groups = static_cast<std::size_t>(to_double(kv, "groups", 0));
    if (groups == 0) throw std::runtime_error("groups: required, must be >= 1");
    for (std::size_t k = 1; k <= groups; ++k) {
        const std::string tag = "leader" + std::to_string(k);
        LeaderConfig lc;
        lc.strategy.psi = to_double(kv, tag + ".psi", 0.5);
        lc.strategy.mu = 1.0 - lc.strategy.psi;
        lc.strategy.nu = to_double(kv, tag + ".nu", 0.1);
        lc.strategy.target = to_double(kv, tag + ".target", 0.0);
        lc.c_fl = to_double(kv, tag + ".c_fl", 0.1);
        lc.sigma_eta = to_double(kv, tag + ".sigma", 0.01);
        lc.sigma_fl = to_double(kv, tag + ".sigma_fl", 0.01);
        lc.s_kernel = kernel_from_string(get(kv, tag + ".kernel", "unit"),
                                         tag + ".kernel");
        lc.r_kernel = kernel_from_string(get(kv, tag + ".r_kernel", "unit"),
                                         tag + ".r_kernel");
        lc.init = init_from_string(
            get(kv, tag + ".init", "normal 0 0.05"), tag + ".init");
        sc.leaders.push_back(lc);
    }

    if (sc.mode == Mode::heterogeneous || kv.count("knowledge.lambda") != 0) {
        KnowledgeConfig kc;
        kc.lambda = to_double(kv, "knowledge.lambda", kc.lambda);
        kc.lambda_c = to_double(kv, "knowledge.lambda_c", kc.lambda_c);
        kc.lambda_b = to_double(kv, "knowledge.lambda_b", kc.lambda_b);
        kc.lambda_minus = to_double(kv, "knowledge.lambda_minus", kc.lambda);
        kc.lambda_plus = to_double(kv, "knowledge.lambda_plus", kc.lambda);
        kc.sigma_kappa = to_double(kv, "knowledge.sigma_kappa", kc.sigma_kappa);
        kc.z_max = to_double(kv, "knowledge.z_max", kc.z_max);
        kc.a = to_double(kv, "knowledge.a", kc.a);
        kc.gamma = to_double(kv, "knowledge.gamma", kc.gamma);
        kc.varsigma = to_double(kv, "knowledge.varsigma", kc.varsigma);
        kc.init = init_from_string(get(kv, "knowledge.init", "uniform 0 0.1"),
                                   "knowledge.init");
        sc.knowledge = kc;
    }

    auto errors = validate(sc);
    if (!errors.empty()) {
        std::string msg = "scenario constraint violations:";
        for (const auto& e : errors) msg += "\n  " + e;
        throw std::runtime_error(msg);
    }
    return sc;
}

void save_scenario(const Scenario& sc, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write scenario file: " + path);
    out.precision(17);
    out << "mode = "
        << (sc.mode == Mode::homogeneous ? "homogeneous" : "heterogeneous") << "\n";
    const char* control = "game";
    switch (sc.control) {
        case ControlVariant::game: control = "game"; break;
        case ControlVariant::control_only: control = "control_only"; break;
        case ControlVariant::local_average: control = "local_average"; break;
        case ControlVariant::limit: control = "limit"; break;
    }
    out << "control = " << control << "\n";
    out << "epsilon = " << sc.epsilon << "\n";
    out << "horizon = " << sc.horizon << "\n";
    out << "n_followers = " << sc.n_followers << "\n";
    out << "leader_fraction = " << sc.leader_fraction << "\n";
    out << "bins = " << sc.bins << "\n";
    out << "seed = " << sc.seed << "\n";
    out << "threads = " << sc.threads << "\n";
    if (!sc.snapshot_times.empty()) {
        out << "snapshots = ";
        for (std::size_t i = 0; i < sc.snapshot_times.size(); ++i) {
            out << (i ? ", " : "") << sc.snapshot_times[i];
        }
        out << "\n";
    }
    out << "follower.kernel = " << kernel_to_string(sc.p_kernel) << "\n";
    out << "follower.sigma = " << sc.sigma_xi << "\n";
    out << "follower.init = " << init_to_string(sc.follower_init) << "\n";
    out << "groups = " << sc.leaders.size() << "\n";
    for (std::size_t k = 0; k < sc.leaders.size(); ++k) {
        const auto& l = sc.leaders[k];
        const std::string tag = "leader" + std::to_string(k + 1);
        out << tag << ".target = " << l.strategy.target << "\n";
        out << tag << ".psi = " << l.strategy.psi << "\n";
        out << tag << ".nu = " << l.strategy.nu << "\n";
        out << tag << ".c_fl = " << l.c_fl << "\n";
        out << tag << ".sigma = " << l.sigma_eta << "\n";
        out << tag << ".sigma_fl = " << l.sigma_fl << "\n";
        out << tag << ".kernel = " << kernel_to_string(l.s_kernel) << "\n";
        out << tag << ".r_kernel = " << kernel_to_string(l.r_kernel) << "\n";
        out << tag << ".init = " << init_to_string(l.init) << "\n";
    }
    if (sc.knowledge) {
        const auto& kc = *sc.knowledge;
        out << "knowledge.lambda = " << kc.lambda << "\n";
        out << "knowledge.lambda_c = " << kc.lambda_c << "\n";
        out << "knowledge.lambda_b = " << kc.lambda_b << "\n";
        out << "knowledge.lambda_minus = " << kc.lambda_minus << "\n";
        out << "knowledge.lambda_plus = " << kc.lambda_plus << "\n";
        out << "knowledge.sigma_kappa = " << kc.sigma_kappa << "\n";
        out << "knowledge.z_max = " << kc.z_max << "\n";
        out << "knowledge.a = " << kc.a << "\n";
        out << "knowledge.gamma = " << kc.gamma << "\n";
        out << "knowledge.varsigma = " << kc.varsigma << "\n";
        out << "knowledge.init = " << init_to_string(kc.init) << "\n";
    }
}

Scenario preset(const std::string& name) {
    Scenario sc;
    sc.epsilon = 0.01;
    sc.n_followers = 100000;
    sc.leader_fraction = 0.1;
    sc.sigma_xi = 0.01;

    auto leader = [](double target, double psi, double nu, const KernelSpec& r,
                     const InitLaw& init) {
        LeaderConfig lc;
        lc.strategy = {psi, 1.0 - psi, nu, target};
        lc.s_kernel = KernelSpec::unit();
        lc.r_kernel = r;
        lc.c_fl = 0.1;
        lc.sigma_eta = 0.01;
        lc.sigma_fl = 0.01;
        lc.init = init;
        return lc;
    };

    if (name == "test1") {
        sc.horizon = 10.0;
        sc.p_kernel = KernelSpec::bounded_confidence(0.75);
        sc.follower_init = InitLaw::uniform(-1.0, 1.0);
        auto r = KernelSpec::bounded_confidence(0.75);
        // leaders start concentrated near the opposite of their target
        sc.leaders.push_back(leader(0.5, 0.5, 0.1, r, InitLaw::normal(-0.5, 0.05)));
        sc.leaders.push_back(leader(-0.5, 0.5, 0.1, r, InitLaw::normal(0.5, 0.05)));
        sc.snapshot_times = {0.0, 5.0, 10.0};
    } else if (name == "test2a" || name == "test2b") {
        sc.horizon = 10.0;
        sc.p_kernel = KernelSpec::bounded_confidence(0.25);
        sc.follower_init = InitLaw::uniform(0.0, 0.75);
        auto r = KernelSpec::bounded_confidence(0.25);
        const bool uniform_nu = (name == "test2a");
        const double nu1 = uniform_nu ? 0.5 : 0.05;
        const double nu23 = uniform_nu ? 0.5 : 0.15;
        sc.leaders.push_back(leader(-0.5, 0.05, nu1, r, InitLaw::normal(-0.5, 0.1)));
        sc.leaders.push_back(leader(0.0, 0.5, nu23, r, InitLaw::normal(0.0, 0.1)));
        sc.leaders.push_back(leader(0.5, 0.95, nu23, r, InitLaw::normal(0.5, 0.1)));
        sc.snapshot_times = {0.0, 5.0, 10.0};
    } else if (name == "test3") {
        sc.mode = Mode::heterogeneous;
        // Each group applies its own decoupled control here: the leaders'
        // credibility split (the populist group chases m_F and drifts from
        // its initial mean, the radical group holds position) only arises
        // when the groups move independently. The horizon covers the phase
        // in which the growing knowledge crosses the populist group's
        // credibility level.
        sc.control = ControlVariant::control_only;
        sc.horizon = 40.0;
        sc.p_kernel = KernelSpec::knowledge_gap(50.0);
        sc.follower_init = InitLaw::uniform(-1.0, 1.0);
        auto r = KernelSpec::knowledge_gap(50.0);
        sc.leaders.push_back(leader(0.5, 0.1, 0.5, r, InitLaw::normal(0.5, 0.05)));
        sc.leaders.push_back(leader(-0.5, 0.75, 0.1, r, InitLaw::normal(-0.5, 0.05)));
        KnowledgeConfig kc;
        kc.lambda = 0.01;
        kc.lambda_c = 0.005;
        kc.lambda_b = 0.005;
        kc.lambda_minus = 0.01;
        kc.lambda_plus = 0.01;
        kc.sigma_kappa = 2.5e-3;
        kc.z_max = 10.0;
        kc.a = 50.0;
        kc.gamma = 0.75;
        kc.varsigma = 0.001;
        // low initial knowledge relative to the background scale z_max = 10
        kc.init = InitLaw::uniform(0.0, 1.0);
        sc.knowledge = kc;
        sc.snapshot_times = {0.0, 10.0, 20.0, 40.0};
    } else {
        throw std::runtime_error("unknown preset: " + name);
    }
    return sc;
}

std::vector<std::string> preset_names() {
    return {"test1", "test2a", "test2b", "test3"};
}

}  // namespace opiniongame
