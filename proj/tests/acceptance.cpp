// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "veldrift/config.hpp"
#include "veldrift/diffusion.hpp"
#include "veldrift/ensemble.hpp"
#include "veldrift/evolve.hpp"
#include "veldrift/fokker_planck.hpp"
#include "veldrift/gravity.hpp"
#include "veldrift/measurement.hpp"
#include "veldrift/runner.hpp"
#include "veldrift/split_consistency.hpp"
#include "veldrift/stats.hpp"

using namespace veldrift;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

struct Criterion {
    int id;
    const char* name;
    double budget_s;  ///< 0: no runtime limit
    std::function<Outcome()> check;
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

std::vector<double> column(const std::vector<MomentRecord>& rs, double MomentRecord::*field) {
    std::vector<double> out;
    for (const auto& r : rs) out.push_back(r.*field);
    return out;
}

const DiffusionModel kModel = DiffusionModel::make(1.0, 1.0, 100.0);

// Shared by criteria 1 and 3.
const FpRun& free_run() {
    static const FpRun run = [] {
        const auto grid = default_grid(kModel, std::nullopt, 0.0, 0.5, 10.0);
        return evolve(DistributionState::gaussian(grid, 0.0, 0.5), grid, kModel, std::nullopt,
                      EvolveOptions{10.0, 0.5, std::nullopt, 1});
    }();
    return run;
}

Outcome drift_law() {
    const auto& rs = free_run().records;
    const double slope = fit_line(column(rs, &MomentRecord::time), column(rs, &MomentRecord::mean)).slope;
    const double err = relative_error(slope, -5.00e-3);
    return {std::abs(err) <= 0.01, fmt("fitted d<v>/dt = %.6e, rel. error %.2e (tol 1e-2)", slope, err)};
}

Outcome sde_fp_agreement() {
    const auto grid = default_grid(kModel, std::nullopt, 0.0, 0.5, 10.0);
    const EvolveOptions opt{10.0, 1.0, std::nullopt, 1};
    const auto fp = evolve(DistributionState::gaussian(grid, 0.0, 0.5), grid, kModel, std::nullopt, opt);
    EvolveOptions sde_opt = opt;
    sde_opt.max_dt = 0.01;
    const auto sde = evolve(EnsembleState::gaussian(100000, 0.0, 0.5, kDefaultSeed), kModel, std::nullopt, sde_opt);
    double worst = 0.0;
    int checkpoints = 0;
    for (std::size_t i = 1; i < fp.records.size(); ++i) {
        const auto& a = fp.records[i];
        const auto& b = sde.sampled[i];
        worst = std::max({worst, std::abs(b.mean - a.mean) / b.se_mean, std::abs(b.variance - a.variance) / b.se_variance});
        ++checkpoints;
    }
    return {worst < 3.0 && checkpoints == 10,
            fmt("%.0f checkpoints, N = 1e5, max |z| = %.3f (limit 3)", checkpoints, worst)};
}

Outcome heating_law() {
    const auto& rs = free_run().records;
    const double slope = fit_line(column(rs, &MomentRecord::time), column(rs, &MomentRecord::variance)).slope;
    double expected = 0.0;
    for (const auto& r : rs) expected += theoretical_heating_rate(kModel, r.mean);
    expected /= static_cast<double>(rs.size());
    const double err = relative_error(slope, expected);
    return {std::abs(err) <= 0.01, fmt("d(w^2)/dt = %.6f vs 2<D> = %.6f, rel. error %.2e", slope, expected, err)};
}

Outcome friction_stationarity() {
    const auto f = FrictionModel::fixed(0.1, 0.0);
    const auto grid = default_grid(kModel, f, 0.0, 0.5, 200.0);
    const auto run = evolve(DistributionState::gaussian(grid, 0.0, 0.5), grid, kModel, f,
                            EvolveOptions{200.0, 200.0, std::nullopt, 1});
    const auto& last = run.records.back();
    const double var_err = relative_error(last.variance, 5.0);
    const double mean_err = relative_error(last.mean, theoretical_drift(kModel) / 0.1);
    return {std::abs(var_err) <= 0.01 && std::abs(mean_err) <= 0.02,
            fmt("variance %.5f (rel. %.2e vs 5.0), mean %.6f", last.variance, var_err, last.mean) +
                fmt(" (rel. %.2e vs a/gamma)", mean_err)};
}

Outcome self_consistent_suppression() {
    const auto f = FrictionModel::self_consistent(0.1);
    const double w0_sq = stationary_variance(kModel, f, 0.0);
    const auto grid = default_grid(kModel, f, 0.0, std::sqrt(w0_sq), 100.0);
    const auto run = evolve(DistributionState::gaussian(grid, 0.0, std::sqrt(w0_sq)), grid, kModel, f,
                            EvolveOptions{100.0, 2.0, std::nullopt, 1});
    const auto& rs = run.records;
    const double slope = fit_line(column(rs, &MomentRecord::time), column(rs, &MomentRecord::mean)).slope;
    const double drift_err = relative_error(slope, -5.00e-3);
    double worst = 0.0;
    for (const auto& r : rs) worst = std::max(worst, std::abs(relative_error(r.variance, w0_sq)));
    return {std::abs(drift_err) <= 0.02 && worst <= 0.01,
            fmt("d<v>/dt = %.6e (rel. %.2e), max |w^2/w0^2 - 1| = %.2e", slope, drift_err, worst)};
}

Outcome newton_chain_check() {
    const auto& k = kCodata;
    const double mass = 5.972e24, radius = 6.371e6;
    const double a = measured_acceleration(MacroObject{mass, {}, {}, {}, {}}, radius, k);
    const double half = -k.G * mass / (2.0 * radius * radius);
    const double chain_err = std::abs(relative_error(a, half));
    const double direct = k.G * mass / (radius * radius);
    const double g_err = std::abs(relative_error(std::abs(2.0 * a), direct));
    const double g_vs_reference = std::abs(relative_error(std::abs(2.0 * a), 9.82));

    std::vector<double> masses{1e10, 1e15, 1e20, 1e25, 1e30}, am;
    for (double m : masses) am.push_back(measured_acceleration(MacroObject{m, {}, {}, {}, {}}, radius, k));
    std::vector<double> radii{1e6, 1e7, 1e8, 1e9, 1e10}, ar;
    for (double r : radii) ar.push_back(measured_acceleration(MacroObject{mass, {}, {}, {}, {}}, r, k));
    const double mass_exp = log_log_slope(masses, am);
    const double dist_exp = log_log_slope(radii, ar);
    const bool pass = chain_err <= 1e-12 && g_err <= 1e-3 && g_vs_reference <= 1e-3 &&
                      std::abs(mass_exp - 1.0) <= 1e-12 && std::abs(dist_exp + 2.0) <= 1e-12;
    return {pass, fmt("rel. error vs -GM/(2r^2) %.1e, |2a| = %.4f m/s^2, ", chain_err, std::abs(2.0 * a)) +
                      fmt("exponents %.15f, %.15f", mass_exp, dist_exp)};
}

Outcome momentum_split() {
    const auto& k = kCodata;
    const double me = 5.972e24, mm = 7.342e22;
    const auto pair = BodyPair::make(MacroObject{me, {}, {}, {}, {}}, MacroObject{mm, {}, {}, {}, {}}, 3.844e8, k);
    const auto s = split_accelerations(pair, relative_measured_acceleration(pair, k));
    const double residual = std::abs(me * s.a_prime_a + mm * s.a_prime_b) / (me * std::abs(s.a_prime_a));
    return {residual <= 1e-12, fmt("|M_A a'_A + M_B a'_B| / |M_A a'_A| = %.2e", residual)};
}

Outcome reference_numbers() {
    const auto& k = kCodata;
    const double t_a = trembling_temperature(5.972e24, k);
    const MacroObject water{1e-3, 1000.0, 0.01, 300.0, {}};
    const double recoil = recoil_ratio(water, wien_peak_angular_frequency(300.0, k), k);
    const double mp_g = planck_mass(k) * 1e3;
    const bool pass = std::abs(relative_error(t_a, 0.52)) <= 0.05 && recoil / 1e-6 <= 5.0 && 1e-6 / recoil <= 5.0 &&
                      std::abs(relative_error(mp_g, 2e-5)) <= 0.10;
    return {pass, fmt("T_A = %.4f K, recoil ratio = %.3e, m_P = %.4e g", t_a, recoil, mp_g)};
}

Outcome measurement_toy() {
    using namespace measurement;
    const auto init = initial_state(0.5, 0.5);
    const auto fin = decohere(entangle(init));
    DensityMatrix expected = DensityMatrix::Zero();
    expected(2, 2) = 0.5;
    expected(3, 3) = 0.5;
    const double matrix_err = (fin.rho() - expected).cwiseAbs().maxCoeff();
    Substream rng(kDefaultSeed, 0);
    int hits = 0;
    constexpr int n = 100000;
    for (int i = 0; i < n; ++i) hits += collapse_sample(fin, rng).branch == Branch::F1S1;
    const double freq = static_cast<double>(hits) / n;
    const bool pass = matrix_err <= 1e-15 && std::abs(freq - 0.5) <= 0.005 &&
                      std::abs(init.purity() - 1.0) <= 1e-14 && std::abs(fin.purity() - 0.5) <= 1e-14;
    return {pass, fmt("max |rho - diag(0,0,1/2,1/2)| = %.1e, f(f1S1) = %.5f, purity %.3f", matrix_err, freq,
                      init.purity()) +
                      fmt(" -> %.3f", fin.purity())};
}

Outcome appendix_d() {
    using namespace split;
    bool identity = true;
    Substream rng(kDefaultSeed, 1);
    for (int i = 0; i < 10000; ++i) {
        const double a = rng.normal(), b = rng.normal(), d = 10.0 * rng.normal();
        const UpdateRecord u{a, b, d, -d};
        const double inc = com_increment(u);
        identity = identity && std::abs(inc - (a + b)) <= 1e-12 * std::max(1.0, std::abs(a + b) + std::abs(d));
    }
    const auto r = com_variance_experiment(SplitScenario::with_alpha(1.0, 1.0, 1, 100000));
    const double naive_se = r.naive_predicted * std::sqrt(2.0 / static_cast<double>(r.n_samples - 1));
    const double naive_z = (r.naive_var_per_tau - r.naive_predicted) / naive_se;
    const bool pass = identity && std::abs(r.z_score) < 3.0 && std::abs(naive_z) < 3.0;
    return {pass, fmt("measured %.5f vs alpha^2 M^2 = 1 (z = %.2f), ", r.measured_var_per_tau, r.z_score) +
                      fmt("naive %.5f, gap factor %.3f", r.naive_var_per_tau,
                          r.measured_var_per_tau / r.naive_var_per_tau)};
}

Outcome spreading() {
    const auto& k = kCodata;
    double worst = 0.0;
    for (double mass : {1e-3, 1.0, 5.972e24}) {
        for (double sigma0 : {1e-9, 1e-3, 1.0}) {
            const double t = mass * sigma0 * sigma0 / k.hbar;
            worst = std::max(worst, std::abs(relative_error(wavepacket_width(sigma0, mass, t, k),
                                                            std::numbers::sqrt2 * sigma0)));
        }
    }
    return {worst <= 1e-12, fmt("max rel. error of sigma(M sigma0^2/hbar) vs sqrt(2) sigma0 = %.1e", worst)};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

Outcome reproducibility() {
    const fs::path base = fs::temp_directory_path() / "veldrift_acceptance";
    std::vector<fs::path> configs;
    for (const auto& e : fs::directory_iterator(VELDRIFT_CONFIG_DIR)) {
        if (e.path().extension() == ".ini") configs.push_back(e.path());
    }
    std::sort(configs.begin(), configs.end());
    int compared = 0;
    std::string mismatch;
    for (const auto& path : configs) {
        auto parsed = config::load_config(path);
        if (!parsed.ok()) return {false, path.filename().string() + ": " + parsed.errors.front()};
        std::vector<RunRecord> runs;
        for (const char* tag : {"a", "b"}) {
            auto cfg = *parsed.config;
            cfg.output_dir = base / tag / path.stem();
            fs::remove_all(cfg.output_dir);
            runs.push_back(run(cfg));
        }
        for (std::size_t i = 0; i < runs[0].files.size(); ++i) {
            ++compared;
            if (slurp(runs[0].files[i]) != slurp(runs[1].files[i])) mismatch = runs[0].files[i].string();
        }
    }
    if (!mismatch.empty()) return {false, "differs: " + mismatch};
    return {compared > 0, fmt("%.0f shipped configs, %.0f output files byte-identical", static_cast<double>(configs.size()),
                              compared)};
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "drift law", 5.0, drift_law},
        {2, "SDE-FP agreement", 30.0, sde_fp_agreement},
        {3, "heating law", 0.0, heating_law},
        {4, "friction stationarity", 0.0, friction_stationarity},
        {5, "self-consistent suppression", 0.0, self_consistent_suppression},
        {6, "Newton chain", 1.0, newton_chain_check},
        {7, "momentum split", 0.0, momentum_split},
        {8, "reference numbers", 1.0, reference_numbers},
        {9, "measurement toy", 2.0, measurement_toy},
        {10, "split-object variance", 10.0, appendix_d},
        {11, "wave packet spreading", 0.0, spreading},
        {12, "reproducibility", 0.0, reproducibility},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.check();
        } catch (const std::exception& e) {
            o = {false, std::string("error: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_time = c.budget_s == 0.0 || secs < c.budget_s;
        const bool pass = o.pass && in_time;
        failed += !pass;
        std::printf("[%s] %2d %-28s %s; %.2f s%s\n", pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), secs,
                    c.budget_s > 0.0 ? fmt(" (budget %.0f s)", c.budget_s).c_str() : "");
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
