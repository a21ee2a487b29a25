#include "veldrift/split_consistency.hpp"

#include <cmath>
#include <tuple>

#include "veldrift/errors.hpp"

namespace veldrift::split {

namespace {

enum StreamTag : std::uint64_t { kDirect = 0, kMutual = 1, kNaive = 2 };

double sample_variance(double sum, double sum_sq, std::size_t n) {
    const double nd = static_cast<double>(n);
    const double mean = sum / nd;
    return (sum_sq - nd * mean * mean) / (nd - 1.0);
}

}  // namespace

SplitScenario SplitScenario::from_physics(double total_mass, double separation,
                                          const PhysicalConstants& k, std::size_t n_intervals,
                                          std::size_t samples) {
    if (!(separation > 0.0)) throw InvalidInput("split scenario: separation must be > 0");
    const double l0 = planck_length(k);
    SplitScenario s{total_mass, separation, l0 * l0 * k.c * k.c / (k.hbar * separation), n_intervals,
                    samples};
    s.validate();
    return s;
}

SplitScenario SplitScenario::with_alpha(double alpha, double total_mass, std::size_t n_intervals,
                                        std::size_t samples) {
    SplitScenario s{total_mass, 0.0, alpha, n_intervals, samples};
    s.validate();
    return s;
}

void SplitScenario::validate() const {
    if (!(total_mass > 0.0)) throw InvalidInput("split scenario: total mass must be > 0");
    if (!(alpha >= 0.0)) throw InvalidInput("split scenario: alpha must be >= 0");
    if (n_intervals == 0) throw InvalidInput("split scenario: n_intervals must be >= 1");
    if (samples < 2) throw InvalidInput("split scenario: need at least two samples");
    if (!(delta_sigma >= 0.0)) throw InvalidInput("split scenario: delta_sigma must be >= 0");
}

std::pair<double, double> apply_updates(double v_a1, double v_a2, const UpdateRecord& u) {
    if (!u.conserves_momentum()) {
        throw InvalidInput("apply_updates: mutual increments must cancel (delta2 + delta1 == 0)");
    }
    return {v_a1 + u.dv_a1 + u.dv_a2 + u.delta2_v_a1, v_a2 + u.dv_a2 + u.dv_a1 + u.delta1_v_a2};
}

double com_increment(const UpdateRecord& u) {
    return (2.0 * u.dv_a1 + 2.0 * u.dv_a2 + u.delta2_v_a1 + u.delta1_v_a2) / 2.0;
}

SplitResult com_variance_experiment(const SplitScenario& s) {
    s.validate();
    const double half_sigma = s.alpha * s.total_mass / 2.0;
    const std::uint64_t direct_seed = derive_seed(s.seed, kDirect);
    const std::uint64_t mutual_seed = derive_seed(s.seed, kMutual);
    const std::uint64_t naive_seed = derive_seed(s.seed, kNaive);

    double sum = 0.0, sum_sq = 0.0;
    double naive_sum = 0.0, naive_sum_sq = 0.0;
    for (std::size_t j = 0; j < s.samples; ++j) {
        Substream direct(direct_seed, j);
        Substream mutual(mutual_seed, j);
        Substream naive(naive_seed, j);
        double v1 = 0.0, v2 = 0.0;
        double v_naive = 0.0;
        for (std::size_t interval = 0; interval < s.n_intervals; ++interval) {
            for (int half = 0; half < 2; ++half) {
                const double delta = s.delta_sigma * mutual.normal();
                UpdateRecord u{half_sigma * direct.normal(), half_sigma * direct.normal(), delta, -delta};
                std::tie(v1, v2) = apply_updates(v1, v2, u);
            }
            v_naive += 0.5 * (half_sigma * naive.normal() + half_sigma * naive.normal());
        }
        const double com = 0.5 * (v1 + v2);
        sum += com;
        sum_sq += com * com;
        naive_sum += v_naive;
        naive_sum_sq += v_naive * v_naive;
    }

    const double intervals = static_cast<double>(s.n_intervals);
    SplitResult result;
    result.n_samples = s.samples;
    result.predicted_var = s.predicted_variance();
    result.measured_var_per_tau = sample_variance(sum, sum_sq, s.samples) / intervals;
    result.naive_var_per_tau = sample_variance(naive_sum, naive_sum_sq, s.samples) / intervals;
    result.naive_predicted = result.predicted_var / 8.0;
    // Gaussian sample variance: se = sigma^2 sqrt(2 / (N - 1)).
    result.standard_error = result.predicted_var * std::sqrt(2.0 / static_cast<double>(s.samples - 1));
    result.z_score = result.standard_error > 0.0
                         ? (result.measured_var_per_tau - result.predicted_var) / result.standard_error
                         : 0.0;
    return result;
}

}  // namespace veldrift::split
