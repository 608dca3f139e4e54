// SPDX-License-Identifier: Apache-2.0
#include "drx/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "drx/analysis.hpp"
#include "drx/constellation.hpp"
#include "drx/receivers.hpp"
#include "drx/rng.hpp"
#include "drx/signal.hpp"

namespace drx {

namespace {

std::string fmt(double v) {
    std::ostringstream ss;
    ss.precision(6);
    ss << v;
    return ss.str();
}

}  // namespace

CheckOutcome check_log_concavity_grid() {
    // Exhaustive grid: s in {0.01 .. 5.00}, c in (0, s), both on a 0.01 step.
    long checked = 0;
    long violations = 0;
    for (int i = 1; i <= 500; ++i) {
        const double s = static_cast<double>(i) * 0.01;
        for (int j = 1; j < i; ++j) {
            const double c = static_cast<double>(j) * 0.01;
            ++checked;
            if (!phi_log_concavity_holds(s, c)) ++violations;
        }
    }
    CheckOutcome out;
    out.name = "appendix-a";
    out.passed = violations == 0;
    out.detail = std::to_string(checked) + " grid pairs, " + std::to_string(violations) +
                 " violations";
    return out;
}

CheckOutcome check_equal_margin_maximizer(std::uint64_t seed, int n_matrices, int n_probes) {
    RandomStream rng(mix64(seed) ^ 0x6c656d6d6131ULL);
    const double rhos[] = {1.0, 10.0, 100.0};
    int failures = 0;
    for (int i = 0; i < n_matrices; ++i) {
        const int K = 2 + i % 9;       // 2..10
        const int Nt = 1 + i % 4;      // 1..4
        const double rho = rhos[i % 3];
        const Constellation c = make_constellation(8);
        const ChannelMatrix H = sample_channel(K, Nt, rng);
        const TransmitVector x = random_transmit_vector(c, Nt, rng);
        const QuantizedObservation q = quantize(transmit(H, x, rho, rng));
        const Eigen::MatrixXd refined = sign_refine(H, q);
        if (!equal_margin_is_maximizer(refined, rho, n_probes, rng)) ++failures;
    }
    CheckOutcome out;
    out.name = "lemma1";
    out.passed = failures == 0;
    out.detail = std::to_string(n_matrices) + " matrices x " + std::to_string(n_probes) +
                 " probes, " + std::to_string(failures) + " exceeded the equal-margin point";
    return out;
}

CheckOutcome check_dominance(std::uint64_t seed, int n_samples) {
    const int Nt = 4;
    const double rho = 10.0;
    RandomStream rng(mix64(seed) ^ 0x646f6dULL);

    std::vector<Eigen::VectorXd> us;
    Eigen::VectorXd mx = Eigen::VectorXd::Zero(2 * Nt);
    mx(0) = -std::sqrt(static_cast<double>(Nt));
    us.push_back(mx);  // opposite of the transmitted direction
    Eigen::VectorXd orth = Eigen::VectorXd::Zero(2 * Nt);
    orth(2 * Nt - 1) = std::sqrt(static_cast<double>(Nt));
    us.push_back(orth);
    for (int i = 0; i < 5; ++i) {
        Eigen::VectorXd u(2 * Nt);
        for (int j = 0; j < 2 * Nt; ++j) u(j) = rng.normal();
        u *= std::sqrt(static_cast<double>(Nt)) / u.norm();
        us.push_back(u);
    }

    int failures = 0;
    double worst_margin = std::numeric_limits<double>::infinity();
    for (const Eigen::VectorXd& u : us) {
        const DominanceReport rep = stochastic_dominance_check(Nt, rho, u, n_samples, rng);
        if (!rep.dominant) ++failures;
        worst_margin = std::min(worst_margin, rep.min_margin_se);
    }
    CheckOutcome out;
    out.name = "dominance";
    out.passed = failures == 0;
    out.detail = std::to_string(us.size()) + " directions, " + std::to_string(failures) +
                 " dominance failures, worst margin " + fmt(worst_margin) + " se";
    return out;
}

namespace {

struct MeanSe {
    double mean;
    double se;
};

MeanSe surrogate_mse(std::uint64_t stream_salt, std::uint64_t seed, int n_trials, int K, int Nt,
                     double rho, double sigma_q_sq) {
    const Constellation c = make_constellation(8);
    double sum = 0.0, sum_sq = 0.0;
    for (int t = 0; t < n_trials; ++t) {
        RandomStream rng = derive_stream(seed, stream_salt, static_cast<std::uint64_t>(t));
        const ChannelMatrix H = sample_orthogonal_channel(K, Nt, rng);
        const TransmitVector x = random_transmit_vector(c, Nt, rng);
        const double mse =
            gaussian_surrogate_trial(H, x, rho, sigma_q_sq, rng) / static_cast<double>(Nt);
        sum += mse;
        sum_sq += mse * mse;
    }
    const double n = static_cast<double>(n_trials);
    const double mean = sum / n;
    const double var = std::max(sum_sq / n - mean * mean, 0.0);
    return {mean, std::sqrt(var / n)};
}

}  // namespace

CheckOutcome check_surrogate_mse(std::uint64_t seed, int n_trials) {
    const int K = 50, Nt = 4;
    const double sigma_q_sq = 1.0;

    const MeanSe a = surrogate_mse(101, seed, n_trials, K, Nt, 10.0, sigma_q_sq);
    const double pred_a = theoretical_mse_zf({Nt, 10.0, sigma_q_sq, K});
    const bool pass_a = std::abs(a.mean - pred_a) <= 3.0 * a.se;

    const MeanSe b = surrogate_mse(102, seed, n_trials, K, Nt, 1e6, sigma_q_sq);
    const double pred_b = theoretical_mse_zf({Nt, 1e6, sigma_q_sq, K});
    const bool pass_b = std::abs(b.mean - pred_b) <= 3.0 * b.se;

    CheckOutcome out;
    out.name = "lemma3";
    out.passed = pass_a && pass_b;
    out.detail = "rho=10: " + fmt(a.mean) + " vs " + fmt(pred_a) + " (se " + fmt(a.se) +
                 "); rho=1e6: " + fmt(b.mean) + " vs " + fmt(pred_b) + " (se " + fmt(b.se) + ")";
    return out;
}

CheckOutcome check_likelihood_oracle(std::uint64_t seed, int n_instances, int n_draws) {
    RandomStream rng(mix64(seed) ^ 0x6f7261636cULL);
    int failures = 0;
    double worst_dev_se = 0.0;
    for (int i = 0; i < n_instances; ++i) {
        const int K = 1 + i % 3;
        const int Nt = 1 + i % 2;
        const int M = (i % 4 < 2) ? 2 : 4;
        const double rho = (i % 2 == 0) ? 1.0 : 10.0;
        const Constellation c = make_constellation(M);
        const ChannelMatrix H = sample_channel(K, Nt, rng);
        const TransmitVector x = random_transmit_vector(c, Nt, rng);
        const QuantizedObservation q = quantize(transmit(H, x, rho, rng));
        const Eigen::MatrixXd refined = sign_refine(H, q);
        const double p_exact = std::exp(ml_log_likelihood(refined, x.x_real, rho, Nt));

        // Monte Carlo frequency of the observed sign pattern under fresh noise.
        long hits = 0;
        for (int d = 0; d < n_draws; ++d) {
            const QuantizedObservation qd = quantize(transmit(H, x, rho, rng));
            if ((qd.vec_real.array() == q.vec_real.array()).all()) ++hits;
        }
        const double p_hat = static_cast<double>(hits) / static_cast<double>(n_draws);
        const double se =
            std::sqrt(std::max(p_exact * (1.0 - p_exact) / static_cast<double>(n_draws), 1e-300));
        const double dev = std::abs(p_hat - p_exact) / se;
        worst_dev_se = std::max(worst_dev_se, dev);
        if (dev > 3.0) ++failures;
    }
    CheckOutcome out;
    out.name = "likelihood-oracle";
    out.passed = failures == 0;
    out.detail = std::to_string(n_instances) + " instances x " + std::to_string(n_draws) +
                 " draws, worst deviation " + fmt(worst_dev_se) + " se, " +
                 std::to_string(failures) + " outside 3 se";
    return out;
}

bool is_verify_suite(const std::string& name) {
    return name == "appendix-a" || name == "lemma1" || name == "dominance" ||
           name == "lemma3" || name == "likelihood-oracle" || name == "all";
}

std::vector<CheckOutcome> run_verify_suite(const std::string& name, std::uint64_t seed) {
    std::vector<CheckOutcome> outcomes;
    const bool all = name == "all";
    if (all || name == "appendix-a") outcomes.push_back(check_log_concavity_grid());
    if (all || name == "lemma1") outcomes.push_back(check_equal_margin_maximizer(seed, 100, 10000));
    if (all || name == "dominance") outcomes.push_back(check_dominance(seed, 1000000));
    if (all || name == "lemma3") outcomes.push_back(check_surrogate_mse(seed, 100000));
    if (all || name == "likelihood-oracle") {
        outcomes.push_back(check_likelihood_oracle(seed, 20, 1000000));
    }
    if (outcomes.empty()) {
        throw std::invalid_argument("unknown verify suite '" + name + "'");
    }
    return outcomes;
}

}  // namespace drx
