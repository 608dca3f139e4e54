// SPDX-License-Identifier: Apache-2.0
#include "drx/analysis.hpp"

#include <Eigen/QR>
#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "drx/log_phi.hpp"
#include "drx/pseudo_inverse.hpp"

namespace drx {

double theoretical_mse_zf(const MseZfPrediction& p) {
    if (p.K < 1) {
        throw std::invalid_argument("theoretical_mse_zf: K must be positive");
    }
    if (!(p.rho > 0.0)) {
        throw std::invalid_argument("theoretical_mse_zf: rho must be positive");
    }
    if (p.Nt < 1 || p.sigma_q_sq < 0.0) {
        throw std::invalid_argument("theoretical_mse_zf: invalid parameters");
    }
    return (static_cast<double>(p.Nt) / p.rho + p.sigma_q_sq) / static_cast<double>(p.K);
}

ChannelMatrix sample_orthogonal_channel(int K, int Nt, RandomStream& rng) {
    if (K < Nt) {
        throw std::invalid_argument("sample_orthogonal_channel: needs K >= Nt");
    }
    Eigen::MatrixXcd G(K, Nt);
    for (int k = 0; k < K; ++k) {
        for (int n = 0; n < Nt; ++n) G(k, n) = rng.complex_normal();
    }
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(G);
    Eigen::MatrixXcd Q = qr.householderQ() * Eigen::MatrixXcd::Identity(K, Nt);
    return channel_from_matrix(std::sqrt(static_cast<double>(K)) * Q);
}

double gaussian_surrogate_trial(const ChannelMatrix& H_orth, const TransmitVector& x,
                                double rho, double sigma_q_sq, RandomStream& rng) {
    const int K = H_orth.K;
    const int Nt = H_orth.Nt;
    const Eigen::MatrixXcd gram = H_orth.H.adjoint() * H_orth.H;
    const double dev =
        (gram - static_cast<double>(K) * Eigen::MatrixXcd::Identity(Nt, Nt)).cwiseAbs().maxCoeff();
    if (dev > 1e-8) {
        throw std::invalid_argument("gaussian_surrogate_trial: H^H H deviates from K*I by " +
                                    std::to_string(dev));
    }
    if (!(rho > 0.0) || sigma_q_sq < 0.0) {
        throw std::invalid_argument("gaussian_surrogate_trial: invalid rho or sigma_q_sq");
    }

    const double amp = std::sqrt(rho / static_cast<double>(Nt));
    Eigen::VectorXcd y = amp * (H_orth.H * x.x);
    for (int k = 0; k < K; ++k) y(k) += rng.complex_normal();
    const double w_std = std::sqrt(sigma_q_sq) * amp;
    for (int k = 0; k < K; ++k) y(k) += w_std * rng.complex_normal();

    // ZF with the known transmit amplitude compensated, so the estimate is
    // unbiased and the closed form applies.
    const Eigen::VectorXcd x_hat = (1.0 / amp) * (pseudo_inverse<std::complex<double>>(H_orth.H) * y);
    return (x.x - x_hat).squaredNorm();
}

double estimate_sigma_q(const ChannelMatrix& H, double rho, const Constellation& c,
                        int n_trials, RandomStream& rng) {
    if (n_trials < 1000) {
        throw std::invalid_argument("estimate_sigma_q: needs at least 1000 trials");
    }
    if (!(rho > 0.0)) {
        throw std::invalid_argument("estimate_sigma_q: rho must be positive");
    }
    const double snr_scale = rho / static_cast<double>(H.Nt);
    double acc = 0.0;
    for (int t = 0; t < n_trials; ++t) {
        const TransmitVector x = random_transmit_vector(c, H.Nt, rng);
        const Observation obs = transmit(H, x, rho, rng);
        const QuantizedObservation q = quantize(obs);
        // Quantization error under the additive surrogate: whatever must be
        // added to the unquantized sample to reach the quantized one.
        const Eigen::VectorXcd e = q.complex_signs() - obs.y;
        acc += e.squaredNorm() / static_cast<double>(H.K);
    }
    return acc / static_cast<double>(n_trials) / snr_scale;
}

double log_phi_product(const Eigen::VectorXd& t, double rho, int Nt) {
    const double scale = std::sqrt(2.0 * rho / static_cast<double>(Nt));
    double s = 0.0;
    for (Eigen::Index i = 0; i < t.size(); ++i) s += log_phi(scale * t(i));
    return s;
}

bool equal_margin_is_maximizer(const Eigen::MatrixXd& refined, double rho,
                               int n_probes, RandomStream& rng) {
    const int rows = static_cast<int>(refined.rows());
    const int Nt = static_cast<int>(refined.cols()) / 2;
    const double spec_norm =
        Eigen::JacobiSVD<Eigen::MatrixXd>(refined).singularValues()(0);

    // rows = 2K, so the all-equal margin is sqrt(Nt / (2K)) * ||refined||.
    const double equal_margin =
        std::sqrt(static_cast<double>(Nt) / static_cast<double>(rows)) * spec_norm;
    const Eigen::VectorXd t_eq = Eigen::VectorXd::Constant(rows, equal_margin);
    const double best = log_phi_product(t_eq, rho, Nt);
    const double tol = 1e-9 * std::max(1.0, std::abs(best));

    const double radius = std::sqrt(static_cast<double>(Nt)) * spec_norm;
    Eigen::VectorXd t(rows);
    for (int p = 0; p < n_probes; ++p) {
        for (int i = 0; i < rows; ++i) t(i) = std::abs(rng.normal());
        t *= radius / t.norm();
        if (log_phi_product(t, rho, Nt) > best + tol) {
            return false;
        }
    }
    return true;
}

bool phi_log_concavity_holds(double s, double c) {
    if (!(s > c) || !(c > 0.0)) {
        throw std::invalid_argument("phi_log_concavity_holds: requires s > c > 0");
    }
    return 2.0 * log_phi(s) > log_phi(s + c) + log_phi(s - c);
}

namespace {

// P(T > g) from a sorted sample.
double survival(const std::vector<double>& sorted, double g) {
    const auto it = std::upper_bound(sorted.begin(), sorted.end(), g);
    return static_cast<double>(sorted.end() - it) / static_cast<double>(sorted.size());
}

}  // namespace

DominanceReport stochastic_dominance_check(int Nt, double rho, const Eigen::VectorXd& u,
                                           int n_samples, RandomStream& rng) {
    if (u.size() != 2 * Nt) {
        throw std::invalid_argument("stochastic_dominance_check: u must have 2*Nt entries");
    }
    const double nt = static_cast<double>(Nt);
    if (std::abs(u.squaredNorm() - nt) > 1e-9 * nt) {
        throw std::invalid_argument("stochastic_dominance_check: ||u||^2 must equal Nt");
    }
    if (!(rho > 0.0) || n_samples < 1000) {
        throw std::invalid_argument("stochastic_dominance_check: invalid rho or sample count");
    }

    // Conditioned on y, the margin of the transmitted direction is
    // |c y| + w with w ~ N(0, gamma^2), and the margin of u mixes the same
    // w with an independent component orthogonal to the transmitted axis;
    // y itself is drawn from its marginal N(0, (rho+1)/2) per sample.
    const double c = rho / (rho + 1.0);
    const double gamma = std::sqrt(rho / (2.0 * (rho + 1.0)));
    const double y_std = std::sqrt((rho + 1.0) / 2.0);
    const double overlap = std::clamp(u(0) / std::sqrt(nt), -1.0, 1.0);
    // z ~ N(0, 1/2) scaled by sqrt(rho (1 - overlap^2))
    const double ortho_std = std::sqrt(std::max(0.0, rho * (1.0 - overlap * overlap)) * 0.5);

    std::vector<double> tx(n_samples), tu(n_samples);
    for (int i = 0; i < n_samples; ++i) {
        const double y = y_std * rng.normal();
        const auto [g1, g2] = rng.normal_pair();
        const double base = c * std::abs(y);
        const double w = gamma * g1;
        tx[i] = base + w;
        tu[i] = overlap * (base + w) + ortho_std * g2;
    }
    std::sort(tx.begin(), tx.end());
    std::sort(tu.begin(), tu.end());

    std::vector<double> pooled;
    pooled.reserve(2 * static_cast<std::size_t>(n_samples));
    pooled.insert(pooled.end(), tx.begin(), tx.end());
    pooled.insert(pooled.end(), tu.begin(), tu.end());
    std::sort(pooled.begin(), pooled.end());
    const auto quantile = [&](double q) {
        const auto idx = static_cast<std::size_t>(q * (pooled.size() - 1));
        return pooled[idx];
    };
    const double lo = quantile(0.005);
    const double hi = quantile(0.995);
    const double median = quantile(0.5);

    constexpr int kGridPoints = 201;
    DominanceReport rep;
    rep.grid.resize(kGridPoints);
    rep.survival_x.resize(kGridPoints);
    rep.survival_u.resize(kGridPoints);
    rep.std_err.resize(kGridPoints);

    const double n = static_cast<double>(n_samples);
    rep.dominant = true;
    rep.min_margin_se = std::numeric_limits<double>::infinity();
    int median_idx = 0;
    double median_dist = std::numeric_limits<double>::infinity();
    for (int i = 0; i < kGridPoints; ++i) {
        const double g = lo + (hi - lo) * static_cast<double>(i) / (kGridPoints - 1);
        const double sx = survival(tx, g);
        const double su = survival(tu, g);
        const double se =
            std::sqrt(std::max(sx * (1.0 - sx) / n + su * (1.0 - su) / n, 1e-300));
        rep.grid(i) = g;
        rep.survival_x(i) = sx;
        rep.survival_u(i) = su;
        rep.std_err(i) = se;
        const double margin = (sx - su) / se;
        rep.min_margin_se = std::min(rep.min_margin_se, margin);
        if (sx < su - 3.0 * se) rep.dominant = false;
        if (std::abs(g - median) < median_dist) {
            median_dist = std::abs(g - median);
            median_idx = i;
        }
    }
    rep.median_margin_se =
        (rep.survival_x(median_idx) - rep.survival_u(median_idx)) / rep.std_err(median_idx);
    return rep;
}

}  // namespace drx
