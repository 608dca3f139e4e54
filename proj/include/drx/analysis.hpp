// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>

#include "drx/constellation.hpp"
#include "drx/rng.hpp"
#include "drx/signal.hpp"

namespace drx {

// Closed-form per-symbol MSE of the zero-forcing estimator under the
// Gaussian quantization-noise surrogate with a column-orthogonal channel:
// (Nt / rho + sigma_q_sq) / K.
struct MseZfPrediction {
    int Nt = 0;
    double rho = 0.0;
    double sigma_q_sq = 0.0;
    int K = 0;
};

double theoretical_mse_zf(const MseZfPrediction& p);

// Random K x Nt channel with H^H H = K I exactly (orthonormalized Gaussian
// draw, columns scaled by sqrt(K)).
ChannelMatrix sample_orthogonal_channel(int K, int Nt, RandomStream& rng);

// One trial of the surrogate model: y = sqrt(rho/Nt) H x + n + w with
// w ~ CN(0, sigma_q_sq * rho/Nt * I), decoded by the amplitude-compensated
// ZF estimator sqrt(Nt/rho) H^dagger y. Returns ||x - x_zf||^2.
// Requires H^H H = K I to within 1e-8.
double gaussian_surrogate_trial(const ChannelMatrix& H_orth, const TransmitVector& x,
                                double rho, double sigma_q_sq, RandomStream& rng);

// Empirical quantization-noise variance for a fixed channel: the mean
// squared difference between the quantized and unquantized samples,
// normalized by rho/Nt. Requires n_trials >= 1000.
double estimate_sigma_q(const ChannelMatrix& H, double rho, const Constellation& c,
                        int n_trials, RandomStream& rng);

// Sum of ln Phi(sqrt(2 rho / Nt) t_l) over the entries of a margin vector.
double log_phi_product(const Eigen::VectorXd& t, double rho, int Nt);

// Checks that the all-equal margin vector maximizes the likelihood product
// over the sphere ||t||^2 = Nt * ||refined||_2^2 restricted to positive
// entries: no random probe on that sphere may exceed the all-equal value.
bool equal_margin_is_maximizer(const Eigen::MatrixXd& refined, double rho,
                               int n_probes, RandomStream& rng);

// Strict log-concavity probe of the normal CDF: Phi(s)^2 > Phi(s+c) Phi(s-c),
// evaluated in the log domain. Requires s > c > 0.
bool phi_log_concavity_holds(double s, double c);

// First-order stochastic dominance test between the refined-channel margins
// of the transmitted direction and an alternative direction u. Each sample
// draws the received value y from its marginal N(0, (rho+1)/2) and the
// conditional mixture on top of it; the fixed-y conditional claim is false
// for low-overlap directions (their margins have far heavier tails), and it
// is the y-marginal dominance that drives the large-K consistency of the
// likelihood receiver. Survival functions are compared on a grid of 201
// thresholds between the pooled 0.5% and 99.5% quantiles, with 3-standard-
// error bands.
struct DominanceReport {
    Eigen::VectorXd grid;
    Eigen::VectorXd survival_x;
    Eigen::VectorXd survival_u;
    Eigen::VectorXd std_err;
    bool dominant = false;
    double min_margin_se = 0.0;     // min over grid of (Sx - Su) / se
    double median_margin_se = 0.0;  // margin at the grid point nearest the pooled median
};

// u is a real 2*Nt vector with ||u||^2 = Nt; the canonical transmitted
// direction is [sqrt(Nt), 0, ..., 0].
DominanceReport stochastic_dominance_check(int Nt, double rho, const Eigen::VectorXd& u,
                                           int n_samples, RandomStream& rng);

}  // namespace drx
