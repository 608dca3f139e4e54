// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "drx/constellation.hpp"
#include "drx/receivers.hpp"
#include "drx/rng.hpp"

namespace drx {

inline constexpr std::uint64_t kDefaultMasterSeed = 20230815;

struct SigmaQMode {
    enum class Kind { Measured, Fixed };
    Kind kind = Kind::Measured;
    double value = 0.0;
};

struct ExperimentConfig {
    int n_t = 0;
    int m = 0;
    std::vector<int> k_list;
    std::vector<double> snr_db_list;
    std::vector<ReceiverKind> receivers{ReceiverKind::ML, ReceiverKind::ZF};
    int trials = 10000;
    std::uint64_t master_seed = kDefaultMasterSeed;
    SigmaQMode sigma_q;
    bool zf_lp_soft_objective = false;
};

// Throws std::invalid_argument with the offending field named.
void validate(const ExperimentConfig& cfg);

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

// Bits per channel use: n_t * log2(m).
double bits_per_channel_use(int n_t, int m);

struct MetricRecord {
    double snr_db = 0.0;
    int K = 0;
    int n_t = 0;
    int m = 0;
    ReceiverKind receiver = ReceiverKind::ZF;
    int trials = 0;
    double ser = 0.0;
    double mse = 0.0;
    double throughput = 0.0;
    std::uint64_t seed = 0;
};

struct TrialResult {
    int symbol_errors = 0;
    double squared_error = 0.0;
};

// One Monte Carlo trial: draw x uniformly from the constellation, a fresh
// channel and fresh noise from the stream, quantize, decode with the given
// receiver. The stream fully determines the trial, so every receiver kind
// sees the same realization for the same stream.
//
// squared_error uses the unquantized estimate for ZF kinds (projected onto
// the known power sphere for plain ZF, whose one-bit input fixes no scale)
// and the hard decision vector for ML, which has no soft output.
TrialResult run_trial(const ExperimentConfig& cfg, const Constellation& c, int K,
                      double rho, ReceiverKind kind, RandomStream rng);

// Reduction of per-trial results for one sweep point. ser counts symbol
// errors over n_t * trials; mse divides the accumulated squared error the
// same way; throughput = bits_per_channel_use * (1 - ser).
MetricRecord aggregate(const std::vector<TrialResult>& results, const ExperimentConfig& cfg,
                       int K, double snr_db);

// Full sweep over (K, snr, receiver). Trials run in parallel; results are a
// pure function of the config regardless of thread count. Records come back
// sorted by (receiver, K, snr_db).
std::vector<MetricRecord> run_sweep(const ExperimentConfig& cfg);

// Worker count: SIM_THREADS when set (clamped to >= 1), otherwise the
// hardware concurrency. Affects speed only, never results.
int effective_thread_count();

}  // namespace drx
