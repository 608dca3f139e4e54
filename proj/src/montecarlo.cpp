// SPDX-License-Identifier: Apache-2.0
#include "drx/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace drx {

void validate(const ExperimentConfig& cfg) {
    if (cfg.n_t < 1) throw std::invalid_argument("config: n_t must be positive");
    if (cfg.m < 2) throw std::invalid_argument("config: m must be at least 2");
    if (cfg.trials < 1) throw std::invalid_argument("config: trials must be at least 1");
    if (cfg.k_list.empty()) throw std::invalid_argument("config: k_list must be nonempty");
    if (cfg.snr_db_list.empty()) {
        throw std::invalid_argument("config: snr_db_list must be nonempty");
    }
    if (cfg.receivers.empty()) throw std::invalid_argument("config: receivers must be nonempty");
    for (int k : cfg.k_list) {
        if (k < 1) throw std::invalid_argument("config: k_list entries must be positive");
    }
    if (cfg.sigma_q.kind == SigmaQMode::Kind::Fixed && cfg.sigma_q.value < 0.0) {
        throw std::invalid_argument("config: fixed sigma_q value must be nonnegative");
    }
    const bool wants_ml = std::find(cfg.receivers.begin(), cfg.receivers.end(),
                                    ReceiverKind::ML) != cfg.receivers.end();
    if (wants_ml) {
        std::uint64_t n_cand = 1;
        for (int n = 0; n < cfg.n_t; ++n) {
            if (n_cand > kMaxMlCandidates / static_cast<std::uint64_t>(cfg.m)) {
                n_cand = kMaxMlCandidates + 1;
                break;
            }
            n_cand *= static_cast<std::uint64_t>(cfg.m);
        }
        if (n_cand > kMaxMlCandidates) {
            throw std::invalid_argument("config: ML search space " + std::to_string(cfg.m) + "^" +
                                        std::to_string(cfg.n_t) + " exceeds 2^24");
        }
    }
}

double bits_per_channel_use(int n_t, int m) {
    return static_cast<double>(n_t) * std::log2(static_cast<double>(m));
}

TrialResult run_trial(const ExperimentConfig& cfg, const Constellation& c, int K,
                      double rho, ReceiverKind kind, RandomStream rng) {
    const TransmitVector x = random_transmit_vector(c, cfg.n_t, rng);
    const ChannelMatrix H = sample_channel(K, cfg.n_t, rng);
    const Observation obs = transmit(H, x, rho, rng);
    const QuantizedObservation q = quantize(obs);

    ReceiverOutput out;
    switch (kind) {
        case ReceiverKind::ML:
            out = ml_decode(H, q, c, rho);
            break;
        case ReceiverKind::ZF:
            out = zf_decode(H, q, c);
            break;
        case ReceiverKind::ZF_LP:
            out = modified_zf_decode(H, q, c, rho, {cfg.zf_lp_soft_objective});
            break;
    }

    TrialResult res;
    for (int n = 0; n < cfg.n_t; ++n) {
        if (out.hard_indices[n] != x.indices[n]) ++res.symbol_errors;
    }
    if (out.soft) {
        Eigen::VectorXcd soft = *out.soft;
        if (kind == ReceiverKind::ZF) {
            // One-bit samples carry no amplitude, so the raw estimate has an
            // arbitrary scale; the transmit power is known, so project onto
            // the power sphere before scoring. Hard decisions are unaffected.
            const double norm = soft.norm();
            if (norm > 0.0) soft *= std::sqrt(static_cast<double>(cfg.n_t)) / norm;
        }
        res.squared_error = (x.x - soft).squaredNorm();
    } else {
        double sq = 0.0;
        for (int n = 0; n < cfg.n_t; ++n) {
            sq += std::norm(x.x(n) - c.points[out.hard_indices[n]]);
        }
        res.squared_error = sq;
    }
    return res;
}

MetricRecord aggregate(const std::vector<TrialResult>& results, const ExperimentConfig& cfg,
                       int K, double snr_db) {
    if (results.empty()) {
        throw std::invalid_argument("aggregate: no trial results");
    }
    long errors = 0;
    double sq = 0.0;
    for (const TrialResult& r : results) {
        errors += r.symbol_errors;
        sq += r.squared_error;
    }
    const double denom = static_cast<double>(cfg.n_t) * static_cast<double>(results.size());
    MetricRecord rec;
    rec.snr_db = snr_db;
    rec.K = K;
    rec.n_t = cfg.n_t;
    rec.m = cfg.m;
    rec.trials = static_cast<int>(results.size());
    rec.ser = static_cast<double>(errors) / denom;
    rec.mse = sq / denom;
    rec.throughput = bits_per_channel_use(cfg.n_t, cfg.m) * (1.0 - rec.ser);
    rec.seed = cfg.master_seed;
    return rec;
}

int effective_thread_count() {
    if (const char* env = std::getenv("SIM_THREADS")) {
        const int v = std::atoi(env);
        if (v >= 1) return v;
        return 1;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

std::vector<MetricRecord> run_sweep(const ExperimentConfig& cfg) {
    validate(cfg);
    const Constellation c = make_constellation(cfg.m);

    std::vector<int> ks = cfg.k_list;
    std::sort(ks.begin(), ks.end());
    ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
    std::vector<double> snrs = cfg.snr_db_list;
    std::sort(snrs.begin(), snrs.end());
    snrs.erase(std::unique(snrs.begin(), snrs.end()), snrs.end());
    std::vector<ReceiverKind> kinds = cfg.receivers;
    std::sort(kinds.begin(), kinds.end());
    kinds.erase(std::unique(kinds.begin(), kinds.end()), kinds.end());

    const int n_threads = effective_thread_count();
    std::vector<MetricRecord> records;
    records.reserve(ks.size() * snrs.size() * kinds.size());

    // Point ids depend only on (K, snr), so every receiver decodes the same
    // realizations and comparisons between receivers are paired.
    std::uint64_t point_id = 0;
    for (std::size_t ki = 0; ki < ks.size(); ++ki) {
        for (std::size_t si = 0; si < snrs.size(); ++si, ++point_id) {
            const int K = ks[ki];
            const double snr_db = snrs[si];
            const double rho = db_to_linear(snr_db);

            std::vector<std::vector<TrialResult>> results(kinds.size());
            for (auto& v : results) v.resize(cfg.trials);

            std::atomic<int> next{0};
            std::mutex err_mutex;
            std::exception_ptr first_error;
            const auto worker = [&]() {
                try {
                    for (;;) {
                        const int t = next.fetch_add(1);
                        if (t >= cfg.trials) break;
                        for (std::size_t r = 0; r < kinds.size(); ++r) {
                            results[r][t] =
                                run_trial(cfg, c, K, rho, kinds[r],
                                          derive_stream(cfg.master_seed, point_id,
                                                        static_cast<std::uint64_t>(t)));
                        }
                    }
                } catch (...) {
                    std::lock_guard<std::mutex> lock(err_mutex);
                    if (!first_error) first_error = std::current_exception();
                    next.store(cfg.trials);
                }
            };

            if (n_threads <= 1 || cfg.trials == 1) {
                worker();
            } else {
                std::vector<std::thread> pool;
                const int spawn = std::min(n_threads, cfg.trials);
                pool.reserve(spawn);
                for (int i = 0; i < spawn; ++i) pool.emplace_back(worker);
                for (auto& th : pool) th.join();
            }
            if (first_error) {
                try {
                    std::rethrow_exception(first_error);
                } catch (const std::exception& e) {
                    throw std::runtime_error("run_sweep: point (K=" + std::to_string(K) +
                                             ", snr_db=" + std::to_string(snr_db) +
                                             ") failed: " + e.what());
                }
            }

            // Fixed-order reduction keeps the floating-point results
            // bit-stable across thread counts.
            for (std::size_t r = 0; r < kinds.size(); ++r) {
                MetricRecord rec = aggregate(results[r], cfg, K, snr_db);
                rec.receiver = kinds[r];
                records.push_back(rec);
            }
        }
    }

    std::sort(records.begin(), records.end(), [](const MetricRecord& a, const MetricRecord& b) {
        if (a.receiver != b.receiver) return a.receiver < b.receiver;
        if (a.K != b.K) return a.K < b.K;
        return a.snr_db < b.snr_db;
    });
    return records;
}

}  // namespace drx
