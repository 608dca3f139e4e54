// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: run Monte Carlo sweeps, print single-run
// summaries, execute the verification suites, and estimate the
// quantization-noise variance parameter.

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <iomanip>
#include <iostream>
#include <string>
#include <vector>

#include "drx/analysis.hpp"
#include "drx/experiment_io.hpp"
#include "drx/montecarlo.hpp"
#include "drx/verify.hpp"

namespace {

void print_records(const std::vector<drx::MetricRecord>& records) {
    std::printf("%8s %6s %4s %4s %8s %8s %12s %12s %12s\n", "snr_db", "K", "Nt", "M",
                "receiver", "trials", "ser", "mse", "throughput");
    for (const drx::MetricRecord& r : records) {
        std::printf("%8.2f %6d %4d %4d %8s %8d %12.5g %12.5g %12.5g\n", r.snr_db, r.K, r.n_t,
                    r.m, drx::receiver_name(r.receiver), r.trials, r.ser, r.mse, r.throughput);
    }
}

int run_verify(const std::string& suite, std::uint64_t seed) {
    const auto t0 = std::chrono::steady_clock::now();
    const std::vector<drx::CheckOutcome> outcomes = drx::run_verify_suite(suite, seed);
    bool all_passed = true;
    for (const drx::CheckOutcome& o : outcomes) {
        std::printf("[%s] %-17s %s\n", o.passed ? "PASS" : "FAIL", o.name.c_str(),
                    o.detail.c_str());
        all_passed &= o.passed;
    }
    const auto dt = std::chrono::duration_cast<std::chrono::milliseconds>(
        std::chrono::steady_clock::now() - t0);
    std::printf("%zu check(s) in %.1f s\n", outcomes.size(),
                static_cast<double>(dt.count()) / 1000.0);
    return all_passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Distributed-reception simulator: one-bit quantized forwarding "
                 "with ML, ZF and LP-refined ZF fusion decoding"};
    app.require_subcommand(1);

    std::string config_path;
    std::string output_path;
    std::vector<std::string> overrides;
    std::string suite;
    std::uint64_t verify_seed = drx::kDefaultMasterSeed;

    CLI::App* sweep = app.add_subcommand("sweep", "Run a sweep and write a CSV");
    sweep->add_option("-c,--config", config_path, "Experiment config file")
        ->required()
        ->check(CLI::ExistingFile);
    sweep->add_option("-o,--output", output_path, "Output CSV path")->required();
    sweep->add_option("--set", overrides, "Override a config key (key=value)");

    CLI::App* simulate = app.add_subcommand("simulate", "Run a sweep and print a summary table");
    simulate->add_option("-c,--config", config_path, "Experiment config file")
        ->required()
        ->check(CLI::ExistingFile);
    simulate->add_option("--set", overrides, "Override a config key (key=value)");

    CLI::App* verify = app.add_subcommand("verify", "Run a verification suite");
    verify
        ->add_option("suite", suite,
                     "One of: appendix-a, lemma1, dominance, lemma3, likelihood-oracle, all")
        ->required();
    verify->add_option("--seed", verify_seed, "Seed for the statistical checks");

    CLI::App* estimate = app.add_subcommand(
        "estimate-sigma", "Estimate the quantization-noise variance parameter per sweep point");
    estimate->add_option("-c,--config", config_path, "Experiment config file")
        ->required()
        ->check(CLI::ExistingFile);
    estimate->add_option("--set", overrides, "Override a config key (key=value)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sweep->parsed()) {
            const drx::ExperimentConfig cfg = drx::parse_config(config_path, overrides);
            const auto records = drx::run_sweep(cfg);
            drx::emit_csv(records, output_path);
            std::fprintf(stderr, "wrote %zu record(s) to %s\n", records.size(),
                         output_path.c_str());
            return 0;
        }
        if (simulate->parsed()) {
            const drx::ExperimentConfig cfg = drx::parse_config(config_path, overrides);
            print_records(drx::run_sweep(cfg));
            return 0;
        }
        if (verify->parsed()) {
            if (!drx::is_verify_suite(suite)) {
                std::fprintf(stderr, "unknown verify suite '%s'\n", suite.c_str());
                return 2;
            }
            return run_verify(suite, verify_seed);
        }
        if (estimate->parsed()) {
            const drx::ExperimentConfig cfg = drx::parse_config(config_path, overrides);
            const drx::Constellation c = drx::make_constellation(cfg.m);
            constexpr int kChannels = 8;
            const int per_channel = std::max(1000, cfg.trials / kChannels);
            std::printf("%8s %6s %14s %16s\n", "snr_db", "K", "sigma_q_sq", "predicted_mse");
            for (int K : cfg.k_list) {
                for (double snr_db : cfg.snr_db_list) {
                    const double rho = drx::db_to_linear(snr_db);
                    double acc = 0.0;
                    for (int ch = 0; ch < kChannels; ++ch) {
                        drx::RandomStream rng = drx::derive_stream(
                            cfg.master_seed, 0xe5f1ULL + static_cast<std::uint64_t>(K),
                            static_cast<std::uint64_t>(ch));
                        const drx::ChannelMatrix H = drx::sample_channel(K, cfg.n_t, rng);
                        acc += drx::estimate_sigma_q(H, rho, c, per_channel, rng);
                    }
                    const double sigma = cfg.sigma_q.kind == drx::SigmaQMode::Kind::Fixed
                                             ? cfg.sigma_q.value
                                             : acc / kChannels;
                    const double mse = drx::theoretical_mse_zf({cfg.n_t, rho, sigma, K});
                    std::printf("%8.2f %6d %14.6g %16.6g\n", snr_db, K, sigma, mse);
                }
            }
            return 0;
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
