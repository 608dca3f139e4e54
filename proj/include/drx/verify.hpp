// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace drx {

struct CheckOutcome {
    std::string name;
    bool passed = false;
    std::string detail;
};

// Named verification suites behind the CLI `verify` subcommand. Each runs a
// self-contained statistical or exhaustive check with pinned default
// parameters and reports per-check statistics.
//
//   appendix-a        exhaustive CDF log-concavity grid
//   lemma1            equal-margin likelihood maximizer probes
//   dominance         survival-function dominance of the transmitted direction
//   lemma3            surrogate-model ZF MSE against the closed form
//   likelihood-oracle exact likelihood vs. Monte Carlo sign-pattern frequency
//   all               everything above
CheckOutcome check_log_concavity_grid();
CheckOutcome check_equal_margin_maximizer(std::uint64_t seed, int n_matrices, int n_probes);
CheckOutcome check_dominance(std::uint64_t seed, int n_samples);
CheckOutcome check_surrogate_mse(std::uint64_t seed, int n_trials);
CheckOutcome check_likelihood_oracle(std::uint64_t seed, int n_instances, int n_draws);

bool is_verify_suite(const std::string& name);
std::vector<CheckOutcome> run_verify_suite(const std::string& name, std::uint64_t seed);

}  // namespace drx
