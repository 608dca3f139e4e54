// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "drx/montecarlo.hpp"

namespace drx {

// Flat key-value experiment config. Recognized keys:
//   n_t, m, k_list, snr_db_list, receivers, trials, master_seed,
//   sigma_q_mode, zf_lp_soft_objective
// Lists are comma-separated; '#' starts a comment. n_t, m, k_list and
// snr_db_list are required; the rest have defaults. overrides are
// "key=value" strings applied after the file and win over it.
ExperimentConfig parse_config_text(std::string_view text,
                                   const std::vector<std::string>& overrides,
                                   const std::string& origin);

ExperimentConfig parse_config(const std::string& path,
                              const std::vector<std::string>& overrides = {});

// CSV with header snr_db,K,Nt,M,receiver,trials,ser,mse,throughput,seed and
// one row per record. Floats carry 10 significant digits, the decimal point
// is always '.', newlines are LF.
std::string to_csv(const std::vector<MetricRecord>& records);
void emit_csv(const std::vector<MetricRecord>& records, const std::string& path);

// Locale-independent float formatting (10 significant digits).
std::string format_double(double v);

ReceiverKind parse_receiver(std::string_view name);

}  // namespace drx
