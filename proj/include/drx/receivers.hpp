// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "drx/constellation.hpp"
#include "drx/signal.hpp"

namespace drx {

enum class ReceiverKind { ML, ZF, ZF_LP };

const char* receiver_name(ReceiverKind kind);

// Fusion-center decoding result. soft is the unquantized estimate (absent
// for ML, which searches constellation points directly); hard_indices are
// per-antenna constellation indices; log_likelihood is set by ML only.
struct ReceiverOutput {
    ReceiverKind kind = ReceiverKind::ZF;
    std::optional<Eigen::VectorXcd> soft;
    std::vector<int> hard_indices;
    std::optional<double> log_likelihood;
};

// Exhaustive-search guard: candidate spaces above 2^24 are rejected.
inline constexpr std::uint64_t kMaxMlCandidates = std::uint64_t{1} << 24;

class MlSearchSpaceError : public std::runtime_error {
public:
    MlSearchSpaceError(const std::string& msg, double candidates)
        : std::runtime_error(msg), candidates(candidates) {}
    double candidates;
};

// Log likelihood of a real-domain candidate against a sign-refined channel:
// the sum over rows of ln Phi(sqrt(2 rho / Nt) * row . x_real).
double ml_log_likelihood(const Eigen::MatrixXd& refined, const Eigen::VectorXd& x_real,
                         double rho, int Nt);

// Exhaustive maximum-likelihood search over all M^Nt candidate vectors.
// Ties break toward the lowest lexicographic index vector.
ReceiverOutput ml_decode(const ChannelMatrix& H, const QuantizedObservation& q,
                         const Constellation& c, double rho);

// Pseudo-inverse applied to the complex sign vector, then per-antenna
// nearest-point mapping.
ReceiverOutput zf_decode(const ChannelMatrix& H, const QuantizedObservation& q,
                         const Constellation& c);

struct ModifiedZfOptions {
    // Use the unquantized ZF estimate as the LP objective instead of the
    // hard-mapped one.
    bool soft_objective = false;
};

// LP refinement of the ZF decision: the estimate is pulled into the cone
// that the observed signs define, then mapped to the constellation.
ReceiverOutput modified_zf_decode(const ChannelMatrix& H, const QuantizedObservation& q,
                                  const Constellation& c, double rho,
                                  const ModifiedZfOptions& opts = {});

// Per-entry nearest constellation point; ties break toward the lowest index.
// Throws std::invalid_argument on NaN entries.
std::vector<int> map_to_constellation(const Eigen::VectorXcd& soft, const Constellation& c);

}  // namespace drx
