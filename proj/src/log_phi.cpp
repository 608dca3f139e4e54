// SPDX-License-Identifier: Apache-2.0
#include "drx/log_phi.hpp"

#include <cmath>
#include <stdexcept>

namespace drx {

namespace {

constexpr double kHalfLog2Pi = 0.91893853320467274178;  // ln(2 pi) / 2

// ln Q(z) for z > 0 via the Laplace continued fraction
//   Q(z) = phi(z) / (z + 1/(z + 2/(z + 3/(...))))
// evaluated by backward recurrence. Depth 26 leaves truncation error far
// below double precision for z >= 6.
double log_tail(double z) {
    double f = 0.0;
    for (int k = 26; k >= 1; --k) {
        f = static_cast<double>(k) / (z + f);
    }
    return -0.5 * z * z - kHalfLog2Pi - std::log(z + f);
}

}  // namespace

double log_phi(double t) {
    if (std::isnan(t)) {
        throw std::domain_error("log_phi: NaN input");
    }
    if (t >= 0.0) {
        // Phi(t) = 1 - Q(t); Q computed without cancellation, then log1p
        // keeps relative accuracy as Phi approaches 1.
        return std::log1p(-0.5 * std::erfc(t * M_SQRT1_2));
    }
    if (t >= -6.0) {
        return std::log(0.5 * std::erfc(-t * M_SQRT1_2));
    }
    // Deep tail: erfc would lose precision and eventually underflow, the
    // continued fraction stays fully accurate.
    return log_tail(-t);
}

}  // namespace drx
