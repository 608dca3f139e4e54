// SPDX-License-Identifier: Apache-2.0
#pragma once

namespace drx {

// ln of the standard normal CDF.
//
// Piecewise evaluation chosen so the deep left tail keeps full relative
// accuracy instead of underflowing: erfc-based forms near the origin, and a
// Laplace continued-fraction expansion of the Gaussian tail for t < -6.
// Stays finite far beyond t = -38. Throws std::domain_error on NaN.
double log_phi(double t);

}  // namespace drx
