// SPDX-License-Identifier: Apache-2.0
#include "drx/constellation.hpp"

#include <cmath>
#include <stdexcept>

namespace drx {

namespace {

// cos/sin of multiples of pi/2 come back a rounding error away from exact;
// snapping keeps the cardinal points (and decision ties around them) exact.
double snap(double v) {
    for (double target : {-1.0, 0.0, 1.0}) {
        if (std::abs(v - target) < 4e-16) return target;
    }
    return v;
}

}  // namespace

Constellation make_constellation(int M) {
    if (M < 2) {
        throw std::invalid_argument("make_constellation: M must be at least 2, got " +
                                    std::to_string(M));
    }
    Constellation c;
    c.M = M;
    c.points.reserve(M);
    c.real_pairs.reserve(M);
    for (int m = 0; m < M; ++m) {
        const double angle = 2.0 * M_PI * static_cast<double>(m) / static_cast<double>(M);
        const std::complex<double> p(snap(std::cos(angle)), snap(std::sin(angle)));
        c.points.push_back(p);
        c.real_pairs.emplace_back(p.real(), p.imag());
    }
    return c;
}

}  // namespace drx
