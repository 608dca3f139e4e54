// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <utility>
#include <vector>

namespace drx {

// M-ary PSK alphabet on the unit circle, points[m] = exp(j 2 pi m / M).
// real_pairs holds the same points as (Re, Im) pairs for real-domain work.
struct Constellation {
    int M = 0;
    std::vector<std::complex<double>> points;
    std::vector<std::pair<double, double>> real_pairs;
};

// Throws std::invalid_argument for M < 2.
Constellation make_constellation(int M);

}  // namespace drx
