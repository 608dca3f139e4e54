// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <vector>

#include "drx/constellation.hpp"
#include "drx/rng.hpp"

namespace drx {

// Channel between an Nt-antenna transmitter and K single-antenna nodes.
// Row k of H is the conjugated channel of node k, so the k-th received
// sample is sqrt(rho/Nt) * (H x)(k) + n_k.
//
// lifted is the equivalent real 2K x 2Nt matrix acting on [Re(x); Im(x)],
// with node-major row pairs: row 2k gives Re of node k's sample, row 2k+1
// gives Im.
struct ChannelMatrix {
    int K = 0;
    int Nt = 0;
    Eigen::MatrixXcd H;
    Eigen::MatrixXd lifted;
};

// Builds the real lift for an existing complex matrix.
ChannelMatrix channel_from_matrix(Eigen::MatrixXcd H);

// K x Nt i.i.d. CN(0, 1) draw.
ChannelMatrix sample_channel(int K, int Nt, RandomStream& rng);

// Transmit vector of Nt constellation points, kept in three forms: the
// index vector, the complex vector, and the real stack [Re(x); Im(x)].
struct TransmitVector {
    std::vector<int> indices;
    Eigen::VectorXcd x;
    Eigen::VectorXd x_real;
};

TransmitVector transmit_vector(const Constellation& c, std::vector<int> indices);
TransmitVector random_transmit_vector(const Constellation& c, int Nt, RandomStream& rng);

struct Observation {
    Eigen::VectorXcd y;
    double rho = 0.0;
};

// y = sqrt(rho/Nt) H x + n with fresh i.i.d. CN(0, 1) noise.
Observation transmit(const ChannelMatrix& H, const TransmitVector& x, double rho,
                     RandomStream& rng);

// Same signal path with the noise forced to zero (for tests and limits).
Observation transmit_noiseless(const ChannelMatrix& H, const TransmitVector& x, double rho);

// One-bit quantization of each node's sample: the signs of the real and
// imaginary parts, threshold 0, sgn(0) = +1. vec_real stacks them node-major
// as a vector in {-1, +1}^{2K}.
struct QuantizedObservation {
    int K = 0;
    Eigen::VectorXd vec_real;

    double sign(int node, int part) const { return vec_real(2 * node + part); }

    // Per-node complex signs, entries in {+-1 +-j}.
    Eigen::VectorXcd complex_signs() const;
};

QuantizedObservation quantize(const Observation& obs);

// Multiplies each lifted row by the corresponding observed sign, so that the
// transmitted vector yields nonnegative inner products with every row in the
// noiseless case. Returns the refined 2K x 2Nt matrix.
Eigen::MatrixXd sign_refine(const ChannelMatrix& H, const QuantizedObservation& q);

}  // namespace drx
