// SPDX-License-Identifier: Apache-2.0
#include "drx/signal.hpp"

#include <stdexcept>
#include <string>

namespace drx {

namespace {

void check_dims(const ChannelMatrix& H, const TransmitVector& x) {
    if (x.x.size() != H.Nt) {
        throw std::invalid_argument("transmit: x has " + std::to_string(x.x.size()) +
                                    " entries but the channel has " + std::to_string(H.Nt) +
                                    " transmit antennas");
    }
}

}  // namespace

ChannelMatrix channel_from_matrix(Eigen::MatrixXcd H) {
    ChannelMatrix ch;
    ch.K = static_cast<int>(H.rows());
    ch.Nt = static_cast<int>(H.cols());
    ch.H = std::move(H);
    ch.lifted.resize(2 * ch.K, 2 * ch.Nt);
    for (int k = 0; k < ch.K; ++k) {
        // Row k of H is the node's conjugated channel, so the real part of
        // its sample is [Re(row), -Im(row)] . [Re(x); Im(x)] and the
        // imaginary part is [Im(row), Re(row)] . [Re(x); Im(x)].
        const auto re = ch.H.row(k).real();
        const auto im = ch.H.row(k).imag();
        ch.lifted.row(2 * k) << re, -im;
        ch.lifted.row(2 * k + 1) << im, re;
    }
    return ch;
}

ChannelMatrix sample_channel(int K, int Nt, RandomStream& rng) {
    if (K < 1 || Nt < 1) {
        throw std::invalid_argument("sample_channel: K and Nt must be positive");
    }
    Eigen::MatrixXcd H(K, Nt);
    for (int k = 0; k < K; ++k) {
        for (int n = 0; n < Nt; ++n) {
            H(k, n) = rng.complex_normal();
        }
    }
    return channel_from_matrix(std::move(H));
}

TransmitVector transmit_vector(const Constellation& c, std::vector<int> indices) {
    const int Nt = static_cast<int>(indices.size());
    TransmitVector t;
    t.x.resize(Nt);
    t.x_real.resize(2 * Nt);
    for (int n = 0; n < Nt; ++n) {
        const int idx = indices[n];
        if (idx < 0 || idx >= c.M) {
            throw std::invalid_argument("transmit_vector: index " + std::to_string(idx) +
                                        " outside constellation of size " + std::to_string(c.M));
        }
        t.x(n) = c.points[idx];
        t.x_real(n) = c.real_pairs[idx].first;
        t.x_real(Nt + n) = c.real_pairs[idx].second;
    }
    t.indices = std::move(indices);
    return t;
}

TransmitVector random_transmit_vector(const Constellation& c, int Nt, RandomStream& rng) {
    std::vector<int> idx(Nt);
    for (int n = 0; n < Nt; ++n) idx[n] = rng.uniform_index(c.M);
    return transmit_vector(c, std::move(idx));
}

Observation transmit(const ChannelMatrix& H, const TransmitVector& x, double rho,
                     RandomStream& rng) {
    check_dims(H, x);
    if (!(rho >= 0.0)) {
        throw std::invalid_argument("transmit: rho must be nonnegative");
    }
    Observation obs;
    obs.rho = rho;
    obs.y = std::sqrt(rho / static_cast<double>(H.Nt)) * (H.H * x.x);
    for (int k = 0; k < H.K; ++k) obs.y(k) += rng.complex_normal();
    return obs;
}

Observation transmit_noiseless(const ChannelMatrix& H, const TransmitVector& x, double rho) {
    check_dims(H, x);
    if (!(rho >= 0.0)) {
        throw std::invalid_argument("transmit: rho must be nonnegative");
    }
    Observation obs;
    obs.rho = rho;
    obs.y = std::sqrt(rho / static_cast<double>(H.Nt)) * (H.H * x.x);
    return obs;
}

Eigen::VectorXcd QuantizedObservation::complex_signs() const {
    Eigen::VectorXcd s(K);
    for (int k = 0; k < K; ++k) {
        s(k) = std::complex<double>(vec_real(2 * k), vec_real(2 * k + 1));
    }
    return s;
}

QuantizedObservation quantize(const Observation& obs) {
    QuantizedObservation q;
    q.K = static_cast<int>(obs.y.size());
    q.vec_real.resize(2 * q.K);
    for (int k = 0; k < q.K; ++k) {
        q.vec_real(2 * k) = obs.y(k).real() >= 0.0 ? 1.0 : -1.0;
        q.vec_real(2 * k + 1) = obs.y(k).imag() >= 0.0 ? 1.0 : -1.0;
    }
    return q;
}

Eigen::MatrixXd sign_refine(const ChannelMatrix& H, const QuantizedObservation& q) {
    if (q.K != H.K) {
        throw std::invalid_argument("sign_refine: observation has " + std::to_string(q.K) +
                                    " nodes but the channel has " + std::to_string(H.K));
    }
    return q.vec_real.asDiagonal() * H.lifted;
}

}  // namespace drx
