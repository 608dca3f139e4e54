// SPDX-License-Identifier: Apache-2.0
#include "drx/receivers.hpp"

#include <cmath>
#include <limits>

#include "drx/log_phi.hpp"
#include "drx/pseudo_inverse.hpp"
#include "drx/simplex.hpp"

namespace drx {

const char* receiver_name(ReceiverKind kind) {
    switch (kind) {
        case ReceiverKind::ML: return "ML";
        case ReceiverKind::ZF: return "ZF";
        case ReceiverKind::ZF_LP: return "ZF_LP";
    }
    return "?";
}

double ml_log_likelihood(const Eigen::MatrixXd& refined, const Eigen::VectorXd& x_real,
                         double rho, int Nt) {
    if (!(rho > 0.0)) {
        throw std::invalid_argument("ml_log_likelihood: rho must be positive");
    }
    if (refined.cols() != 2 * Nt || x_real.size() != 2 * Nt) {
        throw std::invalid_argument("ml_log_likelihood: dimension mismatch");
    }
    const double scale = std::sqrt(2.0 * rho / static_cast<double>(Nt));
    double ll = 0.0;
    for (Eigen::Index r = 0; r < refined.rows(); ++r) {
        ll += log_phi(scale * refined.row(r).dot(x_real));
    }
    return ll;
}

std::vector<int> map_to_constellation(const Eigen::VectorXcd& soft, const Constellation& c) {
    std::vector<int> hard(soft.size());
    for (Eigen::Index n = 0; n < soft.size(); ++n) {
        const std::complex<double> v = soft(n);
        if (std::isnan(v.real()) || std::isnan(v.imag())) {
            throw std::invalid_argument("map_to_constellation: NaN entry at position " +
                                        std::to_string(n));
        }
        int best = 0;
        double best_d = std::numeric_limits<double>::infinity();
        for (int m = 0; m < c.M; ++m) {
            const double d = std::norm(v - c.points[m]);
            if (d < best_d) {
                best_d = d;
                best = m;
            }
        }
        hard[n] = best;
    }
    return hard;
}

ReceiverOutput zf_decode(const ChannelMatrix& H, const QuantizedObservation& q,
                         const Constellation& c) {
    if (q.K != H.K) {
        throw std::invalid_argument("zf_decode: dimension mismatch");
    }
    ReceiverOutput out;
    out.kind = ReceiverKind::ZF;
    out.soft = pseudo_inverse<std::complex<double>>(H.H) * q.complex_signs();
    out.hard_indices = map_to_constellation(*out.soft, c);
    return out;
}

namespace {

std::uint64_t lex_index(const std::vector<int>& idx, int M) {
    std::uint64_t j = 0;
    for (int v : idx) j = j * static_cast<std::uint64_t>(M) + static_cast<std::uint64_t>(v);
    return j;
}

}  // namespace

ReceiverOutput ml_decode(const ChannelMatrix& H, const QuantizedObservation& q,
                         const Constellation& c, double rho) {
    if (q.K != H.K) {
        throw std::invalid_argument("ml_decode: dimension mismatch");
    }
    if (!(rho > 0.0)) {
        throw std::invalid_argument("ml_decode: rho must be positive");
    }
    const int Nt = H.Nt;
    const int M = c.M;

    std::uint64_t n_cand = 1;
    bool overflow = false;
    for (int n = 0; n < Nt; ++n) {
        if (n_cand > kMaxMlCandidates / static_cast<std::uint64_t>(M)) {
            overflow = true;
            break;
        }
        n_cand *= static_cast<std::uint64_t>(M);
    }
    if (overflow || n_cand > kMaxMlCandidates) {
        const double count = std::pow(static_cast<double>(M), static_cast<double>(Nt));
        throw MlSearchSpaceError("ml_decode: search space " + std::to_string(M) + "^" +
                                     std::to_string(Nt) + " = " + std::to_string(count) +
                                     " exceeds 2^24",
                                 count);
    }

    const Eigen::MatrixXd refined = sign_refine(H, q);
    const int rows = static_cast<int>(refined.rows());
    const double scale = std::sqrt(2.0 * rho / static_cast<double>(Nt));

    // contrib[(r * Nt + n) * M + m] is row r's inner product with antenna
    // n's candidate symbol m, so a candidate's margin on a row is a Nt-term
    // lookup sum.
    std::vector<double> contrib(static_cast<std::size_t>(rows) * Nt * M);
    for (int r = 0; r < rows; ++r) {
        for (int n = 0; n < Nt; ++n) {
            const double re = refined(r, n);
            const double im = refined(r, Nt + n);
            double* dst = &contrib[(static_cast<std::size_t>(r) * Nt + n) * M];
            for (int m = 0; m < M; ++m) {
                dst[m] = re * c.real_pairs[m].first + im * c.real_pairs[m].second;
            }
        }
    }

    // Log likelihood of a candidate, abandoning as soon as the running sum
    // drops strictly below the incumbent (every remaining term is <= 0, so
    // such a candidate can neither win nor tie).
    const auto candidate_ll = [&](const int* idx, double abandon_below) {
        double ll = 0.0;
        const double* row = contrib.data();
        for (int r = 0; r < rows; ++r, row += static_cast<std::size_t>(Nt) * M) {
            double t = 0.0;
            for (int n = 0; n < Nt; ++n) t += row[n * M + idx[n]];
            ll += log_phi(scale * t);
            if (ll < abandon_below) return ll;
        }
        return ll;
    };

    double best = -std::numeric_limits<double>::infinity();
    std::uint64_t best_j = n_cand;
    std::vector<int> best_idx(Nt, 0);

    // The ZF decision seeds the incumbent so pruning bites from the first
    // candidate.
    if (H.K > 0) {
        const ReceiverOutput zf = zf_decode(H, q, c);
        best = candidate_ll(zf.hard_indices.data(), -std::numeric_limits<double>::infinity());
        best_j = lex_index(zf.hard_indices, M);
        best_idx = zf.hard_indices;
    }

    std::vector<int> idx(Nt, 0);
    for (std::uint64_t j = 0; j < n_cand; ++j) {
        const double ll = candidate_ll(idx.data(), best);
        if (ll > best || (ll == best && j < best_j)) {
            best = ll;
            best_j = j;
            best_idx = idx;
        }
        for (int n = Nt - 1; n >= 0; --n) {
            if (++idx[n] < M) break;
            idx[n] = 0;
        }
    }

    ReceiverOutput out;
    out.kind = ReceiverKind::ML;
    out.hard_indices = std::move(best_idx);
    out.log_likelihood = best;
    return out;
}

ReceiverOutput modified_zf_decode(const ChannelMatrix& H, const QuantizedObservation& q,
                                  const Constellation& c, double /*rho*/,
                                  const ModifiedZfOptions& opts) {
    const ReceiverOutput zf = zf_decode(H, q, c);
    const int Nt = H.Nt;

    LinearProgram lp;
    lp.cone_rows = sign_refine(H, q);
    lp.objective.resize(2 * Nt);
    if (opts.soft_objective) {
        lp.objective << zf.soft->real(), zf.soft->imag();
    } else {
        for (int n = 0; n < Nt; ++n) {
            const auto& p = c.real_pairs[zf.hard_indices[n]];
            lp.objective(n) = p.first;
            lp.objective(Nt + n) = p.second;
        }
    }

    const LpSolution sol = solve_lp(lp);

    ReceiverOutput out;
    out.kind = ReceiverKind::ZF_LP;
    Eigen::VectorXcd soft(Nt);
    for (int n = 0; n < Nt; ++n) {
        soft(n) = std::complex<double>(sol.x(n), sol.x(Nt + n));
    }
    out.soft = std::move(soft);
    out.hard_indices = map_to_constellation(*out.soft, c);
    return out;
}

}  // namespace drx
