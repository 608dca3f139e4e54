// SPDX-License-Identifier: Apache-2.0
#include "drx/simplex.hpp"

#include <Eigen/LU>
#include <cmath>
#include <limits>
#include <vector>

namespace drx {

namespace {

constexpr double kFeasTol = 1e-9;
constexpr double kPivotTol = 1e-11;
constexpr double kDegenerateTol = 1e-13;

// Constraint rows are indexed uniformly: the m cone rows first (rhs 0), then
// n lower-bound rows x_i >= lo, then n upper-bound rows -x_i >= -hi.
struct Rows {
    const Eigen::MatrixXd& A;
    int m;
    int n;
    double lo;
    double hi;

    int total() const { return m + 2 * n; }

    void fill(int r, Eigen::Ref<Eigen::VectorXd, 0, Eigen::InnerStride<>> g) const {
        if (r < m) {
            g = A.row(r).transpose();
        } else {
            g.setZero();
            if (r < m + n) {
                g(r - m) = 1.0;
            } else {
                g(r - m - n) = -1.0;
            }
        }
    }

    double rhs(int r) const {
        if (r < m) return 0.0;
        return (r < m + n) ? lo : -hi;
    }
};

}  // namespace

LpSolution solve_lp(const LinearProgram& lp) {
    const int n = static_cast<int>(lp.objective.size());
    const int m = static_cast<int>(lp.cone_rows.rows());
    if (n == 0) {
        throw std::invalid_argument("solve_lp: empty objective");
    }
    if (m > 0 && lp.cone_rows.cols() != n) {
        throw std::invalid_argument("solve_lp: cone_rows has " +
                                    std::to_string(lp.cone_rows.cols()) +
                                    " columns, objective has " + std::to_string(n));
    }
    if (!std::isfinite(lp.box_lo) || !std::isfinite(lp.box_hi) || lp.box_lo >= lp.box_hi) {
        throw std::invalid_argument("solve_lp: box bounds must be finite with lo < hi");
    }

    const Rows rows{lp.cone_rows, m, n, lp.box_lo, lp.box_hi};

    // Active set: start at the box vertex whose signs match the objective.
    // The matching multipliers are |c_i| >= 0, so the start is dual feasible
    // and every pivot keeps it that way; violated cone rows are brought in
    // one at a time until the vertex is primal feasible.
    std::vector<int> working(n);
    Eigen::VectorXd mu(n);
    std::vector<char> in_working(rows.total(), 0);
    for (int i = 0; i < n; ++i) {
        if (lp.objective(i) >= 0.0) {
            working[i] = m + n + i;  // x_i at hi
            mu(i) = lp.objective(i);
        } else {
            working[i] = m + i;  // x_i at lo
            mu(i) = -lp.objective(i);
        }
        in_working[working[i]] = 1;
    }

    const int max_iter = 200 + 50 * rows.total();
    Eigen::MatrixXd gw(n, n);
    Eigen::VectorXd bw(n), g_enter(n), x(n), w(n);
    bool bland = false;
    int degenerate_streak = 0;

    for (int iter = 0; iter <= max_iter; ++iter) {
        for (int j = 0; j < n; ++j) {
            rows.fill(working[j], gw.row(j).transpose());
            bw(j) = rows.rhs(working[j]);
        }
        Eigen::PartialPivLU<Eigen::MatrixXd> lu(gw);
        x = lu.solve(bw);

        // Primal feasibility scan over inactive rows.
        int enter = -1;
        double worst = -kFeasTol;
        if (m > 0) {
            const Eigen::VectorXd av = lp.cone_rows * x;
            for (int r = 0; r < m; ++r) {
                if (in_working[r]) continue;
                const double v = av(r);
                if (v < worst) {
                    worst = v;
                    enter = r;
                    if (bland) break;
                }
            }
        }
        if (enter < 0 || !bland) {
            for (int i = 0; i < n && (enter < 0 || !bland); ++i) {
                const int rlo = m + i, rhi = m + n + i;
                if (!in_working[rlo] && x(i) - lp.box_lo < worst) {
                    worst = x(i) - lp.box_lo;
                    enter = rlo;
                }
                if (!in_working[rhi] && lp.box_hi - x(i) < worst) {
                    worst = lp.box_hi - x(i);
                    enter = rhi;
                }
            }
        }
        if (enter < 0) {
            LpSolution sol;
            sol.x = x;
            sol.objective = lp.objective.dot(x);
            sol.iterations = iter;
            return sol;
        }
        if (iter == max_iter) {
            // The origin is always feasible for this problem shape; report
            // it as the best known point.
            throw LpIterationLimitError(
                "solve_lp: iteration limit reached (" + std::to_string(max_iter) + ")",
                Eigen::VectorXd::Zero(n));
        }

        rows.fill(enter, g_enter);
        w = gw.transpose().partialPivLu().solve(g_enter);

        // Ratio test: the entering multiplier grows until some working
        // multiplier hits zero. Bland's rule (lowest row index) breaks ties
        // once pivoting degenerates.
        int leave = -1;
        double theta = std::numeric_limits<double>::infinity();
        for (int j = 0; j < n; ++j) {
            if (w(j) > kPivotTol) {
                const double ratio = mu(j) / w(j);
                if (ratio < theta - 1e-15 ||
                    (ratio <= theta + 1e-15 &&
                     (leave < 0 || (bland && working[j] < working[leave])))) {
                    theta = ratio;
                    leave = j;
                }
            }
        }
        if (leave < 0) {
            throw LpIterationLimitError("solve_lp: ratio test failed (numerical breakdown)",
                                        Eigen::VectorXd::Zero(n));
        }

        mu -= theta * w;
        mu = mu.cwiseMax(0.0);
        in_working[working[leave]] = 0;
        in_working[enter] = 1;
        working[leave] = enter;
        mu(leave) = theta;

        if (theta <= kDegenerateTol) {
            if (++degenerate_streak > 40) bland = true;
        } else {
            degenerate_streak = 0;
        }
        if (iter > max_iter / 2) bland = true;
    }

    throw LpIterationLimitError("solve_lp: iteration limit reached",
                                Eigen::VectorXd::Zero(n));
}

}  // namespace drx
