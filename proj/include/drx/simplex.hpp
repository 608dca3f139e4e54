// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace drx {

// Dense LP in the specific shape used by the sign-consistent refinement:
//
//   maximize   objective . x
//   subject to cone_rows * x >= 0   (one row per quantized sign)
//              box_lo <= x_i <= box_hi
//
// x = 0 is always feasible when the box contains the origin, so the optimal
// objective is never negative.
struct LinearProgram {
    Eigen::VectorXd objective;
    Eigen::MatrixXd cone_rows;
    double box_lo = -1.0;
    double box_hi = 1.0;
};

struct LpSolution {
    Eigen::VectorXd x;
    double objective = 0.0;
    int iterations = 0;
};

// Raised when the pivoting guard trips; carries the best feasible point
// known at that moment.
class LpIterationLimitError : public std::runtime_error {
public:
    LpIterationLimitError(const std::string& msg, Eigen::VectorXd best)
        : std::runtime_error(msg), best_feasible(std::move(best)) {}
    Eigen::VectorXd best_feasible;
};

// Vertex-following (dual simplex) solver. Starts from the box vertex whose
// signs match the objective and pivots violated cone rows into the active
// set; Bland's rule is enabled after repeated degenerate pivots to rule out
// cycling. The returned point satisfies every cone row to within 1e-9.
LpSolution solve_lp(const LinearProgram& lp);

}  // namespace drx
