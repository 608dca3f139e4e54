// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <Eigen/SVD>

namespace drx {

// Moore-Penrose pseudo-inverse via SVD. Singular values at or below
// rel_tol * sigma_max are treated as zero, so rank-deficient inputs are
// handled without error.
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> pseudo_inverse(
    const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& a,
    double rel_tol = 1e-12) {
    using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    if (a.rows() == 0 || a.cols() == 0) {
        return Mat::Zero(a.cols(), a.rows());
    }
    Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd& sv = svd.singularValues();
    const double cutoff = rel_tol * sv(0);
    Eigen::VectorXd inv_sv = Eigen::VectorXd::Zero(sv.size());
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
        if (sv(i) > cutoff && sv(i) > 0.0) inv_sv(i) = 1.0 / sv(i);
    }
    return svd.matrixV() * inv_sv.asDiagonal() * svd.matrixU().adjoint();
}

}  // namespace drx
