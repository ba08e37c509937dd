#include "omsim/lyapunov.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

namespace omsim {

StabilityReport check_stability(const Mat6& A) {
    if (!A.allFinite()) throw InvalidParameter("A", "must be finite");

    Eigen::EigenSolver<Mat6> es(A, /*computeEigenvectors=*/false);
    StabilityReport rep;
    double margin = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < 6; ++i) {
        rep.eigenvalues[i] = es.eigenvalues()[i];
        margin = std::max(margin, es.eigenvalues()[i].real());
    }
    rep.margin = margin;
    rep.stable = margin < -kStabilityEps;
    return rep;
}

CovarianceMatrix solve_steady_lyapunov(const Mat6& A, const Mat6& D) {
    const StabilityReport stab = check_stability(A);
    if (!stab.stable) {
        throw UnstableSystem("drift matrix is not Hurwitz (margin " +
                             std::to_string(stab.margin) + ")");
    }

    // (I (x) A + A (x) I) vec(V) = -vec(D), column-major vectorization.
    using Mat36 = Eigen::Matrix<double, 36, 36>;
    using Vec36 = Eigen::Matrix<double, 36, 1>;
    Mat36 op = Mat36::Zero();
    for (int j = 0; j < 6; ++j) {
        op.block<6, 6>(6 * j, 6 * j) += A;  // I (x) A
        for (int i = 0; i < 6; ++i) {
            for (int k = 0; k < 6; ++k) op(6 * j + i, 6 * k + i) += A(j, k);  // A (x) I
        }
    }

    Vec36 rhs;
    for (int j = 0; j < 6; ++j)
        for (int i = 0; i < 6; ++i) rhs[6 * j + i] = -D(i, j);

    Eigen::FullPivLU<Mat36> lu(op);
    if (!lu.isInvertible()) {
        throw SingularSystem("Lyapunov operator is numerically singular");
    }
    const Vec36 x = lu.solve(rhs);

    Mat6 V;
    for (int j = 0; j < 6; ++j)
        for (int i = 0; i < 6; ++i) V(i, j) = x[6 * j + i];
    V = ((V + V.transpose()) / 2.0).eval();  // exact symmetry

    CovarianceMatrix cov;
    cov.V = V;
    cov.residual = (A * V + V * A.transpose() + D).norm();
    return cov;
}

double physicality_min_eigenvalue(const Mat6& V) {
    using Mat6c = Eigen::Matrix<std::complex<double>, 6, 6>;
    Mat6c H = V.cast<std::complex<double>>();
    const std::complex<double> ih(0.0, 0.5);
    for (int m = 0; m < 3; ++m) {
        H(2 * m, 2 * m + 1) += ih;
        H(2 * m + 1, 2 * m) -= ih;
    }
    Eigen::SelfAdjointEigenSolver<Mat6c> es(H, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

} // namespace omsim
