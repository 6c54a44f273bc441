#include "icrlab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace icrlab {

ComplexMatrix null_space_projector(const std::vector<ComplexRowVector>& rows, int dim) {
    if (dim <= 0) {
        throw std::invalid_argument("projector dimension must be positive");
    }
    if (static_cast<int>(rows.size()) >= dim) {
        throw InfeasibleNulling("cannot null " + std::to_string(rows.size()) +
                                " rows in dimension " + std::to_string(dim));
    }
    if (rows.empty()) {
        return ComplexMatrix::Identity(dim, dim);
    }
    ComplexMatrix stacked(rows.size(), dim);
    for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
        if (rows[r].size() != dim) {
            throw std::invalid_argument("constraint row " + std::to_string(r) +
                                        " has length " + std::to_string(rows[r].size()) +
                                        ", expected " + std::to_string(dim));
        }
        stacked.row(r) = rows[r];
    }
    Eigen::JacobiSVD<ComplexMatrix> svd(stacked, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double cut = sv.size() > 0 ? sv(0) * kRankRelTol : 0.0;
    int effective_rank = 0;
    for (int i = 0; i < sv.size(); ++i) {
        if (sv(i) > cut) {
            ++effective_rank;
        }
    }
    const ComplexMatrix basis = svd.matrixV().rightCols(dim - effective_rank);
    return basis * basis.adjoint();
}

ComplexVector beam_column(const ComplexMatrix& projector, int index) {
    if (index < 0 || index >= projector.cols()) {
        throw std::invalid_argument("beam column index out of range");
    }
    ComplexVector column = projector.col(index);
    if (column.norm() < kBeamNormTol) {
        throw DegenerateBeam("projector column " + std::to_string(index) +
                             " vanished (norm < 1e-12)");
    }
    return column;
}

ComplexVector first_beam_column(const ComplexMatrix& projector) {
    return beam_column(projector, 0);
}

int rank(const ComplexMatrix& m, double rel_tol) {
    if (m.size() == 0) {
        return 0;
    }
    Eigen::JacobiSVD<ComplexMatrix> svd(m);
    const auto& sv = svd.singularValues();
    if (sv.size() == 0 || sv(0) == 0.0) {
        return 0;
    }
    const double cut = sv(0) * rel_tol;
    int r = 0;
    for (int i = 0; i < sv.size(); ++i) {
        if (sv(i) > cut) {
            ++r;
        }
    }
    return r;
}

ComplexVector solve(const ComplexMatrix& a, const ComplexVector& b) {
    if (a.rows() != a.cols()) {
        throw std::invalid_argument("solve expects a square matrix");
    }
    if (a.rows() != b.size()) {
        throw std::invalid_argument("right-hand side length mismatch");
    }
    if (rank(a) < a.rows()) {
        throw SingularSystem("coefficient matrix is rank-deficient");
    }
    return a.fullPivLu().solve(b);
}

double logdet_rate(const ComplexMatrix& g, const ComplexMatrix& noise_cov, double power) {
    if (noise_cov.rows() != noise_cov.cols() || noise_cov.rows() != g.rows()) {
        throw std::invalid_argument("noise covariance shape mismatch");
    }
    if (!(power >= 0.0) || !std::isfinite(power)) {
        throw std::invalid_argument("power must be finite and nonnegative");
    }
    if (g.rows() == 0 || g.cols() == 0) {
        return 0.0;
    }
    if (hermitian_defect(noise_cov) > 1e-9 * std::max(1.0, noise_cov.norm())) {
        throw std::invalid_argument("noise covariance is not Hermitian");
    }
    Eigen::LLT<ComplexMatrix> llt(noise_cov);
    if (llt.info() != Eigen::Success) {
        throw std::invalid_argument("noise covariance is not positive definite");
    }
    // Whitened Gram matrix L^{-1} G G^H L^{-H}; its eigenvalues are those of
    // C^{-1/2} G G^H C^{-1/2}.
    const ComplexMatrix whitened = llt.matrixL().solve(g);
    const ComplexMatrix gram = whitened * whitened.adjoint();
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> eigs(gram, Eigen::EigenvaluesOnly);
    const double scale = power / static_cast<double>(g.cols());
    double bits = 0.0;
    for (int i = 0; i < eigs.eigenvalues().size(); ++i) {
        const double lambda = std::max(0.0, eigs.eigenvalues()(i));
        bits += std::log2(1.0 + scale * lambda);
    }
    return bits;
}

double idempotence_defect(const ComplexMatrix& q) {
    return (q * q - q).cwiseAbs().maxCoeff();
}

double hermitian_defect(const ComplexMatrix& q) {
    return (q - q.adjoint()).cwiseAbs().maxCoeff();
}

}  // namespace icrlab
