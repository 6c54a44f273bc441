#pragma once

#include <Eigen/Dense>

#include <complex>
#include <vector>

#include "icrlab/errors.hpp"

namespace icrlab {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using ComplexRowVector = Eigen::RowVectorXcd;

// Tolerances chosen for double precision at dimensions up to K = 16.
inline constexpr double kAnnihilationTol = 1e-10;  // absolute, row * projector
inline constexpr double kRankRelTol = 1e-8;        // relative singular-value cut
inline constexpr double kBeamNormTol = 1e-12;      // degenerate projector column

// Hermitian idempotent projector onto the orthogonal complement of the given
// 1 x dim rows. Built from an orthonormal basis of the complement (full SVD of
// the stacked rows). Zero rows yield the identity. Throws InfeasibleNulling
// when |rows| >= dim and std::invalid_argument on a row length mismatch.
ComplexMatrix null_space_projector(const std::vector<ComplexRowVector>& rows, int dim);

// Column `index` of a projector, used as a transmit direction inside its
// range. Throws DegenerateBeam when the column norm is below kBeamNormTol.
ComplexVector beam_column(const ComplexMatrix& projector, int index);

// Default convention: column 0.
ComplexVector first_beam_column(const ComplexMatrix& projector);

// Singular values above rel_tol times the largest one.
int rank(const ComplexMatrix& m, double rel_tol = kRankRelTol);

// Solves a square system; throws SingularSystem when rank-deficient at the
// default tolerance.
ComplexVector solve(const ComplexMatrix& a, const ComplexVector& b);

// log2 det(I + (P/n) C^{-1/2} G G^H C^{-1/2}) with n = G.cols(), evaluated
// through the eigenvalues of the whitened Gram matrix so it stays finite for
// powers up to 2^1000. Throws std::invalid_argument unless C is Hermitian
// positive definite with C.rows() == G.rows().
double logdet_rate(const ComplexMatrix& g, const ComplexMatrix& noise_cov, double power);

// max |(Q Q - Q)_{ab}|; diagnostic used by the projector invariants.
double idempotence_defect(const ComplexMatrix& q);

// max |(Q - Q^H)_{ab}|.
double hermitian_defect(const ComplexMatrix& q);

}  // namespace icrlab
