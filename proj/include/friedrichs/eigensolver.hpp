#pragma once

#include <Eigen/Dense>

namespace friedrichs {

struct EigenDecomposition {
    Eigen::VectorXd values;   ///< ascending
    Eigen::MatrixXd vectors;  ///< orthonormal columns, vectors.col(i) pairs with values(i)
};

/// Throws ContractViolation unless |a_ij - a_ji| <= 1e-14 * max|a|.
void require_symmetric(const Eigen::MatrixXd& matrix);

/// All eigenpairs of a dense symmetric matrix: Householder tridiagonalization
/// followed by implicit-shift QL/QR with accumulated rotations (LAPACK dsyev).
EigenDecomposition eigensolve(const Eigen::MatrixXd& matrix);

/// Eigenvalues only, ascending (tridiagonalization + root-free implicit QR).
Eigen::VectorXd eigenvalues(const Eigen::MatrixXd& matrix);

/// Eigenvalues of a large matrix with eigenvectors for the ones outside
/// [lower, upper]. The tridiagonal form is computed once; selected
/// eigenvectors come from the tridiagonal solver and are mapped back through
/// the Householder reflectors.
struct PartialDecomposition {
    Eigen::VectorXd values;        ///< all eigenvalues, ascending
    Eigen::VectorXd low_values;    ///< values < lower, ascending
    Eigen::MatrixXd low_vectors;
    Eigen::VectorXd high_values;   ///< values > upper, ascending
    Eigen::MatrixXd high_vectors;
};

PartialDecomposition eigensolve_outside(const Eigen::MatrixXd& matrix, double lower, double upper);

}  // namespace friedrichs
