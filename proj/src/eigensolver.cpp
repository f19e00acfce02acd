#include "friedrichs/eigensolver.hpp"

#include "friedrichs/errors.hpp"

#include <lapacke.h>

#include <cmath>
#include <string>
#include <vector>

namespace friedrichs {

namespace {

void check_info(lapack_int info, const char* routine) {
    if (info != 0) {
        throw std::runtime_error(std::string(routine) + " failed with info = " + std::to_string(info));
    }
}

struct Tridiagonal {
    Eigen::MatrixXd reflectors;  // dsytrd output, lower storage
    Eigen::VectorXd diagonal;
    Eigen::VectorXd offdiagonal;  // length n (last entry is workspace for dstemr)
    Eigen::VectorXd tau;
};

Tridiagonal tridiagonalize(const Eigen::MatrixXd& matrix) {
    const auto n = static_cast<lapack_int>(matrix.rows());
    Tridiagonal t;
    t.reflectors = matrix;
    t.diagonal.resize(n);
    t.offdiagonal = Eigen::VectorXd::Zero(n);
    t.tau = Eigen::VectorXd::Zero(std::max<lapack_int>(n - 1, 1));
    check_info(LAPACKE_dsytrd(LAPACK_COL_MAJOR, 'L', n, t.reflectors.data(), n, t.diagonal.data(),
                              t.offdiagonal.data(), t.tau.data()),
               "dsytrd");
    return t;
}

// Eigenpairs il..iu (1-based, inclusive) of the tridiagonal matrix, eigenvectors
// in the tridiagonal basis.
void tridiagonal_pairs(const Tridiagonal& t, lapack_int il, lapack_int iu, Eigen::VectorXd& values,
                       Eigen::MatrixXd& vectors) {
    const auto n = static_cast<lapack_int>(t.diagonal.size());
    const lapack_int count = iu - il + 1;
    Eigen::VectorXd d = t.diagonal;
    Eigen::VectorXd e = t.offdiagonal;
    Eigen::VectorXd w(n);
    vectors.resize(n, count);
    std::vector<lapack_int> isuppz(2 * static_cast<std::size_t>(std::max<lapack_int>(count, 1)));
    lapack_int found = 0;
    lapack_logical tryrac = 1;
    const lapack_int info = LAPACKE_dstemr(LAPACK_COL_MAJOR, 'V', 'I', n, d.data(), e.data(), 0.0, 0.0, il, iu,
                                           &found, w.data(), vectors.data(), n, count, isuppz.data(), &tryrac);
    if (info == 0 && found == count) {
        values = w.head(count);
        return;
    }
    // Bisection plus inverse iteration as a fallback for the rare MRRR failure.
    d = t.diagonal;
    e = t.offdiagonal;
    lapack_int nsplit = 0;
    std::vector<lapack_int> iblock(static_cast<std::size_t>(n));
    std::vector<lapack_int> isplit(static_cast<std::size_t>(n));
    check_info(LAPACKE_dstebz('I', 'B', n, 0.0, 0.0, il, iu, 0.0, d.data(), e.data(), &found, &nsplit, w.data(),
                              iblock.data(), isplit.data()),
               "dstebz");
    std::vector<lapack_int> ifail(static_cast<std::size_t>(found));
    vectors.resize(n, found);
    check_info(LAPACKE_dstein(LAPACK_COL_MAJOR, n, d.data(), e.data(), found, w.data(), iblock.data(),
                              isplit.data(), vectors.data(), n, ifail.data()),
               "dstein");
    values = w.head(found);
}

void back_transform(const Tridiagonal& t, Eigen::MatrixXd& vectors) {
    if (vectors.cols() == 0) return;
    const auto n = static_cast<lapack_int>(vectors.rows());
    const auto m = static_cast<lapack_int>(vectors.cols());
    Eigen::MatrixXd reflectors = t.reflectors;
    Eigen::VectorXd tau = t.tau;
    check_info(LAPACKE_dormtr(LAPACK_COL_MAJOR, 'L', 'L', 'N', n, m, reflectors.data(), n, tau.data(),
                              vectors.data(), n),
               "dormtr");
}

}  // namespace

void require_symmetric(const Eigen::MatrixXd& matrix) {
    if (matrix.rows() != matrix.cols()) throw ContractViolation("eigensolve: matrix is not square");
    const double scale = matrix.cwiseAbs().maxCoeff();
    const double tol = 1e-14 * scale;
    for (Eigen::Index j = 0; j < matrix.cols(); ++j) {
        for (Eigen::Index i = j + 1; i < matrix.rows(); ++i) {
            if (std::abs(matrix(i, j) - matrix(j, i)) > tol) {
                throw ContractViolation("eigensolve: matrix is not symmetric at (" + std::to_string(i) + ", " +
                                        std::to_string(j) + ")");
            }
        }
    }
}

EigenDecomposition eigensolve(const Eigen::MatrixXd& matrix) {
    require_symmetric(matrix);
    EigenDecomposition out;
    const auto n = static_cast<lapack_int>(matrix.rows());
    out.vectors = matrix;
    out.values.resize(n);
    if (n == 0) return out;
    check_info(LAPACKE_dsyev(LAPACK_COL_MAJOR, 'V', 'L', n, out.vectors.data(), n, out.values.data()), "dsyev");
    return out;
}

Eigen::VectorXd eigenvalues(const Eigen::MatrixXd& matrix) {
    require_symmetric(matrix);
    const auto n = static_cast<lapack_int>(matrix.rows());
    Eigen::VectorXd values(n);
    if (n == 0) return values;
    Eigen::MatrixXd work = matrix;
    check_info(LAPACKE_dsyev(LAPACK_COL_MAJOR, 'N', 'L', n, work.data(), n, values.data()), "dsyev");
    return values;
}

PartialDecomposition eigensolve_outside(const Eigen::MatrixXd& matrix, double lower, double upper) {
    require_symmetric(matrix);
    PartialDecomposition out;
    const auto n = static_cast<lapack_int>(matrix.rows());
    if (n == 0) return out;
    const Tridiagonal t = tridiagonalize(matrix);

    out.values = t.diagonal;
    Eigen::VectorXd e = t.offdiagonal;
    check_info(LAPACKE_dsterf(n, out.values.data(), e.data()), "dsterf");

    lapack_int below = 0;
    while (below < n && out.values(below) < lower) ++below;
    lapack_int above = 0;
    while (above < n - below && out.values(n - 1 - above) > upper) ++above;

    if (below > 0) {
        tridiagonal_pairs(t, 1, below, out.low_values, out.low_vectors);
        back_transform(t, out.low_vectors);
    }
    if (above > 0) {
        tridiagonal_pairs(t, n - above + 1, n, out.high_values, out.high_vectors);
        back_transform(t, out.high_vectors);
    }
    return out;
}

}  // namespace friedrichs
