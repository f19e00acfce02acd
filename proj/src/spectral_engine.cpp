#include "friedrichs/spectral_engine.hpp"

#include "friedrichs/errors.hpp"
#include "friedrichs/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace friedrichs {

namespace {

int alignment_cells(const PotentialModel& potential, const SeparableKernel& kernel) {
    return std::max(potential.dyadic_cells(), kernel.rank());
}

}  // namespace

double DiscretizedOperator::potential_energy(const Eigen::VectorXd& v) const {
    if (potential_form.size() == 0) throw std::logic_error("potential_energy: operator carries no potential form");
    if (representation == Representation::Nystrom) {
        return (potential_form.col(0).array() * v.array().square()).sum();
    }
    return v.dot(potential_form * v);
}

double DiscretizedOperator::default_gap_tol() const {
    return 1e-8 * std::max(1.0, std::abs(e_max));
}

DiscretizedOperator DiscretizedOperator::from_matrix(Eigen::MatrixXd matrix, double e_min, double e_max) {
    require_symmetric(matrix);
    DiscretizedOperator op;
    op.representation = Representation::Matrix;
    op.matrix = std::move(matrix);
    op.e_min = e_min;
    op.e_max = e_max;
    return op;
}

DiscretizedOperator discretize_nystrom(const PotentialModel& potential, const SeparableKernel& kernel, int N) {
    if (N < 16) throw std::invalid_argument("discretize_nystrom: N must be >= 16");
    const QuadratureGrid grid = trapezoid_grid(alignment_cells(potential, kernel), N);
    const auto n = static_cast<Eigen::Index>(grid.nodes.size());
    const int rank = kernel.rank();

    // basis(i, r) = b_{r+1}(x_i); products are formed exactly as in eval_kernel.
    Eigen::MatrixXd basis(n, rank);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (int r = 0; r < rank; ++r) basis(i, r) = kernel.basis_value(r + 1, grid.nodes[static_cast<std::size_t>(i)]);
    }
    const auto& lambdas = kernel.lambda_values();

    DiscretizedOperator op;
    op.representation = Representation::Nystrom;
    op.nodes = grid.nodes;
    op.weights = grid.weights;
    op.e_min = potential.u_min();
    op.e_max = potential.u_max();
    op.basis = kernel.basis();
    op.potential_form.resize(n, 1);
    op.matrix.setZero(n, n);

    for (Eigen::Index j = 0; j < n; ++j) {
        const double wj = grid.weights[static_cast<std::size_t>(j)];
        for (Eigen::Index i = j; i < n; ++i) {
            double k = 0.0;
            for (int r = 0; r < rank; ++r) {
                const double bi = basis(i, r);
                if (bi == 0.0) continue;
                k += lambdas[static_cast<std::size_t>(r)] * (bi * basis(j, r));
            }
            if (k != 0.0) {
                const double value = -std::sqrt(grid.weights[static_cast<std::size_t>(i)] * wj) * k;
                op.matrix(i, j) = value;
                op.matrix(j, i) = value;
            }
        }
        const double u = potential(grid.nodes[static_cast<std::size_t>(j)]);
        op.potential_form(j, 0) = u;
        op.matrix(j, j) += u;
    }
    return op;
}

Eigen::MatrixXd discretize_galerkin(const PotentialModel& potential, const SeparableKernel& kernel, int R) {
    if (R < 0 || R > kernel.rank()) throw std::invalid_argument("discretize_galerkin: R must not exceed the kernel rank");
    Eigen::MatrixXd g = galerkin_operator(potential, kernel, R).matrix;
    return g;
}

DiscretizedOperator galerkin_operator(const PotentialModel& potential, const SeparableKernel& kernel, int R) {
    if (R < 0 || R > kernel.rank()) throw std::invalid_argument("galerkin_operator: R must not exceed the kernel rank");
    const int cells = std::max(alignment_cells(potential, kernel), R);
    const bool polynomial = potential.piecewise_linear_on_cells() && kernel.basis() == BasisFamily::TentHats;
    const int panels = polynomial ? 2 : 64;

    DiscretizedOperator op;
    op.representation = Representation::Galerkin;
    op.e_min = potential.u_min();
    op.e_max = potential.u_max();
    op.basis = kernel.basis();
    op.potential_form.setZero(R, R);
    for (int m = 1; m <= R; ++m) {
        const auto [lo_m, hi_m] = basis_support(kernel.basis(), m);
        for (int n = m; n <= R; ++n) {
            const auto [lo_n, hi_n] = basis_support(kernel.basis(), n);
            const double lo = std::max(lo_m, lo_n);
            const double hi = std::min(hi_m, hi_n);
            if (hi <= lo) continue;
            const double value = integrate_aligned(
                [&](double x) { return potential(x) * (kernel.basis_value(m, x) * kernel.basis_value(n, x)); }, cells,
                lo, hi, panels);
            op.potential_form(m - 1, n - 1) = value;
            op.potential_form(n - 1, m - 1) = value;
        }
    }
    op.matrix = op.potential_form;
    for (int n = 1; n <= R; ++n) op.matrix(n - 1, n - 1) -= kernel.lambda(n);
    return op;
}

std::vector<double> minimax_sequence(const DiscretizedOperator& op, int n_max) {
    if (n_max < 0 || n_max > op.size()) throw std::invalid_argument("minimax_sequence: n_max exceeds operator size");
    const Eigen::VectorXd values = eigenvalues(op.matrix);
    std::vector<double> mu;
    mu.reserve(static_cast<std::size_t>(n_max));
    for (int n = 0; n < n_max; ++n) mu.push_back(std::min(values(n), op.e_min));
    return mu;
}

std::vector<double> maximin_sequence(const DiscretizedOperator& op, int n_max) {
    if (n_max < 0 || n_max > op.size()) throw std::invalid_argument("maximin_sequence: n_max exceeds operator size");
    const Eigen::VectorXd values = eigenvalues(op.matrix);
    const Eigen::Index last = values.size() - 1;
    std::vector<double> eta;
    eta.reserve(static_cast<std::size_t>(n_max));
    for (int n = 0; n < n_max; ++n) eta.push_back(std::max(values(last - n), op.e_max));
    return eta;
}

SpectralResult discrete_spectrum(const DiscretizedOperator& op, std::optional<double> gap_tol) {
    SpectralResult result;
    result.e_min = op.e_min;
    result.e_max = op.e_max;
    result.gap_tol = gap_tol.value_or(op.default_gap_tol());
    if (!(result.gap_tol > 0.0)) throw std::invalid_argument("discrete_spectrum: gap_tol must be positive");
    const double lower = op.e_min - result.gap_tol;
    const double upper = op.e_max + result.gap_tol;
    const PartialDecomposition pd = eigensolve_outside(op.matrix, lower, upper);

    std::vector<Eigen::Index> low_keep;
    for (Eigen::Index i = 0; i < pd.low_values.size(); ++i) {
        if (pd.low_values(i) < lower) low_keep.push_back(i);
    }
    std::vector<Eigen::Index> high_keep;
    for (Eigen::Index i = pd.high_values.size() - 1; i >= 0; --i) {
        if (pd.high_values(i) > upper) high_keep.push_back(i);
    }
    result.below_vectors.resize(op.size(), static_cast<Eigen::Index>(low_keep.size()));
    for (std::size_t c = 0; c < low_keep.size(); ++c) {
        result.below.push_back(pd.low_values(low_keep[c]));
        result.below_vectors.col(static_cast<Eigen::Index>(c)) = pd.low_vectors.col(low_keep[c]);
    }
    result.above_vectors.resize(op.size(), static_cast<Eigen::Index>(high_keep.size()));
    for (std::size_t c = 0; c < high_keep.size(); ++c) {
        result.above.push_back(pd.high_values(high_keep[c]));
        result.above_vectors.col(static_cast<Eigen::Index>(c)) = pd.high_vectors.col(high_keep[c]);
    }
    result.bulk_count = op.size() - static_cast<Eigen::Index>(result.below.size() + result.above.size());
    return result;
}

const char* to_string(EdgeState state) {
    return state == EdgeState::Attained ? "attained" : "detached";
}

EdgeReport edge_classification(const DiscretizedOperator& op, std::optional<double> gap_tol) {
    const double tol = gap_tol.value_or(op.default_gap_tol());
    EdgeReport report;
    if (op.size() == 0) return report;
    const Eigen::VectorXd values = eigenvalues(op.matrix);
    if (values(0) < op.e_min - tol) report.lower = EdgeState::Detached;
    if (values(values.size() - 1) > op.e_max + tol) report.upper = EdgeState::Detached;
    return report;
}

namespace {

// Keeps the leading entries of `fine` that have a counterpart in `coarse` (same
// rank from the edge) within the refinement tolerance.
int filter_side(std::vector<double>& fine, Eigen::MatrixXd& vectors, const std::vector<double>& coarse, double edge,
                double gap_tol) {
    std::size_t keep = 0;
    for (; keep < fine.size() && keep < coarse.size(); ++keep) {
        const double distance = std::abs(fine[keep] - edge);
        const double tol = std::max(10.0 * gap_tol, 0.25 * distance);
        if (std::abs(fine[keep] - coarse[keep]) > tol) break;
    }
    const int dropped = static_cast<int>(fine.size() - keep);
    fine.resize(keep);
    vectors.conservativeResize(Eigen::NoChange, static_cast<Eigen::Index>(keep));
    return dropped;
}

}  // namespace

StableSpectrum stable_discrete_spectrum(const PotentialModel& potential, const SeparableKernel& kernel, int N,
                                        std::optional<double> gap_tol) {
    const DiscretizedOperator fine_op = discretize_nystrom(potential, kernel, N);
    const DiscretizedOperator coarse_op = discretize_nystrom(potential, kernel, N / 2);
    const double tol = gap_tol.value_or(fine_op.default_gap_tol());

    StableSpectrum out;
    out.result = discrete_spectrum(fine_op, tol);
    const SpectralResult coarse = discrete_spectrum(coarse_op, tol);
    out.coarse_nodes = static_cast<int>(coarse_op.size());
    out.dropped_below = filter_side(out.result.below, out.result.below_vectors, coarse.below, fine_op.e_min, tol);
    out.dropped_above = filter_side(out.result.above, out.result.above_vectors, coarse.above, fine_op.e_max, tol);
    out.result.bulk_count += out.dropped_below + out.dropped_above;
    return out;
}

double max_residual(const Eigen::MatrixXd& matrix, const std::vector<double>& values, const Eigen::MatrixXd& vectors) {
    double worst = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const Eigen::VectorXd v = vectors.col(static_cast<Eigen::Index>(i));
        worst = std::max(worst, (matrix * v - values[i] * v).norm());
    }
    return worst;
}

}  // namespace friedrichs
