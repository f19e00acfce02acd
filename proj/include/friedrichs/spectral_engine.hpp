#pragma once

#include "friedrichs/eigensolver.hpp"
#include "friedrichs/operator_core.hpp"

#include <Eigen/Dense>

#include <optional>
#include <vector>

namespace friedrichs {

enum class Representation { Nystrom, Galerkin, Matrix };

/// Symmetric matrix standing in for H = U - K together with the essential
/// spectrum edges of the continuous model.
///
/// Nystrom: m_ij = u(x_i) delta_ij - sqrt(w_i w_j) k(x_i, x_j); vectors are
///   sqrt(w_i) f(x_i), so the Euclidean inner product approximates L2.
/// Galerkin: coordinates in the orthonormal kernel basis b_1..b_R.
/// Matrix: a raw symmetric matrix with declared edges.
struct DiscretizedOperator {
    Representation representation = Representation::Matrix;
    std::vector<double> nodes;
    std::vector<double> weights;
    Eigen::MatrixXd matrix;
    /// Gram matrix of u in the discrete basis: diag(u(x_i)) for Nystrom
    /// (stored as its diagonal, one column), (int u b_m b_n) for Galerkin.
    /// Empty for Representation::Matrix.
    Eigen::MatrixXd potential_form;
    double e_min = 0.0;
    double e_max = 0.0;
    BasisFamily basis = BasisFamily::TentHats;

    Eigen::Index size() const { return matrix.rows(); }

    /// v^T U v, the discrete counterpart of int u |f|^2.
    double potential_energy(const Eigen::VectorXd& v) const;

    /// Default gap tolerance 1e-8 * max(1, |E_max|).
    double default_gap_tol() const;

    static DiscretizedOperator from_matrix(Eigen::MatrixXd matrix, double e_min, double e_max);
};

/// Symmetrized Nystrom discretization on a trapezoid grid aligned with every
/// dyadic landmark of the potential and kernel, using at most N nodes.
/// Throws std::invalid_argument for N < 16 and ConfigurationError when N
/// cannot align the truncated model.
DiscretizedOperator discretize_nystrom(const PotentialModel& potential, const SeparableKernel& kernel, int N);

/// g_mn = int u b_m b_n dx - lambda_n delta_mn for m, n <= R, by composite
/// Simpson on the aligned partition (exact for tent series against hats).
Eigen::MatrixXd discretize_galerkin(const PotentialModel& potential, const SeparableKernel& kernel, int R);

/// Galerkin matrix packaged with the potential Gram matrix and model edges.
DiscretizedOperator galerkin_operator(const PotentialModel& potential, const SeparableKernel& kernel, int R);

/// mu_n = min(n-th smallest eigenvalue, E_min), n = 1..n_max.
std::vector<double> minimax_sequence(const DiscretizedOperator& op, int n_max);

/// eta_n = max(n-th largest eigenvalue, E_max), n = 1..n_max.
std::vector<double> maximin_sequence(const DiscretizedOperator& op, int n_max);

struct SpectralResult {
    double e_min = 0.0;
    double e_max = 0.0;
    double gap_tol = 0.0;
    std::vector<double> below;  ///< ascending, < E_min - gap_tol
    std::vector<double> above;  ///< descending, > E_max + gap_tol
    Eigen::Index bulk_count = 0;
    Eigen::MatrixXd below_vectors;  ///< column i pairs with below[i]
    Eigen::MatrixXd above_vectors;  ///< column i pairs with above[i]
};

SpectralResult discrete_spectrum(const DiscretizedOperator& op, std::optional<double> gap_tol = std::nullopt);

enum class EdgeState { Attained, Detached };

const char* to_string(EdgeState state);

struct EdgeReport {
    EdgeState lower = EdgeState::Attained;
    EdgeState upper = EdgeState::Attained;
};

EdgeReport edge_classification(const DiscretizedOperator& op, std::optional<double> gap_tol = std::nullopt);

/// Discrete spectrum at N with a refinement check against the N/2 grid: the
/// k-th eigenvalue below (above) the band is kept only if the k-th one on the
/// coarse grid exists and differs by at most max(10 gap_tol, 0.25 d), d its
/// distance to the edge.
struct StableSpectrum {
    SpectralResult result;   ///< filtered result at N
    int coarse_nodes = 0;
    int dropped_below = 0;
    int dropped_above = 0;
};

StableSpectrum stable_discrete_spectrum(const PotentialModel& potential, const SeparableKernel& kernel, int N,
                                        std::optional<double> gap_tol = std::nullopt);

/// max_i |(A v_i - lambda_i v_i)|_2 over the given pairs.
double max_residual(const Eigen::MatrixXd& matrix, const std::vector<double>& values, const Eigen::MatrixXd& vectors);

}  // namespace friedrichs
