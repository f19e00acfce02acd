#pragma once

#include "friedrichs/operator_core.hpp"
#include "friedrichs/spectral_engine.hpp"

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <vector>

namespace friedrichs {

enum class Side { Below, Above };

const char* to_string(Side side);

// ---------------------------------------------------------------------------
// Kernel sign structure

/// What the coefficient family says about the untruncated kernel.
enum class LambdaSignature {
    Finite,                  ///< explicit list: finitely many nonzero terms
    InfinitelyManyPositive,  ///< parametric family with positive terms
    InfinitelyManyNegative,  ///< parametric family with negative terms
    Zero,                    ///< parametric family that vanishes identically
};

const char* to_string(LambdaSignature signature);

struct KernelSignature {
    int n_pos = 0;  ///< strictly positive lambda_n among n <= rank
    int n_neg = 0;
    LambdaSignature analytic = LambdaSignature::Finite;
    /// False when the kernel has finitely many positive (negative) eigenvalues,
    /// in which case U - K has finitely many eigenvalues below (above) the band.
    bool efimov_below_possible = false;
    bool efimov_above_possible = false;
};

KernelSignature kernel_signature(const SeparableKernel& kernel);

// ---------------------------------------------------------------------------
// Limit condition on eigenvectors

enum class Trend {
    ApproachesEdge,  ///< monotone toward the edge value, last entry within 0.1 u_max of it
    NotMonotone,
    StaysAway,       ///< monotone but last entry farther than 0.1 u_max from the edge value
    Undefined,       ///< fewer than two entries
};

const char* to_string(Trend trend);

struct ProfileEntry {
    int index = 0;           ///< 1-based position counted from the far end toward the edge
    double eigenvalue = 0.0;
    double value = 0.0;      ///< int u |f|^2 for the normalized eigenvector
};

struct NecessaryProfile {
    Side side = Side::Below;
    double edge_value = 0.0;  ///< 0 (= u_min) below, u_max above
    std::vector<ProfileEntry> entries;
    Trend trend = Trend::Undefined;
};

/// int u |f|^2 for every eigenvector on one side of the band, ordered by
/// eigenvalue toward the edge. `op` must be the operator `result` came from.
NecessaryProfile necessary_condition_profile(const SpectralResult& result, const DiscretizedOperator& op, Side side);

// ---------------------------------------------------------------------------
// Sufficient conditions on an orthonormal family

enum class ScanVerdict { SufficientBelow, SufficientAbove, Inconclusive };

const char* to_string(ScanVerdict verdict);

struct ConditionRecord {
    int k = 0;
    double quadratic_form_u = 0.0;  ///< int u |f_k|^2
    double coupling = 0.0;          ///< (K f_k, f_k)
    double margin = 0.0;            ///< quadratic_form_u - coupling
};

struct ConditionScan {
    BasisFamily family = BasisFamily::TentHats;
    double u_max = 0.0;
    std::vector<ConditionRecord> records;
    ScanVerdict verdict = ScanVerdict::Inconclusive;
    std::optional<int> n0;  ///< first index from which the verdict's condition holds up to K_max
};

/// Evaluates, for f_k = k-th function of `family` (k <= K_max), the margins
/// d_k = int u f_k^2 - (K f_k, f_k). Verdict SufficientBelow when d_k < 0 for
/// all n0 <= k <= K_max; SufficientAbove when int u f_k^2 > (K f_k, f_k) + u_max
/// on such a range; Inconclusive otherwise. Throws ContractViolation if the
/// family fails orthonormality by more than 1e-8 under the aligned quadrature.
ConditionScan sufficient_condition_scan(const PotentialModel& potential, const SeparableKernel& kernel,
                                        BasisFamily family, int K_max);

// ---------------------------------------------------------------------------
// Deflation

struct DeflationResult {
    std::vector<double> omegas;     ///< omega_0 .. omega_m
    std::vector<int> order;         ///< family columns in the order they were deflated
    std::vector<double> rayleigh;   ///< (H f, f) in that order
};

/// omega_k = min Rayleigh quotient of op on the orthogonal complement of
/// span{f_1..f_k}. With `sort_by_rayleigh` the family is first ordered by
/// (H f, f). Throws ContractViolation for a non-orthonormal family.
DeflationResult deflation_sequence(const DiscretizedOperator& op, const Eigen::MatrixXd& family,
                                   bool sort_by_rayleigh = true);

/// The first `count` functions of `family` in the operator's vector space,
/// orthonormalized (exact unit vectors for a Galerkin operator in that basis).
Eigen::MatrixXd family_vectors(const DiscretizedOperator& op, BasisFamily family, int count);

// ---------------------------------------------------------------------------
// Numerical accumulation

struct AccumulationOptions {
    enum class Mode { Galerkin, Nystrom } mode = Mode::Nystrom;
    int nodes = 1024;  ///< Nystrom node budget
};

struct AccumulationTable {
    std::vector<int> ranks;
    std::vector<double> eps;
    /// counts[r][e]: eigenvalues below E_min - eps[e] at rank ranks[r].
    std::vector<std::vector<int>> counts;
    std::vector<bool> stabilized;  ///< per eps column: last two ranks agree
    bool efimov_signature = false;
    std::string label = "numerical";
};

/// Throws std::invalid_argument unless eps is positive and strictly descending
/// and ranks is nonempty.
AccumulationTable accumulation_profile(const PotentialModel& potential, const SeparableKernel& kernel,
                                       const std::vector<int>& ranks, const std::vector<double>& eps,
                                       const AccumulationOptions& options = {});

}  // namespace friedrichs
