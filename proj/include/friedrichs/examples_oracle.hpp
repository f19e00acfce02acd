#pragma once

#include "friedrichs/operator_core.hpp"
#include "friedrichs/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace friedrichs {

/// omega_n = a_n - lambda_n for the plateau-aligned tent model, where the hat
/// phi_n is an exact eigenfunction.
struct ExactEigenvalue {
    int n = 0;
    Rational omega;
    int sign = 0;  ///< negative: below the band; positive: embedded in [0, u_max]
};

/// Throws std::out_of_range when either coefficient family has fewer than n_max terms.
std::vector<ExactEigenvalue> case1_exact_spectrum(const CoefficientSpec& a, const CoefficientSpec& lambda, int n_max);

/// u = sum a_k r_k truncated at `rank` cells, k = sum lambda_n phi_n phi_n of
/// the same rank.
struct Case1Model {
    CoefficientSpec a;
    CoefficientSpec lambda;
    int rank = 12;

    /// a_n = 5^{-(n-1)}, lambda_n = 3^{-n}, rank 12.
    static Case1Model standard();

    PotentialModel potential() const;
    SeparableKernel kernel() const;
    std::vector<ExactEigenvalue> eigenvalues() const { return case1_exact_spectrum(a, lambda, rank); }
};

struct Case2Family {
    std::vector<double> q;  ///< q_n = sup of u over [p_n, p_{n+1}], n = 1..n_max
    std::optional<int> n0;  ///< least n0 with q_n < lambda_n for n0 <= n <= n_max
};

/// Throws ContractViolation unless u is a nonincreasing table with minimum 0.
Case2Family case2_sufficient_family(const PotentialModel& u, const CoefficientSpec& lambda, int n_max);

/// u = (1 - x)^8 on the default table grid.
PotentialModel case2_potential();

struct Case3Report {
    std::vector<int> nodes;
    std::vector<int> below_counts;
    int n_pos = 0;
    bool within_bound = true;         ///< every count <= n_pos
    bool stabilized = false;          ///< last two counts agree
    bool truncation_artifact = false; ///< finiteness only reflects the rank cut of an infinite positive family
    std::string note;
};

/// Below-band eigenvalue counts of x^2 - K across node budgets.
Case3Report case3_reference(const SeparableKernel& kernel, const std::vector<int>& nodes = {512, 1024, 2048, 4096});

}  // namespace friedrichs
