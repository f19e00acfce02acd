#include "friedrichs/efimov_detector.hpp"

#include "friedrichs/errors.hpp"
#include "friedrichs/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace friedrichs {

const char* to_string(Side side) { return side == Side::Below ? "below" : "above"; }

const char* to_string(LambdaSignature signature) {
    switch (signature) {
        case LambdaSignature::Finite: return "finite";
        case LambdaSignature::InfinitelyManyPositive: return "infinitely_many_positive";
        case LambdaSignature::InfinitelyManyNegative: return "infinitely_many_negative";
        case LambdaSignature::Zero: return "zero";
    }
    return "unknown";
}

const char* to_string(Trend trend) {
    switch (trend) {
        case Trend::ApproachesEdge: return "approaches_edge";
        case Trend::NotMonotone: return "not_monotone";
        case Trend::StaysAway: return "stays_away";
        case Trend::Undefined: return "undefined";
    }
    return "unknown";
}

const char* to_string(ScanVerdict verdict) {
    switch (verdict) {
        case ScanVerdict::SufficientBelow: return "sufficient_below";
        case ScanVerdict::SufficientAbove: return "sufficient_above";
        case ScanVerdict::Inconclusive: return "inconclusive";
    }
    return "unknown";
}

KernelSignature kernel_signature(const SeparableKernel& kernel) {
    KernelSignature sig;
    for (double lambda : kernel.lambda_values()) {
        if (lambda > 0.0) ++sig.n_pos;
        if (lambda < 0.0) ++sig.n_neg;
    }
    const auto& form = kernel.lambdas().form();
    int family_sign = 0;
    if (const auto* g = std::get_if<CoefficientSpec::Geometric>(&form)) family_sign = sign(g->first);
    if (const auto* h = std::get_if<CoefficientSpec::Harmonic>(&form)) family_sign = sign(h->scale);
    if (std::holds_alternative<CoefficientSpec::Explicit>(form)) {
        sig.analytic = LambdaSignature::Finite;
    } else if (family_sign > 0) {
        sig.analytic = LambdaSignature::InfinitelyManyPositive;
    } else if (family_sign < 0) {
        sig.analytic = LambdaSignature::InfinitelyManyNegative;
    } else {
        sig.analytic = LambdaSignature::Zero;
    }
    sig.efimov_below_possible = sig.analytic == LambdaSignature::InfinitelyManyPositive;
    sig.efimov_above_possible = sig.analytic == LambdaSignature::InfinitelyManyNegative;
    return sig;
}

NecessaryProfile necessary_condition_profile(const SpectralResult& result, const DiscretizedOperator& op, Side side) {
    NecessaryProfile profile;
    profile.side = side;
    profile.edge_value = side == Side::Below ? result.e_min : result.e_max;
    const auto& values = side == Side::Below ? result.below : result.above;
    const auto& vectors = side == Side::Below ? result.below_vectors : result.above_vectors;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const Eigen::VectorXd v = vectors.col(static_cast<Eigen::Index>(i)).normalized();
        profile.entries.push_back({static_cast<int>(i + 1), values[i], op.potential_energy(v)});
    }
    if (profile.entries.size() < 2) {
        profile.trend = Trend::Undefined;
        return profile;
    }
    constexpr double slack = 1e-12;
    bool monotone = true;
    for (std::size_t i = 1; i < profile.entries.size(); ++i) {
        const double prev = profile.entries[i - 1].value;
        const double cur = profile.entries[i].value;
        if (side == Side::Below ? cur > prev + slack : cur < prev - slack) monotone = false;
    }
    const double last = profile.entries.back().value;
    const double reach = 0.1 * std::max(std::abs(result.e_max), 0.0);
    if (!monotone) {
        profile.trend = Trend::NotMonotone;
    } else if (std::abs(last - profile.edge_value) < reach) {
        profile.trend = Trend::ApproachesEdge;
    } else {
        profile.trend = Trend::StaysAway;
    }
    return profile;
}

namespace {

int panels_for(const PotentialModel& potential, BasisFamily a, BasisFamily b) {
    const bool polynomial =
        potential.piecewise_linear_on_cells() && a == BasisFamily::TentHats && b == BasisFamily::TentHats;
    return polynomial ? 2 : 64;
}

// int w(x) f_m(x) g_n(x) over the common support.
double cross_integral(const std::function<double(double)>& weight, BasisFamily fa, int m, BasisFamily fb, int n,
                      int cells, int panels) {
    const auto [lo_a, hi_a] = basis_support(fa, m);
    const auto [lo_b, hi_b] = basis_support(fb, n);
    const double lo = std::max(lo_a, lo_b);
    const double hi = std::min(hi_a, hi_b);
    if (hi <= lo) return 0.0;
    return integrate_aligned([&](double x) { return weight(x) * (eval_basis(fa, m, x) * eval_basis(fb, n, x)); },
                             cells, lo, hi, panels);
}

}  // namespace

ConditionScan sufficient_condition_scan(const PotentialModel& potential, const SeparableKernel& kernel,
                                        BasisFamily family, int K_max) {
    if (K_max < 0 || K_max > kernel.rank()) {
        throw std::invalid_argument("sufficient_condition_scan: K_max must not exceed the kernel rank");
    }
    const int cells = std::max({potential.dyadic_cells(), kernel.rank(), K_max});
    const auto one = [](double) { return 1.0; };

    const int family_panels = panels_for(potential, family, family);
    for (int m = 1; m <= K_max; ++m) {
        for (int n = m; n <= K_max; ++n) {
            const double g = cross_integral(one, family, m, family, n, cells, 64);
            const double expected = m == n ? 1.0 : 0.0;
            if (std::abs(g - expected) > 1e-8) {
                throw ContractViolation("sufficient_condition_scan: family is not orthonormal (Gram entry " +
                                        std::to_string(m) + "," + std::to_string(n) + " = " + std::to_string(g) + ")");
            }
        }
    }

    ConditionScan scan;
    scan.family = family;
    scan.u_max = potential.u_max();
    const auto u = [&](double x) { return potential(x); };
    const int cross_panels = panels_for(potential, family, kernel.basis());
    for (int k = 1; k <= K_max; ++k) {
        ConditionRecord rec;
        rec.k = k;
        rec.quadratic_form_u = cross_integral(u, family, k, family, k, cells, family_panels);
        double coupling = 0.0;
        for (int n = 1; n <= kernel.rank(); ++n) {
            const double overlap = cross_integral(one, kernel.basis(), n, family, k, cells, cross_panels);
            coupling += kernel.lambda(n) * overlap * overlap;
        }
        rec.coupling = coupling;
        rec.margin = rec.quadratic_form_u - rec.coupling;
        scan.records.push_back(rec);
    }

    // Longest suffix k = n0..K_max on which a condition holds.
    const auto suffix_start = [&](auto&& holds) -> std::optional<int> {
        int start = K_max + 1;
        while (start > 1 && holds(scan.records[static_cast<std::size_t>(start - 2)])) --start;
        if (start > K_max) return std::nullopt;
        return start;
    };
    if (auto n0 = suffix_start([](const ConditionRecord& r) { return r.margin < 0.0; })) {
        scan.verdict = ScanVerdict::SufficientBelow;
        scan.n0 = n0;
    } else if (auto n0_above = suffix_start(
                   [&](const ConditionRecord& r) { return r.quadratic_form_u > r.coupling + scan.u_max; })) {
        scan.verdict = ScanVerdict::SufficientAbove;
        scan.n0 = n0_above;
    }
    return scan;
}

Eigen::MatrixXd family_vectors(const DiscretizedOperator& op, BasisFamily family, int count) {
    if (count < 0) throw std::invalid_argument("family_vectors: negative count");
    if (op.representation == Representation::Galerkin) {
        if (family != op.basis) throw std::invalid_argument("family_vectors: Galerkin operator uses another basis");
        if (count > op.size()) throw std::invalid_argument("family_vectors: count exceeds Galerkin dimension");
        return Eigen::MatrixXd::Identity(op.size(), count);
    }
    if (op.representation != Representation::Nystrom) {
        throw std::invalid_argument("family_vectors: raw matrix operators have no function space");
    }
    Eigen::MatrixXd f(op.size(), count);
    for (int k = 0; k < count; ++k) {
        for (Eigen::Index i = 0; i < op.size(); ++i) {
            const auto ii = static_cast<std::size_t>(i);
            f(i, k) = std::sqrt(op.weights[ii]) * eval_basis(family, k + 1, op.nodes[ii]);
        }
    }
    // Modified Gram-Schmidt; quadrature leaves O(h^2) departures from orthonormality.
    for (int k = 0; k < count; ++k) {
        for (int j = 0; j < k; ++j) f.col(k) -= f.col(j).dot(f.col(k)) * f.col(j);
        const double norm = f.col(k).norm();
        if (norm == 0.0) throw ConfigurationError("family_vectors: basis function vanishes on the grid");
        f.col(k) /= norm;
    }
    return f;
}

DeflationResult deflation_sequence(const DiscretizedOperator& op, const Eigen::MatrixXd& family,
                                   bool sort_by_rayleigh) {
    const Eigen::Index n = op.size();
    const Eigen::Index m = family.cols();
    if (family.rows() != n) throw std::invalid_argument("deflation_sequence: family has the wrong dimension");
    if (m >= n) throw std::invalid_argument("deflation_sequence: family must have fewer than N members");
    const Eigen::MatrixXd gram = family.transpose() * family;
    if (m > 0 && (gram - Eigen::MatrixXd::Identity(m, m)).cwiseAbs().maxCoeff() > 1e-8) {
        throw ContractViolation("deflation_sequence: family is not orthonormal");
    }

    DeflationResult out;
    std::vector<double> rayleigh(static_cast<std::size_t>(m));
    for (Eigen::Index j = 0; j < m; ++j) {
        rayleigh[static_cast<std::size_t>(j)] = family.col(j).dot(op.matrix * family.col(j));
    }
    out.order.resize(static_cast<std::size_t>(m));
    std::iota(out.order.begin(), out.order.end(), 0);
    if (sort_by_rayleigh) {
        std::stable_sort(out.order.begin(), out.order.end(), [&](int a, int b) {
            return rayleigh[static_cast<std::size_t>(a)] < rayleigh[static_cast<std::size_t>(b)];
        });
    }
    Eigen::MatrixXd ordered(n, m);
    for (Eigen::Index j = 0; j < m; ++j) {
        const int src = out.order[static_cast<std::size_t>(j)];
        ordered.col(j) = family.col(src);
        out.rayleigh.push_back(rayleigh[static_cast<std::size_t>(src)]);
    }

    // Columns k.. of the full Householder Q span the complement of the first k
    // family members.
    Eigen::MatrixXd q = Eigen::MatrixXd::Identity(n, n);
    if (m > 0) q = Eigen::HouseholderQR<Eigen::MatrixXd>(ordered).householderQ();
    for (Eigen::Index k = 0; k <= m; ++k) {
        const Eigen::MatrixXd basis = q.rightCols(n - k);
        Eigen::MatrixXd restricted = basis.transpose() * op.matrix * basis;
        restricted = 0.5 * (restricted + restricted.transpose()).eval();
        out.omegas.push_back(eigenvalues(restricted)(0));
    }
    return out;
}

AccumulationTable accumulation_profile(const PotentialModel& potential, const SeparableKernel& kernel,
                                       const std::vector<int>& ranks, const std::vector<double>& eps,
                                       const AccumulationOptions& options) {
    if (ranks.empty()) throw std::invalid_argument("accumulation_profile: no ranks");
    for (std::size_t i = 0; i < eps.size(); ++i) {
        if (!(eps[i] > 0.0)) throw std::invalid_argument("accumulation_profile: eps must be positive");
        if (i > 0 && !(eps[i] < eps[i - 1])) throw std::invalid_argument("accumulation_profile: eps must descend");
    }
    AccumulationTable table;
    table.ranks = ranks;
    table.eps = eps;
    for (int rank : ranks) {
        const SeparableKernel k = kernel.truncated(rank);
        const DiscretizedOperator op = options.mode == AccumulationOptions::Mode::Galerkin
                                           ? galerkin_operator(potential, k, rank)
                                           : discretize_nystrom(potential, k, options.nodes);
        const SpectralResult result = discrete_spectrum(op);
        std::vector<int> row;
        for (double e : eps) {
            row.push_back(static_cast<int>(std::count_if(result.below.begin(), result.below.end(),
                                                         [&](double v) { return v < op.e_min - e; })));
        }
        table.counts.push_back(std::move(row));
    }
    const std::size_t columns = eps.size();
    const std::size_t rows = ranks.size();
    bool all_stable = rows >= 2;
    for (std::size_t e = 0; e < columns; ++e) {
        const bool stable = rows >= 2 && table.counts[rows - 1][e] == table.counts[rows - 2][e];
        table.stabilized.push_back(stable);
        all_stable = all_stable && stable;
    }
    // Stabilized counts must keep growing as eps shrinks, up to the last column.
    bool growing = columns >= 2;
    for (std::size_t e = 1; e < columns; ++e) {
        if (table.counts[rows - 1][e] < table.counts[rows - 1][e - 1]) growing = false;
    }
    if (columns >= 2 && table.counts[rows - 1][columns - 1] <= table.counts[rows - 1][columns - 2]) growing = false;
    table.efimov_signature = all_stable && growing;
    return table;
}

}  // namespace friedrichs
