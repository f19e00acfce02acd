#include "friedrichs/examples_oracle.hpp"

#include "friedrichs/efimov_detector.hpp"
#include "friedrichs/errors.hpp"
#include "friedrichs/spectral_engine.hpp"

#include <algorithm>
#include <cmath>

namespace friedrichs {

std::vector<ExactEigenvalue> case1_exact_spectrum(const CoefficientSpec& a, const CoefficientSpec& lambda, int n_max) {
    std::vector<ExactEigenvalue> out;
    for (int n = 1; n <= n_max; ++n) {
        Rational omega = a.exact(n) - lambda.exact(n);
        const int s = sign(omega);
        out.push_back({n, std::move(omega), s});
    }
    return out;
}

Case1Model Case1Model::standard() {
    return Case1Model{CoefficientSpec::geometric(1, Rational(1, 5)),
                      CoefficientSpec::geometric(Rational(1, 3), Rational(1, 3)), 12};
}

PotentialModel Case1Model::potential() const { return PotentialModel::tent_series(a, rank); }

SeparableKernel Case1Model::kernel() const { return SeparableKernel(lambda, BasisFamily::TentHats, rank); }

PotentialModel case2_potential() {
    return PotentialModel::tabulate([](double x) { return std::pow(1.0 - x, 8); });
}

Case2Family case2_sufficient_family(const PotentialModel& u, const CoefficientSpec& lambda, int n_max) {
    const auto* table = std::get_if<PotentialModel::Table>(&u.kind());
    if (table == nullptr) throw ContractViolation("case2_sufficient_family: potential must be a sampled table");
    const auto& s = table->samples;
    for (std::size_t j = 1; j < s.size(); ++j) {
        if (s[j] > s[j - 1]) throw ContractViolation("case2_sufficient_family: table is not nonincreasing");
    }
    if (s.back() != 0.0) throw ContractViolation("case2_sufficient_family: table minimum must be 0");

    Case2Family out;
    for (int n = 1; n <= n_max; ++n) out.q.push_back(u(breakpoint(n)));
    for (int n = n_max; n >= 1; --n) {
        if (out.q[static_cast<std::size_t>(n - 1)] < lambda.value(n)) {
            out.n0 = n;
        } else {
            break;
        }
    }
    return out;
}

Case3Report case3_reference(const SeparableKernel& kernel, const std::vector<int>& nodes) {
    Case3Report report;
    report.nodes = nodes;
    const KernelSignature sig = kernel_signature(kernel);
    report.n_pos = sig.n_pos;
    const PotentialModel u = PotentialModel::monomial(2);
    for (int n : nodes) {
        const SpectralResult result = discrete_spectrum(discretize_nystrom(u, kernel, n));
        report.below_counts.push_back(static_cast<int>(result.below.size()));
    }
    report.within_bound = std::all_of(report.below_counts.begin(), report.below_counts.end(),
                                      [&](int c) { return c <= report.n_pos; });
    report.stabilized = report.below_counts.size() >= 2 &&
                        report.below_counts[report.below_counts.size() - 1] ==
                            report.below_counts[report.below_counts.size() - 2];
    report.truncation_artifact = sig.analytic == LambdaSignature::InfinitelyManyPositive;
    if (report.truncation_artifact) {
        report.note = "lambda has infinitely many positive terms; the finite count reflects the rank-" +
                      std::to_string(kernel.rank()) +
                      " truncation, and the absence of accumulation for u = x^2 is established only for analytic kernels";
    } else {
        report.note = "finite-rank kernel: at most n_pos eigenvalues below the band";
    }
    return report;
}

}  // namespace friedrichs
