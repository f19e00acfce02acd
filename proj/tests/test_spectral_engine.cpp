#include "oracles.hpp"

#include "friedrichs/eigensolver.hpp"
#include "friedrichs/errors.hpp"
#include "friedrichs/examples_oracle.hpp"
#include "friedrichs/spectral_engine.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace friedrichs;

namespace {

PotentialModel zero_potential() { return PotentialModel::table(std::vector<double>(4097, 0.0)); }

SeparableKernel thirds(int rank) {
    return SeparableKernel(CoefficientSpec::geometric(Rational(1, 3), Rational(1, 3)), BasisFamily::TentHats, rank);
}

Eigen::MatrixXd random_symmetric(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> normal;
    Eigen::MatrixXd a(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j <= i; ++j) a(i, j) = a(j, i) = normal(rng);
    }
    return a;
}

}  // namespace

TEST(Nystrom, MatrixIsSymmetricWithPotentialDiagonal) {
    const Case1Model model = Case1Model::standard();
    const DiscretizedOperator op = discretize_nystrom(model.potential(), model.kernel(), 1024);
    const SeparableKernel k = model.kernel();
    for (Eigen::Index i = 0; i < op.size(); ++i) {
        const double x = op.nodes[static_cast<std::size_t>(i)];
        EXPECT_NEAR(op.matrix(i, i) - model.potential()(x), -op.weights[static_cast<std::size_t>(i)] * k(x, x), 1e-15);
        for (Eigen::Index j = 0; j < i; ++j) ASSERT_EQ(op.matrix(i, j), op.matrix(j, i));
    }
}

TEST(Nystrom, LowestEigenvalueApproximatesMinOmega) {
    const Case1Model model = Case1Model::standard();
    const Eigen::VectorXd ev = eigenvalues(discretize_nystrom(model.potential(), model.kernel(), 1024).matrix);
    double expected = 0.0;
    for (int n = 1; n <= model.rank; ++n) expected = std::min(expected, to_double(oracle::plateau_omega(n)));
    EXPECT_NEAR(ev(0), expected, 1e-4);
}

TEST(Nystrom, ZeroKernelIsDiagonal) {
    const auto u = PotentialModel::monomial(2);
    const DiscretizedOperator op = discretize_nystrom(u, thirds(0), 256);
    for (Eigen::Index i = 0; i < op.size(); ++i) {
        EXPECT_EQ(op.matrix(i, i), u(op.nodes[static_cast<std::size_t>(i)]));
        for (Eigen::Index j = 0; j < i; ++j) EXPECT_EQ(op.matrix(i, j), 0.0);
    }
}

TEST(Nystrom, ZeroPotentialGivesMinusLambdas) {
    const DiscretizedOperator op = discretize_nystrom(zero_potential(), thirds(4), 1024);
    const Eigen::VectorXd ev = eigenvalues(op.matrix);
    for (int n = 1; n <= 4; ++n) {
        const double lambda = to_double(oracle::plateau_lambda(n));
        EXPECT_NEAR(ev(n - 1), -lambda, 1e-3 * lambda);
    }
    EXPECT_NEAR(ev(4), 0.0, 1e-12);
}

TEST(Nystrom, RejectsSmallBudgets) {
    const Case1Model model = Case1Model::standard();
    EXPECT_THROW(discretize_nystrom(model.potential(), model.kernel(), 8), std::invalid_argument);
    EXPECT_THROW(discretize_nystrom(model.potential(), model.kernel(), 128), ConfigurationError);
}

TEST(Galerkin, PlateauModelIsDiagonal) {
    const Case1Model model = Case1Model::standard();
    const Eigen::MatrixXd g = discretize_galerkin(model.potential(), model.kernel(), 12);
    for (int m = 0; m < 12; ++m) {
        for (int n = 0; n < 12; ++n) {
            const double expected = m == n ? to_double(oracle::plateau_omega(n + 1)) : 0.0;
            EXPECT_NEAR(g(m, n), expected, 1e-15);
        }
    }
}

TEST(Galerkin, SingleTermZeroPotential) {
    const Eigen::MatrixXd g = discretize_galerkin(zero_potential(), thirds(1), 1);
    ASSERT_EQ(g.rows(), 1);
    EXPECT_DOUBLE_EQ(g(0, 0), -1.0 / 3.0);
}

TEST(Galerkin, MonomialOffDiagonalVanishes) {
    const Eigen::MatrixXd g = discretize_galerkin(PotentialModel::monomial(2), thirds(2), 2);
    EXPECT_EQ(g(0, 1), 0.0);
    EXPECT_EQ(g(1, 0), 0.0);
    // int x^2 phi_1^2 = 1/16 + 1/1440 for the hat centred at 1/4 with half-width 1/12.
    EXPECT_NEAR(g(0, 0), 1.0 / 16.0 + 1.0 / 1440.0 - 1.0 / 3.0, 1e-9);
}

TEST(Eigensolve, SmallExamples) {
    Eigen::MatrixXd d = Eigen::Vector3d(3, 1, 2).asDiagonal();
    const EigenDecomposition a = eigensolve(d);
    EXPECT_EQ(a.values, Eigen::Vector3d(1, 2, 3));
    Eigen::Matrix2d swap;
    swap << 0, 1, 1, 0;
    const EigenDecomposition b = eigensolve(swap);
    EXPECT_NEAR(b.values(0), -1.0, 1e-15);
    EXPECT_NEAR(b.values(1), 1.0, 1e-15);
}

TEST(Eigensolve, RejectsAsymmetry) {
    Eigen::Matrix2d a;
    a << 0, 1, 2, 0;
    EXPECT_THROW(eigensolve(a), ContractViolation);
}

TEST(Eigensolve, ResidualsAndDeterminism) {
    std::mt19937_64 rng(5);
    const Eigen::MatrixXd a = random_symmetric(40, rng);
    const EigenDecomposition x = eigensolve(a);
    const EigenDecomposition y = eigensolve(a);
    EXPECT_EQ(x.values, y.values);
    EXPECT_EQ(x.vectors, y.vectors);
    const double scale = a.norm();
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        EXPECT_LE((a * x.vectors.col(i) - x.values(i) * x.vectors.col(i)).norm(), 1e-10 * scale);
    }
    EXPECT_NEAR((x.vectors.transpose() * x.vectors - Eigen::MatrixXd::Identity(40, 40)).norm(), 0.0, 1e-12);
}

TEST(Eigensolve, PartialMatchesFull) {
    std::mt19937_64 rng(6);
    const Eigen::MatrixXd a = random_symmetric(60, rng);
    const Eigen::VectorXd all = eigenvalues(a);
    const PartialDecomposition p = eigensolve_outside(a, -2.0, 2.0);
    EXPECT_NEAR((p.values - all).norm(), 0.0, 1e-12);
    for (Eigen::Index i = 0; i < p.low_values.size(); ++i) {
        const Eigen::VectorXd v = p.low_vectors.col(i);
        EXPECT_LT(p.low_values(i), -2.0);
        EXPECT_LE((a * v - p.low_values(i) * v).norm(), 1e-10 * a.norm());
    }
    for (Eigen::Index i = 0; i < p.high_values.size(); ++i) {
        const Eigen::VectorXd v = p.high_vectors.col(i);
        EXPECT_GT(p.high_values(i), 2.0);
        EXPECT_LE((a * v - p.high_values(i) * v).norm(), 1e-10 * a.norm());
    }
}

TEST(Minimax, ClipsAtLowerEdge) {
    const DiscretizedOperator op =
        DiscretizedOperator::from_matrix(Eigen::Vector4d(-0.4, -0.1, 0.3, 0.8).asDiagonal().toDenseMatrix(), 0.0, 1.0);
    EXPECT_EQ(minimax_sequence(op, 4), (std::vector<double>{-0.4, -0.1, 0.0, 0.0}));
    EXPECT_EQ(minimax_sequence(op, 1), (std::vector<double>{-0.4}));
    std::mt19937_64 rng(1);
    const auto ref = oracle::deflated_minimax(op.matrix, 0.0, 4, rng);
    for (int n = 0; n < 4; ++n) EXPECT_NEAR(ref[n], minimax_sequence(op, 4)[n], 1e-8);
}

TEST(Minimax, ZeroKernelStartsAtEdge) {
    const DiscretizedOperator op = discretize_nystrom(PotentialModel::monomial(2), thirds(0), 256);
    EXPECT_EQ(minimax_sequence(op, 1)[0], 0.0);
    EXPECT_EQ(maximin_sequence(op, 1)[0], 1.0);
}

TEST(Maximin, ClipsAtUpperEdge) {
    const DiscretizedOperator op =
        DiscretizedOperator::from_matrix(Eigen::Vector4d(1.5, 1.2, 0.3, 0.0).asDiagonal().toDenseMatrix(), 0.0, 1.0);
    EXPECT_EQ(maximin_sequence(op, 3), (std::vector<double>{1.5, 1.2, 1.0}));
    EXPECT_EQ(maximin_sequence(op, 1), (std::vector<double>{1.5}));
    EXPECT_THROW(maximin_sequence(op, 5), std::invalid_argument);
}

TEST(Minimax, RandomMatricesAgreeWithDeflation) {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 100; ++trial) {
        const Eigen::MatrixXd a = random_symmetric(12, rng);
        const Eigen::VectorXd ev = eigenvalues(a);
        const double e_min = 0.5 * (ev(2) + ev(3));
        const DiscretizedOperator op = DiscretizedOperator::from_matrix(a, e_min, ev(11) + 1.0);
        const auto mu = minimax_sequence(op, 12);
        const auto ref = oracle::deflated_minimax(a, e_min, 12, rng);
        for (int n = 0; n < 12; ++n) {
            EXPECT_NEAR(mu[n], ref[n], 1e-8);
            if (n > 0) {
                EXPECT_LE(mu[n - 1], mu[n]);
            }
            if (n >= 3) {
                EXPECT_EQ(mu[n], e_min);
            }
        }
    }
}

TEST(Minimax, DominationByPositivePerturbation) {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 50; ++trial) {
        const Eigen::MatrixXd a = random_symmetric(10, rng);
        const Eigen::MatrixXd g = random_symmetric(10, rng);
        const Eigen::MatrixXd p = g * g.transpose();
        const auto mu_a = minimax_sequence(DiscretizedOperator::from_matrix(a, 0.0, 1.0), 10);
        const auto mu_b = minimax_sequence(DiscretizedOperator::from_matrix(a + p, 0.0, 1.0), 10);
        for (int n = 0; n < 10; ++n) EXPECT_LE(mu_a[n], mu_b[n] + 1e-12);
    }
}

TEST(DiscreteSpectrum, PlateauModelRankEight) {
    Case1Model model = Case1Model::standard();
    model.rank = 8;
    const SpectralResult r = discrete_spectrum(galerkin_operator(model.potential(), model.kernel(), 8));
    ASSERT_EQ(r.below.size(), 5u);
    for (int n = 4; n <= 8; ++n) EXPECT_NEAR(r.below[n - 4], to_double(oracle::plateau_omega(n)), 1e-15);
    EXPECT_TRUE(r.above.empty());
}

TEST(DiscreteSpectrum, ZeroKernel) {
    const DiscretizedOperator op = discretize_nystrom(PotentialModel::monomial(2), thirds(0), 256);
    const SpectralResult r = discrete_spectrum(op);
    EXPECT_TRUE(r.below.empty());
    EXPECT_TRUE(r.above.empty());
    EXPECT_EQ(r.bulk_count, op.size());
}

TEST(DiscreteSpectrum, ZeroPotentialThreeHats) {
    const SpectralResult r = discrete_spectrum(galerkin_operator(zero_potential(), thirds(3), 3));
    ASSERT_EQ(r.below.size(), 3u);
    EXPECT_NEAR(r.below[0], -1.0 / 3.0, 1e-15);
    EXPECT_NEAR(r.below[1], -1.0 / 9.0, 1e-15);
    EXPECT_NEAR(r.below[2], -1.0 / 27.0, 1e-15);
}

TEST(DiscreteSpectrum, OrderingAndResiduals) {
    const Case1Model model = Case1Model::standard();
    const DiscretizedOperator op = discretize_nystrom(model.potential(), model.kernel().negated(), 1024);
    const SpectralResult r = discrete_spectrum(op);
    EXPECT_TRUE(std::is_sorted(r.above.rbegin(), r.above.rend()));
    for (double v : r.above) EXPECT_GT(v, r.e_max + r.gap_tol);
    EXPECT_LE(max_residual(op.matrix, r.above, r.above_vectors), 1e-8 * op.matrix.norm());
    const SpectralResult s = discrete_spectrum(discretize_nystrom(model.potential(), model.kernel(), 1024));
    EXPECT_TRUE(std::is_sorted(s.below.begin(), s.below.end()));
    for (double v : s.below) EXPECT_LT(v, s.e_min - s.gap_tol);
}

TEST(DiscreteSpectrum, RankOneChangesCountByAtMostOne) {
    std::mt19937_64 rng(29);
    std::normal_distribution<double> normal;
    for (int trial = 0; trial < 30; ++trial) {
        const Eigen::MatrixXd a = random_symmetric(20, rng);
        Eigen::VectorXd v(20);
        for (int i = 0; i < 20; ++i) v(i) = normal(rng);
        const Eigen::MatrixXd b = a + v * v.transpose();
        const auto ra = discrete_spectrum(DiscretizedOperator::from_matrix(a, -1.0, 1.0));
        const auto rb = discrete_spectrum(DiscretizedOperator::from_matrix(b, -1.0, 1.0));
        EXPECT_LE(std::abs(static_cast<long>(ra.below.size()) - static_cast<long>(rb.below.size())), 1);
        EXPECT_LE(std::abs(static_cast<long>(ra.above.size()) - static_cast<long>(rb.above.size())), 1);
    }
}

TEST(Edges, Classification) {
    const Case1Model model = Case1Model::standard();
    const EdgeReport plateau = edge_classification(galerkin_operator(model.potential(), model.kernel(), 12));
    EXPECT_EQ(plateau.lower, EdgeState::Detached);
    const EdgeReport zero = edge_classification(discretize_nystrom(PotentialModel::monomial(2), thirds(0), 256));
    EXPECT_EQ(zero.lower, EdgeState::Attained);
    EXPECT_EQ(zero.upper, EdgeState::Attained);
    const EdgeReport neg = edge_classification(discretize_nystrom(zero_potential(), thirds(4), 512));
    EXPECT_EQ(neg.lower, EdgeState::Detached);
    EXPECT_EQ(neg.upper, EdgeState::Attained);
}

TEST(Stability, NystromAgreesWithGalerkin) {
    Case1Model model = Case1Model::standard();
    model.rank = 8;
    const StableSpectrum s = stable_discrete_spectrum(model.potential(), model.kernel(), 2048);
    const SpectralResult g = discrete_spectrum(galerkin_operator(model.potential(), model.kernel(), 8));
    ASSERT_EQ(s.result.below.size(), g.below.size());
    for (std::size_t i = 0; i < g.below.size(); ++i) EXPECT_NEAR(s.result.below[i], g.below[i], 1e-4);
    EXPECT_EQ(s.dropped_below, 0);
}
