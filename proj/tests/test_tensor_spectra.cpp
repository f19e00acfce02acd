#include "oracles.hpp"

#include "friedrichs/errors.hpp"
#include "friedrichs/tensor_spectra.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace friedrichs;

namespace {

IntervalUnion U(std::vector<Interval> v) { return normalize_union(std::move(v)); }

Interval I(Rational lo, Rational hi) { return Interval{std::move(lo), std::move(hi)}; }

BodySummary single_minus_one(Rational width = 1) { return {std::move(width), EigenSequence::finite({Rational(-1)})}; }

}  // namespace

TEST(Normalize, MergesTouching) {
    EXPECT_EQ(U({I(-1, 0), I(-2, 0), I(0, 2)}).components(), (std::vector<Interval>{I(-2, 2)}));
}

TEST(Normalize, Empty) { EXPECT_TRUE(U({}).empty()); }

TEST(Normalize, DisjointUnchanged) {
    EXPECT_EQ(U({I(2, 3), I(0, 1)}).components(), (std::vector<Interval>{I(0, 1), I(2, 3)}));
}

TEST(Normalize, RejectsReversed) { EXPECT_THROW(U({I(1, 0)}), std::invalid_argument); }

TEST(Normalize, MembershipAndCover) {
    const IntervalUnion u = U({I(-3, Rational(-5, 2)), I(0, 2)});
    EXPECT_TRUE(u.contains(Rational(-5, 2)));
    EXPECT_FALSE(u.contains(-1));
    EXPECT_TRUE(u.contains(0));
    EXPECT_TRUE(u.covers(Rational(1, 2), 1));
    EXPECT_FALSE(u.covers(-3, 1));
}

TEST(Sequence, Validation) {
    EXPECT_THROW(EigenSequence::finite({Rational(1)}), std::invalid_argument);
    EXPECT_THROW(EigenSequence::finite({Rational(-1), Rational(-2)}), std::invalid_argument);
    EXPECT_THROW(EigenSequence({Rational(-1, 10)}, EigenSequence::HarmonicTail{Rational(2)}), std::invalid_argument);
    EXPECT_THROW(EigenSequence::geometric(1, 1), std::invalid_argument);
    EXPECT_THROW(EigenSequence::harmonic(0), std::invalid_argument);
}

TEST(Sequence, Values) {
    const EigenSequence h({Rational(-7)}, EigenSequence::HarmonicTail{Rational(2)});
    EXPECT_EQ(h.value(1), -7);
    EXPECT_EQ(h.value(2), -1);
    EXPECT_EQ(h.value(4), Rational(-1, 2));
    const EigenSequence g = EigenSequence::geometric(4, Rational(1, 2));
    EXPECT_EQ(g.value(3), Rational(-1, 2));
    EXPECT_THROW(EigenSequence::finite({Rational(-1)}).value(2), std::out_of_range);
}

TEST(Sequence, MergeIndexIsLeast) {
    for (int c = 1; c <= 40; ++c) {
        for (const Rational& w : {Rational(1, 100), Rational(1, 3), Rational(1), Rational(5, 2)}) {
            for (const EigenSequence& s : {EigenSequence::harmonic(c), EigenSequence::geometric(c, Rational(2, 3))}) {
                const std::size_t n0 = s.merge_index(w);
                for (std::size_t n = n0; n < n0 + 50; ++n) EXPECT_LT(s.value(n + 1) - s.value(n), w);
                if (n0 > 1) {
                    EXPECT_GE(s.value(n0) - s.value(n0 - 1), w);
                }
            }
        }
    }
}

TEST(Bands, SinglePoint) { EXPECT_EQ(band_union(EigenSequence::finite({Rational(-1)}), 1), U({I(-1, 0)})); }

TEST(Bands, HarmonicTwo) { EXPECT_EQ(band_union(EigenSequence::harmonic(2), 1), U({I(-2, 1)})); }

TEST(Bands, HarmonicFourHasGap) {
    // -4 + 1 < -2: the first band detaches from the rest.
    EXPECT_EQ(band_union(EigenSequence::harmonic(4), 1), U({I(-4, -3), I(-2, 1)}));
}

TEST(Bands, ZeroWidthTailRejected) {
    EXPECT_THROW(band_union(EigenSequence::harmonic(2), 0), std::invalid_argument);
}

TEST(Bands, MatchesLongExpansion) {
    std::mt19937_64 rng(8);
    std::uniform_int_distribution<int> num(1, 30);
    for (int trial = 0; trial < 200; ++trial) {
        const Rational c(num(rng), 1 + num(rng) % 4);
        const Rational w(num(rng), 10);
        const EigenSequence s = trial % 2 ? EigenSequence::harmonic(c) : EigenSequence::geometric(c, Rational(1, 2 + trial % 3));
        const IntervalUnion fast = band_union(s, w);
        ASSERT_LE(fast.size(), 64u);
        std::vector<Interval> raw;
        for (std::size_t n = 1; n <= 400; ++n) raw.push_back(I(s.value(n), s.value(n) + w));
        raw.push_back(I(s.value(400), w));
        EXPECT_EQ(fast, U(raw));
    }
}

TEST(Essential, SingleVsHarmonic) {
    const BodySummary h2{1, EigenSequence::harmonic(2)};
    EXPECT_EQ(essential_spectrum_T(single_minus_one(), h2), U({I(-2, 2)}));
}

TEST(Essential, TwoHarmonic) {
    const BodySummary h1{1, EigenSequence::harmonic(4)};
    const BodySummary h2{1, EigenSequence::harmonic(5)};
    EXPECT_EQ(essential_spectrum_T(h1, h2), U({I(-5, -3), I(Rational(-5, 2), 2)}));
}

TEST(Essential, NoEigenvalues) {
    EXPECT_EQ(essential_spectrum_T({1, EigenSequence()}, {1, EigenSequence()}), U({I(0, 2)}));
}

TEST(Discrete, SingleVsHarmonic) {
    const DiscreteSpectrumT d = discrete_spectrum_T(single_minus_one(), {1, EigenSequence::harmonic(2)});
    ASSERT_EQ(d.points.size(), 1u);
    EXPECT_EQ(d.points[0].value, -3);
    EXPECT_TRUE(d.truncated);
    for (const auto& c : d.certificates) EXPECT_EQ(c.kind, TailCertificate::Kind::Covered);
}

TEST(Discrete, TwoHarmonicContainsSequence) {
    const DiscreteSpectrumT d = discrete_spectrum_T({1, EigenSequence::harmonic(4)}, {1, EigenSequence::harmonic(5)}, 8);
    for (int n = 1; n <= 8; ++n) {
        const Rational target = Rational(-5) - Rational(4, n);
        EXPECT_TRUE(std::any_of(d.points.begin(), d.points.end(), [&](const DiscretePoint& p) { return p.value == target; }))
            << n;
    }
    const bool accumulation = std::any_of(d.certificates.begin(), d.certificates.end(), [](const TailCertificate& c) {
        return c.kind == TailCertificate::Kind::EfimovAccumulation && c.anchor == -5;
    });
    EXPECT_TRUE(accumulation);
}

TEST(Discrete, EmptyFactor) {
    EXPECT_TRUE(discrete_spectrum_T({1, EigenSequence()}, {1, EigenSequence::harmonic(2)}).points.empty());
}

TEST(Discrete, BruteForceAndCap) {
    std::mt19937_64 rng(12);
    std::uniform_int_distribution<int> size(0, 5);
    std::uniform_int_distribution<int> num(1, 24);
    for (int trial = 0; trial < 300; ++trial) {
        std::vector<Rational> a;
        std::vector<Rational> b;
        for (int i = size(rng); i > 0; --i) a.push_back(-Rational(num(rng), 1 + num(rng) % 4));
        for (int i = size(rng); i > 0; --i) b.push_back(-Rational(num(rng), 1 + num(rng) % 4));
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        const Rational w1(num(rng), 8);
        const Rational w2(num(rng), 8);
        const BodySummary h1{w1, EigenSequence::finite(a)};
        const BodySummary h2{w2, EigenSequence::finite(b)};
        const TensorSpectrum t = spectrum_T(h1, h2);
        std::map<Rational, int> got;
        for (const auto& p : t.discrete.points) {
            got[p.value] = p.count;
            EXPECT_FALSE(t.essential.contains(p.value));
            EXPECT_GE(p.value, a.front() + b.front());
            EXPECT_LT(p.value, 0);
        }
        EXPECT_EQ(got, oracle::brute_force_discrete(a, w1, b, w2));
        EXPECT_LE(t.discrete.points.size(), a.size() * b.size());
        EXPECT_TRUE(t.efimov_points.empty());
        if (!a.empty() && !b.empty()) {
            EXPECT_EQ(t.essential.components().front().lo, std::min(a.front(), b.front()));
        }
    }
}

TEST(Components, Counts) {
    const ComponentCount one = component_count(U({I(-5, 2)}));
    EXPECT_EQ(one.n_e, 1u);
    EXPECT_EQ(one.endpoints[0].lo, -5);
    EXPECT_EQ(component_count(U({I(-3, Rational(-5, 2)), I(0, 2)})).n_e, 2u);
    const ComponentCount point = component_count(U({I(0, 0)}));
    EXPECT_EQ(point.n_e, 1u);
    EXPECT_EQ(point.endpoints[0].lo, point.endpoints[0].hi);
    EXPECT_THROW(component_count(IntervalUnion()), std::domain_error);
}

TEST(Efimov, SingleVsHarmonicHasNone) {
    EXPECT_TRUE(efimov_points_T(single_minus_one(), {1, EigenSequence::harmonic(2)}).empty());
}

TEST(Efimov, TwoHarmonicAnchorsEveryComponent) {
    const auto points = efimov_points_T({1, EigenSequence::harmonic(4)}, {1, EigenSequence::harmonic(5)});
    ASSERT_EQ(points.size(), 2u);
    EXPECT_EQ(points[0].value, -5);
    EXPECT_EQ(points[0].anchor, EfimovPoint::Anchor::Beta);
    EXPECT_EQ(points[0].anchor_index, 1u);
    EXPECT_EQ(points[1].value, Rational(-5, 2));
}

TEST(Efimov, ExposedFiniteEigenvalue) {
    const BodySummary h1 = single_minus_one(Rational(1, 2));
    const BodySummary h2{Rational(1, 2), EigenSequence::harmonic(2)};
    EXPECT_EQ(essential_spectrum_T(h1, h2), U({I(-2, Rational(-3, 2)), I(-1, 1)}));
    const auto points = efimov_points_T(h1, h2);
    ASSERT_EQ(points.size(), 1u);
    EXPECT_EQ(points[0].value, -1);
    EXPECT_EQ(points[0].anchor, EfimovPoint::Anchor::Alpha);
    EXPECT_EQ(points[0].component, 2u);
}

TEST(Efimov, AtMostPPointsForFiniteFactor) {
    std::mt19937_64 rng(31);
    std::uniform_int_distribution<int> num(1, 20);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<Rational> a;
        const int p = 1 + trial % 4;
        for (int i = 0; i < p; ++i) a.push_back(-Rational(num(rng), 2));
        std::sort(a.begin(), a.end());
        const BodySummary h1{Rational(num(rng), 10), EigenSequence::finite(a)};
        const BodySummary h2{Rational(num(rng), 10), EigenSequence::geometric(Rational(num(rng), 2), Rational(1, 2))};
        const auto points = efimov_points_T(h1, h2);
        EXPECT_LE(points.size(), static_cast<std::size_t>(p));
        const IntervalUnion e = essential_spectrum_T(h1, h2);
        for (const auto& pt : points) {
            EXPECT_EQ(e.components()[pt.component - 1].lo, pt.value);
            EXPECT_EQ(h1.discrete.value(pt.anchor_index), pt.value);
        }
    }
}

TEST(Efimov, InexactInputsUseTolerance) {
    BodySummary h1{Rational(1, 2), EigenSequence::finite({Rational(-1) + Rational(1, 10000000000000LL)})};
    h1.exact = false;
    BodySummary h2{Rational(1, 2), EigenSequence::harmonic(2)};
    h2.exact = false;
    EXPECT_EQ(efimov_points_T(h1, h2).size(), 1u);
}

TEST(Spectrum, EmptyBodies) {
    const TensorSpectrum t = spectrum_T({1, EigenSequence()}, {Rational(1, 2), EigenSequence()});
    EXPECT_EQ(t.essential, U({I(0, Rational(3, 2))}));
    EXPECT_TRUE(t.discrete.points.empty());
    EXPECT_TRUE(t.efimov_points.empty());
    EXPECT_EQ(t.n_e, 1u);
}

TEST(Spectrum, SingleVsHarmonic) {
    const TensorSpectrum t = spectrum_T(single_minus_one(), {1, EigenSequence::harmonic(2)});
    EXPECT_EQ(t.essential, U({I(-2, 2)}));
    ASSERT_EQ(t.discrete.points.size(), 1u);
    EXPECT_EQ(t.discrete.points[0].value, -3);
    EXPECT_TRUE(t.efimov_points.empty());
    EXPECT_EQ(t.n_e, 1u);
}
