#include "friedrichs/serialize.hpp"

#include "friedrichs/errors.hpp"

#include <gtest/gtest.h>

#include <charconv>
#include <random>

using namespace friedrichs;
using nlohmann::json;

TEST(RationalJson, RoundTrip) {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<long long> num(-1000000, 1000000);
    std::uniform_int_distribution<long long> den(1, 1000000);
    for (int i = 0; i < 500; ++i) {
        const Rational r(num(rng), den(rng));
        const json j = rational_json(r);
        EXPECT_EQ(rational_from_json(j), r);
        EXPECT_EQ(j["den"].get<long long>() > 0, true);
    }
}

TEST(RationalJson, HugeValuesAsStrings) {
    const Rational big = Rational(1) / boost::multiprecision::pow(boost::multiprecision::cpp_int(3), 60);
    const json j = rational_json(big);
    EXPECT_TRUE(j["den"].is_string());
    EXPECT_EQ(rational_from_json(j), big);
}

TEST(RationalJson, Malformed) {
    EXPECT_THROW(rational_from_json(json::parse(R"({"num": 1})")), ConfigurationError);
    EXPECT_THROW(rational_from_json(json::parse(R"({"num": 1, "den": 0})")), ConfigurationError);
}

TEST(FormatDouble, ShortestRoundTrip) {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> x(-1e3, 1e3);
    for (int i = 0; i < 1000; ++i) {
        const double v = x(rng);
        const std::string s = format_double(v);
        double back = 0.0;
        std::from_chars(s.data(), s.data() + s.size(), back);
        EXPECT_EQ(back, v);
    }
    EXPECT_EQ(format_double(0.5), "0.5");
}

TEST(Csv, Spectrum) {
    SpectralResult r;
    r.e_min = 0.0;
    r.e_max = 1.0;
    r.below = {-0.5, -0.25};
    r.above = {2.0};
    EXPECT_EQ(spectrum_csv(r), "side,index,eigenvalue\nbelow,1,-0.5\nbelow,2,-0.25\nabove,1,2\n");
}

TEST(Csv, Intervals) {
    const IntervalUnion u = normalize_union({Interval{Rational(-5), Rational(-3)}, Interval{Rational(-5, 2), Rational(2)}});
    EXPECT_EQ(intervals_csv(u), "component,lo,hi,lo_exact,hi_exact\n1,-5,-3,-5,-3\n2,-2.5,2,-5/2,2\n");
}

TEST(Json, TensorIsDeterministic) {
    const BodySummary h1{1, EigenSequence::harmonic(4)};
    const BodySummary h2{1, EigenSequence::harmonic(5)};
    const std::string a = to_json(spectrum_T(h1, h2)).dump(2);
    const std::string b = to_json(spectrum_T(h1, h2)).dump(2);
    EXPECT_EQ(a, b);
    const json j = json::parse(a);
    EXPECT_EQ(j["essential"].size(), 2u);
    EXPECT_EQ(rational_from_json(j["essential"][1]["lo"]), Rational(-5, 2));
}

TEST(Json, OracleLayout) {
    const auto values = case1_exact_spectrum(CoefficientSpec::geometric(1, Rational(1, 5)),
                                             CoefficientSpec::geometric(Rational(1, 3), Rational(1, 3)), 4);
    const json j = oracle_json(values, 1.0);
    EXPECT_TRUE(j["exact"].get<bool>());
    EXPECT_TRUE(j["bulk_count"].is_null());
    ASSERT_EQ(j["below"].size(), 1u);
    EXPECT_EQ(rational_from_json(j["below"][0]), Rational(-44, 10125));
    EXPECT_EQ(j["embedded"].size(), 3u);
    EXPECT_TRUE(j["above"].empty());
}
