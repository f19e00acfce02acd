#pragma once

#include "friedrichs/rational.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace friedrichs {

/// Closed interval [lo, hi], lo <= hi.
struct Interval {
    Rational lo;
    Rational hi;

    bool contains(const Rational& x) const { return lo <= x && x <= hi; }
    friend bool operator==(const Interval&, const Interval&) = default;
};

/// Finite union of pairwise disjoint, non-touching closed intervals sorted by
/// left endpoint.
class IntervalUnion {
public:
    IntervalUnion() = default;

    const std::vector<Interval>& components() const { return components_; }
    bool empty() const { return components_.empty(); }
    std::size_t size() const { return components_.size(); }

    bool contains(const Rational& x) const;
    /// Membership with slack: x within `tol` of some component.
    bool contains(const Rational& x, const Rational& tol) const;
    /// True when [lo, hi] lies inside a single component.
    bool covers(const Rational& lo, const Rational& hi) const;

    friend bool operator==(const IntervalUnion&, const IntervalUnion&) = default;

private:
    friend IntervalUnion normalize_union(std::vector<Interval> intervals);
    std::vector<Interval> components_;
};

/// Sorts and merges overlapping or touching intervals. Throws
/// std::invalid_argument for an interval with lo > hi.
IntervalUnion normalize_union(std::vector<Interval> intervals);

IntervalUnion unite(const IntervalUnion& a, const IntervalUnion& b);

/// Negative eigenvalues of a one-body operator: an explicit ascending prefix
/// followed by an optional analytic tail that accumulates at 0.
class EigenSequence {
public:
    struct NoTail {};
    /// alpha_n = -c / n for n > prefix length.
    struct HarmonicTail {
        Rational c;
    };
    /// alpha_n = -c r^n for n > prefix length.
    struct GeometricTail {
        Rational c;
        Rational r;
    };
    using Tail = std::variant<NoTail, HarmonicTail, GeometricTail>;

    EigenSequence() = default;
    /// Throws std::invalid_argument unless every value is negative and the
    /// sequence is nondecreasing across the prefix and into the tail.
    explicit EigenSequence(std::vector<Rational> prefix, Tail tail = NoTail{});

    static EigenSequence finite(std::vector<Rational> values) { return EigenSequence(std::move(values)); }
    static EigenSequence harmonic(Rational c) { return EigenSequence({}, HarmonicTail{std::move(c)}); }
    static EigenSequence geometric(Rational c, Rational r) { return EigenSequence({}, GeometricTail{std::move(c), std::move(r)}); }

    const std::vector<Rational>& prefix() const { return prefix_; }
    const Tail& tail() const { return tail_; }
    bool infinite() const { return !std::holds_alternative<NoTail>(tail_); }
    bool empty() const { return prefix_.empty() && !infinite(); }
    /// Number of terms for finite sequences.
    std::size_t finite_size() const { return prefix_.size(); }

    /// 1-based term. Throws std::out_of_range past the end of a finite sequence.
    Rational value(std::size_t n) const;

    /// Least n > prefix length with alpha_{m+1} - alpha_m < width for all m >= n.
    /// Requires an infinite tail and width > 0.
    std::size_t merge_index(const Rational& width) const;

private:
    std::vector<Rational> prefix_;
    Tail tail_ = NoTail{};
};

/// One body H_i: essential spectrum [0, edge_width] and its negative eigenvalues.
struct BodySummary {
    Rational edge_width;
    EigenSequence discrete;
    /// False when some input came from a binary floating-point literal; such
    /// summaries are compared with a 1e-12 tolerance.
    bool exact = true;
};

/// Closure of the union of [alpha_k, alpha_k + width]. An infinite tail is
/// merged in closed form into [alpha_{n0}, width]. Throws std::invalid_argument
/// for width = 0 with an infinite tail.
IntervalUnion band_union(const EigenSequence& seq, const Rational& width);

/// sigma_0 U sigma_1 U sigma_2 with sigma_0 = [0, w1 + w2],
/// sigma_1 = band_union(h1, w2), sigma_2 = band_union(h2, w1).
IntervalUnion essential_spectrum_T(const BodySummary& h1, const BodySummary& h2);

struct DiscretePoint {
    Rational value;
    int count = 1;  ///< number of index pairs (i, j) producing the value; combinatorial, not spectral
};

/// Evidence about sums alpha_i + beta_j that were not enumerated.
struct TailCertificate {
    enum class Kind {
        Covered,             ///< all such sums lie in the essential spectrum
        EfimovAccumulation,  ///< the anchor is a left endpoint S_k; sums outside the union accumulate there
        Uncertified,
    };
    Kind kind = Kind::Covered;
    Rational anchor;  ///< the sums lie in [lower, anchor)
    Rational lower;
    std::string source;  ///< e.g. "alpha[3] + beta[j], j > 64"
};

const char* to_string(TailCertificate::Kind kind);

struct DiscreteSpectrumT {
    std::vector<DiscretePoint> points;  ///< ascending
    std::size_t expanded_alpha = 0;     ///< number of alpha terms enumerated
    std::size_t expanded_beta = 0;
    bool truncated = false;             ///< some tail was not fully enumerated
    std::vector<TailCertificate> certificates;
};

/// alpha + beta over enumerated pairs, kept when outside sigma_1 U sigma_2.
/// Each infinite tail is expanded by `depth` terms beyond its prefix; the
/// unexpanded remainder is described by certificates.
DiscreteSpectrumT discrete_spectrum_T(const BodySummary& h1, const BodySummary& h2, std::size_t depth = 64);

struct ComponentCount {
    std::size_t n_e = 0;
    std::vector<Interval> endpoints;  ///< (S_k, S_k') ascending
};

/// Throws std::domain_error for an empty union.
ComponentCount component_count(const IntervalUnion& essential);

struct EfimovPoint {
    Rational value;               ///< S_k
    std::size_t component = 0;    ///< 1-based k
    enum class Anchor { Alpha, Beta } anchor = Anchor::Alpha;
    std::size_t anchor_index = 0; ///< j with S_k = alpha_j (or beta_j)
    std::string witness;          ///< the accumulating sequence, in words
};

std::vector<EfimovPoint> efimov_points_T(const BodySummary& h1, const BodySummary& h2);

struct TensorSpectrum {
    IntervalUnion essential;
    DiscreteSpectrumT discrete;
    std::vector<EfimovPoint> efimov_points;
    std::size_t n_e = 0;
    bool exact = true;
};

/// Bundles the above and checks sigma(T) within [alpha_1 + beta_1, w1 + w2]
/// and alpha_1 + beta_1 in the discrete set when both bodies have
/// eigenvalues. Throws InternalConsistencyError on violation.
TensorSpectrum spectrum_T(const BodySummary& h1, const BodySummary& h2, std::size_t depth = 64);

}  // namespace friedrichs
