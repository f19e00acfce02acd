#include "friedrichs/tensor_spectra.hpp"

#include "friedrichs/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace friedrichs {

namespace {

const Rational kInexactTolerance = Rational(1, 1000000000000LL);

Rational tolerance_for(bool exact) { return exact ? Rational(0) : kInexactTolerance; }

}  // namespace

// ---------------------------------------------------------------------------
// Interval unions

bool IntervalUnion::contains(const Rational& x) const {
    // Components are sorted, so binary search on the left endpoint.
    auto it = std::upper_bound(components_.begin(), components_.end(), x,
                               [](const Rational& v, const Interval& c) { return v < c.lo; });
    if (it == components_.begin()) return false;
    return std::prev(it)->contains(x);
}

bool IntervalUnion::contains(const Rational& x, const Rational& tol) const {
    if (tol == 0) return contains(x);
    return std::any_of(components_.begin(), components_.end(),
                       [&](const Interval& c) { return c.lo - tol <= x && x <= c.hi + tol; });
}

bool IntervalUnion::covers(const Rational& lo, const Rational& hi) const {
    return std::any_of(components_.begin(), components_.end(),
                       [&](const Interval& c) { return c.lo <= lo && hi <= c.hi; });
}

IntervalUnion normalize_union(std::vector<Interval> intervals) {
    for (const auto& i : intervals) {
        if (i.lo > i.hi) throw std::invalid_argument("normalize_union: interval with lo > hi");
    }
    std::sort(intervals.begin(), intervals.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    IntervalUnion out;
    for (auto& i : intervals) {
        if (!out.components_.empty() && i.lo <= out.components_.back().hi) {
            if (i.hi > out.components_.back().hi) out.components_.back().hi = i.hi;
        } else {
            out.components_.push_back(std::move(i));
        }
    }
    return out;
}

IntervalUnion unite(const IntervalUnion& a, const IntervalUnion& b) {
    std::vector<Interval> all(a.components());
    all.insert(all.end(), b.components().begin(), b.components().end());
    return normalize_union(std::move(all));
}

// ---------------------------------------------------------------------------
// Eigenvalue sequences

EigenSequence::EigenSequence(std::vector<Rational> prefix, Tail tail)
    : prefix_(std::move(prefix)), tail_(std::move(tail)) {
    if (const auto* h = std::get_if<HarmonicTail>(&tail_)) {
        if (h->c <= 0) throw std::invalid_argument("harmonic tail needs c > 0");
    }
    if (const auto* g = std::get_if<GeometricTail>(&tail_)) {
        if (g->c <= 0) throw std::invalid_argument("geometric tail needs c > 0");
        if (!(g->r > 0 && g->r < 1)) throw std::invalid_argument("geometric tail needs 0 < r < 1");
    }
    for (std::size_t i = 0; i < prefix_.size(); ++i) {
        if (prefix_[i] >= 0) throw std::invalid_argument("eigenvalue sequence values must be negative");
        if (i > 0 && prefix_[i] < prefix_[i - 1]) throw std::invalid_argument("eigenvalue prefix must be ascending");
    }
    if (infinite() && !prefix_.empty() && prefix_.back() > value(prefix_.size() + 1)) {
        throw std::invalid_argument("eigenvalue prefix must not exceed the first tail value");
    }
}

Rational EigenSequence::value(std::size_t n) const {
    if (n == 0) throw std::out_of_range("eigenvalue index must be >= 1");
    if (n <= prefix_.size()) return prefix_[n - 1];
    if (const auto* h = std::get_if<HarmonicTail>(&tail_)) return Rational(-h->c / static_cast<long long>(n));
    if (const auto* g = std::get_if<GeometricTail>(&tail_)) return Rational(-g->c * pow(g->r, static_cast<unsigned>(n)));
    throw std::out_of_range("index past the end of a finite eigenvalue sequence");
}

std::size_t EigenSequence::merge_index(const Rational& width) const {
    if (!infinite()) throw std::logic_error("merge_index: finite sequence");
    if (width <= 0) throw std::invalid_argument("merge_index: width must be positive");
    const std::size_t first = prefix_.size() + 1;
    const auto gap = [this](std::size_t n) { return value(n + 1) - value(n); };

    // The gaps of both tail families decrease strictly, so the answer is the
    // first n >= first with gap(n) < width. Start from the closed-form estimate
    // and correct exactly.
    double estimate = 1.0;
    if (const auto* h = std::get_if<HarmonicTail>(&tail_)) {
        estimate = std::sqrt(to_double(h->c / width));
    } else {
        const auto& g = std::get<GeometricTail>(tail_);
        estimate = std::log(to_double(width / (g.c * (1 - g.r)))) / std::log(to_double(g.r));
    }
    std::size_t n = first;
    if (std::isfinite(estimate) && estimate > static_cast<double>(first) + 2.0) {
        n = static_cast<std::size_t>(estimate) - 2;
    }
    while (gap(n) >= width) ++n;
    while (n > first && gap(n - 1) < width) --n;
    return n;
}

// ---------------------------------------------------------------------------
// Essential spectrum

IntervalUnion band_union(const EigenSequence& seq, const Rational& width) {
    if (width < 0) throw std::invalid_argument("band_union: width must be non-negative");
    if (seq.infinite() && width == 0) {
        throw std::invalid_argument("band_union: zero width with an infinite tail is unsupported");
    }
    std::vector<Interval> bands;
    const std::size_t explicit_terms = seq.infinite() ? seq.merge_index(width) - 1 : seq.finite_size();
    for (std::size_t k = 1; k <= explicit_terms; ++k) {
        const Rational a = seq.value(k);
        bands.push_back({a, a + width});
    }
    if (seq.infinite()) bands.push_back({seq.value(explicit_terms + 1), width});
    return normalize_union(std::move(bands));
}

IntervalUnion essential_spectrum_T(const BodySummary& h1, const BodySummary& h2) {
    std::vector<Interval> all{{Rational(0), h1.edge_width + h2.edge_width}};
    const IntervalUnion sigma1 = band_union(h1.discrete, h2.edge_width);
    const IntervalUnion sigma2 = band_union(h2.discrete, h1.edge_width);
    all.insert(all.end(), sigma1.components().begin(), sigma1.components().end());
    all.insert(all.end(), sigma2.components().begin(), sigma2.components().end());
    return normalize_union(std::move(all));
}

// ---------------------------------------------------------------------------
// Discrete spectrum

const char* to_string(TailCertificate::Kind kind) {
    switch (kind) {
        case TailCertificate::Kind::Covered: return "covered";
        case TailCertificate::Kind::EfimovAccumulation: return "efimov_accumulation";
        case TailCertificate::Kind::Uncertified: return "uncertified";
    }
    return "unknown";
}

namespace {

std::size_t expanded_terms(const EigenSequence& seq, std::size_t depth) {
    return seq.infinite() ? seq.prefix().size() + depth : seq.finite_size();
}

bool is_left_endpoint(const IntervalUnion& u, const Rational& x, const Rational& tol) {
    return std::any_of(u.components().begin(), u.components().end(),
                       [&](const Interval& c) { return abs(c.lo - x) <= tol; });
}

TailCertificate certify(const IntervalUnion& essential, const Rational& lower, const Rational& anchor,
                        std::string source, const Rational& tol) {
    TailCertificate cert;
    cert.anchor = anchor;
    cert.lower = lower;
    cert.source = std::move(source);
    if (essential.covers(lower, anchor)) {
        cert.kind = TailCertificate::Kind::Covered;
    } else if (is_left_endpoint(essential, anchor, tol)) {
        cert.kind = TailCertificate::Kind::EfimovAccumulation;
    } else {
        cert.kind = TailCertificate::Kind::Uncertified;
    }
    return cert;
}

}  // namespace

DiscreteSpectrumT discrete_spectrum_T(const BodySummary& h1, const BodySummary& h2, std::size_t depth) {
    DiscreteSpectrumT out;
    if (h1.discrete.empty() || h2.discrete.empty()) return out;
    const Rational tol = tolerance_for(h1.exact && h2.exact);
    const IntervalUnion excluded =
        unite(band_union(h1.discrete, h2.edge_width), band_union(h2.discrete, h1.edge_width));

    out.expanded_alpha = expanded_terms(h1.discrete, depth);
    out.expanded_beta = expanded_terms(h2.discrete, depth);
    std::vector<Rational> alphas;
    std::vector<Rational> betas;
    for (std::size_t i = 1; i <= out.expanded_alpha; ++i) alphas.push_back(h1.discrete.value(i));
    for (std::size_t j = 1; j <= out.expanded_beta; ++j) betas.push_back(h2.discrete.value(j));

    std::map<Rational, int> sums;
    for (const auto& a : alphas) {
        for (const auto& b : betas) {
            Rational s = a + b;
            if (!excluded.contains(s, tol)) ++sums[s];
        }
    }
    for (auto& [value, count] : sums) out.points.push_back({value, count});

    out.truncated = h1.discrete.infinite() || h2.discrete.infinite();
    if (!out.truncated) return out;

    const IntervalUnion essential = essential_spectrum_T(h1, h2);
    const std::string d1 = std::to_string(out.expanded_alpha);
    const std::string d2 = std::to_string(out.expanded_beta);
    if (h2.discrete.infinite()) {
        const Rational next_beta = h2.discrete.value(out.expanded_beta + 1);
        for (std::size_t i = 0; i < alphas.size(); ++i) {
            out.certificates.push_back(certify(essential, alphas[i] + next_beta, alphas[i],
                                               "alpha[" + std::to_string(i + 1) + "] + beta[j], j > " + d2, tol));
        }
    }
    if (h1.discrete.infinite()) {
        const Rational next_alpha = h1.discrete.value(out.expanded_alpha + 1);
        for (std::size_t j = 0; j < betas.size(); ++j) {
            out.certificates.push_back(certify(essential, betas[j] + next_alpha, betas[j],
                                               "alpha[i] + beta[" + std::to_string(j + 1) + "], i > " + d1, tol));
        }
    }
    if (h1.discrete.infinite() && h2.discrete.infinite()) {
        const Rational lower = h1.discrete.value(out.expanded_alpha + 1) + h2.discrete.value(out.expanded_beta + 1);
        out.certificates.push_back(
            certify(essential, lower, Rational(0), "alpha[i] + beta[j], i > " + d1 + ", j > " + d2, tol));
    }
    return out;
}

ComponentCount component_count(const IntervalUnion& essential) {
    if (essential.empty()) throw std::domain_error("component_count: empty essential spectrum");
    return ComponentCount{essential.size(), essential.components()};
}

// ---------------------------------------------------------------------------
// Efimov points

namespace {

// Index j with seq.value(j) == target (within tol), scanning the ascending
// sequence until it passes the target.
std::optional<std::size_t> find_term(const EigenSequence& seq, const Rational& target, const Rational& tol) {
    if (target >= 0) return std::nullopt;
    for (std::size_t j = 1;; ++j) {
        if (!seq.infinite() && j > seq.finite_size()) return std::nullopt;
        const Rational v = seq.value(j);
        if (abs(v - target) <= tol) return j;
        if (v > target + tol) return std::nullopt;
    }
}

std::string witness_text(const char* fixed, std::size_t index, const char* moving, const Rational& limit) {
    return std::string(fixed) + "[" + std::to_string(index) + "] + " + moving + "[n] increases to " +
           to_string(limit) + " as n -> infinity";
}

}  // namespace

std::vector<EfimovPoint> efimov_points_T(const BodySummary& h1, const BodySummary& h2) {
    std::vector<EfimovPoint> points;
    const bool inf1 = h1.discrete.infinite();
    const bool inf2 = h2.discrete.infinite();
    if ((!inf1 && !inf2) || h1.discrete.empty() || h2.discrete.empty()) return points;
    const Rational tol = tolerance_for(h1.exact && h2.exact);
    const IntervalUnion essential = essential_spectrum_T(h1, h2);

    for (std::size_t k = 0; k < essential.size(); ++k) {
        const Rational& s = essential.components()[k].lo;
        // With one finite body only its eigenvalues can anchor an accumulation;
        // with two infinite bodies every S_k is anchored by one of them.
        std::optional<std::size_t> alpha_j;
        std::optional<std::size_t> beta_j;
        if (inf2) alpha_j = find_term(h1.discrete, s, tol);
        if (inf1 && !alpha_j) beta_j = find_term(h2.discrete, s, tol);
        if (alpha_j) {
            points.push_back({s, k + 1, EfimovPoint::Anchor::Alpha, *alpha_j, witness_text("alpha", *alpha_j, "beta", s)});
        } else if (beta_j) {
            points.push_back({s, k + 1, EfimovPoint::Anchor::Beta, *beta_j, witness_text("beta", *beta_j, "alpha", s)});
        } else if (inf1 && inf2) {
            throw InternalConsistencyError("efimov_points_T: left endpoint " + to_string(s) +
                                           " matches no one-body eigenvalue");
        }
    }
    return points;
}

TensorSpectrum spectrum_T(const BodySummary& h1, const BodySummary& h2, std::size_t depth) {
    TensorSpectrum out;
    out.exact = h1.exact && h2.exact;
    out.essential = essential_spectrum_T(h1, h2);
    out.discrete = discrete_spectrum_T(h1, h2, depth);
    out.efimov_points = efimov_points_T(h1, h2);
    out.n_e = component_count(out.essential).n_e;

    const Rational top = h1.edge_width + h2.edge_width;
    if (out.essential.components().back().hi != top) {
        throw InternalConsistencyError("spectrum_T: essential spectrum does not end at u_max + v_max");
    }
    const Rational tol = tolerance_for(out.exact);
    for (const auto& p : out.discrete.points) {
        if (out.essential.contains(p.value, tol)) {
            throw InternalConsistencyError("spectrum_T: discrete point " + to_string(p.value) + " lies in the essential spectrum");
        }
    }
    if (!h1.discrete.empty() && !h2.discrete.empty()) {
        const Rational bottom = h1.discrete.value(1) + h2.discrete.value(1);
        if (out.discrete.points.empty() || out.discrete.points.front().value != bottom) {
            throw InternalConsistencyError("spectrum_T: alpha_1 + beta_1 is not the lowest discrete point");
        }
        if (out.essential.components().front().lo != std::min(h1.discrete.value(1), h2.discrete.value(1))) {
            throw InternalConsistencyError("spectrum_T: S_1 differs from min(alpha_1, beta_1)");
        }
    }
    return out;
}

}  // namespace friedrichs
