#include "friedrichs/operator_core.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace friedrichs {

namespace {

void require_unit_interval(double x, const char* where) {
    if (!(x >= 0.0 && x <= 1.0)) {
        throw std::domain_error(std::string(where) + ": x = " + std::to_string(x) + " outside [0, 1]");
    }
}

void require_index(int k, const char* where) {
    if (k < 1 || k > kMaxDyadicIndex) {
        throw std::domain_error(std::string(where) + ": index " + std::to_string(k) + " outside [1, 50]");
    }
}

}  // namespace

// ---------------------------------------------------------------------------
// Dyadic partition

double breakpoint(int k) {
    if (k < 1 || k > kMaxDyadicIndex + 1) throw std::domain_error("breakpoint: index out of range");
    return 1.0 - std::ldexp(1.0, -(k - 1));
}

double dyadic_width(int k) {
    require_index(k, "dyadic_width");
    return std::ldexp(1.0, -k);
}

Breakpoints breakpoints(int n_max) {
    if (n_max < 1 || n_max > kMaxDyadicIndex) {
        throw std::domain_error("breakpoints: n_max must lie in [1, 50]");
    }
    Breakpoints result;
    result.p.reserve(static_cast<std::size_t>(n_max) + 1);
    result.h.reserve(static_cast<std::size_t>(n_max));
    for (int k = 1; k <= n_max + 1; ++k) result.p.push_back(breakpoint(k));
    for (int k = 1; k <= n_max; ++k) result.h.push_back(dyadic_width(k));
    return result;
}

DyadicCell dyadic_cell(int k) {
    require_index(k, "dyadic_cell");
    const double begin = breakpoint(k);
    const double width = dyadic_width(k);
    const double end = breakpoint(k + 1);
    return DyadicCell{begin, begin + width / 3.0, begin + width / 2.0, end - width / 3.0, end, width};
}

double eval_tent(int k, double x) {
    require_index(k, "eval_tent");
    require_unit_interval(x, "eval_tent");
    const DyadicCell c = dyadic_cell(k);
    if (x < c.begin || x > c.end) return 0.0;
    if (x < c.rise_end) return 3.0 / c.width * (x - c.begin);
    if (x <= c.fall_begin) return 1.0;
    return -3.0 / c.width * (x - c.end);
}

double eval_basis_hat(int n, double x) {
    require_index(n, "eval_basis_hat");
    require_unit_interval(x, "eval_basis_hat");
    const DyadicCell c = dyadic_cell(n);
    if (x < c.rise_end || x > c.fall_begin) return 0.0;
    const double scale = 3.0 / std::sqrt(c.width);
    if (x <= c.middle) return scale * (6.0 / c.width * (x - c.rise_end));
    return scale * (-6.0 / c.width * (x - c.fall_begin));
}

double eval_basis_sine(int n, double x) {
    require_index(n, "eval_basis_sine");
    require_unit_interval(x, "eval_basis_sine");
    const DyadicCell c = dyadic_cell(n);
    if (x < c.begin || x > c.end) return 0.0;
    const double amplitude = std::sqrt(std::ldexp(1.0, n + 1));
    return amplitude * std::sin(std::numbers::pi * (x - c.begin) / (c.end - c.begin));
}

// ---------------------------------------------------------------------------
// Coefficient sequences

CoefficientSpec CoefficientSpec::explicit_values(std::vector<Rational> values) {
    return CoefficientSpec(Explicit{std::move(values)});
}

CoefficientSpec CoefficientSpec::explicit_values(const std::vector<double>& values) {
    std::vector<Rational> exact;
    exact.reserve(values.size());
    for (double v : values) exact.push_back(rational_from_double(v));
    return CoefficientSpec(Explicit{std::move(exact)});
}

CoefficientSpec CoefficientSpec::geometric(Rational first, Rational ratio) {
    if (!(ratio > 0 && ratio < 1)) throw std::invalid_argument("geometric coefficients need 0 < ratio < 1");
    return CoefficientSpec(Geometric{std::move(first), std::move(ratio)});
}

CoefficientSpec CoefficientSpec::harmonic(Rational scale) {
    return CoefficientSpec(Harmonic{std::move(scale)});
}

std::optional<int> CoefficientSpec::length() const {
    if (const auto* e = std::get_if<Explicit>(&form_)) return static_cast<int>(e->values.size());
    return std::nullopt;
}

Rational CoefficientSpec::exact(int n) const {
    if (n < 1) throw std::out_of_range("coefficient index must be >= 1");
    return std::visit(
        [n](const auto& f) -> Rational {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, Explicit>) {
                if (static_cast<std::size_t>(n) > f.values.size()) {
                    throw std::out_of_range("explicit coefficient list has only " + std::to_string(f.values.size()) +
                                            " terms");
                }
                return f.values[static_cast<std::size_t>(n - 1)];
            } else if constexpr (std::is_same_v<T, Geometric>) {
                return f.first * pow(f.ratio, static_cast<unsigned>(n - 1));
            } else {
                return f.scale / n;
            }
        },
        form_);
}

std::vector<Rational> CoefficientSpec::expand_exact(int count) const {
    std::vector<Rational> out;
    out.reserve(static_cast<std::size_t>(std::max(count, 0)));
    for (int n = 1; n <= count; ++n) out.push_back(exact(n));
    return out;
}

std::vector<double> CoefficientSpec::expand(int count) const {
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(std::max(count, 0)));
    for (int n = 1; n <= count; ++n) out.push_back(value(n));
    return out;
}

CoefficientSpec CoefficientSpec::negated() const {
    return std::visit(
        [](const auto& f) -> CoefficientSpec {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, Explicit>) {
                std::vector<Rational> values;
                for (const auto& v : f.values) values.push_back(-v);
                return CoefficientSpec(Explicit{std::move(values)});
            } else if constexpr (std::is_same_v<T, Geometric>) {
                return CoefficientSpec(Geometric{Rational(-f.first), f.ratio});
            } else {
                return CoefficientSpec(Harmonic{Rational(-f.scale)});
            }
        },
        form_);
}

// ---------------------------------------------------------------------------
// Potentials

PotentialModel::PotentialModel(Kind kind) : kind_(std::move(kind)) {
    if (const auto* t = std::get_if<TentSeries>(&kind_)) {
        tent_values_ = t->coefficients.expand(t->truncation);
        u_min_ = 0.0;
        u_max_ = tent_values_.empty() ? 0.0 : *std::max_element(tent_values_.begin(), tent_values_.end());
    } else if (std::holds_alternative<Monomial>(kind_)) {
        u_min_ = 0.0;
        u_max_ = 1.0;
    } else {
        const auto& samples = std::get<Table>(kind_).samples;
        const auto [lo, hi] = std::minmax_element(samples.begin(), samples.end());
        u_min_ = *lo;
        u_max_ = *hi;
    }
}

PotentialModel PotentialModel::tent_series(CoefficientSpec coefficients, int truncation) {
    if (truncation < 1 || truncation > kMaxDyadicIndex) {
        throw std::invalid_argument("tent series truncation must lie in [1, 50]");
    }
    if (auto len = coefficients.length(); len && *len < truncation) {
        throw std::invalid_argument("tent series truncation exceeds the explicit coefficient list");
    }
    if (coefficients.exact(1) != 1) throw std::invalid_argument("tent series requires a_1 = 1");
    for (int k = 1; k <= truncation; ++k) {
        if (coefficients.exact(k) <= 0) throw std::invalid_argument("tent series requires a_k > 0");
    }
    return PotentialModel(TentSeries{std::move(coefficients), truncation});
}

PotentialModel PotentialModel::monomial(int power) {
    if (power < 1) throw std::invalid_argument("monomial potential needs power >= 1");
    return PotentialModel(Monomial{power});
}

PotentialModel PotentialModel::table(std::vector<double> samples) {
    if (samples.size() < 2) throw std::invalid_argument("potential table needs at least two samples");
    for (double v : samples) {
        if (!std::isfinite(v)) throw std::invalid_argument("potential table has a non-finite sample");
    }
    return PotentialModel(Table{std::move(samples)});
}

double PotentialModel::operator()(double x) const {
    require_unit_interval(x, "eval_potential");
    if (const auto* t = std::get_if<TentSeries>(&kind_)) {
        for (int k = 1; k <= t->truncation; ++k) {
            if (x <= breakpoint(k + 1)) return tent_values_[static_cast<std::size_t>(k - 1)] * eval_tent(k, x);
        }
        return 0.0;
    }
    if (const auto* m = std::get_if<Monomial>(&kind_)) return std::pow(x, m->power);
    const auto& s = std::get<Table>(kind_).samples;
    const auto intervals = s.size() - 1;
    const double t = x * static_cast<double>(intervals);
    const auto j = std::min(static_cast<std::size_t>(t), intervals - 1);
    const double frac = t - static_cast<double>(j);
    if (frac == 0.0) return s[j];
    return s[j] + frac * (s[j + 1] - s[j]);
}

int PotentialModel::dyadic_cells() const {
    if (const auto* t = std::get_if<TentSeries>(&kind_)) return t->truncation;
    return 0;
}

bool PotentialModel::piecewise_linear_on_cells() const {
    return std::holds_alternative<TentSeries>(kind_);
}

PotentialModel PotentialModel::with_truncation(int truncation) const {
    const auto* t = std::get_if<TentSeries>(&kind_);
    if (t == nullptr) throw std::invalid_argument("with_truncation applies to tent series only");
    return tent_series(t->coefficients, truncation);
}

std::pair<double, double> potential_extrema(const PotentialModel& model) {
    return {model.u_min(), model.u_max()};
}

std::pair<PotentialModel, double> shift_to_zero(const PotentialModel& model) {
    const double shift = model.u_min();
    if (shift == 0.0) return {model, 0.0};
    // Only tables can have a nonzero minimum.
    auto samples = std::get<PotentialModel::Table>(model.kind()).samples;
    for (double& v : samples) v -= shift;
    return {PotentialModel::table(std::move(samples)), shift};
}

// ---------------------------------------------------------------------------
// Kernels

const char* to_string(BasisFamily family) {
    return family == BasisFamily::TentHats ? "tent_hats" : "sine_bumps";
}

double eval_basis(BasisFamily family, int n, double x) {
    return family == BasisFamily::TentHats ? eval_basis_hat(n, x) : eval_basis_sine(n, x);
}

SeparableKernel::SeparableKernel(CoefficientSpec lambdas, BasisFamily basis, int rank)
    : lambdas_(std::move(lambdas)), basis_(basis), rank_(rank) {
    if (rank < 0 || rank > kMaxDyadicIndex) throw std::invalid_argument("kernel rank must lie in [0, 50]");
    if (auto len = lambdas_.length(); len && *len < rank) {
        throw std::invalid_argument("kernel rank exceeds the explicit lambda list");
    }
    lambda_values_ = lambdas_.expand(rank);
}

double SeparableKernel::operator()(double x, double s) const {
    require_unit_interval(x, "eval_kernel");
    require_unit_interval(s, "eval_kernel");
    double sum = 0.0;
    for (int n = 1; n <= rank_; ++n) {
        const double bx = basis_value(n, x);
        if (bx == 0.0) continue;
        const double bs = basis_value(n, s);
        // The product bx * bs commutes exactly, which keeps k(x, s) == k(s, x).
        sum += lambda_values_[static_cast<std::size_t>(n - 1)] * (bx * bs);
    }
    return sum;
}

SeparableKernel SeparableKernel::truncated(int rank) const {
    return SeparableKernel(lambdas_, basis_, rank);
}

SeparableKernel SeparableKernel::negated() const {
    return SeparableKernel(lambdas_.negated(), basis_, rank_);
}

}  // namespace friedrichs
