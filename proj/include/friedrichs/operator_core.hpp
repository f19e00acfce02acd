#pragma once

#include "friedrichs/rational.hpp"

#include <optional>
#include <utility>
#include <variant>
#include <vector>

namespace friedrichs {

/// Largest dyadic index supported. Beyond it p_k = 1 - 2^{-(k-1)} is still
/// exact but supports become narrower than the grids this library builds.
inline constexpr int kMaxDyadicIndex = 50;

/// Dyadic partition of [0, 1): p_1 = 0, p_{n+1} = p_n + 2^{-n}, h_k = 2^{-k}.
struct Breakpoints {
    std::vector<double> p;  ///< p_1 .. p_{n_max+1}
    std::vector<double> h;  ///< h_1 .. h_{n_max}
};

/// Throws std::domain_error unless 1 <= n_max <= 50.
Breakpoints breakpoints(int n_max);

/// p_k = 1 - 2^{-(k-1)}, exact in binary floating point. 1 <= k <= 51.
double breakpoint(int k);
/// h_k = 2^{-k}. 1 <= k <= 50.
double dyadic_width(int k);

/// Landmarks of the k-th dyadic cell [p_k, p_{k+1}]. The tent plateau and the
/// hat support share `rise_end` and `fall_begin` bit-for-bit.
struct DyadicCell {
    double begin;       ///< p_k
    double rise_end;    ///< p_k + h_k/3
    double middle;      ///< p_k + h_k/2
    double fall_begin;  ///< p_{k+1} - h_k/3
    double end;         ///< p_{k+1}
    double width;       ///< h_k
};

DyadicCell dyadic_cell(int k);

/// Trapezoid r_k: ramps over the outer thirds of [p_k, p_{k+1}], plateau 1.
double eval_tent(int k, double x);

/// phi_n = (3/sqrt(h_n)) q_n, q_n the unit triangle on the plateau of r_n.
double eval_basis_hat(int n, double x);

/// nu_n = 2^{(n+1)/2} sin(pi (x - p_n) / h_n) on [p_n, p_{n+1}], zero elsewhere.
double eval_basis_sine(int n, double x);

/// Coefficient sequences c_1, c_2, ... with exact rational parameters.
class CoefficientSpec {
public:
    struct Explicit {
        std::vector<Rational> values;
    };
    struct Geometric {
        Rational first;
        Rational ratio;  ///< 0 < ratio < 1
    };
    struct Harmonic {
        Rational scale;  ///< c_n = scale / n; the sign of scale selects c/n or -c/n
    };
    using Form = std::variant<Explicit, Geometric, Harmonic>;

    static CoefficientSpec explicit_values(std::vector<Rational> values);
    static CoefficientSpec explicit_values(const std::vector<double>& values);
    static CoefficientSpec geometric(Rational first, Rational ratio);
    static CoefficientSpec harmonic(Rational scale);

    const Form& form() const { return form_; }

    /// Number of available terms; std::nullopt for the infinite families.
    std::optional<int> length() const;

    /// 1-based exact term. Throws std::out_of_range past an explicit list.
    Rational exact(int n) const;
    double value(int n) const { return to_double(exact(n)); }

    std::vector<Rational> expand_exact(int count) const;
    std::vector<double> expand(int count) const;

    CoefficientSpec negated() const;

private:
    explicit CoefficientSpec(Form form) : form_(std::move(form)) {}
    Form form_;
};

/// Potential u on [0, 1].
class PotentialModel {
public:
    struct TentSeries {
        CoefficientSpec coefficients;
        int truncation;  ///< K_u
    };
    struct Monomial {
        int power;
    };
    /// Samples on the uniform grid j/(n-1), linearly interpolated.
    struct Table {
        std::vector<double> samples;
    };
    using Kind = std::variant<TentSeries, Monomial, Table>;

    /// Validates a_1 = 1 and a_k > 0 for k <= truncation.
    static PotentialModel tent_series(CoefficientSpec coefficients, int truncation = 12);
    static PotentialModel monomial(int power);
    static PotentialModel table(std::vector<double> samples);
    /// Tabulates f on `samples` uniform points.
    template <class F>
    static PotentialModel tabulate(F&& f, int samples = kDefaultTableSamples) {
        std::vector<double> values(static_cast<std::size_t>(samples));
        for (int j = 0; j < samples; ++j) values[static_cast<std::size_t>(j)] = f(static_cast<double>(j) / (samples - 1));
        return table(std::move(values));
    }

    /// 4096 intervals, so every dyadic p_k with k <= 13 is a sample node.
    static constexpr int kDefaultTableSamples = 4097;

    const Kind& kind() const { return kind_; }

    /// Throws std::domain_error for x outside [0, 1].
    double operator()(double x) const;

    double u_min() const { return u_min_; }
    double u_max() const { return u_max_; }

    /// Number of leading dyadic cells whose landmarks must be grid nodes
    /// (K_u for tent series, 0 otherwise).
    int dyadic_cells() const;

    /// True when u is piecewise linear with kinks only at dyadic landmarks.
    bool piecewise_linear_on_cells() const;

    /// Same model with a different tent truncation (tent series only).
    PotentialModel with_truncation(int truncation) const;

private:
    explicit PotentialModel(Kind kind);
    Kind kind_;
    std::vector<double> tent_values_;
    double u_min_ = 0.0;
    double u_max_ = 0.0;
};

std::pair<double, double> potential_extrema(const PotentialModel& model);

inline double eval_potential(const PotentialModel& model, double x) { return model(x); }

/// Returns (u - u_min, u_min). Tent series and monomials already have
/// u_min = 0 and come back unchanged.
std::pair<PotentialModel, double> shift_to_zero(const PotentialModel& model);

enum class BasisFamily { TentHats, SineBumps };

const char* to_string(BasisFamily family);

double eval_basis(BasisFamily family, int n, double x);

/// k(x, s) = sum_{n <= rank} lambda_n b_n(x) b_n(s).
class SeparableKernel {
public:
    SeparableKernel(CoefficientSpec lambdas, BasisFamily basis, int rank);

    const CoefficientSpec& lambdas() const { return lambdas_; }
    BasisFamily basis() const { return basis_; }
    int rank() const { return rank_; }

    /// lambda_n as double, 1-based, n <= rank.
    double lambda(int n) const { return lambda_values_.at(static_cast<std::size_t>(n - 1)); }
    const std::vector<double>& lambda_values() const { return lambda_values_; }

    double basis_value(int n, double x) const { return eval_basis(basis_, n, x); }

    /// Bit-exactly symmetric in (x, s).
    double operator()(double x, double s) const;

    SeparableKernel truncated(int rank) const;
    SeparableKernel negated() const;

private:
    CoefficientSpec lambdas_;
    BasisFamily basis_;
    int rank_;
    std::vector<double> lambda_values_;
};

inline double eval_kernel(const SeparableKernel& kernel, double x, double s) { return kernel(x, s); }

}  // namespace friedrichs
