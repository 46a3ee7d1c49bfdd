#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace pt::numerics {

using Complex = std::complex<double>;
using RealFunction = std::function<double(double)>;
using ComplexFunction = std::function<Complex(double)>;

inline constexpr std::size_t kDefaultMaxEvaluations = std::size_t{1} << 20;
inline constexpr double kDefaultNormTol = 1e-10;
inline constexpr double kDefaultEntropyTol = 1e-9;

struct QuadResult {
    double value = 0.0;
    double error = 0.0;  ///< estimated absolute error
    std::size_t evaluations = 0;
};

/// Strictly increasing list of finite sample points (at least two).
class Grid1D {
public:
    explicit Grid1D(std::vector<double> points);

    /// `count` evenly spaced points covering [lo, hi] inclusive.
    static Grid1D uniform(double lo, double hi, std::size_t count);

    std::span<const double> points() const noexcept { return points_; }
    double operator[](std::size_t i) const { return points_[i]; }
    std::size_t size() const noexcept { return points_.size(); }
    double lo() const noexcept { return points_.front(); }
    double hi() const noexcept { return points_.back(); }

private:
    std::vector<double> points_;
};

struct ComplexField {
    Grid1D grid;
    std::vector<Complex> values;
    std::vector<double> errors;  ///< per-point quadrature error estimates
};

// Double-exponential quadrature. Each routine refines the trapezoid step
// dyadically until the estimate meets `tol` and throws ConvergenceError once
// `max_evaluations` is exceeded or the estimate stalls above `tol`.

/// ∫ f over the real line; f must decay at least exponentially. The range is
/// split at 0 so a non-analytic point there (a wavefunction node) is an endpoint.
QuadResult integrate_real_line(const RealFunction& f, double tol,
                               std::size_t max_evaluations = kDefaultMaxEvaluations);

/// ∫ f over [a, ∞).
QuadResult integrate_half_line(const RealFunction& f, double a, double tol,
                               std::size_t max_evaluations = kDefaultMaxEvaluations);

/// ∫ f over [a, b] by tanh-sinh; f is only ever called strictly inside (a, b).
QuadResult integrate_interval(const RealFunction& f, double a, double b, double tol,
                              std::size_t max_evaluations = kDefaultMaxEvaluations);

/// Sum of integrate_interval over consecutive pieces of a breakpoint list.
QuadResult integrate_pieces(const RealFunction& f, std::span<const double> breakpoints, double tol,
                            std::size_t max_evaluations = kDefaultMaxEvaluations);

/// Smallest X (on a 0.5 grid) beyond which |psi(±x)| stays below
/// `relative_threshold` times its maximum.
double decay_extent(const ComplexFunction& psi, double relative_threshold = 1e-16,
                    double x_cap = 1e4);

enum class KernelSign { Negative, Positive };

/// Unitary transform ψ̃(p) = (2π)^{-1/2} ∫ ψ(x) e^{-ipx} dx on |x| <= X.
///
/// ψ is sampled once on composite 16-point Gauss-Legendre panels sized for
/// |p| <= p_max. Each evaluation also runs the rule on panels twice as wide;
/// the difference is the reported error. The constructor narrows panels
/// until probe evaluations meet `tol`.
class FourierTransform {
public:
    struct Options {
        double x_extent = 0.0;  ///< 0 selects decay_extent(psi)
        KernelSign sign = KernelSign::Negative;
    };

    FourierTransform(const ComplexFunction& psi, double p_max, double tol);
    FourierTransform(const ComplexFunction& psi, double p_max, double tol, Options options);

    struct Value {
        Complex value;
        double error;
    };

    Value evaluate(double p) const;
    Complex operator()(double p) const { return evaluate(p).value; }

    double x_extent() const noexcept { return extent_; }
    double p_max() const noexcept { return p_max_; }
    double panel_width() const noexcept { return panel_width_; }

private:
    struct Rule {
        std::vector<double> nodes;
        std::vector<Complex> weighted;  ///< w_i ψ(x_i) / √(2π)
    };

    void build(double panel_width);
    Complex apply(const Rule& rule, double p) const;

    ComplexFunction psi_;
    double p_max_;
    double extent_;
    double sign_;
    double panel_width_ = 0.0;
    Rule fine_;
    Rule coarse_;
};

/// ψ̃ on every point of `p_grid`.
ComplexField fourier_to_momentum(const ComplexFunction& psi, const Grid1D& p_grid, double tol,
                                 KernelSign sign = KernelSign::Negative);

/// 16-point Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;
};
const GaussLegendre& gauss_legendre_16();

}  // namespace pt::numerics
