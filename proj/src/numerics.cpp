#include "ptentropy/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <string>

#include "ptentropy/errors.hpp"

namespace pt::numerics {

inline std::string format_g(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}


namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kHalfPi = 0.5 * std::numbers::pi;

struct Node {
    double x;
    double w;
    bool valid;
};

// Trapezoid rule in the transformed variable t with dyadic step refinement.
// `map(t)` returns the abscissa, the Jacobian and whether the abscissa is
// representable strictly inside the integration range.
template <typename Map>
QuadResult de_integrate(const RealFunction& f, const Map& map, double tol,
                        std::size_t max_evaluations, const char* who) {
    if (!(tol > 0.0)) {
        throw DomainError(std::string(who) + ": tolerance must be positive");
    }
    constexpr double kStep0 = 0.5;
    constexpr int kMaxSteps = 200;
    constexpr double kTailRatio = 1e-20;

    std::size_t evaluations = 0;
    double abs_sum = 0.0;
    auto term = [&](double t) {
        const Node node = map(t);
        if (!node.valid) return std::pair<double, bool>{0.0, false};
        ++evaluations;
        const double v = f(node.x) * node.w;
        if (!std::isfinite(v)) {
            throw ConvergenceError(std::string(who) + ": non-finite integrand at x = " +
                                       format_g(node.x),
                                   std::numeric_limits<double>::quiet_NaN(),
                                   std::numeric_limits<double>::infinity());
        }
        abs_sum += std::fabs(v);
        return std::pair<double, bool>{v, true};
    };

    // Level 0: walk outward from t = 0 until the terms are negligible.
    double sum = term(0.0).first;
    int k_hi = 0;
    int k_lo = 0;
    for (int direction : {1, -1}) {
        int small_run = 0;
        for (int k = 1; k <= kMaxSteps; ++k) {
            const auto [v, ok] = term(direction * k * kStep0);
            if (!ok) {
                // Keep the step up to the first unrepresentable node: finer
                // levels may still find representable abscissae inside it.
                (direction > 0 ? k_hi : k_lo) = k;
                break;
            }
            sum += v;
            (direction > 0 ? k_hi : k_lo) = k;
            small_run = std::fabs(v) <= kTailRatio * std::fabs(sum) ? small_run + 1 : 0;
            if (small_run >= 3) break;
        }
    }
    const double t_lo = -k_lo * kStep0;
    const double t_hi = k_hi * kStep0;

    double h = kStep0;
    double estimate = sum * h;
    double error = std::numeric_limits<double>::infinity();
    double error_two_back = std::numeric_limits<double>::infinity();
    double error_one_back = std::numeric_limits<double>::infinity();
    for (int level = 1;; ++level) {
        h *= 0.5;
        double added = 0.0;
        for (double t = t_lo + h; t < t_hi; t += 2.0 * h) {
            added += term(t).first;
        }
        const double refined = 0.5 * estimate + h * added;
        const double floor = 4.0 * kEps * abs_sum * h;
        error = std::max(std::fabs(refined - estimate), floor);
        estimate = refined;

        if (level >= 2 && error <= tol) {
            return {estimate, error, evaluations};
        }
        if (evaluations > max_evaluations) {
            throw ConvergenceError(std::string(who) + ": evaluation cap reached with error estimate " +
                                       format_g(error) + " above tolerance " +
                                       format_g(tol),
                                   estimate, error);
        }
        if (level >= 6 && error >= 0.25 * error_two_back) {
            throw ConvergenceError(std::string(who) + ": error estimate stalled at " +
                                       format_g(error) + " above tolerance " +
                                       format_g(tol),
                                   estimate, error);
        }
        error_two_back = error_one_back;
        error_one_back = error;
    }
}

}  // namespace

Grid1D::Grid1D(std::vector<double> points) : points_(std::move(points)) {
    if (points_.size() < 2) {
        throw DomainError("Grid1D: need at least two points");
    }
    for (std::size_t i = 0; i < points_.size(); ++i) {
        if (!std::isfinite(points_[i])) throw DomainError("Grid1D: non-finite point");
        if (i > 0 && !(points_[i] > points_[i - 1])) {
            throw DomainError("Grid1D: points must be strictly increasing");
        }
    }
}

Grid1D Grid1D::uniform(double lo, double hi, std::size_t count) {
    if (count < 2 || !(hi > lo)) {
        throw DomainError("Grid1D::uniform: need count >= 2 and hi > lo");
    }
    std::vector<double> pts(count);
    const double step = (hi - lo) / static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i) pts[i] = lo + step * static_cast<double>(i);
    pts.back() = hi;
    return Grid1D(std::move(pts));
}

QuadResult integrate_half_line(const RealFunction& f, double a, double tol,
                               std::size_t max_evaluations) {
    // x = a + exp(t - exp(-t)): double-exponential clustering at a,
    // single-exponential growth toward infinity.
    auto map = [a](double t) {
        const double offset = std::exp(t - std::exp(-t));
        const double x = a + offset;
        const bool valid = offset > 0.0 && std::isfinite(x) && x != a;
        return Node{x, offset * (1.0 + std::exp(-t)), valid};
    };
    return de_integrate(f, map, tol, max_evaluations, "integrate_half_line");
}

QuadResult integrate_real_line(const RealFunction& f, double tol, std::size_t max_evaluations) {
    const RealFunction reflected = [&f](double x) { return f(-x); };
    QuadResult right;
    try {
        right = integrate_half_line(f, 0.0, 0.5 * tol, max_evaluations);
    } catch (const ConvergenceError& e) {
        // Report the whole-line estimate, not just the failing half.
        double other = 0.0;
        try {
            other = integrate_half_line(reflected, 0.0, 0.5 * tol, max_evaluations).value;
        } catch (const ConvergenceError& inner) {
            other = inner.last_value();
        }
        throw ConvergenceError(e.what(), e.last_value() + other, e.last_error());
    }
    try {
        const QuadResult left = integrate_half_line(reflected, 0.0, 0.5 * tol, max_evaluations);
        return {right.value + left.value, right.error + left.error, right.evaluations + left.evaluations};
    } catch (const ConvergenceError& e) {
        throw ConvergenceError(e.what(), e.last_value() + right.value, e.last_error());
    }
}

QuadResult integrate_interval(const RealFunction& f, double a, double b, double tol,
                              std::size_t max_evaluations) {
    if (!(b > a) || !std::isfinite(a) || !std::isfinite(b)) {
        throw DomainError("integrate_interval: need finite a < b");
    }
    const double half = 0.5 * (b - a);
    auto map = [a, b, half](double t) {
        const double u = kHalfPi * std::sinh(t);
        const double au = std::fabs(u);
        // half * (1 - tanh|u|), computed without cancellation.
        const double complement = half * 2.0 / (std::exp(2.0 * au) + 1.0);
        const double x = u >= 0.0 ? b - complement : a + complement;
        const double cu = std::cosh(u);
        const double w = half * kHalfPi * std::cosh(t) / (cu * cu);
        const bool valid = complement > 0.0 && x > a && x < b && std::isfinite(w);
        return Node{x, w, valid};
    };
    return de_integrate(f, map, tol, max_evaluations, "integrate_interval");
}

QuadResult integrate_pieces(const RealFunction& f, std::span<const double> breakpoints, double tol,
                            std::size_t max_evaluations) {
    if (breakpoints.size() < 2) {
        throw DomainError("integrate_pieces: need at least two breakpoints");
    }
    const double piece_tol = tol / static_cast<double>(breakpoints.size() - 1);
    QuadResult total;
    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
        const QuadResult r =
            integrate_interval(f, breakpoints[i], breakpoints[i + 1], piece_tol, max_evaluations);
        total.value += r.value;
        total.error += r.error;
        total.evaluations += r.evaluations;
    }
    return total;
}

double decay_extent(const ComplexFunction& psi, double relative_threshold, double x_cap) {
    constexpr double kStep = 0.5;
    double peak = std::abs(psi(0.0));
    double extent = 0.0;
    for (double sign : {1.0, -1.0}) {
        int quiet = 0;
        double x = 0.0;
        while (quiet < 4) {
            x += kStep;
            if (x > x_cap) {
                throw ConvergenceError("decay_extent: function does not decay within |x| <= " +
                                           format_g(x_cap),
                                       x, std::numeric_limits<double>::infinity());
            }
            const double v = std::abs(psi(sign * x));
            peak = std::max(peak, v);
            quiet = v <= relative_threshold * peak ? quiet + 1 : 0;
        }
        extent = std::max(extent, x - 3.0 * kStep);
    }
    if (peak == 0.0) {
        throw DomainError("decay_extent: function vanishes identically on the probe grid");
    }
    return extent;
}

const GaussLegendre& gauss_legendre_16() {
    static const GaussLegendre rule = [] {
        constexpr int m = 16;
        GaussLegendre gl;
        gl.nodes.resize(m);
        gl.weights.resize(m);
        for (int i = 0; i < (m + 1) / 2; ++i) {
            double x = std::cos(std::numbers::pi * (i + 0.75) / (m + 0.5));
            double dp = 0.0;
            for (int iter = 0; iter < 100; ++iter) {
                double p0 = 1.0;
                double p1 = x;
                for (int k = 2; k <= m; ++k) {
                    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = m * (x * p1 - p0) / (x * x - 1.0);
                const double dx = p1 / dp;
                x -= dx;
                if (std::fabs(dx) < 1e-16) break;
            }
            const double w = 2.0 / ((1.0 - x * x) * dp * dp);
            gl.nodes[i] = -x;
            gl.nodes[m - 1 - i] = x;
            gl.weights[i] = w;
            gl.weights[m - 1 - i] = w;
        }
        return gl;
    }();
    return rule;
}

FourierTransform::FourierTransform(const ComplexFunction& psi, double p_max, double tol)
    : FourierTransform(psi, p_max, tol, Options{}) {}

FourierTransform::FourierTransform(const ComplexFunction& psi, double p_max, double tol,
                                   Options options)
    : psi_(psi),
      p_max_(std::fabs(p_max)),
      extent_(options.x_extent > 0.0 ? options.x_extent : decay_extent(psi)),
      sign_(options.sign == KernelSign::Negative ? -1.0 : 1.0) {
    if (!(tol > 0.0)) throw DomainError("FourierTransform: tolerance must be positive");
    if (extent_ == 0.0) extent_ = 1.0;

    // A 16-point panel resolves e^{ipx} to round-off while p·width <= 8.
    double width = std::min(0.5, p_max_ > 0.0 ? 4.0 / p_max_ : 0.5);
    constexpr int kMaxHalvings = 6;
    for (int attempt = 0;; ++attempt) {
        build(width);
        double worst = 0.0;
        for (double p : {0.0, 0.5 * p_max_, p_max_}) worst = std::max(worst, evaluate(p).error);
        if (worst <= tol) break;
        if (attempt == kMaxHalvings) {
            throw ConvergenceError("FourierTransform: probe error " + format_g(worst) +
                                       " above tolerance " + format_g(tol),
                                   0.0, worst);
        }
        width *= 0.5;
    }
}

void FourierTransform::build(double panel_width) {
    const auto& gl = gauss_legendre_16();
    const auto coarse_panels =
        static_cast<std::size_t>(std::max(1.0, std::ceil(extent_ / panel_width)));
    const double inv_sqrt_2pi = 1.0 / std::sqrt(2.0 * std::numbers::pi);

    auto fill = [&](Rule& rule, std::size_t panels) {
        rule.nodes.clear();
        rule.weighted.clear();
        const double width = 2.0 * extent_ / static_cast<double>(panels);
        for (std::size_t k = 0; k < panels; ++k) {
            const double mid = -extent_ + (static_cast<double>(k) + 0.5) * width;
            for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
                const double x = mid + 0.5 * width * gl.nodes[i];
                rule.nodes.push_back(x);
                rule.weighted.push_back(0.5 * width * gl.weights[i] * inv_sqrt_2pi * psi_(x));
            }
        }
    };
    // coarse_panels spans [-X, X] with width 2X/coarse_panels ~ 2·panel_width.
    fill(coarse_, coarse_panels);
    fill(fine_, 2 * coarse_panels);
    panel_width_ = extent_ / static_cast<double>(coarse_panels);
}

Complex FourierTransform::apply(const Rule& rule, double p) const {
    Complex acc{0.0, 0.0};
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double phase = sign_ * p * rule.nodes[i];
        acc += rule.weighted[i] * Complex(std::cos(phase), std::sin(phase));
    }
    return acc;
}

FourierTransform::Value FourierTransform::evaluate(double p) const {
    const Complex fine = apply(fine_, p);
    const Complex coarse = apply(coarse_, p);
    double magnitude = 0.0;
    for (const Complex& w : fine_.weighted) magnitude += std::abs(w);
    const double error = std::max(std::abs(fine - coarse), 4.0 * kEps * magnitude);
    return {fine, error};
}

ComplexField fourier_to_momentum(const ComplexFunction& psi, const Grid1D& p_grid, double tol,
                                 KernelSign sign) {
    const double p_max = std::max(std::fabs(p_grid.lo()), std::fabs(p_grid.hi()));
    const FourierTransform transform(psi, p_max, tol, {.x_extent = 0.0, .sign = sign});
    ComplexField field{p_grid, {}, {}};
    field.values.reserve(p_grid.size());
    field.errors.reserve(p_grid.size());
    for (double p : p_grid.points()) {
        const auto v = transform.evaluate(p);
        field.values.push_back(v.value);
        field.errors.push_back(v.error);
    }
    return field;
}

}  // namespace pt::numerics
