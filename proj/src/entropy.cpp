#include "ptentropy/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <string>

#include "ptentropy/errors.hpp"

namespace pt::entropy {

inline std::string format_g(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}


namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kEps = std::numeric_limits<double>::epsilon();

void check_defect(double defect, const char* who) {
    if (!(defect <= kMaxNormDefect)) {
        throw DomainError(std::string(who) + ": density is not normalized (|norm - 1| = " +
                          format_g(defect) + ")");
    }
}

struct Moments {
    double norm;
    double mean;
    double sigma;
    double sigma_error;
};

Moments moments_from(double norm, double first, double first_err, double second,
                     double second_err) {
    const double mean = first / norm;
    const double variance = second / norm - mean * mean;
    if (!std::isfinite(variance) || !(variance > 0.0)) {
        throw DomainError("variance_entropy_bound: second moment is not finite and positive");
    }
    const double sigma = std::sqrt(variance);
    const double variance_err = second_err + 2.0 * std::fabs(mean) * first_err;
    return {norm, mean, sigma, variance_err / (2.0 * sigma)};
}

VarianceBound finish_bound(double entropy, double entropy_err, const Moments& m) {
    VarianceBound out;
    out.entropy = entropy;
    out.sigma = m.sigma;
    out.bound = 0.5 + std::log(std::sqrt(2.0 * std::numbers::pi) * m.sigma);
    out.error = entropy_err + m.sigma_error / m.sigma +
                4.0 * kEps * (std::fabs(entropy) + std::fabs(out.bound));
    out.satisfied = out.entropy <= out.bound + out.error;
    return out;
}

}  // namespace

Tolerances Tolerances::from_environment() {
    Tolerances tol;
    if (const char* env = std::getenv("PTENTROPY_TOL")) {
        char* end = nullptr;
        const double v = std::strtod(env, &end);
        if (end != env && *end == '\0' && v > 0.0 && std::isfinite(v)) {
            tol.norm = v;
            tol.entropy = v;
        }
    }
    return tol;
}

double entropy_density(double rho) {
    if (!(rho >= 0.0)) {
        throw DomainError("entropy_density: density must be non-negative, got " + format_g(rho));
    }
    if (rho < kDensityFloor) return 0.0;
    return -rho * std::log(rho);
}

DensityFunction DensityFunction::real_line(std::function<double(double)> rho) {
    return {std::move(rho), {-kInf, kInf}};
}

DensityFunction DensityFunction::interval(std::function<double(double)> rho, double lo, double hi) {
    if (!(hi > lo)) throw DomainError("DensityFunction::interval: need lo < hi");
    return {std::move(rho), {lo, hi}};
}

numerics::QuadResult integrate_over(const DensityFunction& density,
                                    const std::function<double(double)>& g, double tol) {
    const auto& bp = density.breakpoints;
    if (bp.size() < 2 || !std::is_sorted(bp.begin(), bp.end())) {
        throw DomainError("DensityFunction: need at least two increasing breakpoints");
    }
    const double piece_tol = tol / static_cast<double>(bp.size() - 1);
    numerics::QuadResult total;
    for (std::size_t i = 0; i + 1 < bp.size(); ++i) {
        const double a = bp[i];
        const double b = bp[i + 1];
        numerics::QuadResult r;
        if (std::isinf(a) && std::isinf(b)) {
            r = numerics::integrate_real_line(g, piece_tol);
        } else if (std::isinf(a)) {
            r = numerics::integrate_half_line([&g](double u) { return g(-u); }, -b, piece_tol);
        } else if (std::isinf(b)) {
            r = numerics::integrate_half_line(g, a, piece_tol);
        } else {
            r = numerics::integrate_interval(g, a, b, piece_tol);
        }
        total.value += r.value;
        total.error += r.error;
        total.evaluations += r.evaluations;
    }
    return total;
}

DensityProfile::DensityProfile(numerics::Grid1D grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)), norm_defect_(0.0) {
    if (values_.size() != grid_.size()) {
        throw DomainError("DensityProfile: values and grid differ in length");
    }
    for (double v : values_) {
        if (!std::isfinite(v) || v < 0.0) {
            throw DomainError("DensityProfile: densities must be finite and non-negative");
        }
    }
    norm_defect_ = std::fabs(integrate(values_).value - 1.0);
}

DensityProfile DensityProfile::sample(const std::function<double(double)>& rho, numerics::Grid1D grid) {
    std::vector<double> values;
    values.reserve(grid.size());
    for (double x : grid.points()) values.push_back(rho(x));
    return DensityProfile(std::move(grid), std::move(values));
}

numerics::QuadResult DensityProfile::integrate(const std::vector<double>& samples) const {
    const auto x = grid_.points();
    const std::size_t n = x.size();
    double fine = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        fine += 0.5 * (x[i + 1] - x[i]) * (samples[i] + samples[i + 1]);
    }
    double error = 0.0;
    if (n >= 3) {
        double coarse = 0.0;
        std::size_t i = 0;
        for (; i + 2 < n; i += 2) {
            coarse += 0.5 * (x[i + 2] - x[i]) * (samples[i] + samples[i + 2]);
        }
        if (i + 1 < n) coarse += 0.5 * (x[i + 1] - x[i]) * (samples[i] + samples[i + 1]);
        error = std::fabs(fine - coarse) / 3.0;
    }
    double magnitude = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        magnitude += 0.5 * (x[i + 1] - x[i]) * (std::fabs(samples[i]) + std::fabs(samples[i + 1]));
    }
    error = std::max(error, 4.0 * kEps * magnitude);
    return {fine, error, n};
}

EntropyValue shannon_entropy(const DensityFunction& density, double tol) {
    const auto norm = integrate_over(density, density.rho, std::min(tol, numerics::kDefaultNormTol));
    const double defect = std::fabs(norm.value - 1.0);
    check_defect(defect, "shannon_entropy");

    double max_abs_log = 0.0;
    const auto integrand = [&](double x) {
        const double r = density.rho(x);
        if (r < kDensityFloor) return 0.0;
        const double lr = std::log(r);
        max_abs_log = std::max(max_abs_log, std::fabs(lr));
        return -r * lr;
    };
    const auto s = integrate_over(density, integrand, tol);
    return {s.value, s.error + defect * max_abs_log, defect};
}

EntropyValue shannon_entropy(const DensityProfile& profile) {
    check_defect(profile.norm_defect(), "shannon_entropy");
    std::vector<double> samples;
    samples.reserve(profile.values().size());
    double max_abs_log = 0.0;
    for (double r : profile.values()) {
        samples.push_back(entropy_density(r));
        if (r >= kDensityFloor) max_abs_log = std::max(max_abs_log, std::fabs(std::log(r)));
    }
    const auto s = profile.integrate(samples);
    return {s.value, s.error + profile.norm_defect() * max_abs_log, profile.norm_defect()};
}

EntropyReport bbm_check(double s_pos, double s_mom, double err_estimate) {
    EntropyReport r;
    r.s_pos = s_pos;
    r.s_mom = s_mom;
    r.sum = s_pos + s_mom;
    r.margin = r.sum - r.bbm_bound;
    r.err_estimate = std::fabs(err_estimate);
    if (!std::isfinite(r.sum)) {
        r.status = BbmStatus::Indeterminate;
    } else if (std::fabs(r.margin) <= r.err_estimate) {
        r.status = BbmStatus::Indeterminate;
    } else {
        r.status = r.margin > 0.0 ? BbmStatus::Satisfied : BbmStatus::Violated;
    }
    return r;
}

const char* to_string(BbmStatus status) {
    switch (status) {
        case BbmStatus::Satisfied: return "satisfied";
        case BbmStatus::Violated: return "violated";
        case BbmStatus::Indeterminate: return "indeterminate";
    }
    return "unknown";
}

VarianceBound variance_entropy_bound(const DensityFunction& density, double tol) {
    const EntropyValue s = shannon_entropy(density, tol);
    const auto& rho = density.rho;
    try {
        const auto norm = integrate_over(density, rho, tol);
        const auto first = integrate_over(density, [&](double x) { return x * rho(x); }, tol);
        const auto second = integrate_over(density, [&](double x) { return x * x * rho(x); }, tol);
        const Moments m = moments_from(norm.value, first.value, first.error, second.value, second.error);
        return finish_bound(s.value, s.error, m);
    } catch (const ConvergenceError& e) {
        throw DomainError(std::string("variance_entropy_bound: moments do not converge: ") + e.what());
    }
}

VarianceBound variance_entropy_bound(const DensityProfile& profile) {
    const EntropyValue s = shannon_entropy(profile);
    const auto x = profile.grid().points();
    const auto& rho = profile.values();
    std::vector<double> g1(rho.size());
    std::vector<double> g2(rho.size());
    for (std::size_t i = 0; i < rho.size(); ++i) {
        g1[i] = x[i] * rho[i];
        g2[i] = x[i] * x[i] * rho[i];
    }
    const auto norm = profile.integrate(rho);
    const auto first = profile.integrate(g1);
    const auto second = profile.integrate(g2);
    const Moments m = moments_from(norm.value, first.value, first.error, second.value, second.error);
    return finish_bound(s.value, s.error, m);
}

bool dip_criterion(const DensityProfile& profile) {
    const auto& v = profile.values();
    const auto peak = std::max_element(v.begin(), v.end());
    const auto index = static_cast<std::size_t>(peak - v.begin());
    if (index == 0 || index + 1 == v.size()) {
        throw DomainError("dip_criterion: density maximum is not interior to the grid");
    }
    return *peak > std::exp(-1.0);
}

}  // namespace pt::entropy
