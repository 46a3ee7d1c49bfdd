#include "ptentropy/specfun.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "ptentropy/errors.hpp"

namespace pt::specfun {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kLnSqrt2Pi = 0.91893853320467274178;  // ln √(2π)
constexpr double kLnPi = 1.14472988584940017414;

// Lanczos approximation, g = 7, nine coefficients.
constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7,
};

// ln Γ(z) for Re z >= 1/2. Shared between the real and complex entry points.
template <typename T>
T lanczos_ln_gamma(T z) {
    z -= 1.0;
    T series = kLanczos[0];
    for (std::size_t i = 1; i < kLanczos.size(); ++i) {
        series += kLanczos[i] / (z + static_cast<double>(i));
    }
    const T t = z + kLanczosG + 0.5;
    using std::log;
    return kLnSqrt2Pi + (z + 0.5) * log(t) - t + log(series);
}

bool is_nonpositive_integer(double x) { return x <= 0.0 && x == std::floor(x); }

}  // namespace

double ln_gamma_real(double x) {
    if (!std::isfinite(x) || x <= 0.0) {
        throw DomainError("ln_gamma_real: argument must be positive and finite, got " +
                          std::to_string(x));
    }
    if (x < 0.5) {
        // Γ(x)Γ(1-x) = π / sin(πx); sin(πx) > 0 on (0, 1/2).
        return kLnPi - std::log(std::sin(kPi * x)) - lanczos_ln_gamma(1.0 - x);
    }
    return lanczos_ln_gamma(x);
}

Complex ln_gamma_complex(Complex z) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw DomainError("ln_gamma_complex: non-finite argument");
    }
    if (z.imag() == 0.0 && is_nonpositive_integer(z.real())) {
        throw DomainError("ln_gamma_complex: pole at non-positive integer");
    }
    if (z.real() >= 0.5) {
        return lanczos_ln_gamma(z);
    }

    // Reflection: ln Γ(z) = ln π - ln sin(πz) - ln Γ(1 - z). The logarithm of
    // sin(πz) must be the branch continuous in each half plane; its imaginary
    // part stays within π/2 of sign(Im z)·(π/2 - π Re z).
    const Complex sin_pz = std::sin(kPi * z);
    Complex log_sin = std::log(sin_pz);
    if (z.imag() != 0.0) {
        const double sign = z.imag() > 0.0 ? 1.0 : -1.0;
        const double target = sign * (0.5 * kPi - kPi * z.real());
        const double k = std::round((target - log_sin.imag()) / (2.0 * kPi));
        log_sin += Complex(0.0, 2.0 * kPi * k);
    }
    return kLnPi - log_sin - lanczos_ln_gamma(1.0 - z);
}

double digamma(double x) {
    if (!std::isfinite(x) || x <= 0.0) {
        throw DomainError("digamma: argument must be positive and finite, got " +
                          std::to_string(x));
    }
    double shift = 0.0;
    while (x < 8.0) {
        shift += 1.0 / x;
        x += 1.0;
    }
    const double inv2 = 1.0 / (x * x);
    // Bernoulli terms B_2k / (2k x^2k), k = 1..7.
    const double tail =
        inv2 * (1.0 / 12.0 -
                inv2 * (1.0 / 120.0 -
                        inv2 * (1.0 / 252.0 -
                                inv2 * (1.0 / 240.0 -
                                        inv2 * (1.0 / 132.0 -
                                                inv2 * (691.0 / 32760.0 - inv2 / 12.0))))));
    return std::log(x) - 0.5 / x - tail - shift;
}

double ln_beta_real(double a, double b) {
    return ln_gamma_real(a) + ln_gamma_real(b) - ln_gamma_real(a + b);
}

double beta_real(double a, double b) { return std::exp(ln_beta_real(a, b)); }

double ln_beta_complex_symmetric(double n, double p) {
    if (!std::isfinite(n) || n <= 0.0) {
        throw DomainError("beta_complex_symmetric: n must be positive, got " + std::to_string(n));
    }
    if (!std::isfinite(p)) {
        throw DomainError("beta_complex_symmetric: p must be finite");
    }
    // |p| makes the result exactly even in p.
    const Complex lg = ln_gamma_complex(Complex(0.5 * n, std::fabs(p)));
    return 2.0 * lg.real() - ln_gamma_real(n);
}

double beta_complex_symmetric(double n, double p) {
    return std::exp(ln_beta_complex_symmetric(n, p));
}

std::vector<double> gegenbauer_sequence(int count, double rho, double x) {
    if (count < 0) {
        throw DomainError("gegenbauer: negative degree");
    }
    if (!(std::fabs(x) <= 1.0)) {
        throw DomainError("gegenbauer: |x| must not exceed 1");
    }
    std::vector<double> c(static_cast<std::size_t>(count));
    if (count > 0) c[0] = 1.0;
    if (count > 1) c[1] = 2.0 * rho * x;
    for (int k = 1; k + 1 < count; ++k) {
        c[k + 1] = (2.0 * x * (k + rho) * c[k] - (k + 2.0 * rho - 1.0) * c[k - 1]) / (k + 1.0);
    }
    return c;
}

double gegenbauer(int n, double rho, double x) {
    if (n < 0) {
        throw DomainError("gegenbauer: negative degree " + std::to_string(n));
    }
    return gegenbauer_sequence(n + 1, rho, x).back();
}

}  // namespace pt::specfun
