#include "ptentropy/eigenstates.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>

#include "ptentropy/errors.hpp"
#include "ptentropy/numerics.hpp"
#include "ptentropy/specfun.hpp"

namespace pt::eigenstates {

namespace {

constexpr double kLn2 = std::numbers::ln2;
constexpr double kLnPi = 1.14472988584940017414;

double ln_sech(double u) {
    const double a = std::fabs(u);
    return kLn2 - a - std::log1p(std::exp(-2.0 * a));
}

// ln of 1/(2 B(1/2, n)), the squared ground-state prefactor.
double ground_ln_norm2(int n) { return -std::log(2.0) - specfun::ln_beta_real(0.5, n); }

// ln of 1/(2 [B(1/2, n-1) - B(1/2, n)]). The bracket equals
// B(1/2, n-1) / (2n - 1), which avoids the subtraction.
double excited_ln_norm2(int n) {
    return -std::log(2.0) - specfun::ln_beta_real(0.5, n - 1.0) + std::log(2.0 * n - 1.0);
}

// ln of the squared normalization of the trigonometric eigenfunction.
double spt_ln_norm2(const TrigPTSpec& spec, int n) {
    const double rho = spec.rho();
    using specfun::ln_gamma_real;
    return std::log(spec.alpha()) + ln_gamma_real(n + 1.0) + std::log(n + rho) +
           ln_gamma_real(rho) + ln_gamma_real(2.0 * rho) - 0.5 * kLnPi -
           ln_gamma_real(rho + 0.5) - ln_gamma_real(n + 2.0 * rho);
}

double compute_ln_momentum_constant(int n) {
    // Normalize the peak to one before integrating; the integrand is even.
    const double ln_peak = specfun::ln_beta_complex_symmetric(n, 0.0);
    const auto shape = [n, ln_peak](double p) {
        return std::exp(2.0 * (specfun::ln_beta_complex_symmetric(n, p) - ln_peak));
    };
    const double integral = 2.0 * numerics::integrate_half_line(shape, 0.0, 1e-14).value;
    return -n * kLn2 - ln_peak - 0.5 * std::log(integral);
}

struct CachedConstant {
    std::once_flag once;
    double ln_value = 0.0;
};

double cached_ln_momentum_constant(int n) {
    static std::mutex mutex;
    static std::map<int, std::unique_ptr<CachedConstant>> cache;
    CachedConstant* entry = nullptr;
    {
        std::lock_guard lock(mutex);
        auto& slot = cache[n];
        if (!slot) slot = std::make_unique<CachedConstant>();
        entry = slot.get();
    }
    std::call_once(entry->once, [entry, n] { entry->ln_value = compute_ln_momentum_constant(n); });
    return entry->ln_value;
}

}  // namespace

HyperbolicPTSpec::HyperbolicPTSpec(int n) : n_(n) {
    if (n < 1) {
        throw DomainError("HyperbolicPTSpec: n must be >= 1, got " + std::to_string(n));
    }
}

TrigPTSpec::TrigPTSpec(double rho, double alpha) : rho_(rho), alpha_(alpha) {
    if (!std::isfinite(rho) || !(rho > 1.0)) {
        throw DomainError("TrigPTSpec: rho must be > 1, got " + std::to_string(rho));
    }
    if (!std::isfinite(alpha) || !(alpha > 0.0)) {
        throw DomainError("TrigPTSpec: alpha must be > 0, got " + std::to_string(alpha));
    }
}

double TrigPTSpec::half_width() const noexcept { return 0.5 * std::numbers::pi / alpha_; }

double hpt_energy(const HyperbolicPTSpec& spec, int level) {
    if (level < 0 || level > 1) {
        throw DomainError("hpt_energy: only levels 0 and 1 are supported");
    }
    if (level == 1 && !spec.has_excited_state()) {
        throw DomainError("first excited state requires n >= 2");
    }
    const double k = spec.n() - level;
    return -0.25 * k * k;
}

double hpt_ground_position(const HyperbolicPTSpec& spec, double x) {
    const int n = spec.n();
    return std::exp(n * ln_sech(0.5 * x) + 0.5 * ground_ln_norm2(n));
}

double hpt_excited_position(const HyperbolicPTSpec& spec, double x) {
    if (!spec.has_excited_state()) {
        throw DomainError("first excited state requires n >= 2");
    }
    const int n = spec.n();
    return std::exp((n - 1) * ln_sech(0.5 * x) + 0.5 * excited_ln_norm2(n)) * std::tanh(0.5 * x);
}

double hpt_ground_momentum_constant(const HyperbolicPTSpec& spec) {
    return std::exp(cached_ln_momentum_constant(spec.n()));
}

double hpt_ground_momentum(const HyperbolicPTSpec& spec, double p) {
    const int n = spec.n();
    return std::exp(cached_ln_momentum_constant(n) + n * kLn2 +
                    specfun::ln_beta_complex_symmetric(n, p));
}

double hpt_analytic_ground_entropy(const HyperbolicPTSpec& spec) {
    const double n = spec.n();
    return -(2.0 * n - 1.0) * kLn2 + specfun::ln_beta_real(0.5, n) +
           2.0 * n * (specfun::digamma(2.0 * n) - specfun::digamma(n));
}

double spt_energy(const TrigPTSpec& spec, int n) {
    if (n < 0) throw DomainError("spt_energy: negative quantum number");
    const double k = n + spec.rho();
    return spec.alpha() * spec.alpha() * k * k;
}

std::vector<double> spt_eigenfunctions(const TrigPTSpec& spec, int count, double y) {
    if (count < 0) throw DomainError("spt_eigenfunctions: negative count");
    if (!(std::fabs(y) < spec.half_width())) {
        throw DomainError("spt_eigenfunction: y = " + std::to_string(y) + " is outside the well");
    }
    const double arg = spec.alpha() * y;
    const double x = std::sin(arg);
    // (1 - x²)^{ρ/2} = cos(αy)^ρ, with cos(αy) > 0 inside the well.
    const double ln_envelope = spec.rho() * std::log(std::cos(arg));
    std::vector<double> values = specfun::gegenbauer_sequence(count, spec.rho(), x);
    for (int n = 0; n < count; ++n) {
        values[n] *= std::exp(0.5 * spt_ln_norm2(spec, n) + ln_envelope);
    }
    return values;
}

double spt_eigenfunction(const TrigPTSpec& spec, int n, double y) {
    if (n < 0) throw DomainError("spt_eigenfunction: negative quantum number");
    return spt_eigenfunctions(spec, n + 1, y).back();
}

}  // namespace pt::eigenstates
