#include "ptentropy/state_entropy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ptentropy/errors.hpp"

namespace pt::entropy {

using eigenstates::HyperbolicPTSpec;

namespace {

constexpr double kEdgeRatio = 1e-16;
constexpr double kMaxMomentumRange = 200.0;

}  // namespace

const char* to_string(HptState state) {
    return state == HptState::Ground ? "ground" : "excited";
}

std::function<double(double)> hpt_position_wavefunction(const HyperbolicPTSpec& spec,
                                                        HptState state) {
    if (state == HptState::Ground) {
        return [spec](double x) { return eigenstates::hpt_ground_position(spec, x); };
    }
    if (!spec.has_excited_state()) {
        throw DomainError("first excited state requires n >= 2");
    }
    return [spec](double x) { return eigenstates::hpt_excited_position(spec, x); };
}

NumericalMomentumDensity::NumericalMomentumDensity(const HyperbolicPTSpec& spec, HptState state,
                                                   double transform_tol, numerics::KernelSign sign) {
    const auto psi_real = hpt_position_wavefunction(spec, state);
    const numerics::ComplexFunction psi = [psi_real](double x) {
        return numerics::Complex(psi_real(x), 0.0);
    };
    const double extent = numerics::decay_extent(psi);
    for (double range = 4.0;; range += 2.0) {
        if (range > kMaxMomentumRange) {
            throw ConvergenceError("NumericalMomentumDensity: momentum density does not decay",
                                   range, std::numeric_limits<double>::infinity());
        }
        auto transform = std::make_shared<const numerics::FourierTransform>(
            psi, range, transform_tol,
            numerics::FourierTransform::Options{.x_extent = extent, .sign = sign});
        double peak = 0.0;
        for (double p = 0.0; p <= range; p += 0.25) peak = std::max(peak, std::norm((*transform)(p)));
        const double edge =
            std::max(std::norm((*transform)(range)), std::norm((*transform)(range - 0.5)));
        if (edge <= kEdgeRatio * peak) {
            transform_ = std::move(transform);
            p_range_ = range;
            return;
        }
    }
}

double NumericalMomentumDensity::operator()(double p) const { return std::norm((*transform_)(p)); }

DensityFunction NumericalMomentumDensity::density() const {
    auto self = *this;
    return {[self](double p) { return self(p); }, {-p_range_, 0.0, p_range_}};
}

DensityFunction hpt_position_density(const HyperbolicPTSpec& spec, HptState state) {
    auto psi = hpt_position_wavefunction(spec, state);
    return DensityFunction::real_line([psi](double x) {
        const double v = psi(x);
        return v * v;
    });
}

DensityFunction hpt_momentum_density(const HyperbolicPTSpec& spec, HptState state,
                                     MomentumSource ground_source, numerics::KernelSign sign) {
    if (state == HptState::Ground && ground_source == MomentumSource::Analytic) {
        return DensityFunction::real_line([spec](double p) {
            const double v = eigenstates::hpt_ground_momentum(spec, p);
            return v * v;
        });
    }
    return NumericalMomentumDensity(spec, state, 1e-12, sign).density();
}

StateEntropies hpt_state_entropies(const HyperbolicPTSpec& spec, HptState state,
                                   const Tolerances& tol, MomentumSource ground_source,
                                   numerics::KernelSign sign) {
    StateEntropies out;
    out.n = spec.n();
    out.state = state;

    const DensityFunction position = hpt_position_density(spec, state);
    out.position_norm = integrate_over(position, position.rho, tol.norm).value;
    out.s_pos = shannon_entropy(position, tol.entropy);
    out.s_pos_analytic = state == HptState::Ground ? eigenstates::hpt_analytic_ground_entropy(spec)
                                                   : std::numeric_limits<double>::quiet_NaN();

    const DensityFunction momentum = hpt_momentum_density(spec, state, ground_source, sign);
    out.p_range = momentum.breakpoints.back();
    out.momentum_norm = integrate_over(momentum, momentum.rho, tol.norm).value;
    out.s_mom = shannon_entropy(momentum, tol.entropy);

    out.report = bbm_check(out.s_pos.value, out.s_mom.value, out.s_pos.error + out.s_mom.error);
    return out;
}

}  // namespace pt::entropy
