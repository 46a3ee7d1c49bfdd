#pragma once

// Position/momentum entropies of hyperbolic Pöschl-Teller bound states.

#include <functional>
#include <memory>

#include "ptentropy/eigenstates.hpp"
#include "ptentropy/entropy.hpp"
#include "ptentropy/numerics.hpp"

namespace pt::entropy {

enum class HptState { Ground, Excited };

const char* to_string(HptState state);

/// Position wavefunction of the requested state.
std::function<double(double)> hpt_position_wavefunction(const eigenstates::HyperbolicPTSpec& spec,
                                                        HptState state);

/// Momentum density |ψ̃(p)|² on a finite range [-p_range, p_range] obtained by
/// numerically transforming the position wavefunction. The range grows in
/// steps of 2 until the density at its edge is below 1e-16 of the peak.
class NumericalMomentumDensity {
public:
    NumericalMomentumDensity(const eigenstates::HyperbolicPTSpec& spec, HptState state,
                             double transform_tol = 1e-12,
                             numerics::KernelSign sign = numerics::KernelSign::Negative);

    double operator()(double p) const;
    numerics::Complex amplitude(double p) const { return (*transform_)(p); }
    double p_range() const noexcept { return p_range_; }
    /// Breakpoints {-P, 0, P}; the excited-state density has a node at p = 0.
    DensityFunction density() const;

private:
    std::shared_ptr<const numerics::FourierTransform> transform_;
    double p_range_ = 0.0;
};

struct StateEntropies {
    int n = 0;
    HptState state = HptState::Ground;
    EntropyValue s_pos;
    EntropyValue s_mom;
    double s_pos_analytic = 0.0;  ///< closed form; NaN for the excited state
    double position_norm = 0.0;
    double momentum_norm = 0.0;
    double p_range = 0.0;  ///< momentum range used; infinity for the analytic ground state
    EntropyReport report;
};

enum class MomentumSource {
    Analytic,   ///< ground state only: closed-form ψ̃ with normalization constant
    Numerical,  ///< Fourier transform of the position wavefunction
};

/// Entropies of one state. The ground state defaults to the analytic momentum
/// wavefunction; the excited state always uses the numerical transform.
StateEntropies hpt_state_entropies(const eigenstates::HyperbolicPTSpec& spec, HptState state,
                                   const Tolerances& tol = {},
                                   MomentumSource ground_source = MomentumSource::Analytic,
                                   numerics::KernelSign sign = numerics::KernelSign::Negative);

/// Position or momentum density of a state as a DensityFunction.
DensityFunction hpt_position_density(const eigenstates::HyperbolicPTSpec& spec, HptState state);
DensityFunction hpt_momentum_density(const eigenstates::HyperbolicPTSpec& spec, HptState state,
                                     MomentumSource ground_source = MomentumSource::Analytic,
                                     numerics::KernelSign sign = numerics::KernelSign::Negative);

}  // namespace pt::entropy
