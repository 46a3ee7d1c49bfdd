#pragma once

// Bound states of the hyperbolic Pöschl-Teller well
//   V(x) = -n(n+1)/4 · sech²(x/2)
// and the symmetric trigonometric well
//   V(y) = α² ρ(ρ-1) / cos²(αy),  |y| < π/(2α),
// in units ħ = 2m = 1.

#include <vector>

namespace pt::eigenstates {

/// Well strength n of the hyperbolic potential; n >= 1.
class HyperbolicPTSpec {
public:
    explicit HyperbolicPTSpec(int n);
    int n() const noexcept { return n_; }
    bool has_excited_state() const noexcept { return n_ >= 2; }

private:
    int n_;
};

/// Barrier strength ρ > 1 and inverse length α > 0 of the trigonometric well.
class TrigPTSpec {
public:
    TrigPTSpec(double rho, double alpha);
    double rho() const noexcept { return rho_; }
    double alpha() const noexcept { return alpha_; }
    /// π/(2α); the well is the open interval (-half_width, half_width).
    double half_width() const noexcept;

private:
    double rho_;
    double alpha_;
};

// ---- hyperbolic well ----

/// Bound-state energy -(n - level)²/4 for level = 0 (ground) or 1 (first excited).
double hpt_energy(const HyperbolicPTSpec& spec, int level);

double hpt_ground_position(const HyperbolicPTSpec& spec, double x);

/// Requires n >= 2.
double hpt_excited_position(const HyperbolicPTSpec& spec, double x);

/// A·2ⁿ·B(n/2 + ip, n/2 - ip); the constant A comes from momentum_constant().
double hpt_ground_momentum(const HyperbolicPTSpec& spec, double p);

/// The constant A fixed by unit momentum-space norm. Computed by quadrature
/// on first use for each n and cached; concurrent first callers block until
/// the single computation finishes.
double hpt_ground_momentum_constant(const HyperbolicPTSpec& spec);

/// Closed-form position entropy of the ground state (nats):
///   -(2n-1) ln 2 + ln B(1/2, n) + 2n [Ψ(2n) - Ψ(n)]
double hpt_analytic_ground_entropy(const HyperbolicPTSpec& spec);

// ---- trigonometric well ----

/// α²(n + ρ)².
double spt_energy(const TrigPTSpec& spec, int n);

/// Normalized eigenfunction ψ_n(y), evaluated through x = sin(αy).
double spt_eigenfunction(const TrigPTSpec& spec, int n, double y);

/// ψ_0(y) .. ψ_{count-1}(y) from a single Gegenbauer sweep.
std::vector<double> spt_eigenfunctions(const TrigPTSpec& spec, int count, double y);

}  // namespace pt::eigenstates
