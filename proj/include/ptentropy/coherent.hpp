#pragma once

// Annihilation-operator coherent state of the trigonometric Pöschl-Teller
// well, its time evolution by exact eigenphases, and entropy-density carpets.

#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

#include "ptentropy/eigenstates.hpp"
#include "ptentropy/numerics.hpp"

namespace pt::coherent {

using Complex = std::complex<double>;

struct CoherentStateSpec {
    CoherentStateSpec(eigenstates::TrigPTSpec well, Complex gamma, int n_states);

    eigenstates::TrigPTSpec well;
    Complex gamma;
    int n_states;  ///< number of eigenstates kept in the superposition
};

/// Truncation probability above which coefficients carry a warning.
inline constexpr double kTailWarning = 1e-8;

struct CoefficientVector {
    std::vector<Complex> coeffs;  ///< c_0 .. c_{n_states-1}, Σ|c_n|² = 1
    double tail_mass = 0.0;       ///< probability the truncation discards
    bool truncation_warning = false;
};

/// c_n ∝ γⁿ [Γ(ρ+1/2) √π / (α n! (n+ρ) Γ(2ρ+n))]^{1/2}, renormalized over the
/// kept states. Built in log space.
CoefficientVector coherent_coefficients(const CoherentStateSpec& spec);

/// χ(y, t) = Σ c_n e^{-i E_n t} ψ_n(y).
Complex coherent_amplitude(const CoherentStateSpec& spec, const CoefficientVector& coeffs, double y,
                           double t);

/// |χ(y, t)|².
double coherent_density(const CoherentStateSpec& spec, const CoefficientVector& coeffs, double y,
                        double t);

struct CarpetField {
    numerics::Grid1D x_grid;
    numerics::Grid1D t_grid;
    std::vector<double> values;  ///< row-major, one row per time
    Complex gamma;
    int n_states = 0;

    std::size_t rows() const noexcept { return t_grid.size(); }
    std::size_t cols() const noexcept { return x_grid.size(); }
    double at(std::size_t row, std::size_t col) const { return values[row * cols() + col]; }
};

/// values(i, j) = -ρ ln ρ with ρ = |χ(x_j, t_i)|². Rows are filled in
/// parallel; the result does not depend on the thread count.
CarpetField entropy_carpet(const CoherentStateSpec& spec, const numerics::Grid1D& x_grid,
                           const numerics::Grid1D& t_grid, unsigned threads = 0);

/// `count` points on (-π/(2α) + ε, π/(2α) - ε), ε = 1e-3/α.
numerics::Grid1D default_x_grid(const eigenstates::TrigPTSpec& well, std::size_t count = 400);

/// `count` points on [0, t_max]; t_max defaults to 2π/α².
numerics::Grid1D default_t_grid(const eigenstates::TrigPTSpec& well, std::size_t count = 400,
                                std::optional<double> t_max = std::nullopt);

struct RevivalReport {
    std::optional<double> period;
    double max_density_deviation = 0.0;  ///< at the period, or at 2π/α² when none
};

/// For integer 2ρ, the first multiple kπ/α² (k = 1..4) at which the density
/// returns to its t = 0 profile within 1e-8; none otherwise.
RevivalReport revival_report(const CoherentStateSpec& spec);

}  // namespace pt::coherent
