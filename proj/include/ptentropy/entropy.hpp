#pragma once

#include <functional>
#include <numbers>
#include <vector>

#include "ptentropy/numerics.hpp"

namespace pt::entropy {

/// Lower bound 1 + ln π on S_pos + S_mom in one dimension (nats).
inline constexpr double kBbmBound = 1.0 + 1.14472988584940017414;

/// Densities below this contribute exactly zero to entropy integrals.
inline constexpr double kDensityFloor = 1e-300;

/// Largest tolerated |∫ρ - 1| for inputs to the entropy functionals.
inline constexpr double kMaxNormDefect = 1e-6;

struct Tolerances {
    double norm = numerics::kDefaultNormTol;
    double entropy = numerics::kDefaultEntropyTol;

    /// Defaults, or both fields set from PTENTROPY_TOL when that is a positive number.
    static Tolerances from_environment();
};

/// -ρ ln ρ, with 0 ln 0 = 0.
double entropy_density(double rho);

/// A probability density given as a callable on a union of consecutive
/// pieces. `breakpoints` is increasing; the first and last entries may be
/// ±infinity. Interior breakpoints mark points where the density is not
/// analytic (nodes), which the quadrature then treats as endpoints.
struct DensityFunction {
    std::function<double(double)> rho;
    std::vector<double> breakpoints;

    static DensityFunction real_line(std::function<double(double)> rho);
    static DensityFunction interval(std::function<double(double)> rho, double lo, double hi);
};

/// ∫ g over the support of `density`.
numerics::QuadResult integrate_over(const DensityFunction& density,
                                    const std::function<double(double)>& g, double tol);

/// A density sampled on a grid. Integrals use the composite trapezoid rule.
class DensityProfile {
public:
    DensityProfile(numerics::Grid1D grid, std::vector<double> values);

    static DensityProfile sample(const std::function<double(double)>& rho, numerics::Grid1D grid);

    const numerics::Grid1D& grid() const noexcept { return grid_; }
    const std::vector<double>& values() const noexcept { return values_; }
    double norm_defect() const noexcept { return norm_defect_; }
    bool normalized() const noexcept { return norm_defect_ <= kMaxNormDefect; }

    /// Trapezoid integral of samples g_i on this grid, with a Richardson
    /// error estimate from the every-other-point rule.
    numerics::QuadResult integrate(const std::vector<double>& samples) const;

private:
    numerics::Grid1D grid_;
    std::vector<double> values_;
    double norm_defect_;
};

struct EntropyValue {
    double value = 0.0;
    double error = 0.0;
    double norm_defect = 0.0;
};

/// -∫ρ ln ρ. Error = quadrature estimate + norm_defect · max|ln ρ| over the
/// evaluated support. Throws DomainError when norm_defect > kMaxNormDefect.
EntropyValue shannon_entropy(const DensityFunction& density, double tol = numerics::kDefaultEntropyTol);
EntropyValue shannon_entropy(const DensityProfile& profile);

enum class BbmStatus { Satisfied, Violated, Indeterminate };

struct EntropyReport {
    double s_pos = 0.0;
    double s_mom = 0.0;
    double sum = 0.0;
    double bbm_bound = kBbmBound;
    double margin = 0.0;
    double err_estimate = 0.0;
    BbmStatus status = BbmStatus::Indeterminate;

    bool satisfied() const noexcept { return status == BbmStatus::Satisfied; }
};

/// Indeterminate when |margin| <= err_estimate.
EntropyReport bbm_check(double s_pos, double s_mom, double err_estimate = 0.0);

const char* to_string(BbmStatus status);

struct VarianceBound {
    double entropy = 0.0;
    double sigma = 0.0;
    double bound = 0.0;  ///< 1/2 + ln(√(2π) σ)
    double error = 0.0;
    bool satisfied = false;  ///< entropy <= bound + error
};

VarianceBound variance_entropy_bound(const DensityFunction& density,
                                     double tol = numerics::kDefaultEntropyTol);
VarianceBound variance_entropy_bound(const DensityProfile& profile);

/// True iff the entropy density -ρ ln ρ has a local minimum at the density's
/// interior maximum, i.e. iff ρ(x*) > 1/e. A tie at exactly 1/e is "no dip".
bool dip_criterion(const DensityProfile& profile);

}  // namespace pt::entropy
