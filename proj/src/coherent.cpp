#include "ptentropy/coherent.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <thread>

#include "ptentropy/entropy.hpp"
#include "ptentropy/errors.hpp"
#include "ptentropy/specfun.hpp"

namespace pt::coherent {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kRevivalTol = 1e-8;
constexpr int kMaxTailTerms = 100000;

// ln |c_n|² up to a common constant, for |γ| > 0.
double ln_weight(const eigenstates::TrigPTSpec& well, double ln_abs_gamma, int n) {
    using specfun::ln_gamma_real;
    const double rho = well.rho();
    return 2.0 * n * ln_abs_gamma + ln_gamma_real(rho + 0.5) + 0.5 * std::log(kPi) -
           std::log(well.alpha()) - ln_gamma_real(n + 1.0) - std::log(n + rho) -
           ln_gamma_real(2.0 * rho + n);
}

double log_sum_exp(const std::vector<double>& terms) {
    if (terms.empty()) return -std::numeric_limits<double>::infinity();
    const double top = *std::max_element(terms.begin(), terms.end());
    double acc = 0.0;
    for (double t : terms) acc += std::exp(t - top);
    return top + std::log(acc);
}

std::vector<Complex> eigenphases(const CoherentStateSpec& spec, const CoefficientVector& coeffs,
                                 double t) {
    std::vector<Complex> out(coeffs.coeffs.size());
    for (std::size_t n = 0; n < out.size(); ++n) {
        const double phase = std::fmod(eigenstates::spt_energy(spec.well, static_cast<int>(n)) * t, kTwoPi);
        out[n] = coeffs.coeffs[n] * Complex(std::cos(phase), -std::sin(phase));
    }
    return out;
}

}  // namespace

CoherentStateSpec::CoherentStateSpec(eigenstates::TrigPTSpec well_, Complex gamma_, int n_states_)
    : well(well_), gamma(gamma_), n_states(n_states_) {
    if (n_states < 1) {
        throw DomainError("CoherentStateSpec: n_states must be >= 1, got " + std::to_string(n_states));
    }
    if (!std::isfinite(gamma.real()) || !std::isfinite(gamma.imag())) {
        throw DomainError("CoherentStateSpec: gamma must be finite");
    }
}

CoefficientVector coherent_coefficients(const CoherentStateSpec& spec) {
    CoefficientVector out;
    out.coeffs.assign(static_cast<std::size_t>(spec.n_states), Complex(0.0, 0.0));
    const double abs_gamma = std::abs(spec.gamma);
    if (abs_gamma == 0.0) {
        out.coeffs[0] = 1.0;
        return out;
    }
    const double ln_abs_gamma = std::log(abs_gamma);
    const double arg_gamma = std::arg(spec.gamma);

    std::vector<double> head(static_cast<std::size_t>(spec.n_states));
    for (int n = 0; n < spec.n_states; ++n) head[n] = ln_weight(spec.well, ln_abs_gamma, n);
    const double ln_head = log_sum_exp(head);

    // Discarded terms: continue until they are negligible and past their peak.
    std::vector<double> tail;
    double previous = head.back();
    for (int n = spec.n_states; n < spec.n_states + kMaxTailTerms; ++n) {
        const double w = ln_weight(spec.well, ln_abs_gamma, n);
        tail.push_back(w);
        if (w < previous && w < ln_head - 745.0) break;
        previous = w;
    }
    const double ln_tail = log_sum_exp(tail);
    out.tail_mass = 1.0 / (1.0 + std::exp(ln_head - ln_tail));
    out.truncation_warning = out.tail_mass > kTailWarning;

    for (int n = 0; n < spec.n_states; ++n) {
        out.coeffs[n] = std::polar(std::exp(0.5 * (head[n] - ln_head)), n * arg_gamma);
    }
    return out;
}

Complex coherent_amplitude(const CoherentStateSpec& spec, const CoefficientVector& coeffs, double y,
                           double t) {
    const auto basis = eigenstates::spt_eigenfunctions(spec.well, static_cast<int>(coeffs.coeffs.size()), y);
    const auto phased = eigenphases(spec, coeffs, t);
    Complex acc{0.0, 0.0};
    for (std::size_t n = 0; n < phased.size(); ++n) acc += phased[n] * basis[n];
    return acc;
}

double coherent_density(const CoherentStateSpec& spec, const CoefficientVector& coeffs, double y,
                        double t) {
    return std::norm(coherent_amplitude(spec, coeffs, y, t));
}

CarpetField entropy_carpet(const CoherentStateSpec& spec, const numerics::Grid1D& x_grid,
                           const numerics::Grid1D& t_grid, unsigned threads) {
    const CoefficientVector coeffs = coherent_coefficients(spec);
    const std::size_t nx = x_grid.size();
    const std::size_t nt = t_grid.size();
    const auto states = static_cast<std::size_t>(spec.n_states);

    // basis[j * states + n] = ψ_n(x_j)
    std::vector<double> basis(nx * states);
    for (std::size_t j = 0; j < nx; ++j) {
        const auto psi = eigenstates::spt_eigenfunctions(spec.well, spec.n_states, x_grid[j]);
        std::copy(psi.begin(), psi.end(), basis.begin() + static_cast<std::ptrdiff_t>(j * states));
    }

    CarpetField field{x_grid, t_grid, std::vector<double>(nx * nt), spec.gamma, spec.n_states};
    auto fill_rows = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const auto phased = eigenphases(spec, coeffs, t_grid[i]);
            for (std::size_t j = 0; j < nx; ++j) {
                Complex chi{0.0, 0.0};
                const double* psi = basis.data() + j * states;
                for (std::size_t n = 0; n < states; ++n) chi += phased[n] * psi[n];
                field.values[i * nx + j] = entropy::entropy_density(std::norm(chi));
            }
        }
    };

    unsigned workers = threads != 0 ? threads : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, nt));
    if (workers <= 1) {
        fill_rows(0, nt);
        return field;
    }
    std::vector<std::jthread> pool;
    const std::size_t chunk = (nt + workers - 1) / workers;
    for (std::size_t begin = 0; begin < nt; begin += chunk) {
        pool.emplace_back(fill_rows, begin, std::min(nt, begin + chunk));
    }
    pool.clear();
    return field;
}

numerics::Grid1D default_x_grid(const eigenstates::TrigPTSpec& well, std::size_t count) {
    const double edge = well.half_width() - 1e-3 / well.alpha();
    return numerics::Grid1D::uniform(-edge, edge, count);
}

numerics::Grid1D default_t_grid(const eigenstates::TrigPTSpec& well, std::size_t count,
                                std::optional<double> t_max) {
    const double hi = t_max.value_or(kTwoPi / (well.alpha() * well.alpha()));
    return numerics::Grid1D::uniform(0.0, hi, count);
}

RevivalReport revival_report(const CoherentStateSpec& spec) {
    const CoefficientVector coeffs = coherent_coefficients(spec);
    const numerics::Grid1D probe = default_x_grid(spec.well, 201);
    const double unit = kPi / (spec.well.alpha() * spec.well.alpha());

    auto deviation_at = [&](double t) {
        double worst = 0.0;
        for (double y : probe.points()) {
            worst = std::max(worst, std::fabs(coherent_density(spec, coeffs, y, t) -
                                              coherent_density(spec, coeffs, y, 0.0)));
        }
        return worst;
    };

    RevivalReport report;
    const double two_rho = 2.0 * spec.well.rho();
    if (std::fabs(two_rho - std::round(two_rho)) < 1e-12) {
        for (int k = 1; k <= 4; ++k) {
            const double dev = deviation_at(k * unit);
            if (dev < kRevivalTol) {
                report.period = k * unit;
                report.max_density_deviation = dev;
                return report;
            }
        }
    }
    report.max_density_deviation = deviation_at(2.0 * unit);
    return report;
}

}  // namespace pt::coherent
