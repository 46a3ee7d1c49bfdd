#include "ptentropy/selftest.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>
#include <utility>

#include "ptentropy/coherent.hpp"
#include "ptentropy/eigenstates.hpp"
#include "ptentropy/report.hpp"
#include "ptentropy/specfun.hpp"
#include "ptentropy/state_entropy.hpp"
#include "reference_values.hpp"

namespace pt::selftest {

namespace {

using eigenstates::HyperbolicPTSpec;
using entropy::HptState;
using numerics::Complex;

constexpr double kPi = std::numbers::pi;
constexpr double kLn2Pi = 1.83787706640934548356;

struct Outcome {
    bool passed;
    std::string detail;
};

class Detail {
public:
    Detail() { os_.precision(10); }
    template <typename T>
    Detail& operator<<(const T& v) {
        os_ << v;
        return *this;
    }
    std::string str() const { return os_.str(); }
    operator std::string() const { return os_.str(); }

private:
    std::ostringstream os_;
};

CheckResult timed(std::string id, std::string description, const std::function<Outcome()>& body,
                  double time_limit = 0.0) {
    CheckResult r{std::move(id), std::move(description), false, {}, 0.0};
    const auto start = std::chrono::steady_clock::now();
    try {
        const Outcome o = body();
        r.passed = o.passed;
        r.detail = o.detail;
    } catch (const std::exception& e) {
        r.passed = false;
        r.detail = std::string("error: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (time_limit > 0.0 && r.seconds >= time_limit) {
        r.passed = false;
        r.detail += (Detail() << "; runtime " << r.seconds << " s exceeds " << time_limit << " s").str();
    }
    return r;
}

// Lazily computed state entropies shared by several criteria.
class StateCache {
public:
    explicit StateCache(const Options& options) : options_(options) {}

    const entropy::StateEntropies& get(int n, HptState state) {
        const auto key = std::make_pair(n, state);
        auto it = cache_.find(key);
        if (it == cache_.end()) {
            it = cache_
                     .emplace(key, entropy::hpt_state_entropies(HyperbolicPTSpec(n), state, options_.tol,
                                                                entropy::MomentumSource::Analytic,
                                                                options_.fourier_sign))
                     .first;
        }
        return it->second;
    }

private:
    Options options_;
    std::map<std::pair<int, HptState>, entropy::StateEntropies> cache_;
};

// ψ̃ of the first excited state from the derivative identity
// sech^{n-1} tanh = -(2/(n-1)) d/dx sech^{n-1}(x/2), transform kernel e^{-ipx}.
Complex excited_momentum_identity(int n, double p) {
    const double ln_norm = 0.5 * (-std::log(2.0) - specfun::ln_beta_real(0.5, n - 1.0) +
                                  std::log(2.0 * n - 1.0));
    const double magnitude = std::exp(ln_norm - 0.5 * kLn2Pi + (n - 1) * std::numbers::ln2 +
                                      specfun::ln_beta_complex_symmetric(n - 1.0, p));
    return Complex(0.0, -2.0 * p / (n - 1.0) * magnitude);
}

numerics::ComplexFunction as_complex(std::function<double(double)> f) {
    return [f = std::move(f)](double x) { return Complex(f(x), 0.0); };
}

}  // namespace

std::vector<CheckResult> run_acceptance(const Options& options) {
    std::vector<CheckResult> out;
    StateCache cache(options);
    const double bound = entropy::kBbmBound;

    out.push_back(timed(
        "AC1", "n=1 ground state: S_pos = 2, S_mom = 2 - ln 2π, sum above 1 + ln π",
        [&] {
            const auto& s = cache.get(1, HptState::Ground);
            const double e_pos = std::fabs(s.s_pos.value - 2.0);
            const double e_mom = std::fabs(s.s_mom.value - (2.0 - kLn2Pi));
            const double e_sum = std::fabs(s.report.sum - (4.0 - kLn2Pi));
            const bool ok = e_pos < 1e-9 && e_mom < 1e-8 && e_sum < 1e-8 && s.report.sum >= bound;
            return Outcome{ok, Detail() << "S_pos=" << s.s_pos.value << " S_mom=" << s.s_mom.value
                                        << " sum=" << s.report.sum << " |dS_pos|=" << e_pos
                                        << " |dS_mom|=" << e_mom};
        },
        1.0));

    out.push_back(timed(
        "AC2", "closed-form ground S_pos equals quadrature for n = 1..20; n=2 equals 10/3 - ln 6",
        [&] {
            double worst = 0.0;
            int worst_n = 0;
            for (int n = 1; n <= 20; ++n) {
                const auto& s = cache.get(n, HptState::Ground);
                const double d = std::fabs(s.s_pos_analytic - s.s_pos.value);
                if (d > worst) {
                    worst = d;
                    worst_n = n;
                }
            }
            const double exact2 = 10.0 / 3.0 - std::log(6.0);
            const double d2 = std::fabs(eigenstates::hpt_analytic_ground_entropy(HyperbolicPTSpec(2)) - exact2);
            const bool ok = worst < 1e-8 && d2 <= 8.0 * std::numeric_limits<double>::epsilon();
            return Outcome{ok, Detail() << "max |analytic - quadrature| = " << worst << " at n=" << worst_n
                                        << "; n=2 deviation " << d2};
        },
        10.0));

    out.push_back(timed(
        "AC3", "excited-state table n = 2..13 within 1e-3 (entropies) and 2e-3 (sums)",
        [&] {
            double worst_entropy = 0.0;
            double worst_sum = 0.0;
            for (const auto& row : reference::kExcitedTable) {
                const auto& s = cache.get(row.n, HptState::Excited);
                worst_entropy = std::max({worst_entropy, std::fabs(s.s_pos.value - row.s_pos),
                                          std::fabs(s.s_mom.value - row.s_mom)});
                worst_sum = std::max(worst_sum, std::fabs(s.report.sum - row.sum));
            }
            const bool bound_ok = std::fabs(bound - reference::kTableBoundColumn) < 5e-5;
            return Outcome{worst_entropy < 1e-3 && worst_sum < 2e-3 && bound_ok,
                           Detail() << "max entropy deviation " << worst_entropy << ", max sum deviation "
                                    << worst_sum << ", bound " << bound};
        },
        60.0));

    out.push_back(timed("AC4", "entropy sums strictly decrease with n and stay above 1 + ln π", [&] {
        bool ok = true;
        Detail d;
        for (auto [state, lo, hi] : {std::tuple{HptState::Ground, 1, 20}, std::tuple{HptState::Excited, 2, 13}}) {
            double previous = std::numeric_limits<double>::infinity();
            for (int n = lo; n <= hi; ++n) {
                const double sum = cache.get(n, state).report.sum;
                if (!(sum < previous) || !(sum > bound)) {
                    ok = false;
                    d << entropy::to_string(state) << " n=" << n << " sum=" << sum << "; ";
                }
                previous = sum;
            }
            d << entropy::to_string(state) << " sum(" << hi << ")=" << previous << "; ";
        }
        // The excited sequence saturates above the ground-state value.
        const double g13 = cache.get(13, HptState::Ground).report.sum;
        const double e13 = cache.get(13, HptState::Excited).report.sum;
        if (!(e13 > g13)) ok = false;
        d << "n=13 excited " << e13 << " > ground " << g13;
        return Outcome{ok, d.str()};
    }));

    out.push_back(timed("AC5", "position norms within 1e-10, momentum norms within 1e-8 (n = 1..13)", [&] {
        double worst_pos = 0.0;
        double worst_mom = 0.0;
        for (int n = 1; n <= 13; ++n) {
            for (HptState state : {HptState::Ground, HptState::Excited}) {
                if (state == HptState::Excited && n < 2) continue;
                const auto& s = cache.get(n, state);
                worst_pos = std::max(worst_pos, std::fabs(s.position_norm - 1.0));
                worst_mom = std::max(worst_mom, std::fabs(s.momentum_norm - 1.0));
            }
            // Ground state through the numerical transform as well.
            const auto numeric = entropy::hpt_momentum_density(HyperbolicPTSpec(n), HptState::Ground,
                                                               entropy::MomentumSource::Numerical,
                                                               options.fourier_sign);
            const double norm = entropy::integrate_over(numeric, numeric.rho, options.tol.norm).value;
            worst_mom = std::max(worst_mom, std::fabs(norm - 1.0));
        }
        return Outcome{worst_pos < 1e-10 && worst_mom < 1e-8,
                       Detail() << "max position defect " << worst_pos << ", max momentum defect " << worst_mom};
    }));

    out.push_back(timed("AC6", "entropy-density dip: none at n=1, present at n=3 and n=5 (position)", [&] {
        const auto x_grid = numerics::Grid1D::uniform(-20.0, 20.0, 801);
        const auto p_grid = numerics::Grid1D::uniform(-5.0, 5.0, 401);
        Detail d;
        bool ok = true;
        for (int n : {1, 3, 5}) {
            const HyperbolicPTSpec spec(n);
            const auto pos = entropy::DensityProfile::sample(
                [&](double x) { return std::pow(eigenstates::hpt_ground_position(spec, x), 2); }, x_grid);
            const auto mom = entropy::DensityProfile::sample(
                [&](double p) { return std::pow(eigenstates::hpt_ground_momentum(spec, p), 2); }, p_grid);
            const bool dip_pos = entropy::dip_criterion(pos);
            const bool dip_mom = entropy::dip_criterion(mom);
            ok = ok && (dip_pos == (n != 1));
            d << "n=" << n << " position dip=" << (dip_pos ? "yes" : "no")
              << " momentum dip=" << (dip_mom ? "yes" : "no") << "; ";
        }
        return Outcome{ok, d.str()};
    }));

    out.push_back(timed(
        "AC7", "coherent state (rho=2, alpha=1, gamma=5, 40 states): norms and revival at t = 2π",
        [&] {
            const coherent::CoherentStateSpec spec(eigenstates::TrigPTSpec(2.0, 1.0), 5.0, 40);
            const auto coeffs = coherent::coherent_coefficients(spec);
            double sum_c = 0.0;
            for (const auto& c : coeffs.coeffs) sum_c += std::norm(c);
            const double hw = spec.well.half_width();
            const double norm = numerics::integrate_interval(
                                    [&](double y) { return coherent::coherent_density(spec, coeffs, y, 0.0); },
                                    -hw, hw, 1e-11)
                                    .value;
            const auto grid = coherent::default_x_grid(spec.well, 400);
            double revival = 0.0;
            for (double y : grid.points()) {
                revival = std::max(revival, std::fabs(coherent::coherent_density(spec, coeffs, y, 2.0 * kPi) -
                                                      coherent::coherent_density(spec, coeffs, y, 0.0)));
            }
            const bool ok = std::fabs(sum_c - 1.0) < 1e-12 && std::fabs(norm - 1.0) < 1e-9 && revival < 1e-8;
            return Outcome{ok, Detail() << "|sum|c|^2 - 1| = " << std::fabs(sum_c - 1.0) << ", |norm - 1| = "
                                        << std::fabs(norm - 1.0) << ", revival deviation " << revival
                                        << ", tail mass " << coeffs.tail_mass};
        },
        30.0));

    out.push_back(timed(
        "AC8", "200x200 carpet (rho=2, alpha=1, gamma=15, 30 states): finite and byte-identical",
        [&] {
            const coherent::CoherentStateSpec spec(eigenstates::TrigPTSpec(2.0, 1.0), 15.0, 30);
            const auto xg = coherent::default_x_grid(spec.well, 200);
            const auto tg = coherent::default_t_grid(spec.well, 200);
            std::ostringstream first;
            std::ostringstream second;
            const auto a = coherent::entropy_carpet(spec, xg, tg);
            report::write_pgm(a, first);
            const auto b = coherent::entropy_carpet(spec, xg, tg, 1);
            report::write_pgm(b, second);
            const bool finite =
                std::all_of(a.values.begin(), a.values.end(), [](double v) { return std::isfinite(v); });
            const bool same = first.str() == second.str() && a.values == b.values;
            return Outcome{finite && same, Detail() << "finite=" << finite << " identical=" << same
                                                    << " bytes=" << first.str().size()};
        },
        60.0));

    out.push_back(timed("AC9", "entropy below 1/2 + ln(√(2π) σ) for every density; Gaussian saturates", [&] {
        double worst_excess = -std::numeric_limits<double>::infinity();
        Detail d;
        bool ok = true;
        for (int n = 1; n <= 13; ++n) {
            for (HptState state : {HptState::Ground, HptState::Excited}) {
                if (state == HptState::Excited && n < 2) continue;
                const HyperbolicPTSpec spec(n);
                for (const auto& density :
                     {entropy::hpt_position_density(spec, state),
                      entropy::hpt_momentum_density(spec, state, entropy::MomentumSource::Analytic,
                                                    options.fourier_sign)}) {
                    const auto vb = entropy::variance_entropy_bound(density, options.tol.entropy);
                    const double excess = vb.entropy - vb.bound;
                    worst_excess = std::max(worst_excess, excess);
                    if (!(excess <= 1e-9)) {
                        ok = false;
                        d << entropy::to_string(state) << " n=" << n << " excess " << excess << "; ";
                    }
                }
            }
        }
        const auto grid = numerics::Grid1D::uniform(-14.0, 14.0, 2801);
        const auto gaussian = entropy::DensityProfile::sample(
            [](double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * kPi); }, grid);
        const auto vb = entropy::variance_entropy_bound(gaussian);
        const double gap = std::fabs(vb.entropy - vb.bound);
        ok = ok && gap < 1e-10;
        d << "max S - bound = " << worst_excess << "; Gaussian |S - bound| = " << gap;
        return Outcome{ok, d.str()};
    }));

    return out;
}

std::vector<CheckResult> run_invariants(const Options& options) {
    std::vector<CheckResult> out;

    out.push_back(timed("INV-digamma", "Ψ(x+1) - Ψ(x) = 1/x", [] {
        double worst = 0.0;
        for (double x = 0.05; x < 1000.0; x *= 1.37) {
            worst = std::max(worst, std::fabs(specfun::digamma(x + 1.0) - specfun::digamma(x) - 1.0 / x));
        }
        return Outcome{worst < 1e-13, Detail() << "max residual " << worst};
    }));

    out.push_back(timed("INV-beta", "B(1/2, n+1) = B(1/2, n) n/(n + 1/2)", [] {
        double worst = 0.0;
        for (int n = 1; n <= 60; ++n) {
            const double lhs = specfun::beta_real(0.5, n + 1.0);
            const double rhs = specfun::beta_real(0.5, n) * n / (n + 0.5);
            worst = std::max(worst, std::fabs(lhs / rhs - 1.0));
        }
        return Outcome{worst < 1e-12, Detail() << "max relative residual " << worst};
    }));

    out.push_back(timed("INV-duplication", "Γ(2z) = 2^{2z-1} Γ(z) Γ(z+1/2) / √π", [] {
        double worst = 0.0;
        for (double re = 0.3; re < 20.0; re += 1.7) {
            for (double im = -15.0; im <= 15.0; im += 2.5) {
                const Complex z(re, im);
                const Complex lhs = specfun::ln_gamma_complex(2.0 * z);
                const Complex rhs = (2.0 * z - 1.0) * std::numbers::ln2 + specfun::ln_gamma_complex(z) +
                                    specfun::ln_gamma_complex(z + 0.5) - 0.5 * std::log(kPi);
                // Compare Γ values: relative error = |exp(lhs - rhs) - 1|.
                worst = std::max(worst, std::abs(std::exp(lhs - rhs) - 1.0));
            }
        }
        return Outcome{worst < 1e-11, Detail() << "max relative residual " << worst};
    }));

    out.push_back(timed("INV-gegenbauer", "Gegenbauer orthogonality under (1-x²)^{ρ-1/2}", [] {
        double worst_off = 0.0;
        double worst_diag = 0.0;
        for (double rho : {1.5, 2.0, 3.25}) {
            auto norm2 = [rho](int n) {
                return kPi * std::exp((1.0 - 2.0 * rho) * std::numbers::ln2 + specfun::ln_gamma_real(n + 2.0 * rho) -
                                      specfun::ln_gamma_real(n + 1.0) - 2.0 * specfun::ln_gamma_real(rho)) /
                       (n + rho);
            };
            for (int m = 0; m <= 6; ++m) {
                for (int n = m; n <= 6; ++n) {
                    // The quadrature tolerance is absolute; scale it to the size of the entries.
                    const double scale = std::sqrt(norm2(m) * norm2(n));
                    const double v = numerics::integrate_interval(
                                         [&](double x) {
                                             return std::pow(1.0 - x * x, rho - 0.5) *
                                                    specfun::gegenbauer(m, rho, x) * specfun::gegenbauer(n, rho, x);
                                         },
                                         -1.0, 1.0, 1e-13 * scale)
                                         .value;
                    if (m != n) {
                        worst_off = std::max(worst_off, std::fabs(v) / scale);
                    } else {
                        worst_diag = std::max(worst_diag, std::fabs(v / norm2(n) - 1.0));
                    }
                }
            }
        }
        return Outcome{worst_off < 1e-10 && worst_diag < 1e-10,
                       Detail() << "max relative off-diagonal " << worst_off << ", max diagonal relative " << worst_diag};
    }));

    out.push_back(timed("INV-normalization", "hyperbolic states square-normalized (ground 1..20, excited 2..20)", [&] {
        double worst = 0.0;
        for (int n = 1; n <= 20; ++n) {
            for (HptState state : {HptState::Ground, HptState::Excited}) {
                if (state == HptState::Excited && n < 2) continue;
                const auto d = entropy::hpt_position_density(HyperbolicPTSpec(n), state);
                worst = std::max(worst, std::fabs(entropy::integrate_over(d, d.rho, options.tol.norm).value - 1.0));
            }
        }
        return Outcome{worst < 1e-10, Detail() << "max defect " << worst};
    }));

    out.push_back(timed("INV-fourier-ground", "numerical transform matches closed form (n = 1..8, |p| <= 10)", [&] {
        double worst = 0.0;
        const auto grid = numerics::Grid1D::uniform(-10.0, 10.0, 81);
        for (int n = 1; n <= 8; ++n) {
            const HyperbolicPTSpec spec(n);
            const auto field = numerics::fourier_to_momentum(
                as_complex([spec](double x) { return eigenstates::hpt_ground_position(spec, x); }), grid, 1e-12,
                options.fourier_sign);
            for (std::size_t i = 0; i < grid.size(); ++i) {
                worst = std::max(worst, std::abs(field.values[i] - eigenstates::hpt_ground_momentum(spec, grid[i])));
            }
        }
        return Outcome{worst < 1e-8, Detail() << "max pointwise deviation " << worst};
    }));

    out.push_back(timed("INV-fourier-excited", "excited-state transform matches the derivative identity (sign-sensitive)", [&] {
        double worst = 0.0;
        const auto grid = numerics::Grid1D::uniform(-8.0, 8.0, 65);
        for (int n = 2; n <= 8; ++n) {
            const HyperbolicPTSpec spec(n);
            const auto field = numerics::fourier_to_momentum(
                as_complex([spec](double x) { return eigenstates::hpt_excited_position(spec, x); }), grid, 1e-12,
                options.fourier_sign);
            for (std::size_t i = 0; i < grid.size(); ++i) {
                worst = std::max(worst, std::abs(field.values[i] - excited_momentum_identity(n, grid[i])));
            }
        }
        return Outcome{worst < 1e-8, Detail() << "max pointwise deviation " << worst};
    }));

    out.push_back(timed("INV-spt-orthonormal", "Gram matrix of the first 12 trigonometric states is the identity", [] {
        const eigenstates::TrigPTSpec well(2.0, 1.0);
        const double hw = well.half_width();
        double worst = 0.0;
        for (int m = 0; m < 12; ++m) {
            for (int n = m; n < 12; ++n) {
                const double g = numerics::integrate_interval(
                                     [&](double y) {
                                         const auto psi = eigenstates::spt_eigenfunctions(well, n + 1, y);
                                         return psi[m] * psi[n];
                                     },
                                     -hw, hw, 1e-12)
                                     .value;
                worst = std::max(worst, std::fabs(g - (m == n ? 1.0 : 0.0)));
            }
        }
        return Outcome{worst < 1e-9, Detail() << "max entry deviation " << worst};
    }));

    out.push_back(timed("INV-parity", "ground even, excited odd, trigonometric parity (-1)^n", [] {
        bool ok = true;
        for (int n = 2; n <= 10; ++n) {
            const HyperbolicPTSpec spec(n);
            for (double x : {0.3, 1.7, 4.2, 9.5}) {
                ok = ok && eigenstates::hpt_ground_position(spec, x) == eigenstates::hpt_ground_position(spec, -x);
                ok = ok && eigenstates::hpt_excited_position(spec, x) == -eigenstates::hpt_excited_position(spec, -x);
            }
        }
        const eigenstates::TrigPTSpec well(2.5, 1.3);
        for (int n = 0; n < 10; ++n) {
            for (double y : {0.1, 0.6, 1.1}) {
                const double a = eigenstates::spt_eigenfunction(well, n, y);
                const double b = eigenstates::spt_eigenfunction(well, n, -y);
                ok = ok && std::fabs(a - (n % 2 ? -b : b)) <= 1e-13 * (1.0 + std::fabs(a));
            }
        }
        return Outcome{ok, ok ? "all sampled parities hold" : "parity violated"};
    }));

    out.push_back(timed("INV-linearity", "transform of aψ1 + bψ2 equals aT(ψ1) + bT(ψ2)", [&] {
        const HyperbolicPTSpec s3(3);
        const HyperbolicPTSpec s4(4);
        const auto f1 = as_complex([s3](double x) { return eigenstates::hpt_ground_position(s3, x); });
        const auto f2 = as_complex([s4](double x) { return eigenstates::hpt_excited_position(s4, x); });
        const Complex a(0.7, -0.2);
        const Complex b(-1.3, 0.4);
        const auto combo = [&](double x) { return a * f1(x) + b * f2(x); };
        const auto grid = numerics::Grid1D::uniform(-6.0, 6.0, 49);
        const auto t1 = numerics::fourier_to_momentum(f1, grid, 1e-12, options.fourier_sign);
        const auto t2 = numerics::fourier_to_momentum(f2, grid, 1e-12, options.fourier_sign);
        const auto tc = numerics::fourier_to_momentum(combo, grid, 1e-12, options.fourier_sign);
        double worst = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            worst = std::max(worst, std::abs(tc.values[i] - (a * t1.values[i] + b * t2.values[i])));
        }
        return Outcome{worst < 1e-10, Detail() << "max deviation " << worst};
    }));

    out.push_back(timed("INV-scaling", "S[λρ(λx)] = S[ρ] - ln λ at λ = 2", [&] {
        const HyperbolicPTSpec spec(1);
        const auto base = entropy::hpt_position_density(spec, HptState::Ground);
        const auto scaled = entropy::DensityFunction::real_line([&](double x) { return 2.0 * base.rho(2.0 * x); });
        const double s0 = entropy::shannon_entropy(base, options.tol.entropy).value;
        const double s1 = entropy::shannon_entropy(scaled, options.tol.entropy).value;
        const double d = std::fabs(s1 - (s0 - std::numbers::ln2));
        return Outcome{d < 1e-9, Detail() << "deviation " << d};
    }));

    out.push_back(timed("INV-coherent-norm", "∫|χ(y,t)|² dy = 1 under evolution", [] {
        const coherent::CoherentStateSpec spec(eigenstates::TrigPTSpec(2.0, 1.0), 10.0, 30);
        const auto coeffs = coherent::coherent_coefficients(spec);
        const double hw = spec.well.half_width();
        double worst = 0.0;
        for (double t : {0.0, 0.37, 1.9, 4.4}) {
            const double norm = numerics::integrate_interval(
                                    [&](double y) { return coherent::coherent_density(spec, coeffs, y, t); }, -hw,
                                    hw, 1e-11)
                                    .value;
            worst = std::max(worst, std::fabs(norm - 1.0));
        }
        return Outcome{worst < 1e-8, Detail() << "max defect " << worst};
    }));

    out.push_back(timed("INV-coherent-weights", "index of max|c_n| non-decreasing in |γ|", [] {
        int previous = -1;
        Detail d;
        bool ok = true;
        for (double g : {5.0, 10.0, 15.0, 30.0}) {
            const coherent::CoherentStateSpec spec(eigenstates::TrigPTSpec(2.0, 1.0), g, 60);
            const auto c = coherent::coherent_coefficients(spec).coeffs;
            const auto idx = static_cast<int>(
                std::max_element(c.begin(), c.end(), [](Complex a, Complex b) { return std::abs(a) < std::abs(b); }) -
                c.begin());
            ok = ok && idx >= previous;
            previous = idx;
            d << "gamma=" << g << " peak n=" << idx << "; ";
        }
        return Outcome{ok, d.str()};
    }));

    out.push_back(timed("INV-coherent-truncation", "entropy density at (0,0) converged in n_states", [] {
        const eigenstates::TrigPTSpec well(2.0, 1.0);
        const coherent::CoherentStateSpec a(well, 5.0, 40);
        const coherent::CoherentStateSpec b(well, 5.0, 80);
        const double ea = entropy::entropy_density(coherent::coherent_density(a, coherent::coherent_coefficients(a), 0.0, 0.0));
        const double eb = entropy::entropy_density(coherent::coherent_density(b, coherent::coherent_coefficients(b), 0.0, 0.0));
        return Outcome{std::fabs(ea - eb) < 1e-6, Detail() << "difference " << std::fabs(ea - eb)};
    }));

    return out;
}

nlohmann::json to_json(const std::vector<CheckResult>& results) {
    nlohmann::json checks = nlohmann::json::array();
    bool all = true;
    for (const auto& r : results) {
        all = all && r.passed;
        checks.push_back({{"id", r.id},
                          {"description", r.description},
                          {"passed", r.passed},
                          {"detail", r.detail},
                          {"seconds", r.seconds}});
    }
    return {{"passed", all}, {"checks", checks}};
}

}  // namespace pt::selftest
