#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "ptentropy/coherent.hpp"
#include "ptentropy/entropy.hpp"
#include "ptentropy/errors.hpp"

using namespace pt::coherent;
using pt::eigenstates::TrigPTSpec;
using doctest::Approx;

constexpr double kPi = std::numbers::pi;

namespace {

double total(const CoefficientVector& c) {
    double s = 0.0;
    for (const auto& v : c.coeffs) s += std::norm(v);
    return s;
}

double norm_at(const CoherentStateSpec& spec, const CoefficientVector& c, double t) {
    const double h = spec.well.half_width();
    return oracle::simpson_panels([&](double y) { return coherent_density(spec, c, y, t); }, -h, h);
}

}  // namespace

TEST_CASE("coherent_coefficients") {
    SUBCASE("γ = 0 keeps only the lowest state") {
        const auto c = coherent_coefficients(CoherentStateSpec(TrigPTSpec(2.0, 1.0), 0.0, 10));
        CHECK(c.coeffs[0] == Complex(1.0, 0.0));
        for (std::size_t n = 1; n < c.coeffs.size(); ++n) CHECK(c.coeffs[n] == Complex(0.0, 0.0));
        CHECK(c.tail_mass == 0.0);
    }
    SUBCASE("real γ gives real positive coefficients") {
        const auto c = coherent_coefficients(CoherentStateSpec(TrigPTSpec(2.5, 0.7), 3.0, 20));
        for (const auto& v : c.coeffs) {
            CHECK(v.real() > 0.0);
            CHECK(v.imag() == 0.0);
        }
    }
    SUBCASE("ρ=2, α=1, γ=5, 40 states: normalized, negligible tail, stable under extension") {
        const CoherentStateSpec spec(TrigPTSpec(2.0, 1.0), 5.0, 40);
        const auto c = coherent_coefficients(spec);
        CHECK(std::fabs(total(c) - 1.0) < 1e-12);
        CHECK(c.tail_mass < 1e-12);
        CHECK_FALSE(c.truncation_warning);
        const auto longer = coherent_coefficients(CoherentStateSpec(TrigPTSpec(2.0, 1.0), 5.0, 80));
        for (int n = 0; n < 40; ++n) CHECK(std::abs(c.coeffs[n] - longer.coeffs[n]) < 1e-14);
    }
    SUBCASE("ratios follow the weight formula") {
        // |c_{n+1}/c_n|² = |γ|² (n+ρ) Γ(2ρ+n) / ((n+1)(n+1+ρ) Γ(2ρ+n+1)) = |γ|²(n+ρ)/((n+1)(n+1+ρ)(2ρ+n))
        const double rho = 1.8;
        const Complex gamma(2.0, 1.0);
        const auto c = coherent_coefficients(CoherentStateSpec(TrigPTSpec(rho, 1.3), gamma, 15));
        for (int n = 0; n + 1 < 15; ++n) {
            const double want = std::norm(gamma) * (n + rho) / ((n + 1) * (n + 1 + rho) * (2 * rho + n));
            CHECK(std::norm(c.coeffs[n + 1] / c.coeffs[n]) == Approx(want).epsilon(1e-12));
            CHECK(std::arg(c.coeffs[n + 1] / c.coeffs[n]) == Approx(std::arg(gamma)).epsilon(1e-12));
        }
    }
    SUBCASE("truncation warning") {
        const auto c = coherent_coefficients(CoherentStateSpec(TrigPTSpec(2.0, 1.0), 30.0, 5));
        CHECK(c.truncation_warning);
        CHECK(c.tail_mass > kTailWarning);
        CHECK(std::fabs(total(c) - 1.0) < 1e-12);
    }
    SUBCASE("peak index moves up with |γ|") {
        int previous = -1;
        for (double g : {5.0, 10.0, 15.0, 30.0}) {
            const auto c = coherent_coefficients(CoherentStateSpec(TrigPTSpec(2.0, 1.0), g, 60));
            int peak = 0;
            for (int n = 1; n < 60; ++n) {
                if (std::abs(c.coeffs[n]) > std::abs(c.coeffs[peak])) peak = n;
            }
            CHECK(peak >= previous);
            previous = peak;
        }
    }
    CHECK_THROWS_AS(CoherentStateSpec(TrigPTSpec(2.0, 1.0), 1.0, 0), pt::DomainError);
    CHECK_THROWS_AS(CoherentStateSpec(TrigPTSpec(2.0, 1.0), Complex(NAN, 0.0), 3), pt::DomainError);
}

TEST_CASE("coherent_amplitude and density") {
    const CoherentStateSpec spec(TrigPTSpec(2.0, 1.0), 5.0, 40);
    const auto c = coherent_coefficients(spec);
    SUBCASE("t = 0 is the plain expansion") {
        for (double y : {-1.2, 0.0, 0.4}) {
            Complex sum = 0.0;
            for (int n = 0; n < 40; ++n) sum += c.coeffs[n] * pt::eigenstates::spt_eigenfunction(spec.well, n, y);
            CHECK(std::abs(coherent_amplitude(spec, c, y, 0.0) - sum) < 1e-13);
        }
    }
    SUBCASE("norm is conserved") {
        for (double t : {0.0, 0.37, 1.9, 5.0}) CHECK(norm_at(spec, c, t) == Approx(1.0).epsilon(1e-9));
    }
    SUBCASE("revival after 2π/α²") {
        double worst = 0.0;
        for (double y = -1.5; y <= 1.5; y += 0.05) {
            worst = std::max(worst, std::fabs(coherent_density(spec, c, y, 2 * kPi) - coherent_density(spec, c, y, 0.0)));
        }
        CHECK(worst < 1e-8);
    }
    CHECK_THROWS_AS(coherent_amplitude(spec, c, 2.0, 0.0), pt::DomainError);
}

TEST_CASE("revival_report") {
    const auto r2 = revival_report(CoherentStateSpec(TrigPTSpec(2.0, 1.0), 5.0, 40));
    REQUIRE(r2.period.has_value());
    CHECK(*r2.period == Approx(2 * kPi).epsilon(1e-14));
    CHECK(r2.max_density_deviation < 1e-8);

    // Odd 2ρ: n(n + 2ρ) is always even, so the density already returns at π/α².
    const CoherentStateSpec odd(TrigPTSpec(1.5, 1.0), 4.0, 30);
    const auto r15 = revival_report(odd);
    REQUIRE(r15.period.has_value());
    CHECK(*r15.period == Approx(kPi).epsilon(1e-14));
    CHECK(r15.max_density_deviation < 1e-8);
    const auto c = coherent_coefficients(odd);
    CHECK(std::fabs(coherent_density(odd, c, 0.3, 4 * kPi) - coherent_density(odd, c, 0.3, 0.0)) < 1e-8);

    const auto r_alpha = revival_report(CoherentStateSpec(TrigPTSpec(3.0, 2.0), 3.0, 30));
    REQUIRE(r_alpha.period.has_value());
    CHECK(*r_alpha.period == Approx(2 * kPi / 4).epsilon(1e-14));

    const auto irrational = revival_report(CoherentStateSpec(TrigPTSpec(std::sqrt(2.0), 1.0), 5.0, 40));
    CHECK_FALSE(irrational.period.has_value());
    CHECK(irrational.max_density_deviation > 1e-6);
}

TEST_CASE("entropy_carpet") {
    const CoherentStateSpec spec(TrigPTSpec(2.0, 1.0), 15.0, 30);
    const auto xg = default_x_grid(spec.well, 60);
    const auto tg = default_t_grid(spec.well, 41);
    CHECK(xg.lo() == Approx(-kPi / 2 + 1e-3).epsilon(1e-14));
    CHECK(xg.hi() == Approx(kPi / 2 - 1e-3).epsilon(1e-14));
    CHECK(tg.lo() == 0.0);
    CHECK(tg.hi() == Approx(2 * kPi).epsilon(1e-15));
    CHECK(default_t_grid(spec.well, 5, 3.0).hi() == 3.0);

    const auto one = entropy_carpet(spec, xg, tg, 1);
    const auto many = entropy_carpet(spec, xg, tg, 4);
    REQUIRE(one.rows() == 41);
    REQUIRE(one.cols() == 60);
    CHECK(one.values == many.values);

    const auto c = coherent_coefficients(spec);
    for (std::size_t j = 0; j < xg.size(); ++j) {
        CHECK(one.at(0, j) == Approx(pt::entropy::entropy_density(coherent_density(spec, c, xg[j], 0.0))).epsilon(1e-13));
        CHECK(std::fabs(one.at(0, j) - one.at(40, j)) < 1e-8);
    }

    const auto few = entropy_carpet(CoherentStateSpec(TrigPTSpec(2.0, 1.0), 15.0, 5), xg, tg, 2);
    double diff = 0.0;
    for (std::size_t i = 0; i < few.values.size(); ++i) diff = std::max(diff, std::fabs(few.values[i] - one.values[i]));
    CHECK(diff > 1e-2);

    CHECK_THROWS_AS(entropy_carpet(spec, pt::numerics::Grid1D({-2.0, 0.0}), tg), pt::DomainError);
}

TEST_CASE("truncation convergence at the centre") {
    const TrigPTSpec w(2.0, 1.0);
    const CoherentStateSpec a(w, 5.0, 40);
    const CoherentStateSpec b(w, 5.0, 80);
    const double ea = pt::entropy::entropy_density(coherent_density(a, coherent_coefficients(a), 0.0, 0.0));
    const double eb = pt::entropy::entropy_density(coherent_density(b, coherent_coefficients(b), 0.0, 0.0));
    CHECK(std::fabs(ea - eb) < 1e-6);
}
