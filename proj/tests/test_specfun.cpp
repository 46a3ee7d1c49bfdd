#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "oracles.hpp"
#include "ptentropy/errors.hpp"
#include "ptentropy/specfun.hpp"

using namespace pt::specfun;
using doctest::Approx;

constexpr double kPi = std::numbers::pi;

TEST_CASE("ln_gamma_real exact values") {
    CHECK(ln_gamma_real(1.0) == Approx(0.0).epsilon(1e-15));
    CHECK(ln_gamma_real(5.0) == Approx(std::log(24.0)).epsilon(1e-14));
    CHECK(ln_gamma_real(0.5) == Approx(0.5 * std::log(kPi)).epsilon(1e-14));
    CHECK(ln_gamma_real(2.0) == Approx(0.0).epsilon(1e-15));
}

TEST_CASE("ln_gamma_real agrees with the Stirling oracle") {
    for (double x : {0.01, 0.1, 0.3, 0.75, 1.5, 3.3, 7.0, 12.5, 40.0, 171.0}) {
        CAPTURE(x);
        CHECK(std::fabs(ln_gamma_real(x) - oracle::ln_gamma(x)) < 1e-12 * std::max(1.0, std::fabs(oracle::ln_gamma(x))));
    }
}

TEST_CASE("ln_gamma_real rejects non-positive and non-finite input") {
    CHECK_THROWS_AS(ln_gamma_real(0.0), pt::DomainError);
    CHECK_THROWS_AS(ln_gamma_real(-1.5), pt::DomainError);
    CHECK_THROWS_AS(ln_gamma_real(std::numeric_limits<double>::quiet_NaN()), pt::DomainError);
    CHECK_THROWS_AS(ln_gamma_real(std::numeric_limits<double>::infinity()), pt::DomainError);
}

TEST_CASE("ln_gamma_complex") {
    SUBCASE("real axis") {
        CHECK(std::abs(ln_gamma_complex({1.0, 0.0})) < 1e-15);
        CHECK(std::abs(ln_gamma_complex({4.0, 0.0}) - Complex(std::log(6.0), 0.0)) < 1e-14);
    }
    SUBCASE("|Γ(1/2 + ip)|² = π / cosh(πp)") {
        for (double p : {0.0, 0.5, 1.0, 2.5, 6.0}) {
            const double mod2 = std::exp(2.0 * ln_gamma_complex({0.5, p}).real());
            CHECK(mod2 == Approx(kPi / std::cosh(kPi * p)).epsilon(1e-13));
        }
        CHECK(std::exp(2.0 * ln_gamma_complex({0.5, 1.0}).real()) == Approx(0.27105).epsilon(1e-4));
    }
    SUBCASE("matches the series oracle on both sides of Re z = 1/2") {
        for (Complex z : {Complex(0.7, 3.0), Complex(2.5, -1.25), Complex(10.0, 20.0), Complex(0.25, 0.1),
                          Complex(-0.3, 0.8), Complex(-2.6, -4.0), Complex(-7.5, 0.5), Complex(1.0, 40.0)}) {
            CAPTURE(z);
            const Complex got = ln_gamma_complex(z);
            const Complex want = oracle::ln_gamma(z);
            CHECK(std::fabs(got.real() - want.real()) < 1e-11 * std::max(1.0, std::fabs(want.real())));
            CHECK(std::fabs(got.imag() - want.imag()) < 1e-10 * std::max(1.0, std::fabs(want.imag())));
        }
    }
    SUBCASE("conjugate symmetry") {
        const Complex z(1.3, 2.7);
        CHECK(std::abs(ln_gamma_complex(std::conj(z)) - std::conj(ln_gamma_complex(z))) < 1e-14);
    }
    SUBCASE("poles") {
        CHECK_THROWS_AS(ln_gamma_complex({0.0, 0.0}), pt::DomainError);
        CHECK_THROWS_AS(ln_gamma_complex({-1.0, 0.0}), pt::DomainError);
        CHECK_THROWS_AS(ln_gamma_complex({-4.0, 0.0}), pt::DomainError);
    }
}

TEST_CASE("digamma") {
    const double euler = oracle::euler_gamma();
    CHECK(euler == Approx(0.5772156649015329).epsilon(1e-15));
    CHECK(digamma(1.0) == Approx(-euler).epsilon(1e-14));
    CHECK(digamma(0.5) == Approx(-euler - 2.0 * std::numbers::ln2).epsilon(1e-14));
    CHECK(digamma(6.0) - digamma(3.0) == Approx(47.0 / 60.0).epsilon(1e-14));
    for (int n : {2, 5, 17, 60}) {
        CAPTURE(n);
        CHECK(digamma(n) == Approx(oracle::digamma_integer(n)).epsilon(1e-13));
    }
    for (double x : {0.05, 0.9, 3.7, 25.0}) {
        CHECK(digamma(x + 1.0) - digamma(x) == Approx(1.0 / x).epsilon(1e-12));
    }
    CHECK_THROWS_AS(digamma(0.0), pt::DomainError);
    CHECK_THROWS_AS(digamma(-2.5), pt::DomainError);
}

TEST_CASE("beta_real") {
    CHECK(beta_real(0.5, 1.0) == Approx(2.0).epsilon(1e-14));
    CHECK(beta_real(0.5, 2.0) == Approx(4.0 / 3.0).epsilon(1e-14));
    CHECK(beta_real(0.5, 3.0) == Approx(16.0 / 15.0).epsilon(1e-14));
    // ∫₀¹ t^{-1/2}(1-t)² dt with t = u²: 2∫₀¹(1-u²)² du.
    const double integral = oracle::simpson([](double u) { return 2.0 * std::pow(1.0 - u * u, 2); }, 0.0, 1.0);
    CHECK(beta_real(0.5, 3.0) == Approx(integral).epsilon(1e-12));
    CHECK(ln_beta_real(2.5, 7.25) ==
          Approx(oracle::ln_gamma(2.5) + oracle::ln_gamma(7.25) - oracle::ln_gamma(9.75)).epsilon(1e-13));
    CHECK(beta_real(3.0, 4.0) == Approx(beta_real(4.0, 3.0)).epsilon(1e-15));
}

TEST_CASE("beta_complex_symmetric") {
    CHECK(beta_complex_symmetric(1.0, 0.0) == Approx(kPi).epsilon(1e-14));
    CHECK(beta_complex_symmetric(1.0, 1.0) == Approx(kPi / std::cosh(kPi)).epsilon(1e-13));
    CHECK(beta_complex_symmetric(2.0, 0.0) == Approx(1.0).epsilon(1e-14));
    for (double n : {1.0, 2.0, 3.5, 9.0}) {
        for (double p : {0.0, 0.3, 1.7, 5.0}) {
            CAPTURE(n);
            CAPTURE(p);
            const double want =
                std::exp(2.0 * oracle::ln_gamma(Complex(n / 2.0, p)).real() - oracle::ln_gamma(n));
            CHECK(beta_complex_symmetric(n, p) == Approx(want).epsilon(1e-11));
            CHECK(beta_complex_symmetric(n, -p) == beta_complex_symmetric(n, p));
        }
    }
    CHECK_THROWS_AS(beta_complex_symmetric(0.0, 1.0), pt::DomainError);
    CHECK_THROWS_AS(ln_beta_complex_symmetric(-1.0, 1.0), pt::DomainError);
}

TEST_CASE("gegenbauer") {
    CHECK(gegenbauer(0, 2.0, 0.3) == 1.0);
    CHECK(gegenbauer(0, 7.5, -1.0) == 1.0);
    CHECK(gegenbauer(1, 2.0, 0.5) == Approx(2.0).epsilon(1e-15));
    CHECK(std::fabs(gegenbauer(4, 1.5, 0.3) - oracle::gegenbauer(4, 1.5, 0.3)) < 1e-12);
    for (int n = 0; n <= 12; ++n) {
        for (double rho : {1.2, 2.0, 3.5}) {
            for (double x : {-0.95, -0.2, 0.0, 0.6, 1.0}) {
                double magnitude = 0.0;
                const double want = oracle::gegenbauer(n, rho, x, &magnitude);
                CHECK(std::fabs(gegenbauer(n, rho, x) - want) < 1e-13 * std::max(1.0, magnitude));
            }
        }
    }
    const auto seq = gegenbauer_sequence(8, 2.5, 0.4);
    REQUIRE(seq.size() == 8);
    for (int n = 0; n < 8; ++n) CHECK(seq[n] == gegenbauer(n, 2.5, 0.4));
    CHECK(gegenbauer_sequence(0, 2.0, 0.1).empty());
    CHECK_THROWS_AS(gegenbauer(-1, 2.0, 0.5), pt::DomainError);
    CHECK_THROWS_AS(gegenbauer(2, 2.0, 1.5), pt::DomainError);
}
