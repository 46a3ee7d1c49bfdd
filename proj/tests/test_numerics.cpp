#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ptentropy/errors.hpp"
#include "ptentropy/numerics.hpp"
#include "ptentropy/specfun.hpp"

using namespace pt::numerics;
using doctest::Approx;

constexpr double kPi = std::numbers::pi;

namespace {

double sech(double x) { return 1.0 / std::cosh(x); }

}  // namespace

TEST_CASE("Grid1D") {
    const auto g = Grid1D::uniform(-1.0, 1.0, 5);
    REQUIRE(g.size() == 5);
    CHECK(g.lo() == -1.0);
    CHECK(g.hi() == 1.0);
    CHECK(g[2] == Approx(0.0));
    CHECK_THROWS_AS(Grid1D({1.0}), pt::DomainError);
    CHECK_THROWS_AS(Grid1D({0.0, 0.0}), pt::DomainError);
    CHECK_THROWS_AS(Grid1D({0.0, INFINITY}), pt::DomainError);
    CHECK_THROWS_AS(Grid1D::uniform(1.0, 0.0, 10), pt::DomainError);
    CHECK_THROWS_AS(Grid1D::uniform(0.0, 1.0, 1), pt::DomainError);
}

TEST_CASE("integrate_real_line") {
    const auto a = integrate_real_line([](double x) { return 0.25 * sech(x / 2) * sech(x / 2); }, 1e-12);
    CHECK(a.value == Approx(1.0).epsilon(1e-12));
    CHECK(a.error <= 1e-12);
    CHECK(a.evaluations > 0);

    const auto b = integrate_real_line([](double x) { return std::exp(-x * x / 2) / std::sqrt(2 * kPi); }, 1e-12);
    CHECK(b.value == Approx(1.0).epsilon(1e-12));

    // n = 1 ground density ρ = sech²(x/2)/4: -∫ρ ln ρ = 2.
    const auto s = integrate_real_line(
        [](double x) {
            const double rho = 0.25 * sech(x / 2) * sech(x / 2);
            return rho > 0.0 ? -rho * std::log(rho) : 0.0;
        },
        1e-11);
    CHECK(s.value == Approx(2.0).epsilon(1e-10));
}

TEST_CASE("integrate_half_line and integrate_interval") {
    CHECK(integrate_half_line([](double x) { return std::exp(-x); }, 0.0, 1e-12).value == Approx(1.0).epsilon(1e-12));
    CHECK(integrate_half_line([](double x) { return std::exp(-x); }, 2.0, 1e-13).value ==
          Approx(std::exp(-2.0)).epsilon(1e-12));
    CHECK(integrate_interval([](double) { return 1.0; }, 0.0, 1.0, 1e-13).value == Approx(1.0).epsilon(1e-14));
    const double want = pt::specfun::beta_real(0.5, 2.5);
    CHECK(want == Approx(3 * kPi / 8).epsilon(1e-14));
    CHECK(integrate_interval([](double x) { return std::pow(1 - x * x, 1.5); }, -1.0, 1.0, 1e-13).value ==
          Approx(want).epsilon(1e-12));
    // Endpoint singularities are never sampled; the part of the range within
    // one ulp of an endpoint (worth ~√eps here) is out of reach.
    CHECK(integrate_interval([](double x) { return 1.0 / std::sqrt(1 - x * x); }, -1.0, 1.0, 1e-6).value ==
          Approx(kPi).epsilon(1e-7));
    CHECK_THROWS_AS(integrate_interval([](double x) { return 1.0 / std::sqrt(1 - x * x); }, -1.0, 1.0, 1e-12),
                    pt::ConvergenceError);
    const double breaks[] = {-1.0, 0.0, 2.0};
    CHECK(integrate_pieces([](double x) { return std::fabs(x); }, breaks, 1e-13).value == Approx(2.5).epsilon(1e-13));
}

TEST_CASE("quadrature failures are reported") {
    CHECK_THROWS_AS(integrate_real_line([](double x) { return std::exp(-x * x); }, 0.0), pt::DomainError);
    SUBCASE("evaluation cap") {
        try {
            integrate_real_line([](double x) { return std::exp(-x * x); }, 1e-14, 50);
            FAIL("expected ConvergenceError");
        } catch (const pt::ConvergenceError& e) {
            CHECK(e.last_value() == Approx(std::sqrt(kPi)).epsilon(1e-2));
            CHECK(e.last_error() > 0.0);
        }
    }
    SUBCASE("unreachable tolerance stalls instead of spinning") {
        CHECK_THROWS_AS(integrate_interval([](double x) { return 1e6 * std::exp(x); }, 0.0, 1.0, 1e-20),
                        pt::ConvergenceError);
    }
    SUBCASE("non-finite integrand") {
        CHECK_THROWS_AS(integrate_real_line([](double x) { return x > 1.0 && x < 2.0 ? NAN : std::exp(-x * x); }, 1e-10),
                        pt::ConvergenceError);
    }
}

TEST_CASE("decay_extent") {
    const double x = decay_extent([](double t) { return Complex(std::exp(-t * t / 2), 0.0); });
    CHECK(x > std::sqrt(2 * std::log(1e16)) - 0.6);
    CHECK(x < std::sqrt(2 * std::log(1e16)) + 0.6);
}

TEST_CASE("FourierTransform") {
    const ComplexFunction ground1 = [](double x) { return Complex(0.5 * sech(x / 2), 0.0); };
    const FourierTransform ft(ground1, 10.0, 1e-12);
    SUBCASE("n = 1 ground state: √(π/2) sech(πp)") {
        CHECK(ft(0.0).real() == Approx(std::sqrt(kPi / 2)).epsilon(1e-12));
        CHECK(ft(0.0).real() == Approx(1.25331).epsilon(1e-5));
        for (double p : {0.25, 1.0, 2.0, 5.0}) {
            CHECK(std::abs(ft(p) - Complex(std::sqrt(kPi / 2) * sech(kPi * p), 0.0)) < 1e-12);
        }
    }
    SUBCASE("even real input gives a real even transform") {
        for (double p : {-3.0, -0.7, 0.4, 6.5}) {
            CHECK(std::fabs(ft(p).imag()) < 1e-12);
            CHECK(std::abs(ft(p) - ft(-p)) < 1e-13);
        }
    }
    SUBCASE("odd real input gives an imaginary odd transform") {
        const FourierTransform odd([](double x) { return Complex(x * std::exp(-x * x / 2), 0.0); }, 8.0, 1e-12);
        for (double p : {0.3, 1.5, 4.0}) {
            CHECK(std::fabs(odd(p).real()) < 1e-12);
            CHECK(std::abs(odd(p) + odd(-p)) < 1e-13);
            // x e^{-x²/2} ↦ -i p e^{-p²/2}
            CHECK(odd(p).imag() == Approx(-p * std::exp(-p * p / 2)).epsilon(1e-11));
        }
    }
    SUBCASE("the Gaussian is its own transform") {
        const auto field = fourier_to_momentum(
            [](double x) { return Complex(std::exp(-x * x / 2) / std::pow(kPi, 0.25), 0.0); },
            Grid1D::uniform(-6.0, 6.0, 49), 1e-12);
        for (std::size_t i = 0; i < field.grid.size(); ++i) {
            const double p = field.grid[i];
            CHECK(std::abs(field.values[i] - std::exp(-p * p / 2) / std::pow(kPi, 0.25)) < 1e-12);
            CHECK(field.errors[i] < 1e-10);
        }
    }
    SUBCASE("kernel sign conjugates") {
        const FourierTransform plus([](double x) { return Complex(x * std::exp(-x * x / 2), 0.0); }, 8.0, 1e-12,
                                    {.x_extent = 0.0, .sign = KernelSign::Positive});
        const FourierTransform minus([](double x) { return Complex(x * std::exp(-x * x / 2), 0.0); }, 8.0, 1e-12);
        CHECK(std::abs(plus(1.2) - std::conj(minus(1.2))) < 1e-13);
    }
    CHECK_THROWS_AS(FourierTransform(ground1, 10.0, 0.0), pt::DomainError);
}

TEST_CASE("gauss_legendre_16") {
    const auto& gl = gauss_legendre_16();
    REQUIRE(gl.nodes.size() == 16);
    double w = 0.0;
    double x30 = 0.0;
    for (std::size_t i = 0; i < 16; ++i) {
        w += gl.weights[i];
        x30 += gl.weights[i] * std::pow(gl.nodes[i], 30);
    }
    CHECK(w == Approx(2.0).epsilon(1e-15));
    CHECK(x30 == Approx(2.0 / 31.0).epsilon(1e-13));
}
