#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <numbers>

#include "oracles.hpp"
#include "ptentropy/eigenstates.hpp"
#include "ptentropy/entropy.hpp"
#include "ptentropy/errors.hpp"
#include "ptentropy/state_entropy.hpp"

using namespace pt::entropy;
using pt::eigenstates::HyperbolicPTSpec;
using doctest::Approx;

constexpr double kPi = std::numbers::pi;

namespace {

DensityFunction gaussian(double sigma) {
    return DensityFunction::real_line([sigma](double x) {
        return std::exp(-x * x / (2 * sigma * sigma)) / (sigma * std::sqrt(2 * kPi));
    });
}

}  // namespace

TEST_CASE("entropy_density") {
    CHECK(entropy_density(0.0) == 0.0);
    CHECK(entropy_density(1.0) == 0.0);
    CHECK(entropy_density(std::exp(-1.0)) == Approx(std::exp(-1.0)).epsilon(1e-15));
    CHECK(entropy_density(1e-320) >= 0.0);
    CHECK_THROWS_AS(entropy_density(-1e-3), pt::DomainError);
}

TEST_CASE("shannon_entropy of simple densities") {
    CHECK(std::fabs(shannon_entropy(DensityFunction::interval([](double) { return 1.0; }, 0.0, 1.0)).value) < 1e-14);
    CHECK(shannon_entropy(DensityFunction::interval([](double) { return 0.25; }, -2.0, 2.0)).value ==
          Approx(std::log(4.0)).epsilon(1e-13));
    const auto g = shannon_entropy(gaussian(1.7));
    CHECK(g.value == Approx(0.5 * std::log(2 * kPi * std::exp(1.0) * 1.7 * 1.7)).epsilon(1e-11));
    CHECK(g.error < 1e-8);
    // Scaling: λρ(λx) lowers the entropy by ln λ.
    CHECK(shannon_entropy(gaussian(0.5)).value == Approx(shannon_entropy(gaussian(1.0)).value - std::log(2.0)).epsilon(1e-11));
    CHECK_THROWS_AS(shannon_entropy(DensityFunction::interval([](double) { return 2.0; }, 0.0, 1.0)), pt::DomainError);
    CHECK_THROWS_AS(DensityFunction::interval([](double) { return 1.0; }, 1.0, 1.0), pt::DomainError);
}

TEST_CASE("n = 1 ground state entropies") {
    const HyperbolicPTSpec one(1);
    const auto s = hpt_state_entropies(one, HptState::Ground);
    CHECK(s.s_pos.value == Approx(2.0).epsilon(1e-10));
    CHECK(s.s_pos_analytic == Approx(2.0).epsilon(1e-14));
    CHECK(s.s_mom.value == Approx(2.0 - std::log(2 * kPi)).epsilon(1e-10));
    CHECK(s.s_mom.value == Approx(0.162123).epsilon(1e-6));
    CHECK(s.position_norm == Approx(1.0).epsilon(1e-12));
    CHECK(s.momentum_norm == Approx(1.0).epsilon(1e-12));
    CHECK(s.report.satisfied());
    CHECK(s.report.sum == Approx(4.0 - std::log(2 * kPi)).epsilon(1e-10));

    // The numerically transformed ground state agrees with the closed form.
    const auto numeric = hpt_state_entropies(one, HptState::Ground, {}, MomentumSource::Numerical);
    CHECK(numeric.s_mom.value == Approx(s.s_mom.value).epsilon(1e-10));
}

TEST_CASE("first excited state entropies against an independent scipy computation") {
    // Values from a separate scipy prototype (quad + direct Fourier integral).
    struct Row {
        int n;
        double s_pos;
        double s_mom;
    };
    for (const Row r : {Row{2, 2.234721, 0.722555}, Row{13, 0.813710, 1.899260}}) {
        CAPTURE(r.n);
        const auto s = hpt_state_entropies(HyperbolicPTSpec(r.n), HptState::Excited);
        CHECK(s.s_pos.value == Approx(r.s_pos).epsilon(2e-6));
        CHECK(s.s_mom.value == Approx(r.s_mom).epsilon(2e-6));
        CHECK(std::isnan(s.s_pos_analytic));
        CHECK(s.momentum_norm == Approx(1.0).epsilon(1e-8));
        CHECK(s.report.satisfied());
    }
    CHECK_THROWS_AS(hpt_state_entropies(HyperbolicPTSpec(1), HptState::Excited), pt::DomainError);
}

TEST_CASE("NumericalMomentumDensity") {
    const HyperbolicPTSpec s(4);
    const NumericalMomentumDensity ground(s, HptState::Ground);
    for (double p : {0.0, 0.6, 2.5}) {
        CHECK(ground(p) == Approx(std::pow(pt::eigenstates::hpt_ground_momentum(s, p), 2)).epsilon(1e-11));
    }
    CHECK(ground.p_range() >= 4.0);
    const NumericalMomentumDensity excited(s, HptState::Excited);
    CHECK(excited(0.0) < 1e-24);
    CHECK(excited(1.1) == Approx(excited(-1.1)).epsilon(1e-12));
}

TEST_CASE("bbm_check") {
    const auto exact = bbm_check(2.0, 2.0 - std::log(2 * kPi));
    CHECK(exact.sum == Approx(2.16212).epsilon(1e-5));
    CHECK(exact.margin == Approx(0.01739).epsilon(1e-4));
    CHECK(exact.status == BbmStatus::Satisfied);
    const auto row = bbm_check(2.23472, 0.722555);
    CHECK(row.sum == Approx(2.95728).epsilon(1e-5));
    CHECK(row.bbm_bound == Approx(2.1447).epsilon(1e-4));
    CHECK(row.satisfied());
    const auto bad = bbm_check(0.0, 0.0);
    CHECK(bad.margin == Approx(-2.1447).epsilon(1e-4));
    CHECK(bad.status == BbmStatus::Violated);
    CHECK(bbm_check(1.0, kBbmBound - 1.0 + 1e-12, 1e-9).status == BbmStatus::Indeterminate);
    CHECK(std::string(to_string(BbmStatus::Violated)) == "violated");
}

TEST_CASE("variance_entropy_bound") {
    const auto g = variance_entropy_bound(gaussian(2.3));
    CHECK(std::fabs(g.entropy - g.bound) < 1e-10);
    CHECK(g.sigma == Approx(2.3).epsilon(1e-11));

    const auto pos = variance_entropy_bound(pt::entropy::hpt_position_density(HyperbolicPTSpec(1), HptState::Ground));
    CHECK(pos.entropy == Approx(2.0).epsilon(1e-10));
    // σ² = π²/3 for sech²(x/2)/4.
    CHECK(pos.sigma == Approx(kPi / std::sqrt(3.0)).epsilon(1e-10));
    CHECK(pos.satisfied);
    CHECK(pos.entropy < pos.bound);

    const auto uniform = variance_entropy_bound(DensityFunction::interval([](double) { return 1.0; }, 0.0, 1.0));
    CHECK(uniform.bound == Approx(0.5 + std::log(std::sqrt(2 * kPi) / std::sqrt(12.0))).epsilon(1e-12));
    CHECK(uniform.bound == Approx(0.176).epsilon(2e-3));
    CHECK(uniform.satisfied);

    // Cauchy has no second moment.
    CHECK_THROWS_AS(variance_entropy_bound(DensityFunction::real_line([](double x) { return 1.0 / (kPi * (1 + x * x)); })),
                    pt::DomainError);
}

TEST_CASE("DensityProfile") {
    const auto grid = pt::numerics::Grid1D::uniform(-12.0, 12.0, 4001);
    const auto profile = DensityProfile::sample([](double x) { return std::exp(-x * x / 2) / std::sqrt(2 * kPi); }, grid);
    CHECK(profile.normalized());
    CHECK(profile.norm_defect() < 1e-12);
    CHECK(shannon_entropy(profile).value == Approx(0.5 * std::log(2 * kPi * std::exp(1.0))).epsilon(1e-9));
    const auto v = variance_entropy_bound(profile);
    CHECK(std::fabs(v.entropy - v.bound) < 1e-8);

    const DensityProfile doubled(grid, std::vector<double>(grid.size(), 1.0));
    CHECK_FALSE(doubled.normalized());
    CHECK_THROWS_AS(shannon_entropy(doubled), pt::DomainError);
    CHECK_THROWS_AS(DensityProfile(grid, {1.0, 2.0}), pt::DomainError);
    CHECK_THROWS_AS(DensityProfile(pt::numerics::Grid1D({0.0, 1.0}), {1.0, -1.0}), pt::DomainError);
}

TEST_CASE("dip_criterion") {
    const auto grid = pt::numerics::Grid1D::uniform(-30.0, 30.0, 6001);
    auto ground_profile = [&](int n) {
        return DensityProfile::sample(hpt_position_density(HyperbolicPTSpec(n), HptState::Ground).rho, grid);
    };
    CHECK_FALSE(dip_criterion(ground_profile(1)));  // ρ(0) = 1/4
    CHECK(dip_criterion(ground_profile(3)));        // ρ(0) = 15/32
    CHECK(dip_criterion(ground_profile(5)));

    // A peak of exactly 1/e is not a dip.
    const pt::numerics::Grid1D small({-1.0, 0.0, 1.0});
    CHECK_FALSE(dip_criterion(DensityProfile(small, {0.1, std::exp(-1.0), 0.1})));
    CHECK(dip_criterion(DensityProfile(small, {0.1, std::nextafter(std::exp(-1.0), 1.0), 0.1})));
    CHECK_THROWS_AS(dip_criterion(DensityProfile(small, {0.5, 0.2, 0.1})), pt::DomainError);
}

TEST_CASE("Tolerances::from_environment") {
    ::unsetenv("PTENTROPY_TOL");
    CHECK(Tolerances::from_environment().norm == pt::numerics::kDefaultNormTol);
    ::setenv("PTENTROPY_TOL", "1e-7", 1);
    CHECK(Tolerances::from_environment().norm == 1e-7);
    CHECK(Tolerances::from_environment().entropy == 1e-7);
    ::setenv("PTENTROPY_TOL", "garbage", 1);
    CHECK(Tolerances::from_environment().entropy == pt::numerics::kDefaultEntropyTol);
    ::unsetenv("PTENTROPY_TOL");
}
