#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "fhardy/errors.hpp"
#include "fhardy/specfun.hpp"

using namespace fhardy;

namespace {

double rel_err(double got, double want) { return std::abs(got - want) / std::abs(want); }

// ln Γ from the integral definition at 30 digits (tests/oracles/gamma_oracle.py).
struct Golden {
    double x, log_gamma;
};
constexpr Golden kLogGamma[] = {
    {0.1, 2.2527126517342059599},      {0.5, 0.57236494292470008707},
    {0.9, 0.066376239734742971189},    {1.0001, -0.000057713342220477623308},
    {1.3, -0.10817480950786047095},    {1.9999, -0.000042275208772158113599},
    {2.5, 0.28468287047291915963},     {3.7, 1.4280723266653879219},
    {7.3, 7.1478925230222490328},      {23.4, 49.72015448221127901},
    {49.9, 144.17564605375033852},
};

}  // namespace

TEST_CASE("log_gamma matches the integral-definition oracle") {
    CHECK(std::abs(log_gamma(1.0)) < 1e-16);
    CHECK(std::abs(log_gamma(2.0)) < 1e-16);
    CHECK(rel_err(log_gamma(0.5), 0.5 * std::log(std::numbers::pi)) < 1e-14);
    for (const auto& g : kLogGamma) {
        INFO("x = " << g.x);
        // absolute floor: 1.0001 and 1.9999 are not exact doubles
        CHECK(std::abs(log_gamma(g.x) - g.log_gamma) < 1e-13 * std::abs(g.log_gamma) + 1e-17);
    }
}

TEST_CASE("log_gamma rejects non-positive arguments") {
    CHECK_THROWS_AS(log_gamma(0.0), DomainError);
    CHECK_THROWS_AS(log_gamma(-1.5), DomainError);
}

TEST_CASE("log_gamma obeys the recurrence across the series/Lanczos seams") {
    for (double x = 0.05; x < 49.0; x += 0.0173) {
        INFO("x = " << x);
        CHECK(std::abs(log_gamma(x + 1.0) - log_gamma(x) - std::log(x)) < 2e-14 * std::max(1.0, log_gamma(x + 1.0)));
    }
}

TEST_CASE("beta values and symmetry") {
    CHECK(rel_err(beta(1.0, 0.5), 2.0) < 1e-14);
    CHECK(rel_err(beta(0.5, 0.5), std::numbers::pi) < 1e-14);
    CHECK(rel_err(beta(1.25, 0.25), 3.7081493546027438369) < 1e-12);
    CHECK(rel_err(beta(0.25, 0.25), 7.4162987092054876737) < 1e-12);
    CHECK_THROWS_AS(beta(0.0, 1.0), DomainError);
    CHECK_THROWS_AS(beta(1.0, -2.0), DomainError);

    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.01, 20.0);
    for (int i = 0; i < 1000; ++i) {
        const double a = u(rng), b = u(rng);
        CHECK(beta(a, b) == doctest::Approx(beta(b, a)).epsilon(1e-15));
    }
}

TEST_CASE("Alpha range") {
    CHECK_THROWS_AS(Alpha(0.0), DomainError);
    CHECK_THROWS_AS(Alpha(2.0), DomainError);
    CHECK_THROWS_AS(Alpha(-0.3), DomainError);
    CHECK_NOTHROW(Alpha(1e-9));
    CHECK(Alpha(1.5).in_hardy_range());
    CHECK_FALSE(Alpha(1.0).in_hardy_range());
}

TEST_CASE("kappa golden values") {
    CHECK(std::abs(kappa(1, Alpha(1.0))) < 1e-15);
    CHECK(rel_err(kappa(1, Alpha(1.5)), 0.20735251809737327015) < 1e-12);
    CHECK(rel_err(kappa(2, Alpha(1.5)), 0.3624601576524740459) < 1e-12);
    CHECK(rel_err(kappa(2, Alpha(1.25)), 0.087991223184141690747) < 1e-12);
    CHECK_THROWS_AS(kappa(0, Alpha(1.5)), DomainError);
}

TEST_CASE("kappa is positive away from alpha = 1 and vanishes quadratically there") {
    for (int i = 0; i < 1000; ++i) {
        const double a = 1.001 + 0.998 * i / 999.0;
        CHECK(kappa(1, Alpha(a)) > 0.0);
    }
    for (int i = 0; i < 1000; ++i) {
        const double a = 0.001 + 0.998 * i / 999.0;
        CHECK(kappa(1, Alpha(a)) > 0.0);
    }
    // Double zero: kappa(1 ± h) ≈ c h², same c on both sides to leading order.
    const double c_plus = kappa(1, Alpha(1.0 + 1e-4)) / 1e-8;
    const double c_minus = kappa(1, Alpha(1.0 - 1e-4)) / 1e-8;
    CHECK(c_plus > 0.0);
    CHECK(c_plus == doctest::Approx(c_minus).epsilon(1e-3));
    CHECK(kappa(1, Alpha(1.0 + 1e-8)) < 1e-14);
}

TEST_CASE("killed constant") {
    CHECK(rel_err(killed_constant(Alpha(1.5)), 0.87401918476403993682) < 1e-12);
    CHECK(rel_err(killed_constant(Alpha(1.25)), 0.8472626895791452754) < 1e-12);
    // B/(α2^α) = κ_{1,α} + 1/α
    for (double a : {0.3, 0.9, 1.2, 1.7}) CHECK(killed_constant(Alpha(a)) == doctest::Approx(kappa(1, Alpha(a)) + 1.0 / a));
}

TEST_CASE("phi") {
    for (double a : {0.3, 1.0, 1.5, 1.99}) CHECK(std::abs(phi(1.0, Alpha(a))) < 1e-15);
    CHECK(phi(0.0, Alpha(1.5)) == doctest::Approx(std::pow(2.0, 1.5) - 2.0).epsilon(1e-15));
    CHECK(phi(0.0, Alpha(0.5)) < 0.0);
    CHECK_THROWS_AS(phi(1.0 + 1e-12, Alpha(1.5)), DomainError);

    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> ux(-1.0, 1.0), ua(1e-3, 2.0 - 1e-3);
    for (int i = 0; i < 10000; ++i) {
        const double x = ux(rng);
        const Alpha a(ua(rng));
        CHECK(phi(x, a) + phi(-x, a) == doctest::Approx(2.0 * phi(x, a)).epsilon(1e-13).scale(1.0));
    }
}

TEST_CASE("remainder coefficients") {
    CHECK(rel_err(remainder_coeff_1d(Alpha(1.5), -1.0, 1.0), (4.0 - std::pow(2.0, 1.5)) / 3.0) < 1e-14);
    CHECK(remainder_coeff_1d(Alpha(1.0 + 1e-8), -1.0, 1.0) < 1e-7);
    CHECK(remainder_coeff_1d(Alpha(1.0 + 1e-8), -1.0, 1.0) > 0.0);
    CHECK(remainder_coeff_1d(Alpha(2.0 - 1e-8), -1.0, 1.0) == doctest::Approx(0.5).epsilon(1e-7));
    CHECK_THROWS_AS(remainder_coeff_1d(Alpha(1.0), -1.0, 1.0), DomainError);
    CHECK_THROWS_AS(remainder_coeff_1d(Alpha(0.7), -1.0, 1.0), DomainError);
    CHECK_THROWS_AS(remainder_coeff_1d(Alpha(1.5), 1.0, 1.0), DomainError);

    // coeff·(b − a) does not depend on the interval
    const double ref = remainder_coeff_1d(Alpha(1.3), 0.0, 1.0);
    for (auto [a, b] : {std::pair{-3.0, 5.0}, {0.25, 0.5}, {10.0, 10.001}})
        CHECK(remainder_coeff_1d(Alpha(1.3), a, b) * (b - a) == doctest::Approx(ref).epsilon(1e-14));

    for (double a : {1.1, 1.5, 1.9})
        CHECK(remainder_coeff_nd(1, Alpha(a), 3.0) == doctest::Approx(remainder_coeff_1d(Alpha(a), 0.0, 3.0)).epsilon(1e-14));
    CHECK(rel_err(remainder_coeff_nd(2, Alpha(1.5), 2.0), 0.93580573317763498889) < 1e-12);
    CHECK(remainder_coeff_nd(2, Alpha(1.0 + 1e-8), 1.0) < 1e-7);
    CHECK_THROWS_AS(remainder_coeff_nd(2, Alpha(0.5), 1.0), DomainError);
    CHECK_THROWS_AS(remainder_coeff_nd(2, Alpha(1.5), 0.0), DomainError);
}

TEST_CASE("constant report") {
    const auto r = constants(1, Alpha(1.0));
    CHECK(std::abs(r.kappa_n_alpha) < 1e-15);
    CHECK(r.beta_term == doctest::Approx(2.0));
    CHECK(r.remainder_coeff == 0.0);
    const auto r2 = constants(2, Alpha(1.5));
    CHECK(r2.remainder_coeff == doctest::Approx(2.0 * 0.93580573317763498889));
}
