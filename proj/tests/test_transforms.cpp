#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include <bric/transforms.hpp>

using namespace bric;

namespace {

double central_diff(double (*f)(double, SquashParams), double x, SquashParams p, double step) {
    return (f(x + step, p) - f(x - step, p)) / (2.0 * step);
}

double squash_eta(double s, SquashParams p) { return squash(s, p).eta; }

}  // namespace

TEST_CASE("squash hand values") {
    const auto at_zero = squash(0.0, {20.0});
    CHECK(at_zero.eta == 0.0);
    CHECK(at_zero.deriv == doctest::Approx(1.0 / std::sqrt(20.0)).epsilon(1e-14));

    const auto at_two = squash(2.0, {12.0});
    CHECK(at_two.eta == doctest::Approx(0.5).epsilon(1e-14));       // 2 / sqrt(16)
    CHECK(at_two.deriv == doctest::Approx(0.1875).epsilon(1e-14));  // 12 / (16 * 4)
}

TEST_CASE("squash is odd and strictly increasing") {
    std::mt19937 rng(41);
    std::uniform_real_distribution<double> dist(-10.0, 10.0);
    const SquashParams p{7.5};
    for (int i = 0; i < 200; ++i) {
        const double a = dist(rng);
        const double b = dist(rng);
        CHECK(squash(-a, p).eta == doctest::Approx(-squash(a, p).eta).epsilon(1e-15));
        if (a < b) {
            CHECK(squash(a, p).eta < squash(b, p).eta);
        } else if (b < a) {
            CHECK(squash(b, p).eta < squash(a, p).eta);
        }
        // |eta| <= |s| / sqrt(kappa)
        CHECK(std::abs(squash(a, p).eta) <= std::abs(a) / std::sqrt(p.kappa) + 1e-15);
    }
}

TEST_CASE("squash slope matches central finite differences") {
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> dist(-10.0, 10.0);
    const SquashParams p{20.0};
    for (int i = 0; i < 1000; ++i) {
        const double s = dist(rng);
        const double fd = central_diff(&squash_eta, s, p, 1e-5);
        const double analytic = squash(s, p).deriv;
        CHECK(analytic == doctest::Approx(fd).epsilon(1e-6));
        CHECK(analytic > 0.0);
        CHECK(analytic <= 1.0 / std::sqrt(p.kappa) + 1e-15);
    }
}

TEST_CASE("squash rejects non-finite input") {
    CHECK_THROWS_AS((void)squash(std::nan(""), {1.0}), std::domain_error);
    CHECK_THROWS_AS((void)squash(INFINITY, {1.0}), std::domain_error);
    CHECK_THROWS_AS((void)squash(1.0, {-1.0}), std::domain_error);
}

TEST_CASE("squash saturates without overflow for huge inputs") {
    // beyond ~1e150 the direct s^2 would overflow; the output saturates to
    // the correctly rounded value and the slope underflows cleanly
    const auto big = squash(1e200, {20.0});
    CHECK(big.eta == 1.0);
    CHECK(big.deriv == 0.0);
    const auto neg = squash(-1e200, {20.0});
    CHECK(neg.eta == -1.0);
    // at 1e6 the value is still strictly inside the interval
    CHECK(squash(1e6, {20.0}).eta < 1.0);
    CHECK(squash(1e6, {20.0}).eta > 1.0 - 1e-10);
}

TEST_CASE("squash_inverse hand values and roundtrip") {
    CHECK(squash_inverse(0.0, {3.0}) == 0.0);
    CHECK(squash_inverse(0.5, {12.0}) == doctest::Approx(2.0).epsilon(1e-14));

    std::mt19937 rng(43);
    std::uniform_real_distribution<double> dist(-10.0, 10.0);
    const SquashParams p{20.0};
    for (int i = 0; i < 100; ++i) {
        const double x = dist(rng);
        CHECK(squash_inverse(squash(x, p).eta, p) == doctest::Approx(x).epsilon(1e-12));
    }
    CHECK_THROWS_AS((void)squash_inverse(1.0, {1.0}), std::domain_error);
    CHECK_THROWS_AS((void)squash_inverse(-1.0001, {1.0}), std::domain_error);
}

TEST_CASE("funnel_gain values and monotonicity") {
    CHECK(funnel_gain(0.0) == 1.0);  // exact: the gain starts at one
    CHECK(funnel_gain(2.0) == doctest::Approx(std::sqrt(5.0)).epsilon(1e-14));
    CHECK(funnel_gain(1.0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));

    std::mt19937 rng(44);
    std::uniform_real_distribution<double> dist(0.0, 50.0);
    for (int i = 0; i < 200; ++i) {
        double a = dist(rng);
        double b = dist(rng);
        if (a > b) {
            std::swap(a, b);
        }
        if (a < b) {
            CHECK(funnel_gain(a) < funnel_gain(b));
        }
    }
    CHECK_THROWS_AS((void)funnel_gain(-0.1), std::domain_error);
}

TEST_CASE("barrier hand values, oddness, slope lower bound") {
    const auto at_zero = barrier(0.0);
    CHECK(at_zero.chi == 0.0);
    CHECK(at_zero.deriv == 1.0);

    const auto at_half = barrier(0.5);
    CHECK(at_half.chi == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
    CHECK(at_half.deriv == doctest::Approx(1.25 / 0.5625).epsilon(1e-14));

    std::mt19937 rng(45);
    std::uniform_real_distribution<double> dist(-0.99, 0.99);
    for (int i = 0; i < 200; ++i) {
        const double z = dist(rng);
        CHECK(barrier(-z).chi == doctest::Approx(-barrier(z).chi).epsilon(1e-15));
        CHECK(barrier(z).deriv >= 1.0);
    }
}

TEST_CASE("barrier slope matches central finite differences") {
    std::mt19937 rng(46);
    std::uniform_real_distribution<double> dist(-0.95, 0.95);
    for (int i = 0; i < 1000; ++i) {
        const double z = dist(rng);
        const double step = 1e-6;
        const double fd = (barrier(z + step).chi - barrier(z - step).chi) / (2.0 * step);
        CHECK(barrier(z).deriv == doctest::Approx(fd).epsilon(1e-6));
    }
}

TEST_CASE("barrier domain guard") {
    CHECK_THROWS_AS((void)barrier(1.0), FunnelViolation);
    CHECK_THROWS_AS((void)barrier(-1.0), FunnelViolation);
    CHECK_THROWS_AS((void)barrier(1.5), FunnelViolation);
    try {
        (void)barrier(-1.2);
        FAIL("expected FunnelViolation");
    } catch (const FunnelViolation& v) {
        CHECK(v.zeta() == doctest::Approx(-1.2));
    }
}

TEST_CASE("barrier_inverse hand values and roundtrip") {
    CHECK(barrier_inverse(0.0) == 0.0);  // removable singularity
    CHECK(barrier_inverse(2.0 / 3.0) == doctest::Approx(0.5).epsilon(1e-14));

    std::mt19937 rng(47);
    std::uniform_real_distribution<double> dist(-0.99, 0.99);
    for (int i = 0; i < 100; ++i) {
        const double z = dist(rng);
        CHECK(barrier_inverse(barrier(z).chi) == doctest::Approx(z).epsilon(1e-12));
    }
    CHECK_THROWS_AS((void)barrier_inverse(std::nan("")), std::domain_error);
}

TEST_CASE("asymmetric barrier") {
    CHECK(barrier_asym(0.0, {2.0, 3.0}) == 0.0);
    // 0.5 / ((1 - 0.5) * (1 + 0.25)) = 0.8
    CHECK(barrier_asym(0.5, {2.0, 1.0}) == doctest::Approx(0.8).epsilon(1e-14));

    std::mt19937 rng(48);
    std::uniform_real_distribution<double> dist(-0.99, 0.99);
    for (int i = 0; i < 100; ++i) {
        const double z = dist(rng);
        CHECK(barrier_asym(z, {1.0, 1.0}) == doctest::Approx(barrier(z).chi).epsilon(1e-13));
    }
    CHECK_THROWS_AS((void)barrier_asym(1.0, {2.0, 1.0}), FunnelViolation);
    CHECK_THROWS_AS((void)barrier_asym(-2.0, {2.0, 1.0}), FunnelViolation);
    CHECK_NOTHROW((void)barrier_asym(-1.5, {2.0, 1.0}));
}

TEST_CASE("asymmetric barrier inverse roundtrip") {
    CHECK(barrier_asym_inverse(0.0, {2.0, 3.0}) == 0.0);
    CHECK(barrier_asym_inverse(0.8, {2.0, 1.0}) == doctest::Approx(0.5).epsilon(1e-13));

    std::mt19937 rng(49);
    std::uniform_real_distribution<double> unit(0.01, 0.99);
    std::uniform_real_distribution<double> bound(0.3, 3.0);
    for (int i = 0; i < 200; ++i) {
        const AsymBounds b{bound(rng), bound(rng)};
        // span the open interval (-lower, upper) without touching the edges
        const double z = -b.lower + unit(rng) * (b.lower + b.upper) * 0.98;
        if (z <= -0.99 * b.lower || z >= 0.99 * b.upper) {
            continue;
        }
        const double chi = barrier_asym(z, b);
        CHECK(barrier_asym_inverse(chi, b) == doctest::Approx(z).epsilon(1e-12));
    }
    // reduces to the symmetric inverse
    for (int i = 0; i < 50; ++i) {
        const double chi = std::uniform_real_distribution<double>(-20.0, 20.0)(rng);
        CHECK(barrier_asym_inverse(chi, {1.0, 1.0}) ==
              doctest::Approx(barrier_inverse(chi)).epsilon(1e-13));
    }
}
