#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "holobreak/errors.hpp"
#include "holobreak/quadrature.hpp"

using namespace holobreak;

namespace {

// Moments of (1-t)^a (1+t)^b from integration by parts:
// (a+b+k+2) m_{k+1} = (b-a) m_k + k m_{k-1}.
double jacobi_moment(int k, double a, double b) {
    long double prev = 0, cur = std::pow(2.0L, a + b + 1) * beta_fn_real(a + 1, b + 1);
    for (int j = 0; j < k; ++j) {
        long double next = ((b - a) * cur + j * prev) / (a + b + j + 2);
        prev = cur;
        cur = next;
    }
    return static_cast<double>(cur);
}

}  // namespace

TEST_CASE("trivial rules") {
    auto r = build_rule(WeightFamily::legendre(), 1);
    REQUIRE(r->size() == 1);
    CHECK(std::abs(r->nodes[0]) < 1e-15);
    CHECK(r->weights[0] == doctest::Approx(2.0).epsilon(1e-15));
    auto g = build_rule(WeightFamily::jacobi(0, 0), 2);
    REQUIRE(g->size() == 2);
    CHECK(g->nodes[0] == doctest::Approx(-1 / std::sqrt(3.0)).epsilon(1e-15));
    CHECK(g->nodes[1] == doctest::Approx(1 / std::sqrt(3.0)).epsilon(1e-15));
    CHECK(g->weights[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(g->weights[1] == doctest::Approx(1.0).epsilon(1e-15));
    auto j11 = build_rule(WeightFamily::jacobi(1, 1), 3);
    CHECK(integrate([](double) { return Complex(1.0); }, *j11).real() == doctest::Approx(4.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("invalid parameters") {
    CHECK_THROWS_AS(build_rule(WeightFamily::jacobi(-1.0, 0.5), 4), DomainError);
    CHECK_THROWS_AS(build_rule(WeightFamily::laguerre(-1.5), 4), DomainError);
    CHECK_THROWS_AS(build_rule(WeightFamily::legendre(), 0), DomainError);
}

TEST_CASE("rule invariants and beta mass") {
    for (double a : {-0.5, 0.0, 0.3, 1.0, 2.5, 7.0})
        for (double b : {-0.75, 0.0, 1.5, 4.0})
            for (int n : {1, 3, 8, 20}) {
                auto r = build_rule(WeightFamily::jacobi(a, b), n);
                REQUIRE(r->size() == static_cast<std::size_t>(n));
                double mass = 0;
                for (std::size_t i = 0; i < r->size(); ++i) {
                    CHECK(r->weights[i] > 0);
                    CHECK(r->nodes[i] > -1);
                    CHECK(r->nodes[i] < 1);
                    if (i) CHECK(r->nodes[i] > r->nodes[i - 1]);
                    mass += r->weights[i];
                }
                double ref = std::pow(2.0, a + b + 1) * beta_fn_real(a + 1, b + 1);
                CHECK(std::abs(mass - ref) <= 1e-13 * ref);
            }
}

TEST_CASE("polynomial exactness") {
    for (double a : {0.0, 0.5, 2.0})
        for (double b : {-0.5, 1.0})
            for (int n : {2, 5, 8}) {
                auto r = build_rule(WeightFamily::jacobi(a, b), n);
                for (int k = 0; k <= 2 * n - 1; ++k) {
                    double num = integrate([k](double t) { return Complex(std::pow(t, k)); }, *r).real();
                    double ref = jacobi_moment(k, a, b);
                    double scale = std::pow(2.0, a + b + 1) * beta_fn_real(a + 1, b + 1);
                    CHECK(std::abs(num - ref) <= 1e-13 * scale);
                }
            }
    for (double g : {-0.5, 0.0, 1.5, 3.0})
        for (double s : {1.0, 2.0, 0.5})
            for (int n : {3, 10}) {
                auto r = build_rule(WeightFamily::laguerre(g, s), n);
                for (int k = 0; k <= 2 * n - 1; ++k) {
                    double num = integrate([k](double t) { return Complex(std::pow(t, k)); }, *r).real();
                    double ref = std::tgamma(k + g + 1) / std::pow(s, k + g + 1);
                    CHECK(std::abs(num - ref) <= 1e-13 * ref);
                }
            }
    auto leg = build_rule(WeightFamily::legendre(2.0, 5.0), 6);
    for (int k = 0; k <= 11; ++k) {
        double num = integrate([k](double t) { return Complex(std::pow(t, k)); }, *leg).real();
        double ref = (std::pow(5.0, k + 1) - std::pow(2.0, k + 1)) / (k + 1);
        CHECK(std::abs(num - ref) <= 1e-13 * ref);
    }
}

TEST_CASE("half-line weight cancellation") {
    // z^{lambda-1} e^{-2z} z^{1-lambda} integrates to 1/2.
    for (double lambda : {1.5, 3.5, 6.0}) {
        auto f = [&](double z) { return Complex(std::pow(z, lambda - 1) * std::pow(z, 1 - lambda)); };
        auto e = integrate_adaptive(f, WeightFamily::laguerre(0.0, 2.0), 1e-12);
        CHECK(e.converged);
        CHECK(std::abs(e.value - 0.5) < 1e-13);
    }
    // Same integral with the power folded into the weight.
    double lambda = 1.5;
    auto r = build_rule(WeightFamily::laguerre(1 - lambda, 2.0), 1);
    CHECK(r->weights[0] == doctest::Approx(std::tgamma(2 - lambda) / std::pow(2.0, 2 - lambda)).epsilon(1e-14));
}

TEST_CASE("adaptive budget") {
    auto rough = [](double t) { return Complex(std::sqrt(std::abs(t - 0.1234))); };
    auto e = integrate_adaptive(rough, WeightFamily::jacobi(0, 0), 1e-15, {8, 16, 1e-300});
    CHECK_FALSE(e.converged);
    CHECK(e.order == 16);
    auto ok = integrate_adaptive([](double t) { return Complex(std::exp(t)); }, WeightFamily::jacobi(0, 0), 1e-13);
    CHECK(ok.converged);
    CHECK(std::abs(ok.value - (std::exp(1.0) - std::exp(-1.0))) < 1e-13);
}

TEST_CASE("tridiagonal eigen") {
    // Tridiag(1,2,1) of size 3 has eigenvalues 2 - sqrt2, 2, 2 + sqrt2.
    std::vector<double> d{2, 2, 2}, first;
    tridiagonal_eigen(d, {1, 1}, first);
    std::sort(d.begin(), d.end());
    CHECK(d[0] == doctest::Approx(2 - std::sqrt(2.0)).epsilon(1e-14));
    CHECK(d[1] == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(d[2] == doctest::Approx(2 + std::sqrt(2.0)).epsilon(1e-14));
    double s = 0;
    for (double v : first) s += v * v;
    CHECK(s == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("product regions") {
    double l1 = 2.5, l2 = 1.75;
    auto f = [&](std::span<const double> p) {
        double x = p[0], y = p[1];
        return Complex(std::exp(-x - y) * std::pow(x, 1 - l1) * std::pow(y, 1 - l2) * std::pow(x, l1 - 1) *
                       std::pow(y, l2 - 1));
    };
    Axis half{0, 60, Grading::TowardLower, true, 0};
    auto e = integrate_region(f, {half, half}, 1e-11);
    CHECK(e.converged);
    CHECK(std::abs(e.value - 1.0) < 1e-10);

    // Truncated Bergman norm of (zeta+i)^{-4} with weight y^2 over the upper half-plane: pi/192.
    auto berg = [](std::span<const double> p) {
        double x = p[0], y = p[1];
        return Complex(std::pow(x * x + (y + 1) * (y + 1), -4.0) * y * y);
    };
    const double radius = 1e3;
    RegionOptions opts;
    opts.check_truncation = true;
    auto b = integrate_region(berg, {{-radius, radius, Grading::TowardCenter, true, 0}, {0, radius, Grading::TowardLower, true, 0}},
                              1e-10, opts);
    CHECK(b.converged);
    CHECK(b.truncation_delta < 1e-3 * std::abs(b.value));
    CHECK(std::abs(b.value - std::numbers::pi / 192) < 1e-6);

    // 3-D and 4-D separable smoke.
    auto sep = [](std::span<const double> p) {
        double v = 1;
        for (double t : p) v *= std::cos(t);
        return Complex(v);
    };
    for (int d : {3, 4}) {
        std::vector<Axis> axes(static_cast<std::size_t>(d), Axis{0, 1, Grading::Uniform, false, 0});
        auto r = integrate_region(sep, axes, 1e-12);
        CHECK(std::abs(r.value - std::pow(std::sin(1.0), d)) < 1e-12);
    }
    CHECK_THROWS_AS(integrate_region(sep, std::vector<Axis>(5, Axis{}), 1e-6), DomainError);
}
