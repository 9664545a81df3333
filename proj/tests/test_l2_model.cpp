#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <memory>
#include <numbers>

#include "holobreak/errors.hpp"
#include "holobreak/l2_model.hpp"
#include "holobreak/rc_transform.hpp"
#include "holobreak/special.hpp"

using namespace holobreak;

namespace {

const Complex I(0, 1);

Complex ipow(int k) { return std::pow(I, k); }

// z^{lambda3 - 1 + shift} e^{-rate z}
L2Fn1 power_exp(double lambda3, double shift, double rate) {
    L2Fn1 h;
    h.lambda = lambda3;
    h.decay = rate;
    h.edge = lambda3 - 1 + shift;
    h.f = [=](double z) { return Complex(std::pow(z, lambda3 - 1 + shift) * std::exp(-rate * z)); };
    return h;
}

std::vector<L2Fn1> family(double lambda3) {
    return {power_exp(lambda3, 0, 1), power_exp(lambda3, 1, 1), power_exp(lambda3, 0, 2)};
}

const std::vector<std::pair<double, double>> kPairs{{2, 2}, {2.5, 3}, {4, 2}};

}  // namespace

TEST_CASE("coordinates and weights") {
    auto [x, y] = iota(2, 0);
    CHECK(x == 1);
    CHECK(y == 1);
    L2Params p{2.5, 1.75, 2};
    for (double z : {0.1, 1.0, 7.5})
        for (double v : {-0.9, -0.2, 0.0, 0.55, 0.99}) {
            auto [a, b] = iota(z, v);
            auto [z2, v2] = iota_inv(a, b);
            CHECK(z2 == doctest::Approx(z).epsilon(1e-15));
            CHECK(std::abs(v2 - v) < 1e-15);
            // Jacobian by central differences.
            double h = 1e-6;
            auto [xz1, yz1] = iota(z + h, v);
            auto [xz0, yz0] = iota(z - h, v);
            auto [xv1, yv1] = iota(z, v + h);
            auto [xv0, yv0] = iota(z, v - h);
            double jac = ((xz1 - xz0) * (yv1 - yv0) - (xv1 - xv0) * (yz1 - yz0)) / (4 * h * h);
            CHECK(jac == doctest::Approx(z / 2).epsilon(1e-8));
            // M^{-2} x^{1-l1} y^{1-l2} (z/2) = 2^{-a-b-1} z^{1-l3} (1-v)^a (1+v)^b
            double m = weight_M(p, z, v);
            double lhs = std::pow(a, 1 - p.lambda1) * std::pow(b, 1 - p.lambda2) * (z / 2) / (m * m);
            double rhs = std::pow(2.0, -p.alpha() - p.beta() - 1) * std::pow(z, 1 - p.lambda3()) *
                         std::pow(1 - v, p.alpha()) * std::pow(1 + v, p.beta());
            CHECK(lhs == doctest::Approx(rhs).epsilon(1e-13));
        }
    CHECK_THROWS_AS(weight_M(p, 1.0, 1.0), DomainError);
}

TEST_CASE("phi") {
    L2Fn1 h = power_exp(7.0, 0, 1);
    L2Params p0{2.5, 1.5, 0};
    h.lambda = p0.lambda3();
    auto f0 = phi_apply(p0, h);
    for (double x : {0.2, 1.3})
        for (double y : {0.7, 2.1}) {
            Complex ref = std::pow(x, 1.5) * std::pow(y, 0.5) * std::pow(x + y, -3.0) * h(x + y);
            CHECK(std::abs(f0(x, y) - ref) < 1e-14 * std::abs(ref));
        }
    for (auto [l1, l2] : kPairs)
        for (int ell = 0; ell <= 4; ++ell) {
            L2Params p{l1, l2, ell};
            L2Fn1 k = power_exp(p.lambda3(), 0, 1);
            auto f = phi_apply(p, k);
            for (double x : {0.3, 1.1, 3.0})
                for (double y : {0.4, 2.2}) {
                    double z = x + y;
                    Complex ref = std::pow(x, l1 - 1) * std::exp(-x) * std::pow(y, l2 - 1) * std::exp(-y) * std::pow(z, ell) *
                                  jacobi_poly(ell, Complex(l1 - 1), Complex(l2 - 1))((y - x) / z);
                    CHECK(std::abs(f(x, y) - ref) <= 1e-12 * std::abs(ref) + 1e-300);
                    auto [zz, v] = iota_inv(x, y);
                    Complex viaiota = phi_iota_form(p, k, zz, v);
                    CHECK(std::abs(f(x, y) - viaiota) <= 1e-12 * std::abs(ref) + 1e-300);
                }
        }
}

TEST_CASE("rchat") {
    L2Fn2 e;
    e.lambda1 = 1.5;
    e.lambda2 = 1.5;
    e.edge_x = 0;
    e.edge_y = 0;
    e.f = [](double x, double y) { return Complex(std::exp(-x - y)); };
    for (double z : {0.5, 1.0, 4.0}) {
        auto r = rchat_apply(L2Params{1.5, 1.5, 0}, e, z);
        CHECK(r.converged);
        CHECK(std::abs(r.value - z * std::exp(-z)) < 1e-14);
    }
    L2Fn2 far = e;
    far.f = [](double x, double y) { return x + y < 5 ? Complex(0.0) : Complex(1.0); };
    CHECK(std::abs(rchat_apply(L2Params{1.5, 1.5, 1}, far, 1.0).value) == 0.0);

    for (auto [l1, l2] : kPairs)
        for (int ell = 0; ell <= 4; ++ell) {
            L2Params p{l1, l2, ell};
            Complex c = c_ell(l1, l2, ell);
            for (const auto& h : family(p.lambda3())) {
                auto f = phi_apply(p, h);
                for (double z : {0.3, 1.0, 2.7}) {
                    auto r = rchat_apply(p, f, z);
                    Complex ref = c / ipow(ell) * h(z);
                    CHECK(std::abs(r.value - ref) < 1e-9 * std::abs(ref));
                }
            }
        }
}

TEST_CASE("norms") {
    for (double l3 : {3.0, 4.5, 7.0}) {
        auto n = weighted_norm_sq(power_exp(l3, 0, 1));
        CHECK(n.converged);
        CHECK(n.value.real() == doctest::Approx(std::tgamma(l3) / std::pow(2.0, l3)).epsilon(1e-13));
    }
    L2Fn1 zero = power_exp(3, 0, 1);
    zero.f = [](double) { return Complex(0.0); };
    CHECK(weighted_norm_sq(zero).value == Complex(0.0));

    auto p22 = phi_apply(L2Params{2, 2, 0}, power_exp(4, 0, 1));
    double ratio = weighted_norm_sq(p22).value.real() / weighted_norm_sq(power_exp(4, 0, 1)).value.real();
    CHECK(std::abs(ratio - 1.0 / 6.0) < 1e-8 / 6.0);

    for (auto [l1, l2] : kPairs)
        for (int ell = 0; ell <= 4; ++ell) {
            L2Params p{l1, l2, ell};
            double c = c_ell(l1, l2, ell).real();
            for (const auto& h : family(p.lambda3())) {
                auto nf = weighted_norm_sq(phi_apply(p, h));
                auto nh = weighted_norm_sq(h);
                CHECK(nf.converged);
                CHECK(std::abs(nf.value.real() / nh.value.real() - c) < 1e-7 * c);
            }
        }
}

TEST_CASE("mixed Plancherel sum and adjoint") {
    for (auto [l1, l2] : kPairs) {
        std::vector<L2Fn2> parts;
        double expect = 0;
        for (int ell = 0; ell <= 3; ++ell) {
            L2Params p{l1, l2, ell};
            L2Fn1 h = power_exp(p.lambda3(), ell % 2, 1.0 + 0.25 * ell);
            parts.push_back(phi_apply(p, h));
            expect += c_ell(l1, l2, ell).real() * weighted_norm_sq(h).value.real();
        }
        L2Fn2 sum = parts[0];
        sum.decay = 1.0;
        sum.f = [parts](double x, double y) {
            Complex s(0.0);
            for (std::size_t k = 0; k < parts.size(); ++k) s += ipow(int(k)) * parts[k](x, y);
            return s;
        };
        auto n = weighted_norm_sq(sum);
        CHECK(n.converged);
        CHECK(std::abs(n.value.real() - expect) < 1e-6 * expect);
    }
    // <h, RC F> = i^ell <Phi h, F>
    for (auto [l1, l2] : kPairs)
        for (int ell = 0; ell <= 3; ++ell) {
            L2Params p{l1, l2, ell};
            for (const auto& h : family(p.lambda3())) {
                L2Fn2 F;
                F.lambda1 = l1;
                F.lambda2 = l2;
                F.decay = 1.5;
                F.f = [=](double x, double y) {
                    return std::pow(x, l1 - 1) * std::pow(y, l2 - 1) * std::exp(-1.5 * (x + y)) * Complex(1 + x, 2 * y - x * y) / (2.0 + y);
                };
                L2Fn1 rf;
                rf.lambda = p.lambda3();
                rf.decay = 1.5;
                rf.edge = p.lambda3() - 1;
                rf.f = [=](double z) { return rchat_apply(p, F, z).value; };
                Complex lhs = inner_product(h, rf).value;
                Complex rhs = ipow(ell) * inner_product(phi_apply(p, h), F).value;
                CHECK(std::abs(lhs - rhs) < 1e-7 * std::abs(lhs));
            }
        }
}

TEST_CASE("inversion") {
    for (auto [l1, l2] : kPairs)
        for (int ell = 0; ell <= 3; ++ell) {
            L2Params p{l1, l2, ell};
            L2Fn1 h = power_exp(p.lambda3(), 1, 1);
            auto F = phi_apply(p, h);
            L2Fn1 g;
            g.lambda = p.lambda3();
            g.edge = h.edge;
            g.f = [=](double z) { return rchat_apply(p, F, z).value; };
            auto back = invert_rchat(l1, l2, {{ell, g}}, 8);
            for (double x : {0.2, 1.0, 2.5})
                for (double y : {0.3, 1.7}) {
                    Complex ref = F(x, y);
                    CHECK(std::abs(back(x, y) - ref) < 1e-8 * std::abs(ref));
                }
        }
    auto none = invert_rchat(2, 2, {}, 5);
    CHECK(none(0.5, 0.5) == Complex(0.0));

    // Truncated Jacobi series of e^{-x-y}.
    double l1 = 1.5, l2 = 1.25;
    L2Fn2 F;
    F.lambda1 = l1;
    F.lambda2 = l2;
    F.edge_x = 0;
    F.edge_y = 0;
    F.f = [](double x, double y) { return Complex(std::exp(-x - y)); };
    std::map<int, L2Fn1> comps;
    for (int ell = 0; ell <= 8; ++ell) {
        L2Params p{l1, l2, ell};
        L2Fn1 g;
        g.lambda = p.lambda3();
        g.edge = ell + 1;
        // Quadrature visits each z once per fiber node; remember the last one.
        auto memo = std::make_shared<std::pair<double, Complex>>(NAN, 0.0);
        g.f = [=](double z) {
            if (!(std::abs(memo->first - z) <= 1e-14 * z)) *memo = {z, rchat_apply(p, F, z).value};
            return memo->second;
        };
        comps[ell] = g;
    }
    double prev = INFINITY;
    for (int L = 0; L <= 8; ++L) {
        auto FL = invert_rchat(l1, l2, comps, L);
        L2Fn2 res = F;
        res.f = [=](double x, double y) { return F(x, y) - FL(x, y); };
        auto n = weighted_norm_sq(res, {1e-6, 16, 256});
        CHECK(n.value.real() <= prev);
        prev = n.value.real();
    }
}

TEST_CASE("fourier-laplace") {
    L2Fn1 e = power_exp(1, 0, 1);
    for (Complex zeta : {Complex(0, 1), Complex(0.7, 0.3), Complex(-2, 1.5)}) {
        auto r = fourier_laplace(e, zeta);
        CHECK(std::abs(r.value - 1.0 / (1.0 - I * zeta)) < 1e-12);
    }
    for (double lam : {2.0, 3.0, 4.5}) {
        L2Fn1 f = power_exp(lam, 0, 1);
        for (Complex zeta : {Complex(0, 0.5), Complex(1.2, 0.25), Complex(-3, 2), Complex(5, 0.1)}) {
            auto r = fourier_laplace(f, zeta);
            Complex ref = complex_gamma(lam) * std::pow(1.0 - I * zeta, -lam);
            CHECK(std::abs(r.value - ref) < 1e-9 * std::abs(ref));
        }
    }
    CHECK_THROWS_AS(fourier_laplace(e, Complex(0, -2)), DomainError);
}

TEST_CASE("isometry constant") {
    for (double lam : {3.0, 4.0}) {
        auto chk = fourier_laplace_isometry(lam);
        CHECK(std::abs(chk.ratio - chk.expected) < 1e-3 * chk.expected);
        CHECK(chk.truncation_delta < 1e-3 * chk.ratio);
    }
}
