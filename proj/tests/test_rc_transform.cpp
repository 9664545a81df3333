#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "holobreak/errors.hpp"
#include "holobreak/quadrature.hpp"
#include "holobreak/rc_transform.hpp"
#include "holobreak/special.hpp"

using namespace holobreak;
using GR = GaussianRational;
using Sum = HoloSum<Exact>;
using NSum = HoloSum<Numeric>;
using Poly = MPoly<GR>;

namespace {

GR q(long p, long d = 1) { return GR(mpq_class(p, d)); }
const GR I = GR::imag_unit();

Poly diff12() { return Poly::variable(2, 0) - Poly::variable(2, 1); }

// Mixed library of two-variable test sums.
std::vector<Sum> test_library() {
    std::vector<Sum> lib;
    lib.push_back(Sum::term(2, q(1), {0, 0}, {{Poly::affine(2, 0, I), mpq_class(-5, 2)}, {Poly::affine(2, 1, I), mpq_class(-4, 3)}}));
    lib.push_back(Sum::term(2, q(2, 3) + I, {2, 1}, {{Poly::affine(2, 0, q(2) * I), mpq_class(-7, 4)}}));
    Poly mixed = Poly::variable(2, 0) + Poly::variable(2, 1).scaled(q(2)) + Poly::constant(2, q(5) * I);
    lib.push_back(Sum::term(2, q(-1), {1, 0}, {{mixed, mpq_class(-1, 2)}, {Poly::affine(2, 1, I), mpq_class(-3)}}));
    lib.push_back(Sum::from_poly(diff12().pow(3) * Poly::variable(2, 0)));
    return lib;
}

const std::vector<std::pair<mpq_class, mpq_class>> kParams{
    {mpq_class(2), mpq_class(2)}, {mpq_class(5, 2), mpq_class(4, 3)}, {mpq_class(7, 3), mpq_class(3, 2)}, {mpq_class(3), mpq_class(11, 5)}};

}  // namespace

TEST_CASE("low-order examples") {
    mpq_class l1(5, 2), l2(4, 3);
    for (const Sum& f : test_library()) {
        Sum r0 = rc_apply(RCParams<Exact>{l1, l2, 0}, f);
        CHECK(equal_exact(r0, restrict(f, Substitution::diagonal(1, 0))));
        Sum r1 = rc_apply(RCParams<Exact>{l1, l2, 1}, f);
        Sum expect = differentiate(f, 0).scaled(GR(l2)) - differentiate(f, 1).scaled(GR(l1));
        CHECK(equal_exact(r1, restrict(expect, Substitution::diagonal(1, 0))));
    }
}

TEST_CASE("three symbol forms agree exactly") {
    for (const auto& [l1, l2] : kParams)
        for (int ell = 0; ell <= 6; ++ell) {
            RCParams<Exact> p{l1, l2, ell};
            auto coeff = rc_symbol(p, RCForm::Coefficient);
            CHECK(coeff == rc_symbol(p, RCForm::InflatedJacobi));
            CHECK(coeff == rc_symbol(p, RCForm::Variant));
            for (const Sum& f : test_library()) {
                Sum a = rc_apply(p, f, RCForm::Coefficient);
                CHECK(equal_exact(a, rc_apply(p, f, RCForm::InflatedJacobi)));
                CHECK(equal_exact(a, rc_apply(p, f, RCForm::Variant)));
            }
        }
}

TEST_CASE("intertwining with diagonal sl2") {
    for (const auto& [l1, l2] : kParams)
        for (int ell = 0; ell <= 4; ++ell) {
            RCParams<Exact> p{l1, l2, ell};
            for (const Sum& f : test_library())
                for (auto z : {Sl2Generator::H, Sl2Generator::X, Sl2Generator::Y}) {
                    Sum lhs = rc_apply(p, sl2_action_diag<Exact>(z, l1, l2, f));
                    Sum rhs = sl2_action<Exact>(z, p.lambda3(), rc_apply(p, f));
                    CHECK(equal_exact(lhs, rhs));
                }
        }
}

TEST_CASE("constants") {
    CHECK(std::abs(c_ell(2.0, 2.0, 0) - 1.0 / 6.0) < 1e-15);
    CHECK(std::abs(r_ell(2.0, 2.0, 0) - 1.0 / (2 * std::numbers::pi)) < 1e-15);
    CHECK(rc_operator_norm_sq(2.0, 2.0, 0) == doctest::Approx(1.0 / (12 * std::numbers::pi)).epsilon(1e-14));
    CHECK(std::abs(b_const(2.0) - std::numbers::pi) < 1e-15);
    CHECK_THROWS_AS(b_const(1.0), PoleError);
    CHECK_THROWS_AS(b_const(-2.0), PoleError);
    CHECK_THROWS_AS(rc_operator_norm_sq(1.0, 2.0, 0), DomainError);

    // c_ell equals the squared Jacobi norm over 2^{l1+l2-1}; norm taken by quadrature.
    for (double l1 : {1.5, 2.0, 3.25})
        for (double l2 : {1.25, 2.0, 4.0})
            for (int ell = 0; ell <= 8; ++ell) {
                auto rule = build_rule(WeightFamily::jacobi(l1 - 1, l2 - 1), ell + 2);
                double norm = integrate([&](double t) { return Complex(std::norm(jacobi_eval(ell, l1 - 1, l2 - 1, t))); }, *rule).real();
                double ref = norm / std::pow(2.0, l1 + l2 - 1);
                CHECK(std::abs(c_ell(l1, l2, ell) - ref) < 1e-12 * ref);
            }
    // Nonvanishing in the right half-plane.
    for (Complex l1 : {Complex(0.1, 0), Complex(0.5, 3), Complex(2, -1), Complex(0.01, 0.01)})
        for (Complex l2 : {Complex(0.2, 0), Complex(1, 1), Complex(0.3, -2)})
            for (int ell = 0; ell <= 10; ++ell) {
                CHECK(classify_c_ell(l1, l2, ell) == CEllClass::Nonzero);
                CHECK(std::abs(c_ell(l1, l2, ell)) > 0);
            }
    // Plancherel weights positive.
    for (double l1 : {1.01, 1.5, 2.0, 3.7, 8.0})
        for (double l2 : {1.05, 2.5, 6.0})
            for (int ell = 0; ell <= 20; ++ell) {
                double c = c_ell(l1, l2, ell).real(), r = r_ell(l1, l2, ell).real();
                CHECK(1.0 / (r * c) > 0);
                CHECK(c / r > 0);
            }
    // Removable point s + 2ell - 1 = 0 with s + ell - 1 a nonpositive integer.
    Complex lim = c_ell(-0.5, -0.5, 1);
    Complex near = complex_gamma(0.5 + 1e-7) * complex_gamma(0.5) * reciprocal_gamma(-1.0 + 1e-7) / (1e-7);
    CHECK(std::abs(lim - near) < 1e-5 * std::abs(lim));
}

TEST_CASE("zero classification") {
    auto a = zero_classification(2, 2, 6);
    CHECK_FALSE(a.condition_holds);
    CHECK(a.value_class == CEllClass::Nonzero);
    CHECK(std::abs(c_ell(2.0, 2.0, 1)) > 0);
    auto b = zero_classification(0, 0, 2);
    CHECK(b.condition_holds);
    CHECK(b.value_class == CEllClass::Zero);
    CHECK(c_ell(0.0, 0.0, 1) == Complex(0.0));
    auto c = zero_classification(1, 1, 2);
    CHECK(c.ell == 0);
    CHECK_FALSE(c.condition_holds);
    CHECK_THROWS_AS(zero_classification(1, 1, 3), DomainError);
    int collisions = 0, checked = 0;
    for (long l1 = -8; l1 <= 8; ++l1)
        for (long l2 = -8; l2 <= 8; ++l2)
            for (int ell = 0; ell <= 8; ++ell) {
                auto z = zero_classification(l1, l2, l1 + l2 + 2 * ell);
                CHECK(z.agrees());
                collisions += z.collision();
                ++checked;
                if (z.value_class == CEllClass::Zero) CHECK(c_ell(double(l1), double(l2), ell) == Complex(0.0));
                if (z.value_class == CEllClass::Nonzero) CHECK(std::abs(c_ell(double(l1), double(l2), ell)) > 0);
            }
    CHECK(collisions > 0);
    CHECK(collisions < checked);
}

TEST_CASE("psi quadrature against the K-type closed form") {
    for (auto [l1, l2] : {std::pair{2.0, 2.0}, std::pair{2.5, 1.75}, std::pair{0.5, 3.0}})
        for (int ell = 0; ell <= 5; ++ell) {
            RCParams<Numeric> p{l1, l2, ell};
            NSum closed = psi_ktype_closed_form(p).full();
            Complex l3 = p.lambda3();
            auto g = [&](Complex z) { return std::pow(z + Complex(0, 1), -l3); };
            for (const auto& pt : sample_points(TubeDomain::UpperHalfPlanes, 2)) {
                Complex num = psi_quadrature(p, g, pt[0], pt[1]);
                Complex ref = evaluate(closed, pt);
                CHECK(std::abs(num - ref) < 1e-9 * std::abs(ref));
            }
        }
    // Complex parameters.
    RCParams<Numeric> pc{Complex(2.5, 0.7), Complex(1.5, -0.4), 2};
    NSum closed = psi_ktype_closed_form(pc).full();
    auto g = [&](Complex z) { return std::pow(z + Complex(0, 1), -pc.lambda3()); };
    for (const auto& pt : sample_points(TubeDomain::UpperHalfPlanes, 2, 5)) {
        Complex ref = evaluate(closed, pt);
        CHECK(std::abs(psi_quadrature(pc, g, pt[0], pt[1]) - ref) < 1e-9 * std::abs(ref));
    }
    // Diagonal, ell >= 1.
    RCParams<Numeric> p1{2.0, 3.0, 2};
    CHECK(psi_quadrature(p1, [](Complex) { return Complex(1.0); }, Complex(0.3, 1), Complex(0.3, 1)) == Complex(0.0));
    // ell = 0, g = 1: the beta integral.
    RCParams<Numeric> p0{2.5, 1.5, 0};
    Complex one = psi_quadrature(p0, [](Complex) { return Complex(1.0); }, Complex(0.3, 1), Complex(-0.2, 0.5));
    CHECK(std::abs(one - beta(2.5, 1.5)) < 1e-13);
    CHECK_THROWS_AS(psi_quadrature(RCParams<Numeric>{-1.5, 2.0, 0}, [](Complex) { return Complex(1.0); }, Complex(0, 1), Complex(0, 2)),
                    DomainError);
}

TEST_CASE("K-type algebra") {
    for (const auto& [l1, l2] : kParams)
        for (int ell = 0; ell <= 6; ++ell) {
            RCParams<Exact> p{l1, l2, ell};
            auto k = psi_ktype_closed_form(p);
            // Composition: RC(shape) = (l1+l2+ell-1)_ell (zeta+i)^{-l3}, exactly.
            GR poch = pochhammer(GR(l1 + l2 + ell - 1), ell);
            Sum gen = Sum::term(1, poch, {0}, {{Poly::affine(1, 0, I), -p.lambda3()}});
            CHECK(equal_exact(rc_apply(p, k.shape), gen));
            Complex c = k.beta_factor * to_complex(poch);
            Complex ref = c_ell(to_complex(l1), to_complex(l2), ell);
            CHECK(std::abs(c - ref) < 1e-13 * std::abs(ref));
            // Eigenvalue law.
            Sum pk = casimir_P<Exact>(l1, l2, k.shape);
            CHECK(equal_exact(pk, k.shape.scaled(GR(-ell * (l1 + l2 + ell - 1)))));
            // Other components annihilate it.
            for (int m = 0; m <= 6; ++m)
                if (m != ell) CHECK(is_zero_exact(rc_apply(RCParams<Exact>{l1, l2, m}, k.shape)));
            // Lemma-style cross check.
            mpq_class s = l1 + l2;
            Sum cd = casimir_diag<Exact>(l1, l2, k.shape) - k.shape.scaled(GR(s * (s - 2) / 8));
            CHECK(equal_exact(cd.scaled(q(-2)), pk));
        }
    Sum zero_type = Sum::term(2, q(1), {0, 0}, {{Poly::affine(2, 0, I), mpq_class(-5, 2)}, {Poly::affine(2, 1, I), mpq_class(-4, 3)}});
    CHECK(is_zero_exact(casimir_P<Exact>(mpq_class(5, 2), mpq_class(4, 3), zero_type)));
    auto k0 = psi_ktype_closed_form(RCParams<Exact>{mpq_class(5, 2), mpq_class(4, 3), 0});
    CHECK(std::abs(k0.beta_factor - beta(2.5, 4.0 / 3.0)) < 1e-15);
    CHECK(k0.shape.size() == 1);
}

TEST_CASE("projection and inversion") {
    RCParams<Numeric> p{2.5, 1.75, 2};
    NSum k = psi_ktype_closed_form(p).full();
    auto proj = project(p, k);
    auto pts = sample_points(TubeDomain::UpperHalfPlanes, 2, 6);
    for (const auto& pt : pts) {
        Complex ref = evaluate(k, pt);
        CHECK(std::abs(proj(pt[0], pt[1]) - ref) < 1e-9 * std::abs(ref));
    }
    std::map<int, NSum> comps;
    for (int ell = 0; ell <= 4; ++ell) comps[ell] = rc_apply(RCParams<Numeric>{p.lambda1, p.lambda2, ell}, k);
    auto inv = invert_rc(p.lambda1, p.lambda2, comps, 4);
    for (const auto& pt : pts) {
        Complex ref = evaluate(k, pt);
        CHECK(std::abs(inv(pt[0], pt[1]) - ref) < 1e-9 * std::abs(ref));
    }
    // Two K-types at once.
    NSum k0 = psi_ktype_closed_form(RCParams<Numeric>{2.5, 1.75, 0}).full();
    NSum both = k + k0.scaled(Complex(0.5, -1));
    std::map<int, NSum> comps2;
    for (int ell = 0; ell <= 3; ++ell) comps2[ell] = rc_apply(RCParams<Numeric>{p.lambda1, p.lambda2, ell}, both);
    auto inv2 = invert_rc(p.lambda1, p.lambda2, comps2, 3);
    for (const auto& pt : pts) {
        Complex ref = evaluate(both, pt);
        CHECK(std::abs(inv2(pt[0], pt[1]) - ref) < 1e-9 * std::abs(ref));
    }
}
