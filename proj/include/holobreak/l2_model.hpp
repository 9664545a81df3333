#pragma once

#include <cmath>
#include <functional>
#include <map>

#include "holobreak/quadrature.hpp"
#include "holobreak/scalar.hpp"

namespace holobreak {

// Function on (0, inf) in L^2(z^{1 - lambda} dz).
// edge: F ~ z^edge near 0 (NaN means lambda - 1); decay: F ~ e^{-decay z} at infinity.
struct L2Fn1 {
    std::function<Complex(double)> f;
    double lambda = 2;
    double decay = 1;
    double edge = NAN;

    double edge_exponent() const { return std::isnan(edge) ? lambda - 1 : edge; }
    Complex operator()(double z) const { return f(z); }
};

// Function on (0, inf)^2 in L^2(x^{1 - l1} y^{1 - l2} dx dy).
// edge_x, edge_y: F ~ x^edge_x, y^edge_y near the axes (NaN means l1 - 1, l2 - 1).
struct L2Fn2 {
    std::function<Complex(double, double)> f;
    double lambda1 = 2, lambda2 = 2;
    double decay = 1;
    double edge_x = NAN, edge_y = NAN;

    double edge_x_exponent() const { return std::isnan(edge_x) ? lambda1 - 1 : edge_x; }
    double edge_y_exponent() const { return std::isnan(edge_y) ? lambda2 - 1 : edge_y; }
    Complex operator()(double x, double y) const { return f(x, y); }
};

struct L2Params {
    double lambda1 = 2, lambda2 = 2;
    int ell = 0;
    double lambda3() const { return lambda1 + lambda2 + 2 * ell; }
    double alpha() const { return lambda1 - 1; }
    double beta() const { return lambda2 - 1; }
};

std::pair<double, double> iota(double z, double v);
std::pair<double, double> iota_inv(double x, double y);
// 2^{a+b} z^{ell+1} (1-v)^{-a} (1+v)^{-b}
double weight_M(const L2Params& p, double z, double v);

L2Fn2 phi_apply(const L2Params& p, const L2Fn1& h);
// The same function written through iota: M^{-1} P(v) h(z).
Complex phi_iota_form(const L2Params& p, const L2Fn1& h, double z, double v);

struct QuadOptions {
    double tol = 1e-12;
    int start_order = 16;
    int max_order = 512;
};

// z^{ell+1} / (2 i^ell) * integral over v of P(v) F(iota(z, v)).
Estimate rchat_apply(const L2Params& p, const L2Fn2& F, double z, QuadOptions opts = {});

// sum over ell <= L of (i^ell / c_ell) Phi(G_ell)
L2Fn2 invert_rchat(double l1, double l2, const std::map<int, L2Fn1>& components, int L);

Estimate weighted_norm_sq(const L2Fn1& f, QuadOptions opts = {});
Estimate weighted_norm_sq(const L2Fn2& f, QuadOptions opts = {});
// <f, g> = integral f conj(g) weight
Estimate inner_product(const L2Fn1& f, const L2Fn1& g, QuadOptions opts = {});
Estimate inner_product(const L2Fn2& f, const L2Fn2& g, QuadOptions opts = {});

// integral of F(z) e^{i zeta z} over (0, inf)
Estimate fourier_laplace(const L2Fn1& F, Complex zeta, QuadOptions opts = {});

struct IsometryCheck {
    double transform_norm_sq = 0;
    double input_norm_sq = 0;
    double ratio = 0;
    double expected = 0;
    double truncation_delta = 0;
    bool converged = false;
};

// ||F F||^2 over the upper half-plane with weight y^{lambda-2}, for F = z^{lambda-1} e^{-z}.
IsometryCheck fourier_laplace_isometry(double lambda, double radius = 1e3, double tol = 1e-8);

}  // namespace holobreak
