#include "holobreak/l2_model.hpp"

#include <memory>
#include <numbers>

#include "holobreak/errors.hpp"
#include "holobreak/rc_transform.hpp"
#include "holobreak/special.hpp"

namespace holobreak {

namespace {

Complex i_power(int k) {
    static const Complex table[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return table[((k % 4) + 4) % 4];
}

// Tensor rule on z (generalized Laguerre) x v (Jacobi) with joint order doubling.
Estimate tensor_zv(const std::function<Complex(double, double)>& g, const WeightFamily& zfam, const WeightFamily& vfam,
                   QuadOptions opts) {
    Estimate est;
    Complex prev(0.0);
    bool have_prev = false;
    for (int n = opts.start_order; n <= opts.max_order; n *= 2) {
        auto zr = build_rule(zfam, n);
        auto vr = build_rule(vfam, n);
        Complex sum(0.0);
        for (std::size_t i = 0; i < zr->size(); ++i) {
            Complex inner(0.0);
            for (std::size_t j = 0; j < vr->size(); ++j) inner += vr->weights[j] * g(zr->nodes[i], vr->nodes[j]);
            sum += zr->weights[i] * inner;
        }
        est.value = sum;
        est.order = n;
        if (have_prev) {
            est.error = std::abs(sum - prev);
            if (est.error <= opts.tol * std::abs(sum) || est.error <= 1e-300) {
                est.converged = true;
                return est;
            }
        }
        prev = sum;
        have_prev = true;
    }
    return est;
}

// value * exp(log_factor), dropping nodes whose Laguerre weight has underflowed anyway.
Complex unwrap(Complex value, double log_factor) {
    if (log_factor > 700 || value == Complex(0.0)) return Complex(0.0);
    return value * std::exp(log_factor);
}

void check_params(const L2Params& p) {
    if (!(p.lambda1 > 0 && p.lambda2 > 0) || p.ell < 0) throw DomainError("L2 model requires l1, l2 > 0 and ell >= 0");
}

}  // namespace

std::pair<double, double> iota(double z, double v) { return {z * (1 - v) / 2, z * (1 + v) / 2}; }

std::pair<double, double> iota_inv(double x, double y) {
    double z = x + y;
    return {z, (y - x) / z};
}

double weight_M(const L2Params& p, double z, double v) {
    double a = p.alpha(), b = p.beta();
    if ((v <= -1 || v >= 1) && (a > 0 || b > 0)) throw DomainError("weight_M is singular on the boundary v = +-1");
    return std::pow(2.0, a + b) * std::pow(z, p.ell + 1) * std::pow(1 - v, -a) * std::pow(1 + v, -b);
}

L2Fn2 phi_apply(const L2Params& p, const L2Fn1& h) {
    check_params(p);
    double a = p.alpha(), b = p.beta();
    double pw = p.lambda1 + p.lambda2 + p.ell - 1;
    int ell = p.ell;
    L2Fn2 out;
    out.lambda1 = p.lambda1;
    out.lambda2 = p.lambda2;
    out.decay = h.decay;
    out.edge_x = a;
    out.edge_y = b;
    out.f = [=](double x, double y) {
        double z = x + y;
        Complex poly = jacobi_eval(ell, a, b, (y - x) / z);
        return std::pow(x, a) * std::pow(y, b) * std::pow(z, -pw) * poly * h(z);
    };
    return out;
}

Complex phi_iota_form(const L2Params& p, const L2Fn1& h, double z, double v) {
    return jacobi_eval(p.ell, p.alpha(), p.beta(), v) * h(z) / weight_M(p, z, v);
}

Estimate rchat_apply(const L2Params& p, const L2Fn2& F, double z, QuadOptions opts) {
    check_params(p);
    if (!(z > 0)) throw DomainError("rchat_apply requires z > 0");
    double ex = F.edge_x_exponent(), ey = F.edge_y_exponent();
    if (ex <= -1 || ey <= -1) throw DomainError("fiber edge exponents must exceed -1");
    // F(iota(z,v)) ~ (1-v)^ex (1+v)^ey; that part goes into the Jacobi weight.
    auto g = [&](double v) {
        auto [x, y] = iota(z, v);
        double strip = std::pow(1 - v, -ex) * std::pow(1 + v, -ey);
        return jacobi_eval(p.ell, p.alpha(), p.beta(), v) * F(x, y) * strip;
    };
    Estimate e = integrate_adaptive(g, WeightFamily::jacobi(ex, ey), opts.tol, {opts.start_order, opts.max_order, 1e-300});
    e.value *= std::pow(z, p.ell + 1) / (2.0 * i_power(p.ell));
    e.error *= std::pow(z, p.ell + 1) / 2.0;
    return e;
}

L2Fn2 invert_rchat(double l1, double l2, const std::map<int, L2Fn1>& components, int L) {
    struct Piece {
        L2Params params;
        Complex scale;
        L2Fn1 h;
    };
    auto pieces = std::make_shared<std::vector<Piece>>();
    double edge_x = l1 - 1, edge_y = l2 - 1, decay = INFINITY;
    for (const auto& [ell, g] : components) {
        if (ell < 0) throw DomainError("negative component index");
        if (ell > L) continue;
        Complex c = c_ell(l1, l2, ell);
        if (c == Complex(0.0)) throw DomainError("inversion undefined where c_ell vanishes");
        pieces->push_back({{l1, l2, ell}, i_power(ell) / c, g});
        decay = std::min(decay, g.decay);
    }
    L2Fn2 out;
    out.lambda1 = l1;
    out.lambda2 = l2;
    out.decay = std::isfinite(decay) ? decay : 1.0;
    out.edge_x = edge_x;
    out.edge_y = edge_y;
    out.f = [pieces](double x, double y) {
        Complex sum(0.0);
        auto [z, v] = iota_inv(x, y);
        for (const auto& pc : *pieces) sum += pc.scale * phi_iota_form(pc.params, pc.h, z, v);
        return sum;
    };
    return out;
}

Estimate inner_product(const L2Fn1& f, const L2Fn1& g, QuadOptions opts) {
    if (f.lambda != g.lambda) throw DomainError("inner product across different weights");
    double gam = f.edge_exponent() + g.edge_exponent() + 1 - f.lambda;
    double scale = f.decay + g.decay;
    if (gam <= -1) throw DomainError("integrand not integrable at 0 for the declared edge exponents");
    auto w = WeightFamily::laguerre(gam, scale);
    auto integrand = [&](double z) {
        return unwrap(f(z) * std::conj(g(z)) * std::pow(z, 1 - f.lambda - gam), scale * z);
    };
    return integrate_adaptive(integrand, w, opts.tol, {opts.start_order, opts.max_order, 1e-300});
}

Estimate weighted_norm_sq(const L2Fn1& f, QuadOptions opts) {
    Estimate e = inner_product(f, f, opts);
    e.value = e.value.real();
    return e;
}

Estimate inner_product(const L2Fn2& f, const L2Fn2& g, QuadOptions opts) {
    if (f.lambda1 != g.lambda1 || f.lambda2 != g.lambda2) throw DomainError("inner product across different weights");
    double l1 = f.lambda1, l2 = f.lambda2;
    double a = f.edge_x_exponent() + g.edge_x_exponent() + 1 - l1;
    double b = f.edge_y_exponent() + g.edge_y_exponent() + 1 - l2;
    if (a <= -1 || b <= -1) throw DomainError("integrand not integrable at the axes for the declared edge exponents");
    // dx dy = (z/2) dz dv; x^a y^b (z/2) = 2^{-a-b-1} z^{a+b+1} (1-v)^a (1+v)^b.
    double gam = a + b + 1;
    double scale = f.decay + g.decay;
    auto integrand = [&](double z, double v) {
        auto [x, y] = iota(z, v);
        double strip = std::pow(x, 1 - l1 - a) * std::pow(y, 1 - l2 - b) * std::pow(2.0, -a - b - 1);
        return unwrap(f(x, y) * std::conj(g(x, y)) * strip, scale * z);
    };
    return tensor_zv(integrand, WeightFamily::laguerre(gam, scale), WeightFamily::jacobi(a, b), opts);
}

Estimate weighted_norm_sq(const L2Fn2& f, QuadOptions opts) {
    Estimate e = inner_product(f, f, opts);
    e.value = e.value.real();
    return e;
}

Estimate fourier_laplace(const L2Fn1& F, Complex zeta, QuadOptions opts) {
    if (!(zeta.imag() > -F.decay)) throw DomainError("Fourier-Laplace integral diverges at this point");
    double gam = F.edge_exponent();
    if (gam <= -1) throw DomainError("edge exponent must exceed -1");
    double scale = F.decay + zeta.imag();
    auto integrand = [&](double z) {
        Complex phase = std::exp(Complex(0.0, zeta.real() * z));
        return unwrap(F(z) * std::pow(z, -gam) * phase, F.decay * z);
    };
    return integrate_adaptive(integrand, WeightFamily::laguerre(gam, scale), opts.tol, {opts.start_order, opts.max_order, 1e-300});
}

IsometryCheck fourier_laplace_isometry(double lambda, double radius, double tol) {
    if (!(lambda > 1)) throw DomainError("isometry requires lambda > 1");
    IsometryCheck out;
    Complex g = complex_gamma(lambda);
    auto transform = [&](std::span<const double> p) {
        Complex zeta(p[0], p[1]);
        Complex val = g * std::pow(1.0 - Complex(0, 1) * zeta, -lambda);
        return Complex(std::norm(val) * std::pow(p[1], lambda - 2));
    };
    RegionOptions ro;
    ro.check_truncation = true;
    ro.max_order = 32;
    std::vector<Axis> axes{{-radius, radius, Grading::TowardCenter, true, 0}, {0, radius, Grading::TowardLower, true, 0}};
    Estimate e = integrate_region(transform, axes, tol, ro);
    out.transform_norm_sq = e.value.real();
    out.input_norm_sq = std::tgamma(lambda) / std::pow(2.0, lambda);
    out.ratio = out.transform_norm_sq / out.input_norm_sq;
    out.expected = b_const(lambda).real();
    out.truncation_delta = e.truncation_delta / out.input_norm_sq;
    out.converged = e.converged;
    return out;
}

}  // namespace holobreak
