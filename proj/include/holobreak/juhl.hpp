#pragma once

#include <functional>
#include <map>
#include <span>
#include <vector>

#include "holobreak/quadrature.hpp"
#include "holobreak/term_algebra.hpp"

namespace holobreak {

template <class F>
struct JuhlParams {
    using Exponent = typename F::Exponent;
    int n = 3;
    Exponent lambda;
    int ell = 0;

    Exponent nu() const { return lambda + Exponent(ell); }
    // lambda - (n-1)/2
    Exponent alpha() const;
};

enum class JuhlForm { Gegenbauer, Inflated };

// sum_k c_k d_n^{ell-2k} Lap'^k, Lap' = d_1^2 - d_2^2 - ... - d_{n-1}^2; no restriction.
template <class F>
HoloSum<F> juhl_operator(const JuhlParams<F>& p, const HoloSum<F>& f, JuhlForm form = JuhlForm::Gegenbauer);

// juhl_operator followed by zeta_n := 0.
template <class F>
HoloSum<F> juhl_sbo_apply(const JuhlParams<F>& p, const HoloSum<F>& f, JuhlForm form = JuhlForm::Gegenbauer);

// zeta_1^2 - zeta_2^2 - ... - zeta_n^2, optionally shifted by -wbar.
template <class S>
MPoly<S> lorentz_quadratic(int n, const std::vector<S>& shift = {});

struct BernsteinSatoResult {
    GaussianRational q0;
    GaussianRational expected;
    std::vector<GaussianRational> higher;  // q_1, q_2, ...
    bool residual_zero = false;
    bool passed() const;
};

// Expands D Q^{-lambda} = sum_j q_j zeta_n^{ell-2j} Q^{-lambda-ell+j} exactly.
BernsteinSatoResult bernstein_sato_verify(const JuhlParams<Exact>& p);

GaussianRational bernstein_sato_q(int n, int ell, const mpq_class& lambda);
Complex bernstein_sato_q(int n, int ell, Complex lambda);

struct CoefficientLadder {
    std::vector<GaussianRational> p;  // coefficients of Lap^m d_n^{ell-2m}, full Laplacian
    std::vector<GaussianRational> s;  // Lap^k Q^{-lambda} = s_k Q^{-lambda-k}
    GaussianRational q0;              // p_0 2^ell (lambda)_ell
};

CoefficientLadder coefficient_ladder(const JuhlParams<Exact>& p);

// ---- cone model (real parameters) ----

struct ConeParams {
    int n = 3;
    double lambda = 3;
    int ell = 0;
    double nu() const { return lambda + ell; }
    double alpha() const { return lambda - (n - 1) / 2.0; }
};

double q_form(std::span<const double> y);
bool in_cone(std::span<const double> y);
std::vector<double> iota_cone(std::span<const double> yp, double v);
// Q(y')^{(ell+1)/2} (1 - v^2)^{n/2 - lambda}
double weight_M_cone(const ConeParams& p, std::span<const double> yp, double v);
// Q^{n/2 - lambda} on Omega(n)
double cone_density(double lambda, std::span<const double> y);

// fiber_edge: F(iota(y', v)) ~ (1 - v^2)^fiber_edge near v = +-1 (NaN: lambda - n/2).
struct ConeFn {
    std::function<Complex(std::span<const double>)> f;
    double fiber_edge = NAN;
    Complex operator()(std::span<const double> y) const { return f(y); }
};

ConeFn phi_cone_apply(const ConeParams& p, const std::function<Complex(std::span<const double>)>& h);
Complex phi_cone_iota_form(const ConeParams& p, const std::function<Complex(std::span<const double>)>& h,
                           std::span<const double> yp, double v);

struct FiberOptions {
    double tol = 1e-12;
    int start_order = 16;
    int max_order = 512;
};

// i^{-ell} Q(y')^{(ell+1)/2} integral over v of F(iota(y', v)) C(v)
Estimate juhl_hat_apply(const ConeParams& p, const ConeFn& F, std::span<const double> yp, FiberOptions opts = {});

// Fiber part of ||F||^2: integral over v of |F(iota)|^2 m_lambda(iota) sqrt(Q(y')).
Estimate fiber_norm_sq(const ConeParams& p, const ConeFn& F, std::span<const double> yp, FiberOptions opts = {});

// sum over ell <= L of (i^ell / c_ell) Phi(G_ell); components live on Omega(n-1).
ConeFn invert_juhl(int n, double lambda, const std::map<int, std::function<Complex(std::span<const double>)>>& components,
                   int L);

struct ConeConstants {
    double c = 0;            // Gegenbauer norm
    double c_closed = 0;     // closed form of the same
    double r = 0;
    double b_n = 0;          // b_n(lambda)
    double b_n1 = 0;         // b_{n-1}(nu)
    Complex k{0.0};          // kernel normalization as displayed with (4 pi)^n
    Complex k_euclid{0.0};   // kernel normalization for the Euclidean pairing
    Complex q{0.0};
    Complex C{0.0};
};

ConeConstants cone_constants(const ConeParams& p);
Complex bergman_kernel_constant(int n, Complex lambda);
double b_cone(int n, double lambda);
double juhl_operator_norm_sq(const ConeParams& p);

// Q((zeta' - conj(tau'), zeta_n))^{-nu} zeta_n^ell
Complex relative_kernel(const ConeParams& p, std::span<const Complex> zeta, std::span<const Complex> tau);

struct HoloOptions {
    double radius = 20;
    int order = 24;
    int threads = 0;  // 0: hardware concurrency
};

// Integral over T_{Omega(2)} of K(zeta, tau') g(tau') Q(Im tau')^{nu - 2} dtau'; n = 3 only.
Complex relative_kernel_integral(const ConeParams& p, const std::function<Complex(Complex, Complex)>& g,
                                 std::span<const Complex> zeta, HoloOptions opts = {});
// C times the above.
Complex holographic_integral(const ConeParams& p, const std::function<Complex(Complex, Complex)>& g,
                             std::span<const Complex> zeta, HoloOptions opts = {});

}  // namespace holobreak
