#pragma once

#include <functional>
#include <map>

#include "holobreak/term_algebra.hpp"

namespace holobreak {

template <class F>
struct RCParams {
    using Exponent = typename F::Exponent;
    Exponent lambda1, lambda2;
    int ell = 0;

    Exponent lambda3() const { return lambda1 + lambda2 + Exponent(2 * ell); }
    Exponent alpha() const { return lambda1 - Exponent(1); }
    Exponent beta() const { return lambda2 - Exponent(1); }
    RCParams<Numeric> numeric() const { return {to_complex(lambda1), to_complex(lambda2), ell}; }
};

// Three equivalent coefficient tables for the bi-differential operator.
enum class RCForm { Coefficient, InflatedJacobi, Variant };

// Coefficients of d1^i d2^j, keyed (i, j) with i + j = ell.
template <class F>
std::map<std::pair<int, int>, typename F::Scalar> rc_symbol(const RCParams<F>& p, RCForm form);

// Apply the symbol to f(zeta1, zeta2) and restrict to the diagonal.
template <class F>
HoloSum<F> rc_apply(const RCParams<F>& p, const HoloSum<F>& f, RCForm form = RCForm::Coefficient);

Complex c_ell(Complex l1, Complex l2, int ell);
Complex r_ell(Complex l1, Complex l2, int ell);
Complex b_const(Complex lambda);

enum class CEllClass { Nonzero, Zero, Infinite, Collision };
// Pole-aware classification of c_ell. Collision means an undetermined 0 * inf.
CEllClass classify_c_ell(Complex l1, Complex l2, int ell);

using Evaluator1 = std::function<Complex(Complex)>;
using Evaluator2 = std::function<Complex(Complex, Complex)>;

// Line integral of g along [zeta1, zeta2] against the Jacobi weight.
Complex psi_quadrature(const RCParams<Numeric>& p, const Evaluator1& g, Complex z1, Complex z2, double tol = 1e-13);

template <class F>
struct KTypeForm {
    // beta(l1 + ell, l2 + ell) / ell!
    Complex beta_factor{0.0};
    // (z1 - z2)^ell (z1 + i)^{-l1-ell} (z2 + i)^{-l2-ell}
    HoloSum<F> shape;
    HoloSum<Numeric> full() const;
};

template <class F>
KTypeForm<F> psi_ktype_closed_form(const RCParams<F>& p);

// (z1 - z2)^2 d1 d2 + l2 (z2 - z1) d1 + l1 (z1 - z2) d2
template <class F>
HoloSum<F> casimir_P(const typename F::Exponent& l1, const typename F::Exponent& l2, const HoloSum<F>& f);

double rc_operator_norm_sq(double l1, double l2, int ell);

// (1/c_ell) Psi(RC f), pointwise.
Evaluator2 project(const RCParams<Numeric>& p, const HoloSum<Numeric>& f);

// sum over ell <= L of (1/c_ell) Psi_ell(g_ell); missing components count as zero.
Evaluator2 invert_rc(Complex l1, Complex l2, const std::map<int, HoloSum<Numeric>>& components, int L);

struct ZeroClassification {
    int ell = 0;
    bool condition_holds = false;  // 2 >= l1+l2+l3 and l3 >= |l1-l2|+2
    CEllClass value_class = CEllClass::Nonzero;
    bool collision() const { return value_class == CEllClass::Collision; }
    bool agrees() const { return collision() || condition_holds == (value_class == CEllClass::Zero); }
};

ZeroClassification zero_classification(long l1, long l2, long l3);

}  // namespace holobreak
