#include "holobreak/rc_transform.hpp"

#include <cmath>
#include <numbers>

#include "holobreak/errors.hpp"
#include "holobreak/quadrature.hpp"
#include "holobreak/special.hpp"

namespace holobreak {

namespace {

template <class S>
S sign_power(int k) {
    return k % 2 ? S(-1L) : S(1L);
}

bool is_nonpositive_integer(Complex z) {
    return z.imag() == 0.0 && z.real() <= 0.0 && std::floor(z.real()) == z.real();
}

}  // namespace

template <class F>
std::map<std::pair<int, int>, typename F::Scalar> rc_symbol(const RCParams<F>& p, RCForm form) {
    using S = typename F::Scalar;
    const int ell = p.ell;
    if (ell < 0) throw DomainError("ell must be a natural number");
    const S l1 = exponent_scalar(p.lambda1), l2 = exponent_scalar(p.lambda2);
    std::map<std::pair<int, int>, S> out;
    auto put = [&](int i, int j, const S& c) {
        if (holobreak::is_zero(c)) return;
        out[{i, j}] += c;
    };
    switch (form) {
    case RCForm::Coefficient:
        for (int j = 0; j <= ell; ++j) {
            S c = pochhammer(l1 + S(long(ell - j)), j) * pochhammer(l2 + S(long(j)), ell - j);
            c = c * from_rational<S>(mpq_class(1) / (factorial_q(j) * factorial_q(ell - j)));
            put(ell - j, j, sign_power<S>(j) * c);
        }
        break;
    case RCForm::InflatedJacobi:
        for (const auto& [k, c] : jacobi_inflated(ell, l1 - S(1L), l2 - S(1L)).coeffs) put(k.first, k.second, c);
        break;
    case RCForm::Variant: {
        S l3 = exponent_scalar(p.lambda3());
        for (const auto& [k, c] : jacobi_variant(ell, l1 - S(1L), S(1L) - l3).coeffs)
            put(k.first, k.second, sign_power<S>(ell) * c);
        break;
    }
    }
    return out;
}

template <class F>
HoloSum<F> rc_apply(const RCParams<F>& p, const HoloSum<F>& f, RCForm form) {
    if (f.arity() != 2) throw DomainError("rc_apply expects a two-variable sum");
    auto symbol = rc_symbol(p, form);
    std::vector<HoloSum<F>> d1(static_cast<std::size_t>(p.ell + 1));
    d1[0] = f;
    for (int i = 1; i <= p.ell; ++i) d1[static_cast<std::size_t>(i)] = differentiate(d1[static_cast<std::size_t>(i - 1)], 0);
    HoloSum<F> acc(2);
    for (const auto& [k, c] : symbol) {
        HoloSum<F> d = d1[static_cast<std::size_t>(k.first)];
        for (int j = 0; j < k.second; ++j) d = differentiate(d, 1);
        acc += d.scaled(c);
    }
    return restrict(acc, Substitution::diagonal(1, 0));
}

CEllClass classify_c_ell(Complex l1, Complex l2, int ell) {
    if (ell < 0) throw DomainError("ell must be a natural number");
    Complex s = l1 + l2;
    // Removable point: (s + 2ell - 1) Gamma(s + ell - 1) -> (-1)^ell / ell!.
    bool removable = s + double(2 * ell - 1) == Complex(0.0);
    bool num_zero = !removable && is_nonpositive_integer(s + double(ell - 1));
    bool den_zero = is_nonpositive_integer(l1 + double(ell)) || is_nonpositive_integer(l2 + double(ell));
    if (num_zero && den_zero) return CEllClass::Collision;
    if (den_zero) return CEllClass::Infinite;
    if (num_zero) return CEllClass::Zero;
    return CEllClass::Nonzero;
}

Complex c_ell(Complex l1, Complex l2, int ell) {
    switch (classify_c_ell(l1, l2, ell)) {
    case CEllClass::Infinite:
        throw PoleError("c_ell has a pole here");
    case CEllClass::Collision:
        throw PoleError("c_ell is indeterminate here (zero times pole)");
    case CEllClass::Zero:
        return Complex(0.0);
    case CEllClass::Nonzero:
        break;
    }
    Complex s = l1 + l2;
    Complex g = complex_gamma(l1 + double(ell)) * complex_gamma(l2 + double(ell));
    if (s + double(2 * ell - 1) == Complex(0.0)) return (ell % 2 ? -1.0 : 1.0) * g;
    Complex den = (s + double(2 * ell - 1)) * factorial(ell);
    return g * reciprocal_gamma(s + double(ell - 1)) / den;
}

Complex b_const(Complex lambda) {
    if (is_nonpositive_integer(lambda - 1.0)) throw PoleError("b has a pole at lambda <= 1 integer");
    return std::pow(Complex(2.0), 2.0 - lambda) * std::numbers::pi * complex_gamma(lambda - 1.0);
}

Complex r_ell(Complex l1, Complex l2, int ell) {
    Complex l3 = l1 + l2 + double(2 * ell);
    Complex top = b_const(l3);
    Complex inv = reciprocal_gamma(l1 - 1.0) * reciprocal_gamma(l2 - 1.0) * std::pow(Complex(2.0), l1 + l2 - 4.0) /
                  (std::numbers::pi * std::numbers::pi);
    return top * inv;
}

Complex psi_quadrature(const RCParams<Numeric>& p, const Evaluator1& g, Complex z1, Complex z2, double tol) {
    Complex a = p.lambda1 + double(p.ell) - 1.0, b = p.lambda2 + double(p.ell) - 1.0;
    if (a.real() <= -1.0 || b.real() <= -1.0) throw DomainError("psi requires Re(l1 + ell) > 0 and Re(l2 + ell) > 0");
    Complex pref = std::pow(z1 - z2, p.ell) /
                   (std::pow(Complex(2.0), p.lambda1 + p.lambda2 + double(2 * p.ell - 1)) * factorial(p.ell));
    if (pref == Complex(0.0)) return Complex(0.0);
    // Imaginary parts of the weight exponents ride along in the integrand.
    double ia = a.imag(), ib = b.imag();
    auto f = [&](double v) {
        Complex z = ((z2 - z1) * v + (z1 + z2)) / 2.0;
        Complex val = g(z);
        if (ia != 0.0) val *= std::exp(Complex(0, ia) * std::log1p(-v));
        if (ib != 0.0) val *= std::exp(Complex(0, ib) * std::log1p(v));
        return val;
    };
    auto est = integrate_adaptive(f, WeightFamily::jacobi(a.real(), b.real()), tol, {16, 1024, 1e-300});
    return pref * est.value;
}

template <class F>
HoloSum<Numeric> KTypeForm<F>::full() const {
    if constexpr (std::is_same_v<F, Numeric>)
        return shape.scaled(beta_factor);
    else
        return to_numeric(shape).scaled(beta_factor);
}

template <class F>
KTypeForm<F> psi_ktype_closed_form(const RCParams<F>& p) {
    using S = typename F::Scalar;
    using E = typename F::Exponent;
    using P = MPoly<S>;
    Complex a = to_complex(p.lambda1) + double(p.ell), b = to_complex(p.lambda2) + double(p.ell);
    if (a.real() - p.ell <= 0 || b.real() - p.ell <= 0) throw DomainError("K-type form requires Re l1, Re l2 > 0");
    KTypeForm<F> out;
    out.beta_factor = beta(a, b) / factorial(p.ell);
    S i = imag_power<S>(1);
    P diff = P::variable(2, 0) - P::variable(2, 1);
    out.shape = HoloSum<F>::term(2, S(1L), {0, 0},
                                 {{diff, E(p.ell)},
                                  {P::affine(2, 0, i), -p.lambda1 - E(p.ell)},
                                  {P::affine(2, 1, i), -p.lambda2 - E(p.ell)}});
    return out;
}

template <class F>
HoloSum<F> casimir_P(const typename F::Exponent& l1, const typename F::Exponent& l2, const HoloSum<F>& f) {
    using S = typename F::Scalar;
    using P = MPoly<S>;
    if (f.arity() != 2) throw DomainError("casimir_P expects a two-variable sum");
    P diff = P::variable(2, 0) - P::variable(2, 1);
    HoloSum<F> d1 = differentiate(f, 0), d2 = differentiate(f, 1);
    HoloSum<F> out = differentiate(d1, 1).times_poly(diff * diff);
    out += d1.times_poly(diff.scaled(-exponent_scalar(l2)));
    out += d2.times_poly(diff.scaled(exponent_scalar(l1)));
    return out;
}

double rc_operator_norm_sq(double l1, double l2, int ell) {
    if (!(l1 > 1.0 && l2 > 1.0)) throw DomainError("operator norm requires real l1, l2 > 1");
    return (r_ell(l1, l2, ell) * c_ell(l1, l2, ell)).real();
}

Evaluator2 project(const RCParams<Numeric>& p, const HoloSum<Numeric>& f) {
    Complex c = c_ell(p.lambda1, p.lambda2, p.ell);
    if (c == Complex(0.0)) throw DomainError("projection undefined where c_ell vanishes");
    auto g = std::make_shared<HoloSum<Numeric>>(rc_apply(p, f));
    return [p, g, c](Complex z1, Complex z2) {
        auto gz = [&](Complex z) { return evaluate(*g, std::span<const Complex>(&z, 1)); };
        return psi_quadrature(p, gz, z1, z2) / c;
    };
}

Evaluator2 invert_rc(Complex l1, Complex l2, const std::map<int, HoloSum<Numeric>>& components, int L) {
    struct Piece {
        RCParams<Numeric> params;
        Complex inv_c;
        HoloSum<Numeric> g;
    };
    std::vector<Piece> pieces;
    for (const auto& [ell, g] : components) {
        if (ell < 0) throw DomainError("negative component index");
        if (ell > L) continue;
        if (g.arity() != 1) throw DomainError("components must be one-variable sums");
        Complex c = c_ell(l1, l2, ell);
        if (c == Complex(0.0)) throw DomainError("inversion undefined where c_ell vanishes");
        pieces.push_back({{l1, l2, ell}, 1.0 / c, g});
    }
    return [pieces = std::move(pieces)](Complex z1, Complex z2) {
        Complex sum(0.0);
        for (const auto& pc : pieces) {
            auto gz = [&](Complex z) { return evaluate(pc.g, std::span<const Complex>(&z, 1)); };
            sum += pc.inv_c * psi_quadrature(pc.params, gz, z1, z2);
        }
        return sum;
    };
}

ZeroClassification zero_classification(long l1, long l2, long l3) {
    long gap = l3 - l1 - l2;
    if (gap < 0 || gap % 2) throw DomainError("l3 - l1 - l2 must be an even natural number");
    ZeroClassification z;
    z.ell = static_cast<int>(gap / 2);
    z.condition_holds = 2 >= l1 + l2 + l3 && l3 >= std::labs(l1 - l2) + 2;
    z.value_class = classify_c_ell(double(l1), double(l2), z.ell);
    return z;
}

#define HOLOBREAK_INSTANTIATE(F)                                                                              \
    template std::map<std::pair<int, int>, F::Scalar> rc_symbol(const RCParams<F>&, RCForm);                  \
    template HoloSum<F> rc_apply(const RCParams<F>&, const HoloSum<F>&, RCForm);                             \
    template struct KTypeForm<F>;                                                                             \
    template KTypeForm<F> psi_ktype_closed_form(const RCParams<F>&);                                          \
    template HoloSum<F> casimir_P<F>(const F::Exponent&, const F::Exponent&, const HoloSum<F>&);

HOLOBREAK_INSTANTIATE(Exact)
HOLOBREAK_INSTANTIATE(Numeric)

#undef HOLOBREAK_INSTANTIATE

}  // namespace holobreak
