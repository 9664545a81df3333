#pragma once

#include <map>
#include <utility>
#include <vector>

#include "holobreak/scalar.hpp"

namespace holobreak {

// Ascending factorial (x)_k.
template <class S>
S pochhammer(const S& x, int k) {
    S r(1L);
    for (int i = 0; i < k; ++i) r *= x + S(static_cast<long>(i));
    return r;
}

inline Complex pochhammer(const Complex& x, int k) {
    Complex r(1.0);
    for (int i = 0; i < k; ++i) r *= x + static_cast<double>(i);
    return r;
}

double factorial(int k);
mpq_class factorial_q(int k);
mpq_class binomial_q(int n, int k);

// Throws PoleError at z = 0, -1, -2, ...
Complex complex_gamma(Complex z);
// Entire; exactly zero at nonpositive integers.
Complex reciprocal_gamma(Complex z);
Complex beta(Complex a, Complex b);
double gamma_real(double x);
double reciprocal_gamma_real(double x);

// Univariate polynomial in the power basis.
template <class S>
struct Poly1 {
    std::vector<S> coeffs;

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    const S& operator[](int k) const { return coeffs[static_cast<std::size_t>(k)]; }
    void normalize();
    Complex operator()(Complex t) const;
    S evaluate(const S& t) const;
    Poly1 derivative() const;
};

template <class S>
Poly1<S> operator+(const Poly1<S>& a, const Poly1<S>& b);
template <class S>
Poly1<S> operator-(const Poly1<S>& a, const Poly1<S>& b);
template <class S>
Poly1<S> operator*(const Poly1<S>& a, const Poly1<S>& b);
template <class S>
Poly1<S> operator*(const S& c, const Poly1<S>& a);

// Bivariate polynomial, key (i, j) for x^i y^j.
template <class S>
struct Poly2 {
    std::map<std::pair<int, int>, S> coeffs;

    void add(int i, int j, const S& c);
    Complex operator()(Complex x, Complex y) const;
    S coeff(int i, int j) const;
};

template <class S>
Poly1<S> jacobi_poly(int ell, const S& alpha, const S& beta);
// Coefficient of ((t-1)/2)^j in the explicit sum.
template <class S>
S jacobi_sum_coeff(int ell, int j, const S& alpha, const S& beta);
// (-1)^ell (x+y)^ell P((y-x)/(x+y)).
template <class S>
Poly2<S> jacobi_inflated(int ell, const S& alpha, const S& beta);
// y^ell P(1 + 2x/y).
template <class S>
Poly2<S> jacobi_variant(int ell, const S& alpha, const S& beta);

// a_k(ell, alpha); DomainError when ell < 2k.
template <class S>
S gegenbauer_coeff(int ell, int k, const S& alpha);
template <class S>
Poly1<S> gegenbauer_poly(int ell, const S& alpha);
// sum_k a_k u^k v^(ell-2k), key (k, ell-2k).
template <class S>
Poly2<S> gegenbauer_inflated(int ell, const S& alpha);

// Three-term recurrence evaluation; stable where the power basis is not.
Complex jacobi_eval(int ell, Complex alpha, Complex beta, Complex t);
Complex gegenbauer_eval(int ell, Complex alpha, Complex t);

double jacobi_norm_sq(int ell, double alpha, double beta);
double gegenbauer_norm_sq(int ell, double alpha);
double d_ell_weight(int ell, double alpha, double beta);

}  // namespace holobreak
