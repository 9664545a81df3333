#include "holobreak/special.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "holobreak/errors.hpp"

namespace holobreak {

namespace {

constexpr double kPi = std::numbers::pi;

constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
constexpr double kLanczosG = 7.0;

bool is_nonpositive_integer(Complex z) {
    return z.imag() == 0.0 && z.real() <= 0.0 && std::floor(z.real()) == z.real();
}

// sin(pi z) with the real part reduced first.
Complex sin_pi(Complex z) {
    double x = z.real();
    double r = x - 2.0 * std::round(x / 2.0);
    if (r == std::floor(r) && z.imag() == 0.0) return 0.0;
    return std::sin(Complex(kPi * r, kPi * z.imag()));
}

// log Gamma for Re z >= 1/2.
Complex lanczos_log_gamma(Complex z) {
    z -= 1.0;
    Complex a = kLanczos[0];
    for (std::size_t k = 1; k < kLanczos.size(); ++k) a += kLanczos[k] / (z + static_cast<double>(k));
    Complex t = z + kLanczosG + 0.5;
    return 0.5 * std::log(2.0 * kPi) + (z + 0.5) * std::log(t) - t + std::log(a);
}

}  // namespace

double factorial(int k) { return std::tgamma(static_cast<double>(k) + 1.0); }

mpq_class factorial_q(int k) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(k));
    return mpq_class(f);
}

mpq_class binomial_q(int n, int k) {
    if (k < 0 || k > n) return 0;
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return mpq_class(b);
}

double gamma_real(double x) {
    if (x <= 0.0 && std::floor(x) == x) throw PoleError("gamma pole at " + std::to_string(x));
    return std::tgamma(x);
}

double reciprocal_gamma_real(double x) {
    if (x <= 0.0 && std::floor(x) == x) return 0.0;
    if (x > 171.0) return std::exp(-std::lgamma(x));
    return 1.0 / std::tgamma(x);
}

Complex complex_gamma(Complex z) {
    if (is_nonpositive_integer(z)) throw PoleError("gamma pole at " + to_string(z));
    if (z.imag() == 0.0) return gamma_real(z.real());
    if (z.real() < 0.5) return kPi / (sin_pi(z) * complex_gamma(1.0 - z));
    return std::exp(lanczos_log_gamma(z));
}

Complex reciprocal_gamma(Complex z) {
    if (is_nonpositive_integer(z)) return 0.0;
    if (z.imag() == 0.0) return reciprocal_gamma_real(z.real());
    if (z.real() < 0.5) return sin_pi(z) / kPi * complex_gamma(1.0 - z);
    return std::exp(-lanczos_log_gamma(z));
}

Complex beta(Complex a, Complex b) {
    if (is_nonpositive_integer(a) || is_nonpositive_integer(b))
        throw PoleError("beta pole at (" + to_string(a) + ", " + to_string(b) + ")");
    if (a.imag() == 0.0 && b.imag() == 0.0 && a.real() > 0.0 && b.real() > 0.0) {
        return std::exp(std::lgamma(a.real()) + std::lgamma(b.real()) - std::lgamma(a.real() + b.real()));
    }
    return complex_gamma(a) * complex_gamma(b) * reciprocal_gamma(a + b);
}

// ---- Poly1 ----

template <class S>
void Poly1<S>::normalize() {
    while (coeffs.size() > 1 && is_zero(coeffs.back())) coeffs.pop_back();
    if (coeffs.empty()) coeffs.push_back(S(0L));
}

template <class S>
Complex Poly1<S>::operator()(Complex t) const {
    Complex r = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) r = r * t + to_complex(*it);
    return r;
}

template <class S>
S Poly1<S>::evaluate(const S& t) const {
    S r(0L);
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) r = r * t + *it;
    return r;
}

template <class S>
Poly1<S> Poly1<S>::derivative() const {
    Poly1 d;
    for (std::size_t k = 1; k < coeffs.size(); ++k) d.coeffs.push_back(coeffs[k] * S(static_cast<long>(k)));
    d.normalize();
    return d;
}

template <class S>
Poly1<S> operator+(const Poly1<S>& a, const Poly1<S>& b) {
    Poly1<S> r;
    r.coeffs.assign(std::max(a.coeffs.size(), b.coeffs.size()), S(0L));
    for (std::size_t k = 0; k < a.coeffs.size(); ++k) r.coeffs[k] += a.coeffs[k];
    for (std::size_t k = 0; k < b.coeffs.size(); ++k) r.coeffs[k] += b.coeffs[k];
    r.normalize();
    return r;
}

template <class S>
Poly1<S> operator-(const Poly1<S>& a, const Poly1<S>& b) {
    return a + S(-1L) * b;
}

template <class S>
Poly1<S> operator*(const Poly1<S>& a, const Poly1<S>& b) {
    Poly1<S> r;
    r.coeffs.assign(a.coeffs.size() + b.coeffs.size() - 1, S(0L));
    for (std::size_t i = 0; i < a.coeffs.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs.size(); ++j) r.coeffs[i + j] += a.coeffs[i] * b.coeffs[j];
    r.normalize();
    return r;
}

template <class S>
Poly1<S> operator*(const S& c, const Poly1<S>& a) {
    Poly1<S> r = a;
    for (auto& x : r.coeffs) x *= c;
    r.normalize();
    return r;
}

// ---- Poly2 ----

template <class S>
void Poly2<S>::add(int i, int j, const S& c) {
    auto key = std::make_pair(i, j);
    auto it = coeffs.find(key);
    if (it == coeffs.end()) {
        if (!is_zero(c)) coeffs.emplace(key, c);
        return;
    }
    it->second += c;
    if (is_zero(it->second)) coeffs.erase(it);
}

template <class S>
Complex Poly2<S>::operator()(Complex x, Complex y) const {
    Complex r = 0.0;
    for (const auto& [k, c] : coeffs) r += to_complex(c) * std::pow(x, k.first) * std::pow(y, k.second);
    return r;
}

template <class S>
S Poly2<S>::coeff(int i, int j) const {
    auto it = coeffs.find({i, j});
    return it == coeffs.end() ? S(0L) : it->second;
}

// ---- families ----

namespace {

template <class S>
S inv_factorial(int k) {
    if constexpr (std::is_same_v<S, Complex>) {
        return 1.0 / factorial(k);
    } else {
        return S(mpq_class(1) / factorial_q(k));
    }
}

template <class S>
S binom(int n, int k) {
    if constexpr (std::is_same_v<S, Complex>) {
        return std::round(factorial(n) / (factorial(k) * factorial(n - k)));
    } else {
        return S(binomial_q(n, k));
    }
}

template <class S>
S power(const S& x, int k) {
    S r(1L);
    for (int i = 0; i < k; ++i) r *= x;
    return r;
}

}  // namespace

template <class S>
S jacobi_sum_coeff(int ell, int j, const S& alpha, const S& beta) {
    S c = pochhammer(alpha + beta + S(static_cast<long>(ell + 1)), j) *
          pochhammer(alpha + S(static_cast<long>(j + 1)), ell - j);
    return c * inv_factorial<S>(ell - j) * inv_factorial<S>(j);
}

template <class S>
Poly1<S> jacobi_poly(int ell, const S& alpha, const S& beta) {
    // ((t-1)/2)^j expanded binomially.
    Poly1<S> p;
    p.coeffs.assign(static_cast<std::size_t>(ell + 1), S(0L));
    S half = S(1L) / S(2L);
    for (int j = 0; j <= ell; ++j) {
        S c = jacobi_sum_coeff(ell, j, alpha, beta) * power(half, j);
        for (int m = 0; m <= j; ++m) {
            S term = c * binom<S>(j, m);
            if ((j - m) % 2) term = -term;
            p.coeffs[static_cast<std::size_t>(m)] += term;
        }
    }
    p.normalize();
    return p;
}

template <class S>
Poly2<S> jacobi_inflated(int ell, const S& alpha, const S& beta) {
    // sum_j (-1)^(ell-j) c_j x^j (x+y)^(ell-j)
    Poly2<S> r;
    for (int j = 0; j <= ell; ++j) {
        S c = jacobi_sum_coeff(ell, j, alpha, beta);
        if ((ell - j) % 2) c = -c;
        for (int m = 0; m <= ell - j; ++m) r.add(j + m, ell - j - m, c * binom<S>(ell - j, m));
    }
    return r;
}

template <class S>
Poly2<S> jacobi_variant(int ell, const S& alpha, const S& beta) {
    Poly2<S> r;
    for (int j = 0; j <= ell; ++j) r.add(j, ell - j, jacobi_sum_coeff(ell, j, alpha, beta));
    return r;
}

template <class S>
S gegenbauer_coeff(int ell, int k, const S& alpha) {
    if (k < 0 || ell < 2 * k) throw DomainError("gegenbauer_coeff requires ell >= 2k");
    S c = power(S(2L), ell - 2 * k) * pochhammer(alpha, ell - k) * inv_factorial<S>(k) *
          inv_factorial<S>(ell - 2 * k);
    return k % 2 ? -c : c;
}

template <class S>
Poly1<S> gegenbauer_poly(int ell, const S& alpha) {
    Poly1<S> p;
    p.coeffs.assign(static_cast<std::size_t>(ell + 1), S(0L));
    for (int k = 0; 2 * k <= ell; ++k) p.coeffs[static_cast<std::size_t>(ell - 2 * k)] = gegenbauer_coeff(ell, k, alpha);
    p.normalize();
    return p;
}

template <class S>
Poly2<S> gegenbauer_inflated(int ell, const S& alpha) {
    Poly2<S> r;
    for (int k = 0; 2 * k <= ell; ++k) r.add(k, ell - 2 * k, gegenbauer_coeff(ell, k, alpha));
    return r;
}

double jacobi_norm_sq(int ell, double alpha, double beta) {
    if (!(alpha > -1.0) || !(beta > -1.0)) throw DomainError("jacobi_norm_sq requires alpha, beta > -1");
    double s = alpha + beta;
    if (ell == 0) return std::exp2(s + 1.0) * std::exp(std::lgamma(alpha + 1) + std::lgamma(beta + 1) - std::lgamma(s + 2));
    double logv = std::lgamma(ell + alpha + 1) + std::lgamma(ell + beta + 1) - std::lgamma(ell + s + 1) -
                  std::lgamma(ell + 1.0);
    return std::exp2(s + 1.0) * std::exp(logv) / (2.0 * ell + s + 1.0);
}

double gegenbauer_norm_sq(int ell, double alpha) {
    if (!(alpha > -0.5)) throw DomainError("gegenbauer_norm_sq requires alpha > -1/2");
    double pref = kPi * std::exp2(1.0 - 2.0 * alpha);
    if (ell == 0) {
        // Gamma(2a)/(a Gamma(a)^2) = Gamma(2a+1)/(2 Gamma(a+1)^2), finite at a = 0.
        return pref * std::exp(std::lgamma(2 * alpha + 1) - 2 * std::lgamma(alpha + 1)) / 2.0;
    }
    double ra = reciprocal_gamma_real(alpha);
    if (ra == 0.0) return 0.0;
    return pref * ra * ra / (reciprocal_gamma_real(ell + 2 * alpha) * factorial(ell) * (ell + alpha));
}

double d_ell_weight(int ell, double alpha, double beta) {
    if (!(alpha > -1.0) || !(beta > -1.0)) throw DomainError("d_ell_weight requires alpha, beta > -1");
    return 1.0 / jacobi_norm_sq(ell, alpha, beta);
}

#define HOLOBREAK_INSTANTIATE(S)                                              \
    template struct Poly1<S>;                                                 \
    template struct Poly2<S>;                                                 \
    template Poly1<S> operator+(const Poly1<S>&, const Poly1<S>&);           \
    template Poly1<S> operator-(const Poly1<S>&, const Poly1<S>&);           \
    template Poly1<S> operator*(const Poly1<S>&, const Poly1<S>&);           \
    template Poly1<S> operator*(const S&, const Poly1<S>&);                  \
    template S jacobi_sum_coeff(int, int, const S&, const S&);                \
    template Poly1<S> jacobi_poly(int, const S&, const S&);                   \
    template Poly2<S> jacobi_inflated(int, const S&, const S&);               \
    template Poly2<S> jacobi_variant(int, const S&, const S&);                \
    template S gegenbauer_coeff(int, int, const S&);                          \
    template Poly1<S> gegenbauer_poly(int, const S&);                         \
    template Poly2<S> gegenbauer_inflated(int, const S&);

HOLOBREAK_INSTANTIATE(GaussianRational)
HOLOBREAK_INSTANTIATE(Complex)

#undef HOLOBREAK_INSTANTIATE

Complex jacobi_eval(int ell, Complex a, Complex b, Complex t) {
    if (ell < 0) throw DomainError("negative degree");
    Complex prev(1.0), cur = 0.5 * (a - b + (a + b + 2.0) * t);
    if (ell == 0) return prev;
    for (int n = 2; n <= ell; ++n) {
        Complex s = a + b, nn(n);
        Complex c0 = 2.0 * nn * (nn + s) * (2.0 * nn + s - 2.0);
        Complex c1 = (2.0 * nn + s - 1.0) * ((2.0 * nn + s) * (2.0 * nn + s - 2.0) * t + a * a - b * b);
        Complex c2 = 2.0 * (nn + a - 1.0) * (nn + b - 1.0) * (2.0 * nn + s);
        if (c0 == Complex(0.0)) return jacobi_poly(ell, a, b)(t);
        Complex next = (c1 * cur - c2 * prev) / c0;
        prev = cur;
        cur = next;
    }
    return cur;
}

Complex gegenbauer_eval(int ell, Complex alpha, Complex t) {
    if (ell < 0) throw DomainError("negative degree");
    Complex prev(1.0), cur = 2.0 * alpha * t;
    if (ell == 0) return prev;
    for (int n = 2; n <= ell; ++n) {
        Complex next = (2.0 * t * (double(n) + alpha - 1.0) * cur - (double(n) + 2.0 * alpha - 2.0) * prev) / double(n);
        prev = cur;
        cur = next;
    }
    return cur;
}

}  // namespace holobreak
