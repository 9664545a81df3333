#pragma once

#include <complex>
#include <optional>
#include <string>

#include <gmpxx.h>

namespace holobreak {

using Complex = std::complex<double>;

// a + b i with a, b exact rationals.
class GaussianRational {
public:
    mpq_class re{0};
    mpq_class im{0};

    GaussianRational() = default;
    GaussianRational(long v) : re(v) {}
    GaussianRational(const mpq_class& r) : re(r) {}
    GaussianRational(const mpq_class& r, const mpq_class& i) : re(r), im(i) {}

    static GaussianRational imag_unit() { return {mpq_class(0), mpq_class(1)}; }

    bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
    bool is_real() const { return sgn(im) == 0; }
    GaussianRational conj() const { return {re, -im}; }
    mpq_class norm() const { return re * re + im * im; }

    GaussianRational& operator+=(const GaussianRational& o);
    GaussianRational& operator-=(const GaussianRational& o);
    GaussianRational& operator*=(const GaussianRational& o);
    GaussianRational& operator/=(const GaussianRational& o);

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
    friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
    friend GaussianRational operator-(const GaussianRational& a) { return {-a.re, -a.im}; }
    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re == b.re && a.im == b.im;
    }
};

int compare(const GaussianRational& a, const GaussianRational& b);
int compare(const Complex& a, const Complex& b);
int compare(const mpq_class& a, const mpq_class& b);

// Scalar and exponent types of the two arithmetic tiers.
struct Exact {
    using Scalar = GaussianRational;
    using Exponent = mpq_class;
    static constexpr bool is_exact = true;
};

struct Numeric {
    using Scalar = Complex;
    using Exponent = Complex;
    static constexpr bool is_exact = false;
};

inline Complex to_complex(const Complex& z) { return z; }
inline Complex to_complex(const mpq_class& q) { return {q.get_d(), 0.0}; }
inline Complex to_complex(const GaussianRational& g) { return {g.re.get_d(), g.im.get_d()}; }

inline bool is_zero(const Complex& z) { return z.real() == 0.0 && z.imag() == 0.0; }
inline bool is_zero(const GaussianRational& g) { return g.is_zero(); }
inline bool is_zero(const mpq_class& q) { return sgn(q) == 0; }

std::optional<long> integer_value(const mpq_class& q);
std::optional<long> integer_value(const Complex& z);

// Embeds an exponent into the scalar type of the same tier.
inline GaussianRational exponent_scalar(const mpq_class& e) { return GaussianRational(e); }
inline Complex exponent_scalar(const Complex& e) { return e; }

// i^k in either tier.
template <class S>
S imag_power(long k);

template <class S>
S from_rational(const mpq_class& q);

// "p/q", integer, or decimal literal.
bool looks_rational(const std::string& text);
mpq_class parse_rational(const std::string& text);
double parse_double(const std::string& text);
// Complex literal like "0.3+1.2i", "-2i", "1".
Complex parse_complex(const std::string& text);

std::string to_string(const mpq_class& q);
std::string to_string(const GaussianRational& g);
std::string to_string(const Complex& z);

}  // namespace holobreak
