#include "holobreak/scalar.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "holobreak/errors.hpp"

namespace holobreak {

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
    re += o.re;
    im += o.im;
    return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
    re -= o.re;
    im -= o.im;
    return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
    if (sgn(im) == 0 && sgn(o.im) == 0) {
        re *= o.re;
        return *this;
    }
    mpq_class r = re * o.re - im * o.im;
    mpq_class i = re * o.im + im * o.re;
    re = std::move(r);
    im = std::move(i);
    return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
    if (o.is_zero()) throw DomainError("division by zero in exact arithmetic");
    if (sgn(o.im) == 0) {
        re /= o.re;
        im /= o.re;
        return *this;
    }
    mpq_class d = o.norm();
    mpq_class r = (re * o.re + im * o.im) / d;
    mpq_class i = (im * o.re - re * o.im) / d;
    re = std::move(r);
    im = std::move(i);
    return *this;
}

int compare(const mpq_class& a, const mpq_class& b) { return cmp(a, b) < 0 ? -1 : (cmp(a, b) > 0 ? 1 : 0); }

int compare(const GaussianRational& a, const GaussianRational& b) {
    if (int c = compare(a.re, b.re)) return c;
    return compare(a.im, b.im);
}

int compare(const Complex& a, const Complex& b) {
    if (a.real() != b.real()) return a.real() < b.real() ? -1 : 1;
    if (a.imag() != b.imag()) return a.imag() < b.imag() ? -1 : 1;
    return 0;
}

std::optional<long> integer_value(const mpq_class& q) {
    if (q.get_den() != 1 || !q.get_num().fits_slong_p()) return std::nullopt;
    return q.get_num().get_si();
}

std::optional<long> integer_value(const Complex& z) {
    if (z.imag() != 0.0 || std::floor(z.real()) != z.real() || std::abs(z.real()) > 1e15)
        return std::nullopt;
    return static_cast<long>(z.real());
}

template <>
GaussianRational imag_power<GaussianRational>(long k) {
    switch (((k % 4) + 4) % 4) {
        case 0: return {mpq_class(1), mpq_class(0)};
        case 1: return {mpq_class(0), mpq_class(1)};
        case 2: return {mpq_class(-1), mpq_class(0)};
        default: return {mpq_class(0), mpq_class(-1)};
    }
}

template <>
Complex imag_power<Complex>(long k) {
    switch (((k % 4) + 4) % 4) {
        case 0: return {1, 0};
        case 1: return {0, 1};
        case 2: return {-1, 0};
        default: return {0, -1};
    }
}

template <>
GaussianRational from_rational<GaussianRational>(const mpq_class& q) {
    return GaussianRational(q);
}

template <>
Complex from_rational<Complex>(const mpq_class& q) {
    return {q.get_d(), 0.0};
}

template <>
mpq_class from_rational<mpq_class>(const mpq_class& q) {
    return q;
}

namespace {

bool is_int_literal(const std::string& s) {
    std::size_t i = 0;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

}  // namespace

bool looks_rational(const std::string& text) {
    auto slash = text.find('/');
    if (slash == std::string::npos) return is_int_literal(text);
    std::string den = text.substr(slash + 1);
    return is_int_literal(text.substr(0, slash)) && is_int_literal(den) && den[0] != '-' && den[0] != '+';
}

mpq_class parse_rational(const std::string& text) {
    if (!looks_rational(text)) throw DomainError("not a rational literal: '" + text + "'");
    std::string t = text;
    if (!t.empty() && t[0] == '+') t.erase(0, 1);
    mpq_class q;
    if (q.set_str(t, 10) != 0) throw DomainError("not a rational literal: '" + text + "'");
    if (sgn(q.get_den()) == 0) throw DomainError("zero denominator: '" + text + "'");
    q.canonicalize();
    return q;
}

double parse_double(const std::string& text) {
    if (looks_rational(text)) return parse_rational(text).get_d();
    std::size_t used = 0;
    double v = 0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        throw DomainError("not a number: '" + text + "'");
    }
    if (used != text.size()) throw DomainError("not a number: '" + text + "'");
    return v;
}

Complex parse_complex(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw DomainError("empty complex literal");
    if (s.back() != 'i') return {parse_double(s), 0.0};
    std::string body = s.substr(0, s.size() - 1);
    // Split at the last sign that is not part of an exponent.
    std::size_t split = std::string::npos;
    for (std::size_t k = body.size(); k-- > 1;) {
        if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    auto imag_of = [](const std::string& t) {
        if (t.empty() || t == "+") return 1.0;
        if (t == "-") return -1.0;
        return parse_double(t);
    };
    if (split == std::string::npos) return {0.0, imag_of(body)};
    return {parse_double(body.substr(0, split)), imag_of(body.substr(split))};
}

std::string to_string(const mpq_class& q) { return q.get_str(); }

std::string to_string(const GaussianRational& g) {
    if (g.is_real()) return g.re.get_str();
    return "(c " + g.re.get_str() + " " + g.im.get_str() + ")";
}

std::string to_string(const Complex& z) {
    char buf[96];
    if (z.imag() == 0.0) {
        std::snprintf(buf, sizeof buf, "%.17g", z.real());
    } else {
        std::snprintf(buf, sizeof buf, "(c %.17g %.17g)", z.real(), z.imag());
    }
    std::string s = buf;
    // Keep decimal markers so the text re-parses as a float literal.
    auto mark = [](std::string t) {
        if (t.find_first_of(".eEn") == std::string::npos) t += ".0";
        return t;
    };
    if (z.imag() == 0.0) return mark(s);
    char re[40], im[40];
    std::snprintf(re, sizeof re, "%.17g", z.real());
    std::snprintf(im, sizeof im, "%.17g", z.imag());
    return "(c " + mark(re) + " " + mark(im) + ")";
}

}  // namespace holobreak
