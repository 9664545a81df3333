#include "holobreak/juhl.hpp"

#include <future>
#include <numbers>
#include <thread>

#include "holobreak/errors.hpp"
#include "holobreak/rc_transform.hpp"
#include "holobreak/special.hpp"

namespace holobreak {

namespace {

constexpr double kPi = std::numbers::pi;

template <class F>
HoloSum<F> lorentz_laplacian(const HoloSum<F>& f, int count) {
    HoloSum<F> out(f.arity());
    for (int j = 0; j < count; ++j) {
        HoloSum<F> d = differentiate(differentiate(f, j), j);
        if (j == 0)
            out += d;
        else
            out -= d;
    }
    return out;
}

// The symbol as (k, coefficient of Lap'^k d_n^{ell-2k}).
template <class F>
std::vector<std::pair<int, typename F::Scalar>> juhl_symbol(const JuhlParams<F>& p, JuhlForm form) {
    using S = typename F::Scalar;
    if (p.n < 2) throw DomainError("juhl operators need n >= 2");
    if (p.ell < 0) throw DomainError("ell must be a natural number");
    S alpha = exponent_scalar(p.alpha());
    std::vector<std::pair<int, S>> out;
    if (form == JuhlForm::Gegenbauer) {
        for (int k = 0; 2 * k <= p.ell; ++k) out.emplace_back(k, gegenbauer_coeff(p.ell, k, alpha));
    } else {
        // i^{-ell} (I C)(-Lap', i d_n)
        for (const auto& [key, c] : gegenbauer_inflated(p.ell, alpha).coeffs) {
            int k = key.first;
            S sign = k % 2 ? S(-1L) : S(1L);
            out.emplace_back(k, imag_power<S>(-p.ell) * c * sign * imag_power<S>(p.ell - 2 * k));
        }
    }
    return out;
}

MPoly<GaussianRational> expand_polynomial(const HoloSum<Exact>& f) {
    using P = MPoly<GaussianRational>;
    P out(f.arity());
    for (const auto& [key, c] : f.terms()) {
        P t(f.arity());
        t.add(key.mono, c);
        for (const auto& [id, e] : key.bases) {
            auto k = integer_value(e);
            if (!k || *k < 0) throw DomainError("non-polynomial factor left after clearing powers");
            t = t * base_poly<GaussianRational>(id).pow(static_cast<int>(*k));
        }
        out += t;
    }
    return out;
}

Complex i_power(int k) { return imag_power<Complex>(k); }

}  // namespace

template <>
mpq_class JuhlParams<Exact>::alpha() const {
    return lambda - mpq_class(n - 1, 2);
}

template <>
Complex JuhlParams<Numeric>::alpha() const {
    return lambda - (n - 1) / 2.0;
}

template <class F>
HoloSum<F> juhl_operator(const JuhlParams<F>& p, const HoloSum<F>& f, JuhlForm form) {
    if (f.arity() != p.n) throw DomainError("juhl operator arity mismatch");
    auto symbol = juhl_symbol(p, form);
    HoloSum<F> out(p.n);
    HoloSum<F> lap = f;
    int done = 0;
    for (const auto& [k, c] : symbol) {
        while (done < k) {
            lap = lorentz_laplacian(lap, p.n - 1);
            ++done;
        }
        HoloSum<F> d = lap;
        for (int j = 0; j < p.ell - 2 * k; ++j) d = differentiate(d, p.n - 1);
        out += d.scaled(c);
    }
    return out;
}

template <class F>
HoloSum<F> juhl_sbo_apply(const JuhlParams<F>& p, const HoloSum<F>& f, JuhlForm form) {
    return restrict(juhl_operator(p, f, form), Substitution::hyperplane(p.n - 1));
}

template <class S>
MPoly<S> lorentz_quadratic(int n, const std::vector<S>& shift) {
    if (!shift.empty() && static_cast<int>(shift.size()) != n) throw DomainError("shift length mismatch");
    MPoly<S> q(n);
    for (int j = 0; j < n; ++j) {
        MPoly<S> lin = MPoly<S>::affine(n, j, shift.empty() ? S(0L) : S(-shift[static_cast<std::size_t>(j)]));
        if (j == 0)
            q += lin * lin;
        else
            q -= lin * lin;
    }
    return q;
}

bool BernsteinSatoResult::passed() const {
    if (!residual_zero || !(q0 == expected)) return false;
    for (const auto& h : higher)
        if (!holobreak::is_zero(h)) return false;
    return true;
}

GaussianRational bernstein_sato_q(int n, int ell, const mpq_class& lambda) {
    using GR = GaussianRational;
    GR pow2(mpq_class(1));
    for (int j = 0; j < ell; ++j) pow2 = pow2 * GR(mpq_class(2));
    return pow2 * GR(mpq_class(1) / factorial_q(ell)) * pochhammer(GR(2 * lambda - n + 1), ell) * pochhammer(GR(lambda), ell);
}

Complex bernstein_sato_q(int n, int ell, Complex lambda) {
    return std::pow(2.0, ell) / factorial(ell) * pochhammer(2.0 * lambda - double(n - 1), ell) * pochhammer(lambda, ell);
}

BernsteinSatoResult bernstein_sato_verify(const JuhlParams<Exact>& p) {
    using GR = GaussianRational;
    using P = MPoly<GR>;
    const int n = p.n, ell = p.ell;
    P Q = lorentz_quadratic<GR>(n);
    HoloSum<Exact> f = HoloSum<Exact>::term(n, GR(mpq_class(1)), Monomial(static_cast<std::size_t>(n), 0), {{Q, -p.lambda}});
    HoloSum<Exact> s = juhl_operator(p, f).times_power(Q, p.lambda + ell);
    P poly = expand_polynomial(s);

    // On zeta = (z1, 0, .., 0, zn): Q = z1^2 - zn^2, and the coefficient of
    // z1^{2j} zn^{ell-2j} is sum_{i >= j} q_i binom(i, j) (-1)^{i-j}.
    const int top = ell / 2;
    std::vector<GR> coeff(static_cast<std::size_t>(top + 1), GR(mpq_class(0)));
    for (const auto& [m, c] : poly.terms()) {
        bool on_line = true;
        for (int j = 1; j + 1 < n; ++j)
            if (m[static_cast<std::size_t>(j)] != 0) on_line = false;
        if (!on_line || m[0] % 2) continue;
        int j = m[0] / 2;
        if (j <= top && m[static_cast<std::size_t>(n - 1)] == ell - 2 * j) coeff[static_cast<std::size_t>(j)] += c;
    }
    std::vector<GR> q(static_cast<std::size_t>(top + 1), GR(mpq_class(0)));
    for (int j = top; j >= 0; --j) {
        GR acc = coeff[static_cast<std::size_t>(j)];
        for (int i = j + 1; i <= top; ++i) {
            GR t = q[static_cast<std::size_t>(i)] * GR(binomial_q(i, j));
            acc = (i - j) % 2 ? acc + t : acc - t;
        }
        q[static_cast<std::size_t>(j)] = acc;
    }
    P rebuilt(n);
    for (int j = 0; j <= top; ++j) {
        Monomial m(static_cast<std::size_t>(n), 0);
        m[static_cast<std::size_t>(n - 1)] = ell - 2 * j;
        P t(n);
        t.add(m, q[static_cast<std::size_t>(j)]);
        rebuilt += t * Q.pow(j);
    }
    BernsteinSatoResult r;
    r.q0 = q[0];
    r.expected = bernstein_sato_q(n, ell, p.lambda);
    r.higher.assign(q.begin() + 1, q.end());
    r.residual_zero = (poly - rebuilt).is_zero();
    return r;
}

CoefficientLadder coefficient_ladder(const JuhlParams<Exact>& p) {
    using GR = GaussianRational;
    const int ell = p.ell, top = ell / 2;
    GR alpha(p.alpha()), lam(p.lambda);
    CoefficientLadder out;
    for (int m = 0; m <= top; ++m) {
        GR acc(mpq_class(0));
        for (int k = m; k <= top; ++k) acc += gegenbauer_coeff(ell, k, alpha) * GR(binomial_q(k, m));
        out.p.push_back(acc);
    }
    GR s(mpq_class(1));
    out.s.push_back(s);
    for (int k = 0; k < top; ++k) {
        GR lk = lam + GR(mpq_class(k));
        s = s * GR(mpq_class(2)) * lk * (GR(mpq_class(2)) * lk - GR(mpq_class(p.n - 2)));
        out.s.push_back(s);
    }
    GR pow2(mpq_class(1));
    for (int j = 0; j < ell; ++j) pow2 = pow2 * GR(mpq_class(2));
    out.q0 = out.p[0] * pow2 * pochhammer(lam, ell);
    return out;
}

// ---- cone model ----

double q_form(std::span<const double> y) {
    if (y.empty()) throw DomainError("empty vector");
    double q = y[0] * y[0];
    for (std::size_t j = 1; j < y.size(); ++j) q -= y[j] * y[j];
    return q;
}

bool in_cone(std::span<const double> y) { return !y.empty() && y[0] > 0 && q_form(y) > 0; }

std::vector<double> iota_cone(std::span<const double> yp, double v) {
    if (!in_cone(yp)) throw DomainError("base point outside the cone");
    if (!(v > -1 && v < 1)) throw DomainError("fiber coordinate must lie in (-1, 1)");
    std::vector<double> y(yp.begin(), yp.end());
    y.push_back(-std::sqrt(q_form(yp)) * v);
    return y;
}

double weight_M_cone(const ConeParams& p, std::span<const double> yp, double v) {
    if (!in_cone(yp)) throw DomainError("base point outside the cone");
    return std::pow(q_form(yp), (p.ell + 1) / 2.0) * std::pow(1 - v * v, p.n / 2.0 - p.lambda);
}

double cone_density(double lambda, std::span<const double> y) {
    if (!in_cone(y)) throw DomainError("point outside the cone");
    return std::pow(q_form(y), y.size() / 2.0 - lambda);
}

ConeFn phi_cone_apply(const ConeParams& p, const std::function<Complex(std::span<const double>)>& h) {
    auto inflated = std::make_shared<Poly2<Complex>>(gegenbauer_inflated(p.ell, Complex(p.alpha())));
    ConeFn out;
    out.fiber_edge = p.lambda - p.n / 2.0;
    out.f = [p, h, inflated](std::span<const double> y) {
        if (static_cast<int>(y.size()) != p.n) throw DomainError("point dimension mismatch");
        auto yp = y.first(y.size() - 1);
        double qp = q_form(yp), yn = y.back();
        return std::pow(qp, -(p.ell + 0.5)) * std::pow(1 - yn * yn / qp, p.lambda - p.n / 2.0) * (*inflated)(qp, -yn) * h(yp);
    };
    return out;
}

Complex phi_cone_iota_form(const ConeParams& p, const std::function<Complex(std::span<const double>)>& h,
                           std::span<const double> yp, double v) {
    return gegenbauer_eval(p.ell, p.alpha(), v) * h(yp) / weight_M_cone(p, yp, v);
}

Estimate juhl_hat_apply(const ConeParams& p, const ConeFn& F, std::span<const double> yp, FiberOptions opts) {
    double e = std::isnan(F.fiber_edge) ? p.lambda - p.n / 2.0 : F.fiber_edge;
    if (e <= -1) throw DomainError("fiber edge exponent must exceed -1");
    double qp = q_form(yp);
    if (!in_cone(yp)) throw DomainError("base point outside the cone");
    auto g = [&](double v) {
        auto y = iota_cone(yp, v);
        return F(y) * gegenbauer_eval(p.ell, p.alpha(), v) * std::pow(1 - v * v, -e);
    };
    Estimate est = integrate_adaptive(g, WeightFamily::jacobi(e, e), opts.tol, {opts.start_order, opts.max_order, 1e-300});
    double scale = std::pow(qp, (p.ell + 1) / 2.0);
    est.value *= scale / i_power(p.ell);
    est.error *= scale;
    return est;
}

Estimate fiber_norm_sq(const ConeParams& p, const ConeFn& F, std::span<const double> yp, FiberOptions opts) {
    double e = std::isnan(F.fiber_edge) ? p.lambda - p.n / 2.0 : F.fiber_edge;
    double w = 2 * e + p.n / 2.0 - p.lambda;
    if (w <= -1) throw DomainError("fiber integrand not integrable");
    double sq = std::sqrt(q_form(yp));
    auto g = [&](double v) {
        auto y = iota_cone(yp, v);
        return Complex(std::norm(F(y)) * cone_density(p.lambda, y) * sq * std::pow(1 - v * v, -w));
    };
    return integrate_adaptive(g, WeightFamily::jacobi(w, w), opts.tol, {opts.start_order, opts.max_order, 1e-300});
}

ConeFn invert_juhl(int n, double lambda, const std::map<int, std::function<Complex(std::span<const double>)>>& components,
                   int L) {
    struct Piece {
        ConeParams params;
        Complex scale;
        std::function<Complex(std::span<const double>)> h;
    };
    auto pieces = std::make_shared<std::vector<Piece>>();
    for (const auto& [ell, g] : components) {
        if (ell < 0) throw DomainError("negative component index");
        if (ell > L) continue;
        ConeParams p{n, lambda, ell};
        double c = gegenbauer_norm_sq(ell, p.alpha());
        if (c == 0) throw DomainError("inversion undefined where c_ell vanishes");
        pieces->push_back({p, i_power(ell) / c, g});
    }
    ConeFn out;
    out.fiber_edge = lambda - n / 2.0;
    out.f = [pieces, n](std::span<const double> y) {
        if (static_cast<int>(y.size()) != n) throw DomainError("point dimension mismatch");
        auto yp = y.first(y.size() - 1);
        double v = -y.back() / std::sqrt(q_form(yp));
        Complex sum(0.0);
        for (const auto& pc : *pieces) sum += pc.scale * phi_cone_iota_form(pc.params, pc.h, yp, v);
        return sum;
    };
    return out;
}

double b_cone(int n, double lambda) {
    return std::pow(2 * kPi, 1.5 * n - 1) * std::pow(2.0, n - 2 * lambda) * gamma_real(lambda - n / 2.0) *
           gamma_real(lambda - n + 1);
}

Complex bergman_kernel_constant(int n, Complex lambda) {
    Complex two_i_pow = std::exp(2.0 * lambda * std::log(Complex(0, 2)));
    return two_i_pow / std::pow(2 * kPi, n) * (lambda - n / 2.0) * complex_gamma(lambda) * reciprocal_gamma(lambda - double(n - 1));
}

ConeConstants cone_constants(const ConeParams& p) {
    const int n = p.n, ell = p.ell;
    const double lam = p.lambda, nu = p.nu(), a = p.alpha();
    ConeConstants k;
    k.c = gegenbauer_norm_sq(ell, a);
    k.c_closed = kPi * std::pow(2.0, n - 2 * lam) * gamma_real(2 * lam + ell - n + 1) /
                 (factorial(ell) * (lam + ell - (n - 1) / 2.0) * std::pow(gamma_real(a), 2));
    k.r = gamma_real(nu - (n - 1) / 2.0) * gamma_real(nu - n + 2) /
          (std::pow(2 * kPi, 1.5) * std::pow(2.0, 2 * ell + 1) * gamma_real(lam - n / 2.0) * gamma_real(lam - n + 1));
    k.b_n = b_cone(n, lam);
    k.b_n1 = b_cone(n - 1, nu);
    Complex two_i_pow = std::exp(2.0 * lam * std::log(Complex(0, 2)));
    k.k = two_i_pow / std::pow(4 * kPi, n) * (lam - n / 2.0) * gamma_real(lam) * reciprocal_gamma_real(lam - n + 1);
    k.k_euclid = bergman_kernel_constant(n, lam);
    k.q = bernstein_sato_q(n, ell, Complex(lam));
    Complex i_pow = std::exp(Complex(0, kPi * (lam + ell)));
    k.C = std::pow(2.0, 2 * lam - 2 * n + ell - 1) * pochhammer(Complex(lam - n + 1), n + ell - 1) *
          pochhammer(Complex(2 * lam - n), ell + 1) / (i_pow * std::pow(kPi, n) * factorial(ell));
    return k;
}

double juhl_operator_norm_sq(const ConeParams& p) {
    if (!(p.lambda > p.n - 1)) throw DomainError("operator norm requires lambda > n - 1");
    auto k = cone_constants(p);
    return k.r * k.c;
}

Complex relative_kernel(const ConeParams& p, std::span<const Complex> zeta, std::span<const Complex> tau) {
    if (static_cast<int>(zeta.size()) != p.n || static_cast<int>(tau.size()) != p.n - 1)
        throw DomainError("relative kernel dimension mismatch");
    Complex q(0.0);
    for (int j = 0; j < p.n; ++j) {
        Complex w = j < p.n - 1 ? zeta[static_cast<std::size_t>(j)] - std::conj(tau[static_cast<std::size_t>(j)])
                                : zeta[static_cast<std::size_t>(j)];
        q += j == 0 ? w * w : -w * w;
    }
    double nu = p.nu();
    bool integral = std::floor(nu) == nu;
    if (!integral && q.real() < 0 && std::abs(std::arg(q)) > kPi - 1e-10)
        throw BranchError("relative kernel evaluated on the branch cut");
    Complex pw = integral ? std::pow(q, -static_cast<int>(nu)) : std::pow(q, -nu);
    return pw * std::pow(zeta[static_cast<std::size_t>(p.n - 1)], p.ell);
}

Complex relative_kernel_integral(const ConeParams& p, const std::function<Complex(Complex, Complex)>& g,
                                 std::span<const Complex> zeta, HoloOptions opts) {
    if (p.n != 3) throw DomainError("the direct holographic integral is implemented for n = 3 only");
    if (opts.order < 1 || !(opts.radius > 0)) throw DomainError("invalid holographic quadrature options");
    // Light-cone coordinates u = x1 +- x2, s = y1 +- y2; dx dy = du+ du- ds+ ds- / 4.
    // Real axes: u = sinh(a t), a = asinh(R). Imaginary axes: s = eps (e^{b (t+1)} - 1), b = ln(R/eps)/2.
    const double eps = 1e-3;
    const double a = std::asinh(opts.radius), b = std::log(opts.radius / eps) / 2;
    auto rule = build_rule(WeightFamily::legendre(), opts.order);
    const std::size_t N = rule->size();
    std::vector<double> u(N), du(N), s(N), ds(N);
    for (std::size_t i = 0; i < N; ++i) {
        double t = rule->nodes[i], w = rule->weights[i];
        u[i] = std::sinh(a * t);
        du[i] = w * a * std::cosh(a * t);
        s[i] = eps * (std::exp(b * (t + 1)) - 1);
        ds[i] = w * eps * b * std::exp(b * (t + 1));
    }
    const double wexp = p.nu() - 2;
    std::vector<Complex> zeta_v(zeta.begin(), zeta.end());
    auto slice = [&](std::size_t i0) {
        Complex acc(0.0);
        for (std::size_t i1 = 0; i1 < N; ++i1)
            for (std::size_t j0 = 0; j0 < N; ++j0)
                for (std::size_t j1 = 0; j1 < N; ++j1) {
                    double up = u[i0], um = u[i1], sp = s[j0], sm = s[j1];
                    Complex t1((up + um) / 2, (sp + sm) / 2), t2((up - um) / 2, (sp - sm) / 2);
                    Complex tau[2] = {t1, t2};
                    Complex val = relative_kernel(p, zeta_v, tau) * g(t1, t2) * std::pow(sp * sm, wexp);
                    acc += du[i0] * du[i1] * ds[j0] * ds[j1] * val;
                }
        return acc;
    };
    unsigned threads = opts.threads > 0 ? static_cast<unsigned>(opts.threads) : std::max(1u, std::thread::hardware_concurrency());
    std::vector<Complex> parts(N);
    if (threads <= 1) {
        for (std::size_t i = 0; i < N; ++i) parts[i] = slice(i);
    } else {
        std::vector<std::future<void>> jobs;
        std::atomic<std::size_t> next{0};
        for (unsigned t = 0; t < std::min<std::size_t>(threads, N); ++t)
            jobs.push_back(std::async(std::launch::async, [&] {
                for (std::size_t i; (i = next.fetch_add(1)) < N;) parts[i] = slice(i);
            }));
        for (auto& j : jobs) j.get();
    }
    Complex total(0.0);
    for (const auto& v : parts) total += v;
    return total / 4.0;
}

Complex holographic_integral(const ConeParams& p, const std::function<Complex(Complex, Complex)>& g,
                             std::span<const Complex> zeta, HoloOptions opts) {
    return cone_constants(p).C * relative_kernel_integral(p, g, zeta, opts);
}

#define HOLOBREAK_INSTANTIATE(F)                                                                     \
    template HoloSum<F> juhl_operator(const JuhlParams<F>&, const HoloSum<F>&, JuhlForm);            \
    template HoloSum<F> juhl_sbo_apply(const JuhlParams<F>&, const HoloSum<F>&, JuhlForm);           \
    template MPoly<F::Scalar> lorentz_quadratic(int, const std::vector<F::Scalar>&);

HOLOBREAK_INSTANTIATE(Exact)
HOLOBREAK_INSTANTIATE(Numeric)

#undef HOLOBREAK_INSTANTIATE

}  // namespace holobreak
