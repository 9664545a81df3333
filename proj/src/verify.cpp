#include "holobreak/verify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <map>
#include <memory>
#include <random>
#include <regex>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "holobreak/juhl.hpp"
#include "holobreak/l2_model.hpp"
#include "holobreak/quadrature.hpp"
#include "holobreak/rc_transform.hpp"
#include "holobreak/special.hpp"

namespace holobreak {

namespace {

using GR = GaussianRational;
using Case = std::function<CaseRecord()>;
using Params = std::vector<std::pair<std::string, std::string>>;

const Complex kI(0, 1);

Complex ipow(int k) { return imag_power<Complex>(k); }

// ---- parameters ----

mpq_class decimal_to_rational(const std::string& text) {
    static const std::regex re(R"(([+-]?)(\d*)(?:\.(\d*))?(?:[eE]([+-]?\d+))?)");
    std::smatch m;
    if (!std::regex_match(text, m, re) || (m[2].length() == 0 && m[3].length() == 0))
        throw ConfigError("not a number: '" + text + "'");
    std::string digits = m[2].str() + m[3].str();
    long exp10 = -static_cast<long>(m[3].length());
    if (m[4].matched) exp10 += std::stol(m[4].str());
    if (digits.empty()) digits = "0";
    mpz_class num(digits, 10), scale(1);
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exp10)));
    mpq_class q = exp10 >= 0 ? mpq_class(num * scale) : mpq_class(num, scale);
    q.canonicalize();
    return m[1].str() == "-" ? mpq_class(-q) : q;
}

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    return s.substr(b, s.find_last_not_of(" \t") - b + 1);
}

// ---- record helpers ----

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

CaseRecord make_record(const std::string& suite, const std::string& id, bool exact, Params params, double tol) {
    CaseRecord r;
    r.suite = suite;
    r.id = id;
    r.mode = exact ? "exact" : "float";
    r.params = std::move(params);
    r.tol = exact ? 0 : tol;
    return r;
}

void set_values(CaseRecord& r, Complex computed, Complex reference) {
    r.computed = computed;
    r.reference = reference;
    r.abs_residual = std::abs(computed - reference);
    double scale = std::abs(reference);
    r.rel_residual = scale > 0 ? r.abs_residual / scale : r.abs_residual;
}

// Folds a per-sample relative deviation into the record; reference is 0.
void set_deviation(CaseRecord& r, double dev) {
    r.computed = dev;
    r.reference = 0.0;
    r.abs_residual = dev;
    r.rel_residual = dev;
}

struct Ctx {
    const SuiteConfig& cfg;
    bool exact = false;  // flag or a rational entry in the effective grid
    std::vector<Case> cases;

    double tol(double fallback) const { return std::isnan(cfg.tol) ? fallback : cfg.tol; }

    void add(Case c) { cases.push_back(std::move(c)); }
};

template <class F>
typename F::Exponent exponent_of(const ParamValue& v) {
    if constexpr (F::is_exact)
        return v.exact;
    else
        return Complex(v.value);
}

template <class F>
HoloSum<F> lift(const HoloSum<Exact>& f) {
    if constexpr (F::is_exact)
        return f;
    else
        return to_numeric(f);
}

// Sum of |term| at pt; the natural scale when the sum itself cancels.
template <class F>
double term_magnitude(const HoloSum<F>& f, std::span<const Complex> pt) {
    double total = 0;
    for (const auto& [key, c] : f.terms()) {
        std::vector<typename HoloSum<F>::Factor> factors;
        for (const auto& [id, e] : key.bases) factors.push_back({base_poly<typename F::Scalar>(id), e});
        total += std::abs(evaluate(HoloSum<F>::term(f.arity(), c, key.mono, std::move(factors)), pt));
    }
    return total;
}

// Exact: difference must vanish identically. Float: |lhs - rhs| relative to the term magnitudes.
template <class F>
void compare_sums(CaseRecord& r, const std::vector<std::pair<HoloSum<F>, HoloSum<F>>>& pairs,
                  const std::vector<std::vector<Complex>>& pts) {
    double dev = 0;
    bool exact_ok = true;
    for (const auto& [a, b] : pairs) {
        if constexpr (F::is_exact) {
            if (!is_zero_exact(a - b)) exact_ok = false;
        }
        for (const auto& pt : pts) {
            double scale = std::max(term_magnitude(a, pt), term_magnitude(b, pt));
            if (scale > 0) dev = std::max(dev, std::abs(evaluate(a, pt) - evaluate(b, pt)) / scale);
        }
    }
    set_deviation(r, dev);
    r.pass = F::is_exact ? exact_ok : dev <= r.tol;
}

// ---- rc-identities ----

template <class F>
void rc_identity_cases(Ctx& ctx, const ParamValue& a, const ParamValue& b, int ell) {
    const std::string suite = ctx.cfg.suite;
    const bool exact = F::is_exact;
    Params params{{"lambda1", a.text}, {"lambda2", b.text}, {"ell", std::to_string(ell)}};
    const double tol = ctx.tol(1e-9);
    const auto seed = ctx.cfg.seed;
    RCParams<F> p{exponent_of<F>(a), exponent_of<F>(b), ell};

    ctx.add([=] {
        auto r = make_record(suite, "rc.formula-equivalence", exact, params, tol);
        auto pts = sample_points(TubeDomain::UpperHalfPlanes, 1, 8, seed);
        std::vector<std::pair<HoloSum<F>, HoloSum<F>>> pairs;
        for (const auto& f0 : rc_test_library()) {
            auto f = lift<F>(f0);
            auto base = rc_apply(p, f, RCForm::Coefficient);
            pairs.emplace_back(base, rc_apply(p, f, RCForm::InflatedJacobi));
            pairs.emplace_back(base, rc_apply(p, f, RCForm::Variant));
        }
        compare_sums(r, pairs, pts);
        return r;
    });
    for (auto [z, name] : {std::pair{Sl2Generator::H, "H"}, {Sl2Generator::X, "X"}, {Sl2Generator::Y, "Y"}}) {
        ctx.add([=] {
            auto r = make_record(suite, std::string("rc.intertwining-") + name, exact, params, tol);
            auto pts = sample_points(TubeDomain::UpperHalfPlanes, 1, 8, seed);
            std::vector<std::pair<HoloSum<F>, HoloSum<F>>> pairs;
            for (const auto& f0 : rc_test_library()) {
                auto f = lift<F>(f0);
                pairs.emplace_back(rc_apply(p, sl2_action_diag<F>(z, p.lambda1, p.lambda2, f)),
                                   sl2_action<F>(z, p.lambda3(), rc_apply(p, f)));
            }
            compare_sums(r, pairs, pts);
            return r;
        });
    }
    ctx.add([=] {
        auto r = make_record(suite, "rc.casimir-eigenvalue", exact, params, tol);
        auto shape = psi_ktype_closed_form(p).shape;
        auto pk = casimir_P<F>(p.lambda1, p.lambda2, shape);
        auto ev = exponent_scalar(typename F::Exponent(-ell) * (p.lambda1 + p.lambda2 + typename F::Exponent(ell - 1)));
        auto pts = sample_points(TubeDomain::UpperHalfPlanes, 2, 8, seed);
        compare_sums(r, std::vector<std::pair<HoloSum<F>, HoloSum<F>>>{{pk, shape.scaled(ev)}}, pts);
        return r;
    });
    ctx.add([=] {
        auto r = make_record(suite, "rc.ktype-composition", exact, params, tol);
        auto shape = psi_ktype_closed_form(p).shape;
        using S = typename F::Scalar;
        S poch = pochhammer(exponent_scalar(p.lambda1 + p.lambda2 + typename F::Exponent(ell - 1)), ell);
        auto gen = HoloSum<F>::term(1, poch, {0}, {{MPoly<S>::affine(1, 0, imag_power<S>(1)), -p.lambda3()}});
        auto pts = sample_points(TubeDomain::UpperHalfPlanes, 1, 8, seed);
        compare_sums(r, std::vector<std::pair<HoloSum<F>, HoloSum<F>>>{{rc_apply(p, shape), gen}}, pts);
        return r;
    });
}

void zero_classification_case(Ctx& ctx, long l1, long l2, int ell) {
    const std::string suite = ctx.cfg.suite;
    Params params{{"lambda1", std::to_string(l1)}, {"lambda2", std::to_string(l2)}, {"ell", std::to_string(ell)}};
    ctx.add([=] {
        auto r = make_record(suite, "rc.zero-classification", true, params, 0);
        auto z = zero_classification(l1, l2, l1 + l2 + 2 * ell);
        Complex c = z.collision() ? Complex(NAN, 0) : c_ell(double(l1), double(l2), ell);
        r.computed = c;
        r.reference = z.condition_holds ? Complex(0.0) : c;
        r.abs_residual = r.rel_residual = 0;
        r.pass = z.agrees();
        r.note = z.collision() ? "collision" : z.condition_holds ? "condition holds" : "";
        return r;
    });
}

void suite_rc_identities(Ctx& ctx, const std::vector<ParamValue>& l1s, const std::vector<ParamValue>& l2s, int ell_max) {
    for (const auto& a : l1s)
        for (const auto& b : l2s)
            for (int ell = 0; ell <= ell_max; ++ell) {
                if (ctx.exact)
                    rc_identity_cases<Exact>(ctx, a, b, ell);
                else
                    rc_identity_cases<Numeric>(ctx, a, b, ell);
                if (a.rational && b.rational && a.exact.get_den() == 1 && b.exact.get_den() == 1)
                    zero_classification_case(ctx, a.exact.get_num().get_si(), b.exact.get_num().get_si(), ell);
            }
}

// ---- rc-plancherel ----

void suite_rc_plancherel(Ctx& ctx, const std::vector<ParamValue>& l1s, const std::vector<ParamValue>& l2s, int ell_max) {
    const std::string suite = ctx.cfg.suite;
    const auto seed = ctx.cfg.seed;
    for (const auto& a : l1s)
        for (const auto& b : l2s)
            for (int ell = 0; ell <= ell_max; ++ell) {
                Params params{{"lambda1", a.text}, {"lambda2", b.text}, {"ell", std::to_string(ell)}};
                double l1 = a.value, l2 = b.value;
                double tol_norm = ctx.tol(1e-10), tol_psi = ctx.tol(1e-9);
                ctx.add([=] {
                    auto r = make_record(suite, "rc.c-ell-jacobi-norm", false, params, tol_norm);
                    auto g = [&](double t) { return Complex(std::norm(jacobi_eval(ell, l1 - 1, l2 - 1, t))); };
                    auto q = integrate_adaptive(g, WeightFamily::jacobi(l1 - 1, l2 - 1), 1e-14, {8, 512});
                    set_values(r, q.value / std::pow(2.0, l1 + l2 - 1), c_ell(l1, l2, ell));
                    r.pass = r.rel_residual <= r.tol;
                    return r;
                });
                ctx.add([=] {
                    auto r = make_record(suite, "rc.psi-closed-form", false, params, tol_psi);
                    RCParams<Numeric> p{l1, l2, ell};
                    auto closed = psi_ktype_closed_form(p).full();
                    Complex l3 = p.lambda3();
                    auto g = [&](Complex z) { return std::pow(z + kI, -l3); };
                    double dev = 0;
                    for (const auto& pt : sample_points(TubeDomain::UpperHalfPlanes, 2, 20, seed)) {
                        Complex num = psi_quadrature(p, g, pt[0], pt[1]), ref = evaluate(closed, pt);
                        dev = std::max(dev, std::abs(num - ref) / std::abs(ref));
                    }
                    set_deviation(r, dev);
                    r.pass = dev <= r.tol;
                    return r;
                });
                if (l1 > 1 && l2 > 1)
                    ctx.add([=] {
                        auto r = make_record(suite, "rc.operator-norm-positive", false, params, 0);
                        double v = rc_operator_norm_sq(l1, l2, ell);
                        r.computed = v;
                        r.reference = 0.0;
                        r.pass = v > 0 && std::isfinite(v);
                        return r;
                    });
            }
}

// ---- l2-plancherel ----

L2Fn1 power_exp(double lambda3, double shift, double rate) {
    L2Fn1 h;
    h.lambda = lambda3;
    h.decay = rate;
    h.edge = lambda3 - 1 + shift;
    h.f = [=](double z) { return Complex(std::pow(z, lambda3 - 1 + shift) * std::exp(-rate * z)); };
    return h;
}

std::vector<L2Fn1> exp_family(double lambda3) {
    return {power_exp(lambda3, 0, 1), power_exp(lambda3, 1, 1), power_exp(lambda3, 0, 2)};
}

void suite_l2_plancherel(Ctx& ctx, const std::vector<ParamValue>& l1s, const std::vector<ParamValue>& l2s, int ell_max) {
    const std::string suite = ctx.cfg.suite;
    for (const auto& a : l1s)
        for (const auto& b : l2s) {
            double l1 = a.value, l2 = b.value;
            for (int ell = 0; ell <= ell_max; ++ell) {
                Params params{{"lambda1", a.text}, {"lambda2", b.text}, {"ell", std::to_string(ell)}};
                L2Params p{l1, l2, ell};
                ctx.add([=, tol = ctx.tol(1e-7)] {
                    auto r = make_record(suite, "l2.phi-isometry", false, params, tol);
                    double c = c_ell(l1, l2, ell).real(), worst = -1;
                    Complex comp = 0.0;
                    for (const auto& h : exp_family(p.lambda3())) {
                        double ratio = weighted_norm_sq(phi_apply(p, h)).value.real() / weighted_norm_sq(h).value.real();
                        if (std::abs(ratio - c) > worst) worst = std::abs(ratio - c), comp = ratio;
                    }
                    set_values(r, comp, c);
                    r.pass = r.rel_residual <= r.tol;
                    return r;
                });
                ctx.add([=, tol = ctx.tol(1e-9)] {
                    auto r = make_record(suite, "l2.rchat-phi", false, params, tol);
                    Complex c = c_ell(l1, l2, ell);
                    double dev = 0;
                    for (const auto& h : exp_family(p.lambda3())) {
                        auto f = phi_apply(p, h);
                        for (double z : {0.3, 1.0, 2.7}) {
                            Complex ref = c / ipow(ell) * h(z);
                            dev = std::max(dev, std::abs(rchat_apply(p, f, z).value - ref) / std::abs(ref));
                        }
                    }
                    set_deviation(r, dev);
                    r.pass = dev <= r.tol;
                    return r;
                });
                ctx.add([=, tol = ctx.tol(1e-7)] {
                    auto r = make_record(suite, "l2.adjoint", false, params, tol);
                    double dev = 0;
                    for (const auto& h : exp_family(p.lambda3())) {
                        L2Fn2 F;
                        F.lambda1 = l1;
                        F.lambda2 = l2;
                        F.decay = 1.5;
                        F.f = [=](double x, double y) {
                            return std::pow(x, l1 - 1) * std::pow(y, l2 - 1) * std::exp(-1.5 * (x + y)) *
                                   Complex(1 + x, 2 * y - x * y) / (2.0 + y);
                        };
                        L2Fn1 rf;
                        rf.lambda = p.lambda3();
                        rf.decay = 1.5;
                        rf.edge = p.lambda3() - 1;
                        rf.f = [=](double z) { return rchat_apply(p, F, z).value; };
                        Complex lhs = inner_product(h, rf).value;
                        Complex rhs = ipow(ell) * inner_product(phi_apply(p, h), F).value;
                        dev = std::max(dev, std::abs(lhs - rhs) / std::abs(lhs));
                    }
                    set_deviation(r, dev);
                    r.pass = dev <= r.tol;
                    return r;
                });
                ctx.add([=, tol = ctx.tol(1e-8)] {
                    auto r = make_record(suite, "l2.inversion-round-trip", false, params, tol);
                    L2Fn1 h = power_exp(p.lambda3(), 1, 1);
                    auto F = phi_apply(p, h);
                    L2Fn1 g;
                    g.lambda = p.lambda3();
                    g.edge = h.edge;
                    g.f = [=](double z) { return rchat_apply(p, F, z).value; };
                    auto back = invert_rchat(l1, l2, {{ell, g}}, ell);
                    double dev = 0;
                    for (double x : {0.2, 1.0, 2.5})
                        for (double y : {0.3, 1.7}) {
                            Complex ref = F(x, y);
                            dev = std::max(dev, std::abs(back(x, y) - ref) / std::abs(ref));
                        }
                    set_deviation(r, dev);
                    r.pass = dev <= r.tol;
                    return r;
                });
            }
            Params params{{"lambda1", a.text}, {"lambda2", b.text}, {"ell", "0.." + std::to_string(ell_max)}};
            ctx.add([=, tol = ctx.tol(1e-6)] {
                auto r = make_record(suite, "l2.mixed-plancherel", false, params, tol);
                std::vector<L2Fn2> parts;
                double expect = 0;
                for (int ell = 0; ell <= ell_max; ++ell) {
                    L2Params p{l1, l2, ell};
                    L2Fn1 h = power_exp(p.lambda3(), ell % 2, 1.0 + 0.25 * ell);
                    parts.push_back(phi_apply(p, h));
                    expect += c_ell(l1, l2, ell).real() * weighted_norm_sq(h).value.real();
                }
                L2Fn2 sum = parts[0];
                sum.decay = 1.0;
                sum.f = [parts](double x, double y) {
                    Complex s(0.0);
                    for (std::size_t k = 0; k < parts.size(); ++k) s += ipow(int(k)) * parts[k](x, y);
                    return s;
                };
                set_values(r, weighted_norm_sq(sum).value.real(), expect);
                r.pass = r.rel_residual <= r.tol;
                return r;
            });
        }
}

// ---- juhl: symbolic ----

HoloSum<Exact> juhl_test_function(int n) {
    auto power = [n](const MPoly<GR>& base, long e) {
        return HoloSum<Exact>::term(n, GR(1L), Monomial(static_cast<std::size_t>(n), 0), {{base, mpq_class(e)}});
    };
    return power(MPoly<GR>::affine(n, 0, GR(0, 2)), -3)
        .times_power(MPoly<GR>::affine(n, n - 1, GR(0, 3)), -2)
        .times_power(MPoly<GR>::affine(n, 1, GR(0, -1)), -1);
}

void suite_bernstein_sato(Ctx& ctx, const std::vector<int>& ns, const std::vector<ParamValue>& lams, int ell_max) {
    const std::string suite = ctx.cfg.suite;
    const bool exact = ctx.exact;
    const auto seed = ctx.cfg.seed;
    for (int n : ns)
        for (const auto& lam : lams)
            for (int ell = 0; ell <= ell_max; ++ell) {
                Params params{{"n", std::to_string(n)}, {"lambda", lam.text}, {"ell", std::to_string(ell)}};
                const double tol = ctx.tol(1e-10);
                if (exact) {
                    JuhlParams<Exact> p{n, lam.exact, ell};
                    ctx.add([=] {
                        auto r = make_record(suite, "juhl.bernstein-sato", true, params, 0);
                        auto res = bernstein_sato_verify(p);
                        set_values(r, to_complex(res.q0), to_complex(res.expected));
                        r.pass = res.passed();
                        if (!res.residual_zero) r.note = "expansion residual nonzero";
                        for (const auto& h : res.higher)
                            if (!is_zero(h)) r.note = "nonzero higher term";
                        return r;
                    });
                    ctx.add([=] {
                        auto r = make_record(suite, "juhl.ladder-q0", true, params, 0);
                        auto lad = coefficient_ladder(p);
                        auto expect = bernstein_sato_q(n, ell, p.lambda);
                        set_values(r, to_complex(lad.q0), to_complex(expect));
                        r.pass = lad.q0 == expect;
                        return r;
                    });
                    ctx.add([=] {
                        auto r = make_record(suite, "juhl.form-equivalence", true, params, 0);
                        auto f = juhl_test_function(n);
                        compare_sums(r,
                                     std::vector<std::pair<HoloSum<Exact>, HoloSum<Exact>>>{
                                         {juhl_operator(p, f, JuhlForm::Gegenbauer), juhl_operator(p, f, JuhlForm::Inflated)}},
                                     sample_points(TubeDomain::LorentzTube, n, 8, seed));
                        return r;
                    });
                } else {
                    JuhlParams<Numeric> p{n, Complex(lam.value), ell};
                    ctx.add([=] {
                        auto r = make_record(suite, "juhl.bernstein-sato", false, params, tol);
                        auto Q = lorentz_quadratic<Complex>(n);
                        Monomial zero(static_cast<std::size_t>(n), 0), top = zero;
                        top[static_cast<std::size_t>(n - 1)] = ell;
                        auto f = HoloSum<Numeric>::term(n, 1.0, zero, {{Q, -p.lambda}});
                        auto expect = HoloSum<Numeric>::term(n, bernstein_sato_q(n, ell, p.lambda), top,
                                                             {{Q, -p.lambda - double(ell)}});
                        compare_sums(r, std::vector<std::pair<HoloSum<Numeric>, HoloSum<Numeric>>>{{juhl_operator(p, f), expect}},
                                     sample_points(TubeDomain::LorentzTube, n, 12, seed));
                        return r;
                    });
                }
            }
}

// ---- juhl: cone model ----

std::vector<std::vector<double>> cone_points(int dim, std::uint64_t seed, int count) {
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<std::vector<double>> pts;
    for (int k = 0; k < count; ++k) {
        std::vector<double> y(static_cast<std::size_t>(dim));
        y[0] = 1 + 2 * u(rng);
        double budget = 0.6 * y[0] / std::sqrt(std::max(1, dim - 1));
        for (int j = 1; j < dim; ++j) y[static_cast<std::size_t>(j)] = budget * (2 * u(rng) - 1);
        pts.push_back(y);
    }
    return pts;
}

Complex cone_test_h(std::span<const double> y) {
    double s = 0;
    for (std::size_t j = 1; j < y.size(); ++j) s += (j % 2 ? 0.5 : -0.3) * y[j];
    return Complex(1.0, s) * std::exp(-y[0]);
}

void suite_juhl_plancherel(Ctx& ctx, const std::vector<int>& ns, const std::vector<ParamValue>& lams, int ell_max) {
    const std::string suite = ctx.cfg.suite;
    const auto seed = ctx.cfg.seed;
    for (int n : ns)
        for (const auto& lam : lams)
            for (int ell = 0; ell <= ell_max; ++ell) {
                Params params{{"n", std::to_string(n)}, {"lambda", lam.text}, {"ell", std::to_string(ell)}};
                ConeParams p{n, lam.value, ell};
                ctx.add([=, tol = ctx.tol(1e-10)] {
                    auto r = make_record(suite, "juhl.gegenbauer-norm", false, params, tol);
                    auto k = cone_constants(p);
                    double a = p.alpha();
                    auto g = [&](double v) { return Complex(std::norm(gegenbauer_eval(ell, a, v))); };
                    auto q = integrate_adaptive(g, WeightFamily::jacobi(a - 0.5, a - 0.5), 1e-14, {16, 512});
                    set_values(r, q.value, k.c_closed);
                    r.pass = r.rel_residual <= r.tol && std::abs(k.c - k.c_closed) <= r.tol * k.c_closed;
                    return r;
                });
                ctx.add([=, tol = ctx.tol(1e-7)] {
                    auto r = make_record(suite, "juhl.fiber-isometry", false, params, tol);
                    auto F = phi_cone_apply(p, cone_test_h);
                    double c = cone_constants(p).c, dev = 0;
                    for (const auto& y : cone_points(n - 1, seed, 4)) {
                        double got = fiber_norm_sq(p, F, y).value.real();
                        double want = c * std::norm(cone_test_h(y)) * cone_density(p.nu(), y);
                        dev = std::max(dev, std::abs(got - want) / want);
                    }
                    set_deviation(r, dev);
                    r.pass = dev <= r.tol;
                    return r;
                });
                ctx.add([=, tol = ctx.tol(1e-8)] {
                    auto r = make_record(suite, "juhl.hat-phi", false, params, tol);
                    auto F = phi_cone_apply(p, cone_test_h);
                    double c = cone_constants(p).c, dev = 0;
                    for (const auto& y : cone_points(n - 1, seed, 4)) {
                        Complex want = c * cone_test_h(y) / ipow(ell);
                        dev = std::max(dev, std::abs(juhl_hat_apply(p, F, y).value - want) / std::abs(want));
                    }
                    set_deviation(r, dev);
                    r.pass = dev <= r.tol;
                    return r;
                });
                ctx.add([=, tol = ctx.tol(1e-8)] {
                    auto r = make_record(suite, "juhl.inversion-round-trip", false, params, tol);
                    auto F = invert_juhl(n, p.lambda, {{ell, cone_test_h}}, ell);
                    double dev = 0;
                    for (const auto& y : cone_points(n - 1, seed, 3))
                        for (int m = 0; m <= ell + 2; ++m) {
                            Complex got = juhl_hat_apply(ConeParams{n, p.lambda, m}, F, y).value;
                            Complex want = m == ell ? cone_test_h(y) : Complex(0.0);
                            dev = std::max(dev, std::abs(got - want) / std::abs(cone_test_h(y)));
                        }
                    set_deviation(r, dev);
                    r.pass = dev <= r.tol;
                    return r;
                });
                if (p.lambda > n - 1)
                    ctx.add([=, tol = ctx.tol(1e-12)] {
                        auto r = make_record(suite, "juhl.norm-constant-ratio", false, params, tol);
                        auto k = cone_constants(p);
                        set_values(r, k.r * k.b_n, k.b_n1);
                        r.pass = r.rel_residual <= r.tol && juhl_operator_norm_sq(p) > 0;
                        return r;
                    });
            }
}

// ---- kernels ----

void suite_kernels(Ctx& ctx, const std::vector<int>& ns, const std::vector<ParamValue>& lams, int ell_max) {
    const std::string suite = ctx.cfg.suite;
    const auto seed = ctx.cfg.seed;
    const bool exact = ctx.exact;
    const HoloOptions hopts{ctx.cfg.radius, ctx.cfg.order, 1};
    for (int n : ns)
        for (const auto& lam : lams)
            for (int ell = 0; ell <= ell_max; ++ell) {
                Params params{{"n", std::to_string(n)}, {"lambda", lam.text}, {"ell", std::to_string(ell)}};
                ConeParams cp{n, lam.value, ell};
                ctx.add([=, tol = ctx.tol(1e-10)] {
                    auto r = make_record(suite, "kernels.constant-phase", false, params, tol);
                    auto k = cone_constants(cp);
                    set_values(r, k.C, double(ell % 2 ? -1 : 1) * std::conj(k.k) * k.q);
                    r.pass = r.rel_residual <= r.tol;
                    return r;
                });
                ctx.add([=, tol = ctx.tol(1e-10)] {
                    auto r = make_record(suite, "kernels.symbolic-adjoint", exact, params, tol);
                    // D applied to Q(tau - wbar)^{-lambda}, restricted, against q (-1)^ell conj(K(w, tau'))
                    std::vector<GR> wbar;
                    for (int j = 0; j < n; ++j) wbar.push_back(GR(mpq_class(j + 1, 3), mpq_class(-2 - j, 2)));
                    std::vector<Complex> w;
                    for (const auto& x : wbar) w.push_back(std::conj(to_complex(x)));
                    Complex qv = bernstein_sato_q(n, ell, Complex(lam.value));
                    auto pts = sample_points(TubeDomain::LorentzTube, n - 1, 8, seed);
                    bool exact_ok = true;
                    double dev = 0;
                    auto check_against_kernel = [&](const auto& lhs) {
                        for (const auto& pt : pts) {
                            Complex want = qv * double(ell % 2 ? -1 : 1) * std::conj(relative_kernel(cp, w, pt));
                            dev = std::max(dev, std::abs(evaluate(lhs, pt) - want) / std::abs(want));
                        }
                    };
                    if (exact) {
                        JuhlParams<Exact> p{n, lam.exact, ell};
                        auto Q = lorentz_quadratic<GR>(n, wbar);
                        Monomial zero(static_cast<std::size_t>(n), 0);
                        auto lhs = juhl_sbo_apply(p, HoloSum<Exact>::term(n, GR(1L), zero, {{Q, -p.lambda}}));
                        GR coef = bernstein_sato_q(n, ell, p.lambda);
                        for (int j = 0; j < ell; ++j) coef = coef * (GR(0L) - wbar[static_cast<std::size_t>(n - 1)]);
                        auto Qr = Q.substitute(Substitution::hyperplane(n - 1));
                        auto rhs = HoloSum<Exact>::term(n - 1, coef, Monomial(static_cast<std::size_t>(n - 1), 0), {{Qr, -p.nu()}});
                        exact_ok = equal_exact(lhs, rhs);
                        check_against_kernel(lhs);
                    } else {
                        JuhlParams<Numeric> p{n, Complex(lam.value), ell};
                        std::vector<Complex> wb;
                        for (const auto& x : wbar) wb.push_back(to_complex(x));
                        auto Q = lorentz_quadratic<Complex>(n, wb);
                        Monomial zero(static_cast<std::size_t>(n), 0);
                        check_against_kernel(juhl_sbo_apply(p, HoloSum<Numeric>::term(n, 1.0, zero, {{Q, -p.lambda}})));
                    }
                    set_deviation(r, dev);
                    r.pass = exact_ok && dev <= (exact ? 1e-10 : r.tol);
                    return r;
                });
                if (n == 3 && cp.lambda > n - 1)
                    ctx.add([=, tol = ctx.tol(1e-2)] {
                        auto r = make_record(suite, "kernels.holographic-reproduction", false, params, tol);
                        const std::vector<Complex> zeta{{0.3, 2}, {0.1, 0.5}, {0.2, 0.3}}, sigma{{-0.2, 1.5}, {0.3, 0.4}};
                        double nu = cp.nu();
                        Complex kp = std::conj(bergman_kernel_constant(2, nu));
                        auto g = [&](Complex t1, Complex t2) {
                            Complex a = t1 - std::conj(sigma[0]), b = t2 - std::conj(sigma[1]);
                            return kp * std::pow(a * a - b * b, -nu);
                        };
                        Complex raw = relative_kernel_integral(cp, g, zeta, hopts);
                        set_values(r, raw / relative_kernel(cp, zeta, sigma), 1.0);
                        r.pass = r.abs_residual <= r.tol;
                        return r;
                    });
            }
    std::set<std::string> seen;
    for (const auto& lam : lams) {
        if (!seen.insert(lam.text).second || !(lam.value > 1)) continue;
        Params params{{"lambda", lam.text}};
        ctx.add([=, tol = ctx.tol(1e-3)] {
            auto r = make_record(suite, "kernels.fourier-laplace-isometry", false, params, tol);
            auto chk = fourier_laplace_isometry(lam.value);
            set_values(r, chk.ratio, chk.expected);
            r.pass = r.rel_residual <= r.tol && chk.truncation_delta < r.tol * chk.ratio;
            return r;
        });
    }
}

// ---- ortho-poly ----

void suite_ortho_poly(Ctx& ctx, const std::vector<ParamValue>& as, const std::vector<ParamValue>& bs, int ell_max) {
    const std::string suite = ctx.cfg.suite;
    for (std::size_t ia = 0; ia < as.size(); ++ia)
        for (const auto& b : bs)
            for (int ell = 0; ell <= ell_max; ++ell) {
                const auto& a = as[ia];
                double al = a.value, be = b.value;
                Params params{{"alpha", a.text}, {"beta", b.text}, {"ell", std::to_string(ell)}};
                ctx.add([=, tol = ctx.tol(1e-10)] {
                    auto r = make_record(suite, "ortho.jacobi-norm", false, params, tol);
                    auto g = [&](double t) { return Complex(std::norm(jacobi_eval(ell, al, be, t))); };
                    auto q = integrate_adaptive(g, WeightFamily::jacobi(al, be), 1e-14, {8, 512});
                    set_values(r, q.value, jacobi_norm_sq(ell, al, be));
                    r.pass = r.rel_residual <= r.tol;
                    return r;
                });
                ctx.add([=, tol = ctx.tol(1e-12)] {
                    auto r = make_record(suite, "ortho.jacobi-orthogonality", false, params, tol);
                    auto rule = build_rule(WeightFamily::jacobi(al, be), ell + 2);
                    double dev = 0, hl = jacobi_norm_sq(ell, al, be);
                    for (int m = 0; m < ell; ++m) {
                        auto g = [&](double t) { return jacobi_eval(ell, al, be, t) * jacobi_eval(m, al, be, t); };
                        dev = std::max(dev, std::abs(integrate(g, *rule)) / std::sqrt(hl * jacobi_norm_sq(m, al, be)));
                    }
                    set_deviation(r, dev);
                    r.pass = dev <= r.tol;
                    return r;
                });
                if (&b == &bs.front() && al > -0.5) {
                    Params gp{{"alpha", a.text}, {"ell", std::to_string(ell)}};
                    ctx.add([=, tol = ctx.tol(1e-10)] {
                        auto r = make_record(suite, "ortho.gegenbauer-norm", false, gp, tol);
                        auto g = [&](double t) { return Complex(std::norm(gegenbauer_eval(ell, al, t))); };
                        auto q = integrate_adaptive(g, WeightFamily::jacobi(al - 0.5, al - 0.5), 1e-14, {8, 512});
                        set_values(r, q.value, gegenbauer_norm_sq(ell, al));
                        r.pass = r.rel_residual <= r.tol;
                        return r;
                    });
                }
            }
}

// ---- grids ----

std::vector<ParamValue> defaults(std::initializer_list<const char*> xs) {
    std::vector<ParamValue> out;
    for (const char* x : xs) out.push_back(parse_param(x));
    return out;
}

std::vector<ParamValue> grid(const std::optional<std::vector<ParamValue>>& given, std::vector<ParamValue> fallback,
                             const char* name) {
    if (!given) return fallback;
    if (given->empty()) throw ConfigError(std::string("empty parameter grid: ") + name);
    return *given;
}

std::vector<int> n_grid(const SuiteConfig& cfg, std::vector<int> fallback) {
    if (!cfg.n) return fallback;
    if (cfg.n->empty()) throw ConfigError("empty parameter grid: n");
    for (int n : *cfg.n)
        if (n < 2) throw ConfigError("n must be at least 2");
    return *cfg.n;
}

int ell_grid(const SuiteConfig& cfg, int fallback) {
    if (!cfg.ell_max) return fallback;
    if (*cfg.ell_max < 0) throw ConfigError("empty parameter grid: ell-max is negative");
    return *cfg.ell_max;
}

void run_cases(std::vector<Case>& cases, std::vector<CaseRecord>& out, int threads) {
    out.resize(cases.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < cases.size();) {
            auto t0 = std::chrono::steady_clock::now();
            CaseRecord r;
            try {
                r = cases[i]();
            } catch (const std::exception& e) {
                r.pass = false;
                r.note = std::string("error: ") + e.what();
                r.computed = r.reference = NAN;
                r.abs_residual = r.rel_residual = NAN;
            }
            r.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
            out[i] = std::move(r);
        }
    };
    unsigned n = threads > 0 ? static_cast<unsigned>(threads) : std::max(1u, std::thread::hardware_concurrency());
    n = static_cast<unsigned>(std::min<std::size_t>(n, cases.size()));
    std::vector<std::thread> pool;
    for (unsigned k = 1; k < n; ++k) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
}

nlohmann::ordered_json complex_json(Complex z) {
    auto num = [](double x) { return std::isfinite(x) ? nlohmann::ordered_json(x) : nlohmann::ordered_json(nullptr); };
    return {{"re", num(z.real())}, {"im", num(z.imag())}};
}

nlohmann::ordered_json finite_or_null(double x) {
    return std::isfinite(x) ? nlohmann::ordered_json(x) : nlohmann::ordered_json(nullptr);
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
}

}  // namespace

// ---- public ----

ParamValue parse_param(const std::string& raw) {
    ParamValue v;
    v.text = trim(raw);
    if (v.text.empty()) throw ConfigError("empty parameter value");
    if (v.text.find('/') != std::string::npos) {
        static const std::regex re(R"([+-]?\d+/\d+)");
        if (!std::regex_match(v.text, re)) throw ConfigError("not a rational: '" + v.text + "'");
        std::string t = v.text[0] == '+' ? v.text.substr(1) : v.text;
        v.exact = mpq_class(t);
        if (v.exact.get_den() == 0) throw ConfigError("zero denominator: '" + v.text + "'");
        v.exact.canonicalize();
        v.rational = true;
    } else {
        v.exact = decimal_to_rational(v.text);
        v.rational = v.text.find_first_of(".eE") == std::string::npos;
    }
    v.value = v.exact.get_d();
    return v;
}

std::vector<ParamValue> parse_param_list(const std::string& text) {
    std::vector<ParamValue> out;
    if (trim(text).empty()) return out;
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ',');) out.push_back(parse_param(item));
    return out;
}

std::size_t VerificationReport::passed() const {
    return static_cast<std::size_t>(std::count_if(records.begin(), records.end(), [](const auto& r) { return r.pass; }));
}

std::string VerificationReport::json_lines(bool with_time) const {
    std::string out;
    for (const auto& r : records) {
        nlohmann::ordered_json j;
        j["suite"] = r.suite;
        j["id"] = r.id;
        j["mode"] = r.mode;
        nlohmann::ordered_json params = nlohmann::ordered_json::object();
        for (const auto& [k, v] : r.params) params[k] = v;
        j["params"] = params;
        j["computed"] = complex_json(r.computed);
        j["reference"] = complex_json(r.reference);
        j["abs_residual"] = finite_or_null(r.abs_residual);
        j["rel_residual"] = finite_or_null(r.rel_residual);
        j["tol"] = r.tol;
        j["pass"] = r.pass;
        if (!r.note.empty()) j["note"] = r.note;
        if (with_time) j["wall_ms"] = r.wall_ms;
        out += j.dump() + "\n";
    }
    nlohmann::ordered_json s;
    s["suite"] = suite;
    s["mode"] = mode;
    s["cases"] = records.size();
    s["passed"] = passed();
    s["failed"] = failed();
    if (with_time) s["wall_ms"] = wall_ms;
    out += nlohmann::ordered_json{{"summary", s}}.dump() + "\n";
    return out;
}

std::string VerificationReport::csv(bool with_time) const {
    std::string out = "suite,id,mode,params,computed_re,computed_im,reference_re,reference_im,abs_residual,rel_residual,tol,pass,note";
    out += with_time ? ",wall_ms\n" : "\n";
    for (const auto& r : records) {
        std::string params;
        for (const auto& [k, v] : r.params) params += (params.empty() ? "" : ";") + k + "=" + v;
        std::vector<std::string> f{r.suite,
                                   r.id,
                                   r.mode,
                                   params,
                                   fmt(r.computed.real()),
                                   fmt(r.computed.imag()),
                                   fmt(r.reference.real()),
                                   fmt(r.reference.imag()),
                                   fmt(r.abs_residual),
                                   fmt(r.rel_residual),
                                   fmt(r.tol),
                                   r.pass ? "true" : "false",
                                   r.note};
        if (with_time) f.push_back(fmt(r.wall_ms));
        for (std::size_t k = 0; k < f.size(); ++k) out += (k ? "," : "") + csv_field(f[k]);
        out += "\n";
    }
    return out;
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"rc-identities", "rc-plancherel", "l2-plancherel", "bernstein-sato",
                                                "juhl-plancherel", "kernels", "ortho-poly"};
    return names;
}

VerificationReport run_suite(const SuiteConfig& cfg) {
    const auto& names = suite_names();
    if (std::find(names.begin(), names.end(), cfg.suite) == names.end()) throw ConfigError("unknown suite '" + cfg.suite + "'");
    if (!std::isnan(cfg.tol) && !(cfg.tol > 0)) throw ConfigError("tolerance must be positive");
    if (cfg.order < 1 || !(cfg.radius > 0)) throw ConfigError("quadrature order and radius must be positive");

    auto t0 = std::chrono::steady_clock::now();
    Ctx ctx{cfg, false, {}};
    auto rational_entry = [](const std::vector<ParamValue>& xs) {
        return std::any_of(xs.begin(), xs.end(), [](const auto& v) { return v.text.find('/') != std::string::npos; });
    };
    const std::string& s = cfg.suite;
    bool supports_exact = false;
    if (s == "rc-identities") {
        auto l1s = grid(cfg.lambda1, defaults({"2", "5/2"}), "lambda1"), l2s = grid(cfg.lambda2, defaults({"2", "4/3"}), "lambda2");
        ctx.exact = supports_exact = cfg.exact || rational_entry(l1s) || rational_entry(l2s);
        suite_rc_identities(ctx, l1s, l2s, ell_grid(cfg, 4));
    } else if (s == "rc-plancherel") {
        suite_rc_plancherel(ctx, grid(cfg.lambda1, defaults({"1.5", "2", "3.25"}), "lambda1"),
                            grid(cfg.lambda2, defaults({"1.25", "2", "4"}), "lambda2"), ell_grid(cfg, 4));
    } else if (s == "l2-plancherel") {
        suite_l2_plancherel(ctx, grid(cfg.lambda1, defaults({"2", "2.5", "4"}), "lambda1"),
                            grid(cfg.lambda2, defaults({"2", "3"}), "lambda2"), ell_grid(cfg, 4));
    } else if (s == "bernstein-sato" || s == "kernels") {
        bool bs = s == "bernstein-sato";
        auto lams = grid(cfg.lambda, bs ? defaults({"7/2", "6", "20/3"}) : defaults({"3", "4"}), "lambda");
        ctx.exact = supports_exact = cfg.exact || rational_entry(lams);
        if (bs)
            suite_bernstein_sato(ctx, n_grid(cfg, {3, 4, 5}), lams, ell_grid(cfg, 6));
        else
            suite_kernels(ctx, n_grid(cfg, {3}), lams, ell_grid(cfg, 1));
    } else if (s == "juhl-plancherel") {
        suite_juhl_plancherel(ctx, n_grid(cfg, {3, 4}), grid(cfg.lambda, defaults({"3.5", "4.25"}), "lambda"), ell_grid(cfg, 4));
    } else {
        suite_ortho_poly(ctx, grid(cfg.lambda1, defaults({"0", "0.5", "1", "2.5"}), "lambda1"),
                         grid(cfg.lambda2, defaults({"0", "0.5", "1", "2.5"}), "lambda2"), ell_grid(cfg, 10));
    }
    if (ctx.cases.empty()) throw ConfigError("parameter grid produced no cases");

    VerificationReport rep;
    rep.suite = s;
    rep.mode = supports_exact ? "exact" : "float";
    run_cases(ctx.cases, rep.records, cfg.threads);
    rep.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

std::vector<HoloSum<Exact>> rc_test_library() {
    using Sum = HoloSum<Exact>;
    using Poly = MPoly<GR>;
    const GR I = GR::imag_unit();
    auto q = [](long p, long d = 1) { return GR(mpq_class(p, d)); };
    auto z1 = [&](const GR& s) { return Poly::affine(2, 0, s); };
    auto z2 = [&](const GR& s) { return Poly::affine(2, 1, s); };
    Poly diff = Poly::variable(2, 0) - Poly::variable(2, 1);
    Poly mixed = Poly::variable(2, 0) + Poly::variable(2, 1).scaled(q(2)) + Poly::constant(2, q(5) * I);
    Poly quad = Poly::variable(2, 0) * Poly::variable(2, 1) - Poly::constant(2, q(3));

    std::vector<Sum> lib;
    lib.push_back(Sum::term(2, q(1), {0, 0}, {{z1(I), mpq_class(-5, 2)}, {z2(I), mpq_class(-4, 3)}}));
    lib.push_back(Sum::term(2, q(2, 3) + I, {2, 1}, {{z1(q(2) * I), mpq_class(-7, 4)}}));
    lib.push_back(Sum::term(2, q(-1), {1, 0}, {{mixed, mpq_class(-1, 2)}, {z2(I), mpq_class(-3)}}));
    lib.push_back(Sum::from_poly(diff.pow(3) * Poly::variable(2, 0)));
    lib.push_back(Sum::term(2, q(1), {0, 0}, {{z1(I), mpq_class(-3)}, {z2(I), mpq_class(-2)}}));
    lib.push_back(Sum::term(2, q(5, 7), {3, 0}, {{z2(q(3) * I), mpq_class(-9, 2)}}));
    lib.push_back(Sum::term(2, I, {0, 2}, {{z1(q(1, 2) * I), mpq_class(-1, 3)}, {z2(q(4) * I), mpq_class(-5, 3)}}));
    lib.push_back(Sum::from_poly(quad.pow(2) + diff.scaled(q(3) - I)));
    lib.push_back(Sum::term(2, q(2), {1, 1}, {{mixed, mpq_class(-2)}}));
    lib.push_back(Sum::term(2, q(-3, 4), {0, 0}, {{z1(q(1) + I), mpq_class(-7, 2)}, {z2(q(-1) + q(2) * I), mpq_class(1, 2)}}));
    lib.push_back(Sum::term(2, q(1), {0, 1}, {{z1(I), mpq_class(-2)}}) + Sum::term(2, q(1, 2), {1, 0}, {{z2(I), mpq_class(-2)}}));
    lib.push_back(Sum::term(2, q(1), {0, 0}, {{mixed, mpq_class(-3, 2)}, {z1(q(2) * I), mpq_class(-1)}, {z2(q(1, 3) * I), mpq_class(-2, 5)}}));
    return lib;
}

}  // namespace holobreak
