#include "holobreak/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numeric>
#include <tuple>

#include "holobreak/errors.hpp"
#include "holobreak/special.hpp"

namespace holobreak {

WeightFamily WeightFamily::jacobi(double alpha, double beta) {
    WeightFamily w;
    w.kind = WeightKind::Jacobi;
    w.alpha = alpha;
    w.beta = beta;
    return w;
}

WeightFamily WeightFamily::laguerre(double gamma, double scale) {
    WeightFamily w;
    w.kind = WeightKind::Laguerre;
    w.gamma = gamma;
    w.scale = scale;
    w.lo = 0;
    w.hi = std::numeric_limits<double>::infinity();
    return w;
}

WeightFamily WeightFamily::legendre(double lo, double hi) {
    WeightFamily w;
    w.kind = WeightKind::Legendre;
    w.lo = lo;
    w.hi = hi;
    return w;
}

double WeightFamily::total_mass() const {
    switch (kind) {
        case WeightKind::Jacobi:
            return std::exp2(alpha + beta + 1) * beta_fn_real(alpha + 1, beta + 1);
        case WeightKind::Laguerre:
            return std::tgamma(gamma + 1) / std::pow(scale, gamma + 1);
        case WeightKind::Legendre:
            return hi - lo;
    }
    return 0;
}

void tridiagonal_eigen(std::vector<double>& d, std::vector<double> e, std::vector<double>& z) {
    const int n = static_cast<int>(d.size());
    e.resize(static_cast<std::size_t>(n), 0.0);
    z.assign(static_cast<std::size_t>(n), 0.0);
    if (n == 0) return;
    z[0] = 1.0;
    const double eps = std::numeric_limits<double>::epsilon();
    for (int l = 0; l < n; ++l) {
        int iter = 0;
        for (;;) {
            int m = l;
            for (; m < n - 1; ++m) {
                double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= eps * dd) break;
            }
            if (m == l) break;
            if (++iter > 200) throw DomainError("tridiagonal_eigen: no convergence");
            double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            double r = std::hypot(g, 1.0);
            g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
            double s = 1.0, c = 1.0, p = 0.0;
            bool deflated = false;
            for (int i = m - 1; i >= l; --i) {
                double f = s * e[i];
                double b = c * e[i];
                r = std::hypot(f, g);
                e[i + 1] = r;
                if (r == 0.0) {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                f = z[i + 1];
                z[i + 1] = s * z[i] + c * f;
                z[i] = c * z[i] - s * f;
            }
            if (deflated) continue;
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
}

namespace {

QuadratureRule golub_welsch(const WeightFamily& fam, int n) {
    std::vector<double> diag(static_cast<std::size_t>(n)), off(static_cast<std::size_t>(n > 0 ? n - 1 : 0));
    double mu0 = 0;
    if (fam.kind == WeightKind::Laguerre) {
        double g = fam.gamma;
        for (int k = 0; k < n; ++k) diag[k] = 2.0 * k + g + 1.0;
        for (int k = 1; k < n; ++k) off[k - 1] = std::sqrt(k * (k + g));
        mu0 = std::tgamma(g + 1.0);
    } else {
        double a = fam.kind == WeightKind::Jacobi ? fam.alpha : 0.0;
        double b = fam.kind == WeightKind::Jacobi ? fam.beta : 0.0;
        double s = a + b;
        for (int k = 0; k < n; ++k) {
            diag[k] = k == 0 ? (b - a) / (s + 2.0) : (b * b - a * a) / ((2.0 * k + s) * (2.0 * k + s + 2.0));
        }
        for (int k = 1; k < n; ++k) {
            double v;
            if (k == 1) {
                v = 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + s) * (2.0 + s) * (3.0 + s));
            } else {
                double t = 2.0 * k + s;
                v = 4.0 * k * (k + a) * (k + b) * (k + s) / (t * t * (t + 1.0) * (t - 1.0));
            }
            off[k - 1] = std::sqrt(v);
        }
        mu0 = std::exp2(s + 1.0) * beta_fn_real(a + 1.0, b + 1.0);
    }
    std::vector<double> z;
    tridiagonal_eigen(diag, off, z);
    std::vector<std::size_t> idx(static_cast<std::size_t>(n));
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t i, std::size_t j) { return diag[i] < diag[j]; });
    QuadratureRule rule;
    rule.family = fam;
    for (std::size_t i : idx) {
        rule.nodes.push_back(diag[i]);
        rule.weights.push_back(mu0 * z[i] * z[i]);
    }
    if (fam.kind == WeightKind::Laguerre && fam.scale != 1.0) {
        double sc = std::pow(fam.scale, fam.gamma + 1.0);
        for (auto& x : rule.nodes) x /= fam.scale;
        for (auto& w : rule.weights) w /= sc;
    }
    if (fam.kind == WeightKind::Legendre && (fam.lo != -1.0 || fam.hi != 1.0)) {
        double mid = 0.5 * (fam.lo + fam.hi), half = 0.5 * (fam.hi - fam.lo);
        for (auto& x : rule.nodes) x = mid + half * x;
        for (auto& w : rule.weights) w *= half;
    }
    return rule;
}

void check_family(const WeightFamily& fam) {
    if (fam.kind == WeightKind::Jacobi && !(fam.alpha > -1.0 && fam.beta > -1.0))
        throw DomainError("jacobi weight requires alpha, beta > -1");
    if (fam.kind == WeightKind::Laguerre && !(fam.gamma > -1.0 && fam.scale > 0.0))
        throw DomainError("laguerre weight requires gamma > -1 and scale > 0");
    if (fam.kind == WeightKind::Legendre && !(fam.hi > fam.lo)) throw DomainError("legendre interval is empty");
}

}  // namespace

double beta_fn_real(double a, double b) {
    return std::exp(std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b));
}

std::shared_ptr<const QuadratureRule> build_rule(const WeightFamily& family, int order) {
    if (order < 1) throw DomainError("quadrature order must be >= 1");
    check_family(family);
    using Key = std::tuple<int, double, double, double, double, double, double, int>;
    static std::mutex mu;
    static std::map<Key, std::shared_ptr<const QuadratureRule>> cache;
    Key key{static_cast<int>(family.kind), family.alpha, family.beta, family.gamma, family.scale,
            family.lo, family.hi, order};
    {
        std::lock_guard lock(mu);
        if (auto it = cache.find(key); it != cache.end()) return it->second;
    }
    auto rule = std::make_shared<const QuadratureRule>(golub_welsch(family, order));
    std::lock_guard lock(mu);
    return cache.emplace(key, rule).first->second;
}

Complex integrate(const Integrand1& f, const QuadratureRule& rule) {
    Complex s = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) s += rule.weights[i] * f(rule.nodes[i]);
    return s;
}

Estimate integrate_adaptive(const Integrand1& f, const WeightFamily& family, double tol, AdaptiveOptions opts) {
    Estimate est;
    int order = std::max(1, opts.start_order);
    Complex prev = integrate(f, *build_rule(family, order));
    for (order *= 2; order <= opts.max_order; order *= 2) {
        Complex cur = integrate(f, *build_rule(family, order));
        est.value = cur;
        est.error = std::abs(cur - prev);
        est.order = order;
        if (est.error <= tol * std::abs(cur) + opts.abs_tol) {
            est.converged = true;
            return est;
        }
        prev = cur;
    }
    return est;
}

namespace {

std::vector<double> breakpoints(const Axis& ax) {
    std::vector<double> b;
    int levels = ax.levels > 0 ? ax.levels : 30;
    switch (ax.grading) {
        case Grading::Uniform:
            b = {ax.lo, ax.hi};
            break;
        case Grading::TowardLower:
            b.push_back(ax.lo);
            for (int k = levels; k >= 0; --k) b.push_back(ax.lo + (ax.hi - ax.lo) * std::exp2(-k));
            break;
        case Grading::TowardCenter: {
            double mid = 0.5 * (ax.lo + ax.hi), half = 0.5 * (ax.hi - ax.lo);
            for (int k = 0; k <= levels; ++k) b.push_back(mid - half * std::exp2(-k));
            b.push_back(mid);
            for (int k = levels; k >= 0; --k) b.push_back(mid + half * std::exp2(-k));
            break;
        }
    }
    return b;
}

struct AxisNodes {
    std::vector<double> x, w;
};

AxisNodes composite_nodes(const Axis& ax, int order) {
    auto rule = build_rule(WeightFamily::legendre(), order);
    auto b = breakpoints(ax);
    AxisNodes out;
    for (std::size_t p = 0; p + 1 < b.size(); ++p) {
        double mid = 0.5 * (b[p] + b[p + 1]), half = 0.5 * (b[p + 1] - b[p]);
        for (std::size_t i = 0; i < rule->size(); ++i) {
            out.x.push_back(mid + half * rule->nodes[i]);
            out.w.push_back(half * rule->weights[i]);
        }
    }
    return out;
}

Complex tensor_sum(const IntegrandN& f, const std::vector<AxisNodes>& nodes) {
    const std::size_t d = nodes.size();
    std::vector<double> pt(d);
    std::vector<std::size_t> idx(d, 0);
    Complex total = 0.0;
    if (d == 0) return f(pt);
    for (;;) {
        double w = 1.0;
        for (std::size_t k = 0; k < d; ++k) {
            pt[k] = nodes[k].x[idx[k]];
            w *= nodes[k].w[idx[k]];
        }
        total += w * f(pt);
        std::size_t k = d;
        while (k-- > 0) {
            if (++idx[k] < nodes[k].x.size()) break;
            idx[k] = 0;
            if (k == 0) return total;
        }
    }
}

Estimate region_adaptive(const IntegrandN& f, const std::vector<Axis>& axes, double tol, const RegionOptions& opts) {
    auto at_order = [&](int order) {
        std::vector<AxisNodes> nodes;
        for (const auto& ax : axes) nodes.push_back(composite_nodes(ax, order));
        return tensor_sum(f, nodes);
    };
    Estimate est;
    int order = std::max(1, opts.start_order);
    Complex prev = at_order(order);
    for (order *= 2; order <= opts.max_order; order *= 2) {
        Complex cur = at_order(order);
        est.value = cur;
        est.error = std::abs(cur - prev);
        est.order = order;
        if (est.error <= tol * std::abs(cur) + opts.abs_tol) {
            est.converged = true;
            return est;
        }
        prev = cur;
    }
    return est;
}

}  // namespace

Estimate integrate_region(const IntegrandN& f, const std::vector<Axis>& axes, double tol, RegionOptions opts) {
    if (axes.empty() || axes.size() > 4) throw DomainError("integrate_region supports 1 to 4 axes");
    for (const auto& ax : axes)
        if (!(ax.hi > ax.lo)) throw DomainError("integrate_region: empty axis");
    Estimate est = region_adaptive(f, axes, tol, opts);
    if (opts.check_truncation) {
        std::vector<Axis> wide = axes;
        bool any = false;
        for (auto& ax : wide) {
            if (!ax.truncated) continue;
            any = true;
            int levels = (ax.levels > 0 ? ax.levels : 30) + 1;
            if (ax.grading == Grading::TowardCenter) {
                double mid = 0.5 * (ax.lo + ax.hi), half = ax.hi - ax.lo;
                ax.lo = mid - half;
                ax.hi = mid + half;
            } else {
                ax.hi = ax.lo + 2.0 * (ax.hi - ax.lo);
            }
            ax.levels = levels;
        }
        if (any) {
            Estimate wider = region_adaptive(f, wide, tol, opts);
            est.truncation_delta = std::abs(wider.value - est.value) / std::max(std::abs(wider.value), 1e-300);
            est.converged = est.converged && wider.converged;
        }
    }
    return est;
}

}  // namespace holobreak
