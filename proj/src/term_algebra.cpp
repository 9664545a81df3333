#include "holobreak/term_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>
#include <random>
#include <mutex>
#include <shared_mutex>

#include "holobreak/errors.hpp"

namespace holobreak {

// ---- MPoly ----

template <class S>
MPoly<S> MPoly<S>::constant(int arity, const S& c) {
    MPoly p(arity);
    p.add(Monomial(static_cast<std::size_t>(arity), 0), c);
    return p;
}

template <class S>
MPoly<S> MPoly<S>::variable(int arity, int var, const S& c) {
    MPoly p(arity);
    Monomial m(static_cast<std::size_t>(arity), 0);
    m[static_cast<std::size_t>(var)] = 1;
    p.add(m, c);
    return p;
}

template <class S>
MPoly<S> MPoly<S>::affine(int arity, int var, const S& shift) {
    return variable(arity, var) + constant(arity, shift);
}

template <class S>
int MPoly<S>::total_degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_) {
        int s = 0;
        for (int e : m) s += e;
        d = std::max(d, s);
    }
    return d;
}

template <class S>
bool MPoly<S>::is_constant() const {
    return total_degree() <= 0;
}

template <class S>
void MPoly<S>::add(const Monomial& m, const S& c) {
    if (holobreak::is_zero(c)) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, c);
        return;
    }
    it->second += c;
    if (holobreak::is_zero(it->second)) terms_.erase(it);
}

template <class S>
MPoly<S>& MPoly<S>::operator+=(const MPoly& o) {
    for (const auto& [m, c] : o.terms_) add(m, c);
    return *this;
}

template <class S>
MPoly<S>& MPoly<S>::operator-=(const MPoly& o) {
    for (const auto& [m, c] : o.terms_) add(m, -c);
    return *this;
}

template <class S>
MPoly<S> MPoly<S>::operator*(const MPoly& o) const {
    MPoly r(arity_);
    Monomial m(static_cast<std::size_t>(arity_));
    for (const auto& [ma, ca] : terms_) {
        for (const auto& [mb, cb] : o.terms_) {
            for (std::size_t k = 0; k < m.size(); ++k) m[k] = ma[k] + mb[k];
            r.add(m, ca * cb);
        }
    }
    return r;
}

template <class S>
MPoly<S> MPoly<S>::scaled(const S& c) const {
    MPoly r(arity_);
    if (holobreak::is_zero(c)) return r;
    for (const auto& [m, v] : terms_) r.terms_.emplace(m, v * c);
    return r;
}

template <class S>
MPoly<S> MPoly<S>::pow(int k) const {
    if (k < 0) throw DomainError("MPoly::pow with negative exponent");
    MPoly r = constant(arity_, S(1L));
    MPoly b = *this;
    while (k) {
        if (k & 1) r = r * b;
        k >>= 1;
        if (k) b = b * b;
    }
    return r;
}

template <class S>
MPoly<S> MPoly<S>::derivative(int var) const {
    MPoly r(arity_);
    auto v = static_cast<std::size_t>(var);
    for (const auto& [m, c] : terms_) {
        if (m[v] == 0) continue;
        Monomial d = m;
        --d[v];
        r.add(d, c * S(static_cast<long>(m[v])));
    }
    return r;
}

namespace {

// Maps a monomial through a substitution; false if it vanishes.
bool substitute_monomial(const Monomial& m, const Substitution& sub, Monomial& out) {
    auto v = static_cast<std::size_t>(sub.var);
    if (sub.kind == Substitution::Kind::Hyperplane && m[v] > 0) return false;
    out.clear();
    for (std::size_t k = 0; k < m.size(); ++k)
        if (k != v) out.push_back(m[k]);
    if (sub.kind == Substitution::Kind::Diagonal) {
        auto t = static_cast<std::size_t>(sub.target);
        out[t < v ? t : t - 1] += m[v];
    }
    return true;
}

void check_substitution(int arity, const Substitution& sub) {
    if (sub.var < 0 || sub.var >= arity) throw DomainError("substitution variable out of range");
    if (sub.kind == Substitution::Kind::Diagonal && (sub.target < 0 || sub.target >= arity || sub.target == sub.var))
        throw DomainError("diagonal substitution target out of range");
}

Complex ipow(Complex b, long k) {
    if (k < 0) {
        if (b == Complex(0.0)) throw DomainError("zero raised to a negative power");
        return 1.0 / ipow(b, -k);
    }
    Complex r = 1.0;
    while (k) {
        if (k & 1) r *= b;
        k >>= 1;
        if (k) b *= b;
    }
    return r;
}

template <class S>
S ipow_scalar(S b, long k) {
    if (k < 0) return S(1L) / ipow_scalar(b, -k);
    S r(1L);
    while (k) {
        if (k & 1) r *= b;
        k >>= 1;
        if (k) b *= b;
    }
    return r;
}

template <class E>
Complex principal_power(Complex b, const E& e) {
    if (auto k = integer_value(e)) return ipow(b, *k);
    Complex ec = to_complex(e);
    if (b == Complex(0.0)) {
        if (ec.real() > 0) return 0.0;
        throw DomainError("zero raised to a power with nonpositive real part");
    }
    if (std::abs(std::arg(b)) > std::numbers::pi - 1e-10)
        throw BranchError("power base " + to_string(b) + " lies on the principal branch cut");
    return std::exp(ec * std::log(b));
}

}  // namespace

template <class S>
MPoly<S> MPoly<S>::substitute(const Substitution& sub) const {
    check_substitution(arity_, sub);
    MPoly r(arity_ - 1);
    Monomial out;
    for (const auto& [m, c] : terms_)
        if (substitute_monomial(m, sub, out)) r.add(out, c);
    return r;
}

template <class S>
Complex MPoly<S>::evaluate(std::span<const Complex> pt) const {
    Complex s = 0.0;
    for (const auto& [m, c] : terms_) {
        Complex t = to_complex(c);
        for (std::size_t k = 0; k < m.size(); ++k)
            if (m[k]) t *= ipow(pt[k], m[k]);
        s += t;
    }
    return s;
}

template <class S>
int compare(const MPoly<S>& a, const MPoly<S>& b) {
    if (a.arity_ != b.arity_) return a.arity_ < b.arity_ ? -1 : 1;
    auto ia = a.terms_.begin(), ib = b.terms_.begin();
    for (; ia != a.terms_.end() && ib != b.terms_.end(); ++ia, ++ib) {
        if (ia->first != ib->first) return ia->first < ib->first ? -1 : 1;
        if (int c = compare(ia->second, ib->second)) return c;
    }
    if (ia != a.terms_.end()) return 1;
    if (ib != b.terms_.end()) return -1;
    return 0;
}

// ---- base registry ----

namespace {

template <class S>
struct Registry {
    struct Less {
        bool operator()(const MPoly<S>& a, const MPoly<S>& b) const { return compare(a, b) < 0; }
    };
    mutable std::shared_mutex mu;
    std::deque<MPoly<S>> polys;
    std::map<MPoly<S>, int, Less> index;

    static Registry& get() {
        static Registry r;
        return r;
    }
};

}  // namespace

template <class S>
int intern_base(const MPoly<S>& p) {
    auto& r = Registry<S>::get();
    {
        std::shared_lock lock(r.mu);
        if (auto it = r.index.find(p); it != r.index.end()) return it->second;
    }
    std::unique_lock lock(r.mu);
    if (auto it = r.index.find(p); it != r.index.end()) return it->second;
    int id = static_cast<int>(r.polys.size());
    r.polys.push_back(p);
    r.index.emplace(p, id);
    return id;
}

template <class S>
const MPoly<S>& base_poly(int id) {
    auto& r = Registry<S>::get();
    std::shared_lock lock(r.mu);
    return r.polys.at(static_cast<std::size_t>(id));
}

template <class S>
std::size_t base_count() {
    auto& r = Registry<S>::get();
    std::shared_lock lock(r.mu);
    return r.polys.size();
}

namespace {

// Structural order on interned bases; ids depend on interning order across threads.
template <class S>
bool base_less(int a, int b) {
    if (a == b) return false;
    return compare(base_poly<S>(a), base_poly<S>(b)) < 0;
}

}  // namespace

// ---- HoloSum ----

template <class F>
bool HoloSum<F>::KeyLess::operator()(const Key& a, const Key& b) const {
    if (a.mono != b.mono) return a.mono < b.mono;
    if (a.bases.size() != b.bases.size()) return a.bases.size() < b.bases.size();
    for (std::size_t k = 0; k < a.bases.size(); ++k) {
        if (a.bases[k].first != b.bases[k].first) return base_less<Scalar>(a.bases[k].first, b.bases[k].first);
        if (int c = compare(a.bases[k].second, b.bases[k].second)) return c < 0;
    }
    return false;
}

template <class F>
HoloSum<F> HoloSum<F>::constant(int arity, const Scalar& c) {
    HoloSum s(arity);
    s.add_term(c, Monomial(static_cast<std::size_t>(arity), 0), {});
    return s;
}

template <class F>
HoloSum<F> HoloSum<F>::term(int arity, const Scalar& c, Monomial mono, std::vector<Factor> factors) {
    HoloSum s(arity);
    s.add_term(c, std::move(mono), std::move(factors));
    return s;
}

template <class F>
HoloSum<F> HoloSum<F>::from_poly(const Poly& p) {
    HoloSum s(p.arity());
    for (const auto& [m, c] : p.terms()) s.add_raw(Key{m, {}}, c);
    return s;
}

template <class F>
void HoloSum<F>::add_term(const Scalar& coeff, Monomial mono, std::vector<Factor> factors) {
    if (static_cast<int>(mono.size()) != arity_) throw DomainError("monomial arity mismatch");
    Scalar c = coeff;
    if (is_zero(c)) return;
    std::vector<std::pair<int, Exponent>> bases;
    for (auto& f : factors) {
        if (f.base.arity() != arity_) throw DomainError("base arity mismatch");
        if (is_zero(f.exponent)) continue;
        auto k = integer_value(f.exponent);
        if (f.base.is_zero()) {
            if (k && *k > 0) return;
            throw SingularRestriction("vanishing base carries exponent " + to_string(f.exponent));
        }
        if (k && f.base.is_monomial()) {
            const auto& [m, v] = *f.base.terms().begin();
            bool constant = std::all_of(m.begin(), m.end(), [](int e) { return e == 0; });
            if (constant || *k > 0) {
                c *= ipow_scalar(v, *k);
                for (std::size_t j = 0; j < mono.size(); ++j) mono[j] += static_cast<int>(*k) * m[j];
                continue;
            }
        }
        bases.emplace_back(intern_base(f.base), f.exponent);
    }
    std::sort(bases.begin(), bases.end(), [](const auto& a, const auto& b) { return base_less<Scalar>(a.first, b.first); });
    std::vector<std::pair<int, Exponent>> merged;
    for (auto& b : bases) {
        if (!merged.empty() && merged.back().first == b.first) {
            merged.back().second += b.second;
        } else {
            merged.push_back(std::move(b));
        }
    }
    std::erase_if(merged, [](const auto& b) { return is_zero(b.second); });
    add_raw(Key{std::move(mono), std::move(merged)}, c);
}

template <class F>
void HoloSum<F>::add_raw(const Key& key, const Scalar& c) {
    if (is_zero(c)) return;
    auto it = terms_.find(key);
    if (it == terms_.end()) {
        terms_.emplace(key, c);
        return;
    }
    it->second += c;
    if (is_zero(it->second)) terms_.erase(it);
}

template <class F>
HoloSum<F>& HoloSum<F>::operator+=(const HoloSum& o) {
    if (terms_.empty() && arity_ == 0) arity_ = o.arity_;
    if (o.arity_ != arity_ && !o.terms_.empty()) throw DomainError("HoloSum arity mismatch");
    for (const auto& [k, c] : o.terms_) add_raw(k, c);
    return *this;
}

template <class F>
HoloSum<F>& HoloSum<F>::operator-=(const HoloSum& o) {
    if (terms_.empty() && arity_ == 0) arity_ = o.arity_;
    if (o.arity_ != arity_ && !o.terms_.empty()) throw DomainError("HoloSum arity mismatch");
    for (const auto& [k, c] : o.terms_) add_raw(k, -c);
    return *this;
}

template <class F>
HoloSum<F> HoloSum<F>::scaled(const Scalar& c) const {
    HoloSum r(arity_);
    if (is_zero(c)) return r;
    for (const auto& [k, v] : terms_) r.terms_.emplace(k, v * c);
    return r;
}

template <class F>
HoloSum<F> HoloSum<F>::times_monomial(const Monomial& m) const {
    HoloSum r(arity_);
    for (const auto& [k, v] : terms_) {
        Key nk = k;
        for (std::size_t j = 0; j < m.size(); ++j) nk.mono[j] += m[j];
        r.terms_.emplace(std::move(nk), v);
    }
    return r;
}

template <class F>
HoloSum<F> HoloSum<F>::times_poly(const Poly& p) const {
    HoloSum r(arity_);
    for (const auto& [m, c] : p.terms()) r += times_monomial(m).scaled(c);
    return r;
}

template <class F>
HoloSum<F> HoloSum<F>::times_power(const Poly& base, const Exponent& e) const {
    HoloSum r(arity_);
    for (const auto& [k, v] : terms_) {
        std::vector<Factor> factors;
        for (const auto& [id, ex] : k.bases) factors.push_back({base_poly<Scalar>(id), ex});
        factors.push_back({base, e});
        r.add_term(v, k.mono, std::move(factors));
    }
    return r;
}

template <class F>
HoloSum<F> differentiate(const HoloSum<F>& f, int var) {
    using Scalar = typename F::Scalar;
    using Key = typename HoloSum<F>::Key;
    if (var < 0 || var >= f.arity()) throw DomainError("differentiation variable out of range");
    auto v = static_cast<std::size_t>(var);
    HoloSum<F> r(f.arity());
    for (const auto& [key, c] : f.terms()) {
        if (key.mono[v] > 0) {
            Key nk = key;
            --nk.mono[v];
            r.add_raw(nk, c * Scalar(static_cast<long>(key.mono[v])));
        }
        for (std::size_t b = 0; b < key.bases.size(); ++b) {
            const auto& [id, p] = key.bases[b];
            MPoly<Scalar> db = base_poly<Scalar>(id).derivative(var);
            if (db.is_zero()) continue;
            Key nk = key;
            nk.bases[b].second -= 1;
            if (is_zero(nk.bases[b].second)) nk.bases.erase(nk.bases.begin() + static_cast<long>(b));
            Scalar cp = c * exponent_scalar(p);
            for (const auto& [m, d] : db.terms()) {
                Key tk = nk;
                for (std::size_t j = 0; j < m.size(); ++j) tk.mono[j] += m[j];
                r.add_raw(tk, cp * d);
            }
        }
    }
    return r;
}

template <class F>
HoloSum<F> differentiate(const HoloSum<F>& f, const std::vector<int>& orders) {
    HoloSum<F> r = f;
    for (std::size_t v = 0; v < orders.size(); ++v)
        for (int k = 0; k < orders[v]; ++k) r = differentiate(r, static_cast<int>(v));
    return r;
}

template <class F>
HoloSum<F> restrict(const HoloSum<F>& f, const Substitution& sub) {
    using Scalar = typename F::Scalar;
    check_substitution(f.arity(), sub);
    HoloSum<F> r(f.arity() - 1);
    std::map<int, MPoly<Scalar>> cache;
    Monomial out;
    for (const auto& [key, c] : f.terms()) {
        if (!substitute_monomial(key.mono, sub, out)) continue;
        std::vector<typename HoloSum<F>::Factor> factors;
        for (const auto& [id, p] : key.bases) {
            auto it = cache.find(id);
            if (it == cache.end()) it = cache.emplace(id, base_poly<Scalar>(id).substitute(sub)).first;
            factors.push_back({it->second, p});
        }
        r.add_term(c, out, std::move(factors));
    }
    return r;
}

template <class F>
Complex evaluate(const HoloSum<F>& f, std::span<const Complex> pt) {
    using Scalar = typename F::Scalar;
    if (static_cast<int>(pt.size()) != f.arity()) throw DomainError("evaluation point arity mismatch");
    std::map<int, Complex> values;
    Complex total = 0.0;
    for (const auto& [key, c] : f.terms()) {
        Complex t = to_complex(c);
        for (std::size_t k = 0; k < key.mono.size(); ++k)
            if (key.mono[k]) t *= ipow(pt[k], key.mono[k]);
        for (const auto& [id, p] : key.bases) {
            auto it = values.find(id);
            if (it == values.end()) it = values.emplace(id, base_poly<Scalar>(id).evaluate(pt)).first;
            t *= principal_power(it->second, p);
        }
        total += t;
    }
    return total;
}

namespace {

mpq_class frac_part(const mpq_class& q) {
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return q - mpq_class(fl);
}

}  // namespace

bool is_zero_exact(const HoloSum<Exact>& f) {
    using Poly = MPoly<GaussianRational>;
    using Entry = std::pair<const HoloSum<Exact>::Key*, const GaussianRational*>;
    struct ClassLess {
        bool operator()(const std::vector<std::pair<int, mpq_class>>& a,
                        const std::vector<std::pair<int, mpq_class>>& b) const {
            if (a.size() != b.size()) return a.size() < b.size();
            for (std::size_t k = 0; k < a.size(); ++k) {
                if (a[k].first != b[k].first) return a[k].first < b[k].first;
                if (a[k].second != b[k].second) return a[k].second < b[k].second;
            }
            return false;
        }
    };
    std::map<std::vector<std::pair<int, mpq_class>>, std::vector<Entry>, ClassLess> classes;
    for (const auto& [key, c] : f.terms()) {
        std::vector<std::pair<int, mpq_class>> cls;
        for (const auto& [id, p] : key.bases)
            if (p.get_den() != 1) cls.emplace_back(id, frac_part(p));
        classes[cls].emplace_back(&key, &c);
    }
    std::map<std::pair<int, long>, Poly> pow_cache;
    auto base_pow = [&](int id, long k) -> const Poly& {
        auto it = pow_cache.find({id, k});
        if (it == pow_cache.end())
            it = pow_cache.emplace(std::make_pair(id, k), base_poly<GaussianRational>(id).pow(static_cast<int>(k))).first;
        return it->second;
    };
    for (const auto& [cls, entries] : classes) {
        std::map<int, mpq_class> lowest;
        for (const auto& [key, c] : entries)
            for (const auto& [id, p] : key->bases) {
                auto it = lowest.find(id);
                if (it == lowest.end()) {
                    lowest.emplace(id, p.get_den() == 1 ? mpq_class(std::min(p, mpq_class(0))) : p);
                } else if (p < it->second) {
                    it->second = p;
                }
            }
        for (auto& [id, lo] : lowest)
            if (lo.get_den() == 1 && lo > 0) lo = 0;
        Poly total(f.arity());
        for (const auto& [key, c] : entries) {
            Poly t(f.arity());
            t.add(key->mono, *c);
            std::map<int, mpq_class> present;
            for (const auto& [id, p] : key->bases) present.emplace(id, p);
            for (const auto& [id, lo] : lowest) {
                auto it = present.find(id);
                mpq_class e = (it == present.end() ? mpq_class(0) : it->second) - lo;
                auto k = integer_value(e);
                if (!k || *k < 0) throw DomainError("is_zero_exact: inconsistent exponent class");
                if (*k > 0) t = t * base_pow(id, *k);
            }
            total += t;
        }
        if (!total.is_zero()) return false;
    }
    return true;
}

bool equal_exact(const HoloSum<Exact>& f, const HoloSum<Exact>& g) {
    HoloSum<Exact> d = f - g;
    return d.empty() || is_zero_exact(d);
}

std::vector<std::vector<Complex>> sample_points(TubeDomain domain, int arity, int count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    auto u = [&](double a, double b) { return a + (b - a) * unit(rng); };
    std::vector<std::vector<Complex>> pts;
    for (int i = 0; i < count; ++i) {
        std::vector<Complex> p;
        for (int k = 0; k < arity; ++k) {
            if (domain == TubeDomain::UpperHalfPlanes) {
                double x = u(-1.0, 1.0);
                double y = u(0.25, 2.0);
                p.emplace_back(x, y);
            } else if (k == 0) {
                double x = u(4.0, 5.0);
                double y = u(1.0, 1.5);
                p.emplace_back(x, y);
            } else {
                double x = u(-0.3, 0.3);
                double y = u(-0.2, 0.2);
                p.emplace_back(x, y);
            }
        }
        pts.push_back(std::move(p));
    }
    return pts;
}

template <class F, class G>
double sampled_deviation(const HoloSum<F>& f, const HoloSum<G>& g, const std::vector<std::vector<Complex>>& points) {
    double dev = 0.0;
    for (const auto& p : points) {
        Complex a = evaluate(f, p), b = evaluate(g, p);
        double scale = std::max(std::abs(a), std::abs(b));
        if (scale < 1e-300) continue;
        dev = std::max(dev, std::abs(a - b) / scale);
    }
    return dev;
}

template <class F, class G>
bool equal_sampled(const HoloSum<F>& f, const HoloSum<G>& g, double tol, TubeDomain domain) {
    return sampled_deviation(f, g, sample_points(domain, f.arity())) < tol;
}

HoloSum<Numeric> to_numeric(const HoloSum<Exact>& f) {
    HoloSum<Numeric> r(f.arity());
    for (const auto& [key, c] : f.terms()) {
        std::vector<HoloSum<Numeric>::Factor> factors;
        for (const auto& [id, p] : key.bases) {
            MPoly<Complex> b(f.arity());
            for (const auto& [m, v] : base_poly<GaussianRational>(id).terms()) b.add(m, to_complex(v));
            factors.push_back({b, to_complex(p)});
        }
        r.add_term(to_complex(c), key.mono, std::move(factors));
    }
    return r;
}

// ---- sl2 ----

namespace {

template <class F>
HoloSum<F> times_var(const HoloSum<F>& f, int var, int power = 1) {
    Monomial m(static_cast<std::size_t>(f.arity()), 0);
    m[static_cast<std::size_t>(var)] = power;
    return f.times_monomial(m);
}

template <class F>
HoloSum<F> single_action(Sl2Generator z, const typename F::Exponent& lambda, const HoloSum<F>& f, int var) {
    using Scalar = typename F::Scalar;
    Scalar lam = exponent_scalar(lambda);
    switch (z) {
        case Sl2Generator::H:
            return times_var(differentiate(f, var), var).scaled(Scalar(2L)) + f.scaled(lam);
        case Sl2Generator::X:
            return differentiate(f, var).scaled(Scalar(-1L));
        case Sl2Generator::Y:
            return times_var(f, var).scaled(lam) + times_var(differentiate(f, var), var, 2);
    }
    return f;
}

}  // namespace

template <class F>
HoloSum<F> sl2_action(Sl2Generator z, const typename F::Exponent& lambda, const HoloSum<F>& f) {
    if (f.arity() != 1) throw DomainError("sl2_action expects a one-variable sum");
    return single_action(z, lambda, f, 0);
}

template <class F>
HoloSum<F> sl2_action_diag(Sl2Generator z, const typename F::Exponent& l1, const typename F::Exponent& l2,
                           const HoloSum<F>& f) {
    if (f.arity() != 2) throw DomainError("sl2_action_diag expects a two-variable sum");
    return single_action(z, l1, f, 0) + single_action(z, l2, f, 1);
}

template <class F>
HoloSum<F> casimir_diag(const typename F::Exponent& l1, const typename F::Exponent& l2, const HoloSum<F>& f) {
    using Scalar = typename F::Scalar;
    auto act = [&](Sl2Generator z, const HoloSum<F>& g) { return sl2_action_diag(z, l1, l2, g); };
    HoloSum<F> hh = act(Sl2Generator::H, act(Sl2Generator::H, f));
    HoloSum<F> xy = act(Sl2Generator::X, act(Sl2Generator::Y, f));
    HoloSum<F> yx = act(Sl2Generator::Y, act(Sl2Generator::X, f));
    HoloSum<F> c = hh + xy.scaled(Scalar(2L)) + yx.scaled(Scalar(2L));
    return c.scaled(Scalar(1L) / Scalar(8L));
}

#define HOLOBREAK_POLY(S)                                                \
    template class MPoly<S>;                                             \
    template int compare(const MPoly<S>&, const MPoly<S>&);              \
    template int intern_base(const MPoly<S>&);                           \
    template const MPoly<S>& base_poly(int);                             \
    template std::size_t base_count<S>();

HOLOBREAK_POLY(GaussianRational)
HOLOBREAK_POLY(Complex)

#define HOLOBREAK_FIELD(F)                                                                              \
    template class HoloSum<F>;                                                                          \
    template HoloSum<F> differentiate(const HoloSum<F>&, int);                                          \
    template HoloSum<F> differentiate(const HoloSum<F>&, const std::vector<int>&);                      \
    template HoloSum<F> restrict(const HoloSum<F>&, const Substitution&);                               \
    template Complex evaluate(const HoloSum<F>&, std::span<const Complex>);                             \
    template HoloSum<F> sl2_action(Sl2Generator, const F::Exponent&, const HoloSum<F>&);                \
    template HoloSum<F> sl2_action_diag(Sl2Generator, const F::Exponent&, const F::Exponent&,           \
                                        const HoloSum<F>&);                                             \
    template HoloSum<F> casimir_diag(const F::Exponent&, const F::Exponent&, const HoloSum<F>&);

HOLOBREAK_FIELD(Exact)
HOLOBREAK_FIELD(Numeric)

#define HOLOBREAK_PAIR(F, G)                                                                              \
    template double sampled_deviation(const HoloSum<F>&, const HoloSum<G>&,                               \
                                      const std::vector<std::vector<Complex>>&);                          \
    template bool equal_sampled(const HoloSum<F>&, const HoloSum<G>&, double, TubeDomain);

HOLOBREAK_PAIR(Exact, Exact)
HOLOBREAK_PAIR(Exact, Numeric)
HOLOBREAK_PAIR(Numeric, Exact)
HOLOBREAK_PAIR(Numeric, Numeric)

}  // namespace holobreak
