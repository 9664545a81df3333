#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "holobreak/scalar.hpp"

namespace holobreak {

using Monomial = std::vector<int>;

// zeta_var := 0 (hyperplane) or zeta_var := zeta_target (diagonal).
// Either way zeta_var disappears and arity drops by one.
struct Substitution {
    enum class Kind { Hyperplane, Diagonal } kind;
    int var;
    int target = 0;

    static Substitution hyperplane(int var) { return {Kind::Hyperplane, var, 0}; }
    static Substitution diagonal(int var, int target) { return {Kind::Diagonal, var, target}; }
};

// Sparse multivariate polynomial.
template <class S>
class MPoly {
public:
    using Map = std::map<Monomial, S>;

    MPoly() = default;
    explicit MPoly(int arity) : arity_(arity) {}

    static MPoly constant(int arity, const S& c);
    static MPoly variable(int arity, int var, const S& c = S(1L));
    // zeta_var + shift
    static MPoly affine(int arity, int var, const S& shift);

    int arity() const { return arity_; }
    const Map& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    int total_degree() const;
    // Nonzero constant if the polynomial has no variable dependence.
    bool is_constant() const;
    // True if exactly one monomial.
    bool is_monomial() const { return terms_.size() == 1; }

    void add(const Monomial& m, const S& c);
    MPoly& operator+=(const MPoly& o);
    MPoly& operator-=(const MPoly& o);
    MPoly operator*(const MPoly& o) const;
    MPoly scaled(const S& c) const;
    MPoly pow(int k) const;
    MPoly derivative(int var) const;
    MPoly substitute(const Substitution& sub) const;
    Complex evaluate(std::span<const Complex> pt) const;

    friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
    friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
    friend bool operator==(const MPoly& a, const MPoly& b) { return compare(a, b) == 0; }

    template <class T>
    friend int compare(const MPoly<T>& a, const MPoly<T>& b);

private:
    int arity_ = 0;
    Map terms_;
};

template <class S>
int compare(const MPoly<S>& a, const MPoly<S>& b);

// Interned polynomial bases; append-only, ids stable for the process lifetime.
template <class S>
int intern_base(const MPoly<S>& p);
template <class S>
const MPoly<S>& base_poly(int id);
template <class S>
std::size_t base_count();

// Finite sum of coeff * zeta^mono * prod base^exponent.
template <class F>
class HoloSum {
public:
    using Scalar = typename F::Scalar;
    using Exponent = typename F::Exponent;
    using Poly = MPoly<Scalar>;

    struct Factor {
        Poly base;
        Exponent exponent;
    };
    struct Key {
        Monomial mono;
        std::vector<std::pair<int, Exponent>> bases;  // sorted by base id
    };
    struct KeyLess {
        bool operator()(const Key& a, const Key& b) const;
    };
    using TermMap = std::map<Key, Scalar, KeyLess>;

    HoloSum() = default;
    explicit HoloSum(int arity) : arity_(arity) {}

    static HoloSum constant(int arity, const Scalar& c);
    static HoloSum term(int arity, const Scalar& c, Monomial mono, std::vector<Factor> factors);
    static HoloSum from_poly(const Poly& p);

    int arity() const { return arity_; }
    std::size_t size() const { return terms_.size(); }
    bool empty() const { return terms_.empty(); }
    const TermMap& terms() const { return terms_; }

    // Folds constant and monomial bases, merges repeated bases, interns the rest.
    void add_term(const Scalar& c, Monomial mono, std::vector<Factor> factors);
    // Adds an already-canonical key.
    void add_raw(const Key& key, const Scalar& c);

    HoloSum& operator+=(const HoloSum& o);
    HoloSum& operator-=(const HoloSum& o);
    HoloSum scaled(const Scalar& c) const;
    HoloSum times_monomial(const Monomial& m) const;
    HoloSum times_poly(const Poly& p) const;
    // Multiplies every term by base^exponent.
    HoloSum times_power(const Poly& base, const Exponent& e) const;

    friend HoloSum operator+(HoloSum a, const HoloSum& b) { return a += b; }
    friend HoloSum operator-(HoloSum a, const HoloSum& b) { return a -= b; }

private:
    int arity_ = 0;
    TermMap terms_;
};

template <class F>
HoloSum<F> differentiate(const HoloSum<F>& f, int var);
// d^orders[0]/dzeta_0 ... applied in sequence.
template <class F>
HoloSum<F> differentiate(const HoloSum<F>& f, const std::vector<int>& orders);
template <class F>
HoloSum<F> restrict(const HoloSum<F>& f, const Substitution& sub);
template <class F>
Complex evaluate(const HoloSum<F>& f, std::span<const Complex> pt);

// Zero test by clearing each fractional-exponent class to a polynomial.
bool is_zero_exact(const HoloSum<Exact>& f);
bool equal_exact(const HoloSum<Exact>& f, const HoloSum<Exact>& g);

enum class TubeDomain { UpperHalfPlanes, LorentzTube };

std::vector<std::vector<Complex>> sample_points(TubeDomain domain, int arity, int count = 20,
                                                std::uint64_t seed = 20240917);

// Max over points of |f-g| / max(|f|,|g|).
template <class F, class G>
double sampled_deviation(const HoloSum<F>& f, const HoloSum<G>& g, const std::vector<std::vector<Complex>>& points);
template <class F, class G>
bool equal_sampled(const HoloSum<F>& f, const HoloSum<G>& g, double tol, TubeDomain domain);

HoloSum<Numeric> to_numeric(const HoloSum<Exact>& f);

enum class Sl2Generator { H, X, Y };

// dpi_lambda(Z) on one-variable sums.
template <class F>
HoloSum<F> sl2_action(Sl2Generator z, const typename F::Exponent& lambda, const HoloSum<F>& f);
// (dpi_l1 (x) dpi_l2)(diag Z) on two-variable sums.
template <class F>
HoloSum<F> sl2_action_diag(Sl2Generator z, const typename F::Exponent& l1, const typename F::Exponent& l2,
                           const HoloSum<F>& f);
// (dpi_l1 (x) dpi_l2)(diag C), C = (H^2 + 2XY + 2YX)/8.
template <class F>
HoloSum<F> casimir_diag(const typename F::Exponent& l1, const typename F::Exponent& l2, const HoloSum<F>& f);

// Text format, see README.
using AnySum = std::variant<HoloSum<Exact>, HoloSum<Numeric>>;
AnySum parse_holosum(const std::string& text);
template <class F>
std::string format_holosum(const HoloSum<F>& f);

}  // namespace holobreak
