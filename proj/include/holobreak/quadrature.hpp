#pragma once

#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "holobreak/scalar.hpp"

namespace holobreak {

enum class WeightKind { Jacobi, Laguerre, Legendre };

// jacobi: (1-t)^alpha (1+t)^beta on (-1,1)
// laguerre: t^gamma exp(-scale t) on (0,inf)
// legendre: 1 on (lo,hi)
struct WeightFamily {
    WeightKind kind = WeightKind::Legendre;
    double alpha = 0, beta = 0;
    double gamma = 0, scale = 1;
    double lo = -1, hi = 1;

    static WeightFamily jacobi(double alpha, double beta);
    static WeightFamily laguerre(double gamma, double scale = 1.0);
    static WeightFamily legendre(double lo = -1.0, double hi = 1.0);

    // Integral of the weight alone.
    double total_mass() const;
};

struct QuadratureRule {
    WeightFamily family;
    std::vector<double> nodes;
    std::vector<double> weights;

    std::size_t size() const { return nodes.size(); }
};

double beta_fn_real(double a, double b);

// Golub-Welsch construction; results are cached by (family, order).
std::shared_ptr<const QuadratureRule> build_rule(const WeightFamily& family, int order);

// Eigenvalues and first eigenvector components of a symmetric tridiagonal
// matrix (implicit QL). diag is overwritten by eigenvalues.
void tridiagonal_eigen(std::vector<double>& diag, std::vector<double> offdiag, std::vector<double>& first_components);

using Integrand1 = std::function<Complex(double)>;
using IntegrandN = std::function<Complex(std::span<const double>)>;

Complex integrate(const Integrand1& f, const QuadratureRule& rule);

struct Estimate {
    Complex value{0.0};
    double error = 0;
    bool converged = false;
    int order = 0;
    double truncation_delta = 0;
};

struct AdaptiveOptions {
    int start_order = 8;
    int max_order = 1024;
    double abs_tol = 1e-300;
};

// Order doubling until successive estimates agree to tol (relative).
Estimate integrate_adaptive(const Integrand1& f, const WeightFamily& family, double tol, AdaptiveOptions opts = {});

enum class Grading { Uniform, TowardLower, TowardCenter };

struct Axis {
    double lo = 0, hi = 1;
    Grading grading = Grading::Uniform;
    // hi (and lo for TowardCenter) is a truncation of an unbounded axis.
    bool truncated = false;
    int levels = 0;  // geometric levels for graded axes, 0 = default
};

struct RegionOptions {
    int start_order = 4;
    int max_order = 32;
    double abs_tol = 1e-300;
    bool check_truncation = false;
};

// Tensor-product composite Gauss-Legendre over d <= 4 axes.
Estimate integrate_region(const IntegrandN& f, const std::vector<Axis>& axes, double tol, RegionOptions opts = {});

}  // namespace holobreak
