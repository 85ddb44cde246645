#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace rmts {

/// Parameters of the level density family: weight w(x) = x^{N b a} exp(-N b b x)
/// with Dyson index beta and weight dimension n_weight.
struct MPParams {
    double a = 0.0;  // >= 0
    double b = 1.0;  // > 0
    int beta = 2;    // 1, 2 or 4; only beta = 2 baselines are implemented
    std::size_t n_weight = 10;

    void validate() const; // throws ContractViolation
};

struct SupportBounds {
    double x_minus;
    double x_plus;
};

/// X± = (a+1)/b ± sqrt(2a+1)/b.
SupportBounds support_bounds(const MPParams& params);

/// Marchenko-Pastur density (b/(pi x)) sqrt((x-X-)(X+-x)) on (X-, X+), 0 outside.
double mp_density(double x, const MPParams& params);

/// Integral of mp_density from X- to x, clipped to [0, 1].
double mp_cdf(double x, const MPParams& params);

/// Inverse of mp_cdf by bisection (u in [0, 1]).
double mp_quantile(double u, const MPParams& params);

struct FitOptions {
    bool grid_search_fallback = false; // KS-distance grid over (a, b) in [0,10] x (0,10]
    std::size_t grid_points = 60;
};

/// Moment matching: m1 = (2a+1)/(2b), m2 = (2a+1)(a+1)/(2b^2).
/// Throws FitOutOfDomain when c = m2/(2 m1^2) is outside (1/2, 1), unless the
/// grid-search fallback is enabled.
MPParams fit_mp_params(std::span<const double> eigs, const FitOptions& opts = {});

/// w(x) = x^{N beta a} exp(-N beta b x); log form is N beta a ln x - N beta b x.
double log_weight(double x, const MPParams& params);
double weight(double x, const MPParams& params);

/// Orthonormal polynomials P_0..P_{degree-1} for the weight on [X-, X+],
/// built by modified Gram-Schmidt over Gauss-Legendre quadrature.
struct PolyBasis {
    MPParams params;
    std::size_t degree = 0;
    std::vector<std::vector<double>> coefficients; // coefficients[j][m]: u^m term of P_j,
                                                   // u = (x - x_mid) / x_half for conditioning
    std::vector<double> nodes;   // quadrature nodes on [X-, X+]
    std::vector<double> weights; // quadrature weights
    double log_weight_shift = 0.0; // additive normalization applied to log_weight
    double x_mid = 0.0;
    double x_half = 1.0;

    double poly_value(std::size_t j, double x) const;
    /// phi_j(x)^2 = shifted-weight(x) * P_j(x)^2 (the shift cancels in rho_N).
    double phi_squared(std::size_t j, double x) const;
};

PolyBasis build_poly_basis(const MPParams& params, std::size_t degree,
                           std::size_t quadrature_order = 256);

/// Finite-N density rho_N(x) = (1/N) sum_j phi_j(x)^2 on [X-, X+], 0 outside.
double finite_n_density(double x, const PolyBasis& basis);

/// Gauss-Legendre nodes and weights on [lo, hi] (Golub-Welsch).
void gauss_legendre(std::size_t order, double lo, double hi,
                    std::vector<double>& nodes, std::vector<double>& weights);

} // namespace rmts
