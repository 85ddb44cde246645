#include "rmts/mpmodel.hpp"

#include "rmts/errors.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <numeric>

namespace rmts {

void MPParams::validate() const {
    if (a < 0.0) throw ContractViolation("MPParams: a must be >= 0");
    if (b <= 0.0) throw ContractViolation("MPParams: b must be > 0");
    if (beta != 1 && beta != 2 && beta != 4)
        throw ContractViolation("MPParams: beta must be 1, 2 or 4");
    if (n_weight == 0) throw ContractViolation("MPParams: n_weight must be positive");
}

SupportBounds support_bounds(const MPParams& params) {
    params.validate();
    const double mid = (params.a + 1.0) / params.b;
    const double half = std::sqrt(2.0 * params.a + 1.0) / params.b;
    return {mid - half, mid + half};
}

double mp_density(double x, const MPParams& params) {
    const auto [lo, hi] = support_bounds(params);
    if (x <= lo || x >= hi) return 0.0;
    return params.b / (M_PI * x) * std::sqrt((x - lo) * (hi - x));
}

double mp_cdf(double x, const MPParams& params) {
    const auto [lo, hi] = support_bounds(params);
    if (x <= lo) return 0.0;
    if (x >= hi) return 1.0;
    using boost::math::quadrature::gauss_kronrod;
    const double v = gauss_kronrod<double, 15>::integrate(
        [&](double t) { return mp_density(t, params); }, lo, x, 12, 1e-10);
    return std::clamp(v, 0.0, 1.0);
}

double mp_quantile(double u, const MPParams& params) {
    if (u < 0.0 || u > 1.0) throw ContractViolation("mp_quantile: u outside [0, 1]");
    const auto [lo, hi] = support_bounds(params);
    if (u == 0.0) return lo;
    if (u == 1.0) return hi;

    // CDF table cached for repeated sampling with the same parameters.
    struct Cache {
        MPParams params{-1.0, 1.0, 2, 1};
        std::vector<double> x, cdf;
    };
    thread_local Cache cache;
    const bool fresh = cache.params.a != params.a || cache.params.b != params.b;
    if (fresh) {
        const std::size_t m = 4096;
        cache.params = params;
        cache.x.resize(m + 1);
        cache.cdf.resize(m + 1);
        // trapezoid accumulation is cheap; endpoints have zero density
        double acc = 0.0;
        double prev_d = 0.0;
        const double h = (hi - lo) / static_cast<double>(m);
        for (std::size_t i = 0; i <= m; ++i) {
            const double xi = lo + h * static_cast<double>(i);
            const double di = mp_density(xi, params);
            if (i > 0) acc += 0.5 * h * (prev_d + di);
            cache.x[i] = xi;
            cache.cdf[i] = acc;
            prev_d = di;
        }
        for (auto& c : cache.cdf) c /= acc; // renormalize the discretization
    }
    auto it = std::lower_bound(cache.cdf.begin(), cache.cdf.end(), u);
    const auto i = static_cast<std::size_t>(std::distance(cache.cdf.begin(), it));
    if (i == 0) return cache.x.front();
    const double c0 = cache.cdf[i - 1], c1 = cache.cdf[i];
    const double t = c1 > c0 ? (u - c0) / (c1 - c0) : 0.0;
    return cache.x[i - 1] + t * (cache.x[i] - cache.x[i - 1]);
}

namespace {

// tabulated CDF per candidate: adaptive quadrature per sample point would make
// the grid search quadratic-slow
double ks_distance_to_cdf(const std::vector<double>& sorted, const MPParams& params) {
    const auto [lo, hi] = support_bounds(params);
    constexpr std::size_t m = 1024;
    std::vector<double> xs(m + 1), cdf(m + 1);
    const double h = (hi - lo) / static_cast<double>(m);
    double acc = 0.0, prev_d = 0.0;
    for (std::size_t i = 0; i <= m; ++i) {
        xs[i] = lo + h * static_cast<double>(i);
        const double di = mp_density(xs[i], params);
        if (i > 0) acc += 0.5 * h * (prev_d + di);
        cdf[i] = acc;
        prev_d = di;
    }
    if (acc > 0.0)
        for (auto& c : cdf) c /= acc;
    auto eval = [&](double x) {
        if (x <= lo) return 0.0;
        if (x >= hi) return 1.0;
        const double pos = (x - lo) / h;
        const auto i = std::min(static_cast<std::size_t>(pos), m - 1);
        const double t = pos - static_cast<double>(i);
        return cdf[i] + t * (cdf[i + 1] - cdf[i]);
    };
    const double n = static_cast<double>(sorted.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double f = eval(sorted[i]);
        d = std::max(d, std::max(std::abs((static_cast<double>(i) + 1.0) / n - f),
                                 std::abs(f - static_cast<double>(i) / n)));
    }
    return d;
}

} // namespace

MPParams fit_mp_params(std::span<const double> eigs, const FitOptions& opts) {
    if (eigs.size() < 10) throw ContractViolation("fit_mp_params: need at least 10 eigenvalues");
    const double n = static_cast<double>(eigs.size());
    const double m1 = std::accumulate(eigs.begin(), eigs.end(), 0.0) / n;
    if (m1 <= 0.0) throw ContractViolation("fit_mp_params: sample mean must be positive");
    double m2 = 0.0;
    for (double x : eigs) m2 += x * x;
    m2 /= n;

    const double c = m2 / (2.0 * m1 * m1);
    // c -> 1/2+ sends a -> infinity; keep a margin so rounding noise in a
    // near-degenerate sample cannot sneak into the family
    if (c > 0.5 + 1e-9 && c < 1.0) {
        MPParams p;
        p.a = (c - 1.0) / (1.0 - 2.0 * c);
        p.b = (2.0 * p.a + 1.0) / (2.0 * m1);
        p.validate();
        return p;
    }
    if (!opts.grid_search_fallback)
        throw FitOutOfDomain("moment ratio c = " + std::to_string(c) +
                             " outside (1/2, 1); sample incompatible with the density family");

    std::vector<double> sorted(eigs.begin(), eigs.end());
    std::sort(sorted.begin(), sorted.end());
    MPParams best;
    double best_d = std::numeric_limits<double>::infinity();
    const std::size_t g = std::max<std::size_t>(opts.grid_points, 2);
    for (std::size_t i = 0; i < g; ++i) {
        for (std::size_t j = 1; j <= g; ++j) {
            MPParams p;
            p.a = 10.0 * static_cast<double>(i) / static_cast<double>(g - 1);
            p.b = 10.0 * static_cast<double>(j) / static_cast<double>(g);
            const double d = ks_distance_to_cdf(sorted, p);
            if (d < best_d) {
                best_d = d;
                best = p;
            }
        }
    }
    return best;
}

double log_weight(double x, const MPParams& params) {
    params.validate();
    if (x <= 0.0) throw ContractViolation("log_weight: x must be positive");
    const double nb = static_cast<double>(params.n_weight) * params.beta;
    return nb * params.a * std::log(x) - nb * params.b * x;
}

double weight(double x, const MPParams& params) {
    if (x == 0.0) return params.a > 0.0 ? 0.0 : 1.0;
    return std::exp(log_weight(x, params));
}

void gauss_legendre(std::size_t order, double lo, double hi,
                    std::vector<double>& nodes, std::vector<double>& weights) {
    if (order < 1) throw ContractViolation("gauss_legendre: order must be >= 1");
    // Golub-Welsch: eigen-decompose the Jacobi matrix of Legendre recurrence.
    const auto n = static_cast<Eigen::Index>(order);
    Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index k = 1; k < n; ++k) {
        const double kk = static_cast<double>(k);
        const double off = kk / std::sqrt(4.0 * kk * kk - 1.0);
        jacobi(k, k - 1) = off;
        jacobi(k - 1, k) = off;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi);
    nodes.resize(order);
    weights.resize(order);
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    for (Eigen::Index i = 0; i < n; ++i) {
        nodes[static_cast<std::size_t>(i)] = mid + half * solver.eigenvalues()(i);
        const double v0 = solver.eigenvectors()(0, i);
        weights[static_cast<std::size_t>(i)] = 2.0 * v0 * v0 * half;
    }
}

double PolyBasis::poly_value(std::size_t j, double x) const {
    const auto& c = coefficients.at(j);
    const double u = (x - x_mid) / x_half;
    double v = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * u + *it;
    return v;
}

double PolyBasis::phi_squared(std::size_t j, double x) const {
    if (x <= 0.0) return 0.0;
    const double p = poly_value(j, x);
    return std::exp(log_weight(x, params) - log_weight_shift) * p * p;
}

PolyBasis build_poly_basis(const MPParams& params, std::size_t degree,
                           std::size_t quadrature_order) {
    params.validate();
    if (degree < 1) throw ContractViolation("build_poly_basis: degree must be >= 1");
    if (quadrature_order < 4 * degree)
        throw ContractViolation("build_poly_basis: quadrature order must be >= 4 * degree");
    const auto [lo, hi] = support_bounds(params);

    PolyBasis basis;
    basis.params = params;
    basis.degree = degree;
    gauss_legendre(quadrature_order, lo, hi, basis.nodes, basis.weights);
    basis.x_mid = 0.5 * (lo + hi);
    basis.x_half = 0.5 * (hi - lo);

    // Shift the log weight by its max on the nodes so exp() stays in range.
    double shift = -std::numeric_limits<double>::infinity();
    for (double x : basis.nodes) shift = std::max(shift, log_weight(x, params));
    basis.log_weight_shift = shift;

    const std::size_t q = basis.nodes.size();
    std::vector<double> wq(q); // quadrature weight times shifted density weight
    for (std::size_t i = 0; i < q; ++i)
        wq[i] = basis.weights[i] * std::exp(log_weight(basis.nodes[i], params) - shift);

    auto dot = [&](const std::vector<double>& u, const std::vector<double>& v) {
        double acc = 0.0;
        for (std::size_t i = 0; i < q; ++i) acc += wq[i] * u[i] * v[i];
        return acc;
    };

    // Node values and monomial coefficients (in the scaled variable u, for
    // conditioning) are carried together through modified Gram-Schmidt with
    // one re-orthogonalization pass.
    std::vector<std::vector<double>> vals(degree, std::vector<double>(q));
    basis.coefficients.assign(degree, {});
    for (std::size_t j = 0; j < degree; ++j) {
        basis.coefficients[j].assign(j + 1, 0.0);
        basis.coefficients[j][j] = 1.0;
        for (std::size_t i = 0; i < q; ++i)
            vals[j][i] = std::pow((basis.nodes[i] - basis.x_mid) / basis.x_half, j);
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t k = 0; k < j; ++k) {
                const double proj = dot(vals[j], vals[k]);
                for (std::size_t i = 0; i < q; ++i) vals[j][i] -= proj * vals[k][i];
                for (std::size_t m = 0; m <= k; ++m)
                    basis.coefficients[j][m] -= proj * basis.coefficients[k][m];
            }
        }
        const double norm = std::sqrt(dot(vals[j], vals[j]));
        if (!(norm > 0.0) || !std::isfinite(norm))
            throw IllConditionedBasis("degenerate polynomial norm at degree " +
                                      std::to_string(j));
        for (std::size_t i = 0; i < q; ++i) vals[j][i] /= norm;
        for (auto& cm : basis.coefficients[j]) cm /= norm;
    }

    double gram_residual = 0.0;
    for (std::size_t j = 0; j < degree; ++j)
        for (std::size_t k = 0; k <= j; ++k) {
            const double g = dot(vals[j], vals[k]);
            gram_residual = std::max(gram_residual, std::abs(g - (j == k ? 1.0 : 0.0)));
        }
    if (gram_residual > 1e-6)
        throw IllConditionedBasis(
            "Gram residual " + std::to_string(gram_residual) +
            " after re-orthogonalization; lower the degree or raise the quadrature order");
    return basis;
}

double finite_n_density(double x, const PolyBasis& basis) {
    const auto [lo, hi] = support_bounds(basis.params);
    if (x < lo || x > hi) return 0.0;
    double acc = 0.0;
    for (std::size_t j = 0; j < basis.degree; ++j) acc += basis.phi_squared(j, x);
    return acc / static_cast<double>(basis.degree);
}

} // namespace rmts
