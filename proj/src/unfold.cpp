#include "rmts/unfold.hpp"

#include "rmts/errors.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace rmts {

UnfoldedSpectrum unfold_theoretical(const Spectrum& spectrum, const MPParams& params) {
    const auto [lo, hi] = support_bounds(params);
    UnfoldedSpectrum u;
    u.method = UnfoldMethod::THEORETICAL;
    u.team_id = spectrum.team_id;

    std::vector<double> inside;
    for (double x : spectrum.eigenvalues) {
        if (x < lo || x > hi)
            ++u.excluded_count;
        else
            inside.push_back(x);
    }
    if (inside.empty()) throw ContractViolation("unfold_theoretical: no in-support eigenvalues");
    std::sort(inside.begin(), inside.end());

    const double n_in = static_cast<double>(inside.size());
    u.levels.reserve(inside.size());
    for (double x : inside) u.levels.push_back(n_in * mp_cdf(x, params));
    return u;
}

namespace {

// Pool-adjacent-violators projection onto non-decreasing sequences.
void isotonic_repair(std::vector<double>& y) {
    struct Block {
        double sum;
        std::size_t count;
    };
    std::vector<Block> blocks;
    blocks.reserve(y.size());
    for (double v : y) {
        blocks.push_back({v, 1});
        while (blocks.size() > 1) {
            auto& prev = blocks[blocks.size() - 2];
            auto& last = blocks.back();
            if (prev.sum / static_cast<double>(prev.count) <=
                last.sum / static_cast<double>(last.count))
                break;
            prev.sum += last.sum;
            prev.count += last.count;
            blocks.pop_back();
        }
    }
    std::size_t i = 0;
    for (const auto& blk : blocks) {
        const double v = blk.sum / static_cast<double>(blk.count);
        for (std::size_t k = 0; k < blk.count; ++k) y[i++] = v;
    }
}

} // namespace

UnfoldedSpectrum unfold_numerical(std::vector<double> eigenvalues, std::size_t fit_degree) {
    if (fit_degree < 1) throw ContractViolation("unfold_numerical: fit_degree must be >= 1");
    if (eigenvalues.size() < fit_degree + 2)
        throw ContractViolation("unfold_numerical: need at least fit_degree + 2 levels");
    std::sort(eigenvalues.begin(), eigenvalues.end());

    // Map abscissa to [-1, 1] for conditioning; the fitted values are
    // invariant under any affine change of the raw eigenvalues.
    const double lo = eigenvalues.front(), hi = eigenvalues.back();
    const double mid = 0.5 * (lo + hi);
    const double half = hi > lo ? 0.5 * (hi - lo) : 1.0;

    const auto n = static_cast<Eigen::Index>(eigenvalues.size());
    const auto cols = static_cast<Eigen::Index>(fit_degree + 1);
    Eigen::MatrixXd vand(n, cols);
    Eigen::VectorXd staircase(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double t = (eigenvalues[static_cast<std::size_t>(i)] - mid) / half;
        double p = 1.0;
        for (Eigen::Index j = 0; j < cols; ++j) {
            vand(i, j) = p;
            p *= t;
        }
        staircase(i) = static_cast<double>(i) + 0.5;
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(vand);
    if (qr.rank() < cols)
        throw ContractViolation("unfold_numerical: singular fit; lower the degree");
    const Eigen::VectorXd fitted = vand * qr.solve(staircase);

    UnfoldedSpectrum u;
    u.method = UnfoldMethod::NUMERICAL;
    u.fit_degree = fit_degree;
    u.levels.assign(fitted.data(), fitted.data() + fitted.size());
    isotonic_repair(u.levels);
    return u;
}

UnfoldedSpectrum unfold_numerical(const Spectrum& spectrum, std::size_t fit_degree) {
    UnfoldedSpectrum u = unfold_numerical(spectrum.eigenvalues, fit_degree);
    u.team_id = spectrum.team_id;
    return u;
}

} // namespace rmts
