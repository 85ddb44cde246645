#include "rmts/corrmat.hpp"

#include "rmts/errors.hpp"

#include <cmath>
#include <numeric>

namespace rmts {

WindowSpec WindowSpec::defaults(std::size_t n_dim) {
    return {n_dim, 2 * n_dim - 1, n_dim, n_dim};
}

void WindowSpec::validate() const {
    if (n_dim < 2) throw ContractViolation("WindowSpec: n_dim must be >= 2");
    if (sub_len != block_len - n_dim + 1)
        throw ContractViolation("WindowSpec: sub_len must equal block_len - n_dim + 1");
    if (sub_len < 2) throw ContractViolation("WindowSpec: sub_len must be >= 2");
    if (shift == 0) throw ContractViolation("WindowSpec: shift must be positive");
}

std::vector<double> normalize_subsequence(std::span<const double> x) {
    if (x.size() < 2) throw ContractViolation("normalize_subsequence: need length >= 2");
    const double n = static_cast<double>(x.size());
    const double mean = std::accumulate(x.begin(), x.end(), 0.0) / n;
    double ss = 0.0;
    for (double v : x) ss += (v - mean) * (v - mean);
    const double sigma = std::sqrt(ss / n);
    if (sigma == 0.0)
        throw DegenerateSubsequence("constant subsequence has zero standard deviation", 0);
    std::vector<double> y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = (x[i] - mean) / sigma;
    return y;
}

double correlation(std::span<const double> y1, std::span<const double> y2) {
    if (y1.size() != y2.size()) throw ContractViolation("correlation: length mismatch");
    if (y1.size() < 2) throw ContractViolation("correlation: need length >= 2");
    double acc = 0.0;
    for (std::size_t t = 0; t < y1.size(); ++t) acc += y1[t] * y2[t];
    return acc / static_cast<double>(y1.size());
}

CorrMatrix build_matrix(std::span<const double> block, const WindowSpec& spec) {
    spec.validate();
    if (block.size() != spec.block_len)
        throw ContractViolation("build_matrix: block length " + std::to_string(block.size()) +
                                " != spec.block_len " + std::to_string(spec.block_len));
    const std::size_t n = spec.n_dim;
    const std::size_t t_len = spec.sub_len;

    std::vector<std::vector<double>> windows(n);
    for (std::size_t i = 0; i < n; ++i) {
        try {
            windows[i] = normalize_subsequence(block.subspan(i, t_len));
        } catch (const DegenerateSubsequence&) {
            throw DegenerateSubsequence("constant window at offset " + std::to_string(i), i);
        }
    }

    CorrMatrix m;
    m.n_dim = n;
    m.entries = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
        m.entries(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = 1.0;
        for (std::size_t j = i + 1; j < n; ++j) {
            const double c = correlation(windows[i], windows[j]);
            // upper triangle mirrored, so symmetry is exact
            m.entries(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = c;
            m.entries(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = c;
        }
    }
    return m;
}

CorrEnsemble build_ensemble(const ScoreSeries& series, const WindowSpec& spec) {
    spec.validate();
    CorrEnsemble ens;
    ens.spec = spec;
    const std::size_t len = series.scores.size();
    if (len < spec.block_len) {
        ens.short_series_warning = true;
        return ens;
    }
    for (std::size_t off = 0; off + spec.block_len <= len; off += spec.shift) {
        CorrMatrix m = build_matrix(
            std::span<const double>(series.scores.data() + off, spec.block_len), spec);
        m.team_id = series.team_id;
        m.block_offset = off;
        ens.per_team_index[series.team_id].push_back(ens.matrices.size());
        ens.matrices.push_back(std::move(m));
    }
    return ens;
}

void append_ensemble(CorrEnsemble& dst, const CorrEnsemble& src) {
    if (dst.matrices.empty() && dst.per_team_index.empty()) dst.spec = src.spec;
    if (dst.spec.n_dim != src.spec.n_dim)
        throw ContractViolation("append_ensemble: mismatched n_dim");
    dst.short_series_warning = dst.short_series_warning || src.short_series_warning;
    for (const auto& m : src.matrices) {
        dst.per_team_index[m.team_id].push_back(dst.matrices.size());
        dst.matrices.push_back(m);
    }
}

} // namespace rmts
