#include "rmts/synth.hpp"

#include "rmts/errors.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>

namespace rmts {

std::mt19937_64 RngSpec::stream(std::uint64_t index) const {
    if (algorithm_id != "mt19937_64")
        throw ContractViolation("RngSpec: unknown algorithm_id " + algorithm_id);
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    return std::mt19937_64(seq);
}

namespace {

Eigen::MatrixXcd complex_gaussian(std::size_t rows, std::size_t cols, std::mt19937_64& gen) {
    // standard complex normal: real and imaginary parts each N(0, 1/2)
    std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
    Eigen::MatrixXcd m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (Eigen::Index j = 0; j < m.cols(); ++j)
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            m(i, j) = std::complex<double>(normal(gen), normal(gen));
    return m;
}

} // namespace

Spectrum sample_wishart_spectrum(std::size_t n_dim, double samples_per_dim_ratio,
                                 const RngSpec& rng, std::uint64_t matrix_index) {
    if (n_dim < 2) throw ContractViolation("sample_wishart_spectrum: n_dim must be >= 2");
    if (samples_per_dim_ratio < 1.0)
        throw ContractViolation("sample_wishart_spectrum: ratio must be >= 1");
    const auto t_len =
        static_cast<std::size_t>(std::llround(samples_per_dim_ratio * static_cast<double>(n_dim)));
    auto gen = rng.stream(matrix_index);
    const Eigen::MatrixXcd a = complex_gaussian(n_dim, t_len, gen);
    const Eigen::MatrixXcd w = a * a.adjoint() / static_cast<double>(t_len);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(w, Eigen::EigenvaluesOnly);
    Spectrum s;
    s.eigenvalues.assign(solver.eigenvalues().data(),
                         solver.eigenvalues().data() + solver.eigenvalues().size());
    std::sort(s.eigenvalues.begin(), s.eigenvalues.end());
    for (auto& x : s.eigenvalues) x = std::max(x, 0.0);
    return s;
}

UnfoldedSpectrum sample_gue_unfolded(std::size_t n_dim, const RngSpec& rng,
                                     std::uint64_t matrix_index) {
    if (n_dim < 10) throw ContractViolation("sample_gue_unfolded: n_dim must be >= 10");
    auto gen = rng.stream(matrix_index);
    const Eigen::MatrixXcd h = complex_gaussian(n_dim, n_dim, gen);
    const Eigen::MatrixXcd gue = 0.5 * (h + h.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(gue, Eigen::EigenvaluesOnly);
    std::vector<double> eigs(solver.eigenvalues().data(),
                             solver.eigenvalues().data() + solver.eigenvalues().size());

    UnfoldedSpectrum full = unfold_numerical(std::move(eigs), 5);
    // keep the bulk; the surmise describes spacings away from the edges
    const std::size_t keep = n_dim / 2;
    const std::size_t first = (n_dim - keep) / 2;
    UnfoldedSpectrum u;
    u.method = UnfoldMethod::NUMERICAL;
    u.fit_degree = 5;
    u.levels.assign(full.levels.begin() + static_cast<std::ptrdiff_t>(first),
                    full.levels.begin() + static_cast<std::ptrdiff_t>(first + keep));
    return u;
}

UnfoldedSpectrum sample_poisson_levels(std::size_t count, const RngSpec& rng) {
    if (count < 2) throw ContractViolation("sample_poisson_levels: count must be >= 2");
    auto gen = rng.stream();
    std::exponential_distribution<double> expo(1.0);
    UnfoldedSpectrum u;
    u.method = UnfoldMethod::NUMERICAL;
    u.levels.resize(count);
    double acc = 0.0;
    for (auto& y : u.levels) {
        acc += expo(gen);
        y = acc;
    }
    return u;
}

ScoreSeries sample_common_mode_series(std::size_t length, double mode_strength,
                                      const RngSpec& rng) {
    if (length < 2) throw ContractViolation("sample_common_mode_series: length must be >= 2");
    if (mode_strength < 0.0 || mode_strength >= 1.0)
        throw ContractViolation("sample_common_mode_series: mode_strength must be in [0, 1)");
    auto gen = rng.stream();
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_real_distribution<double> uniform(0.0, 2.0 * M_PI);
    const double phase = uniform(gen);
    // slowest allowed mode: two cycles over the series
    const double period = 0.5 * static_cast<double>(length);

    ScoreSeries s;
    s.team_id = "synthetic";
    s.format_tag = FormatTag::ODI;
    s.scores.resize(length);
    const double noise_scale = std::sqrt(1.0 - mode_strength * mode_strength);
    for (std::size_t t = 0; t < length; ++t) {
        const double frac = static_cast<double>(t) / static_cast<double>(length);
        const double mode = std::sin(2.0 * M_PI * static_cast<double>(t) / period + phase) +
                            0.5 * (2.0 * frac - 1.0);
        const double x = mode_strength * mode + noise_scale * normal(gen);
        // affine map onto a run-like scale; correlations are unaffected
        s.scores[t] = std::max(0.0, 150.0 + 50.0 * x);
    }
    return s;
}

} // namespace rmts
