#pragma once

#include "rmts/corrmat.hpp"

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace rmts {

struct Spectrum {
    std::vector<double> eigenvalues; // ascending
    std::string team_id;
    std::size_t block_offset = 0;
    std::size_t k_removed = 0; // extreme bands removed per side before decomposition
};

/// A statistic-vs-argument curve (Sigma^2(n), Delta(L), p(s) bins, max-eig vs k).
enum class CurveKind { SPACING_HIST, NUMBER_VARIANCE, RIGIDITY, MAXEIG_VS_K };

struct StatCurve {
    std::vector<double> abscissa; // strictly increasing
    std::vector<double> values;
    CurveKind kind = CurveKind::SPACING_HIST;
};

/// Symmetric eigendecomposition, ascending. Input must be symmetric to 1e-10.
Spectrum eigenvalues(const Eigen::MatrixXd& m);
Spectrum eigenvalues(const CorrMatrix& m, std::size_t k_removed = 0);

/// Zero the k outermost super- and subdiagonals per side (|i-j| >= n-k).
Eigen::MatrixXd remove_extreme_bands(const Eigen::MatrixXd& m, std::size_t k);

/// Ensemble-average of the largest eigenvalue of band-reduced matrices, per k.
StatCurve largest_eigenvalue_vs_k(const CorrEnsemble& ensemble,
                                  const std::vector<std::size_t>& k_values);

} // namespace rmts
