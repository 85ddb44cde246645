#pragma once

#include "rmts/ingest.hpp"

#include <Eigen/Dense>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace rmts {

/// Windowing geometry for one ensemble. A block of block_len consecutive
/// scores yields an n_dim x n_dim matrix of lagged windows of length sub_len;
/// successive blocks start `shift` positions apart.
struct WindowSpec {
    std::size_t n_dim;
    std::size_t block_len;
    std::size_t sub_len;
    std::size_t shift;

    /// Defaults: block_len = 2N-1, sub_len = N, shift = N.
    static WindowSpec defaults(std::size_t n_dim);
    void validate() const; // throws ContractViolation
};

struct CorrMatrix {
    std::size_t n_dim = 0;
    Eigen::MatrixXd entries; // symmetric, unit diagonal
    std::string team_id;
    std::size_t block_offset = 0;
};

struct CorrEnsemble {
    WindowSpec spec;
    std::vector<CorrMatrix> matrices;
    std::map<std::string, std::vector<std::size_t>> per_team_index;
    bool short_series_warning = false; // set when a series was too short for any block
};

/// (x - mean) / population std. Throws DegenerateSubsequence when std == 0.
std::vector<double> normalize_subsequence(std::span<const double> x);

/// (1/T) sum y1(t) y2(t) for already-normalized sequences of equal length.
double correlation(std::span<const double> y1, std::span<const double> y2);

/// C[i][j] = correlation of the normalized windows starting at i and j.
CorrMatrix build_matrix(std::span<const double> block, const WindowSpec& spec);

/// Slice the series at offsets 0, shift, 2*shift, ... while a full block fits.
CorrEnsemble build_ensemble(const ScoreSeries& series, const WindowSpec& spec);

/// Extend an ensemble with another team's matrices (same spec required).
void append_ensemble(CorrEnsemble& dst, const CorrEnsemble& src);

} // namespace rmts
