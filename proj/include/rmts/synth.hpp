#pragma once

#include "rmts/ingest.hpp"
#include "rmts/spectra.hpp"
#include "rmts/unfold.hpp"

#include <cstdint>
#include <random>
#include <string>

namespace rmts {

/// Seed plus generator family; identical spec gives a bit-identical stream.
struct RngSpec {
    std::uint64_t seed = 0;
    std::string algorithm_id = "mt19937_64";

    /// Deterministic substream for the given draw index.
    std::mt19937_64 stream(std::uint64_t index = 0) const;
};

/// Eigenvalues of (1/T) A A^H, A complex n_dim x T with i.i.d. standard
/// complex normal entries, T = round(q * n_dim).
Spectrum sample_wishart_spectrum(std::size_t n_dim, double samples_per_dim_ratio,
                                 const RngSpec& rng, std::uint64_t matrix_index = 0);

/// GUE matrix eigenvalues, numerically unfolded (degree 5), central half kept.
UnfoldedSpectrum sample_gue_unfolded(std::size_t n_dim, const RngSpec& rng,
                                     std::uint64_t matrix_index = 0);

/// Cumulative sums of i.i.d. unit-exponential spacings.
UnfoldedSpectrum sample_poisson_levels(std::size_t count, const RngSpec& rng);

/// X(t) = gamma * m(t) + sqrt(1 - gamma^2) * eps(t) with a slow sinusoid plus
/// drift as the common mode, mapped affinely onto a non-negative score scale.
ScoreSeries sample_common_mode_series(std::size_t length, double mode_strength,
                                      const RngSpec& rng);

} // namespace rmts
