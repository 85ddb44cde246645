#pragma once

#include "rmts/mpmodel.hpp"
#include "rmts/spectra.hpp"

#include <string>
#include <vector>

namespace rmts {

enum class UnfoldMethod { THEORETICAL, NUMERICAL };

struct UnfoldedSpectrum {
    std::vector<double> levels; // ascending
    UnfoldMethod method = UnfoldMethod::NUMERICAL;
    std::size_t fit_degree = 0;     // NUMERICAL only
    std::size_t excluded_count = 0; // THEORETICAL: eigenvalues outside [X-, X+]
    std::string team_id;
};

/// y_k = N_in * integral of mp_density from X- to x_k over the in-support
/// eigenvalues; out-of-support eigenvalues are excluded and counted.
UnfoldedSpectrum unfold_theoretical(const Spectrum& spectrum, const MPParams& params);

/// Least-squares polynomial fit to the staircase (value k - 1/2 at the k-th
/// sorted eigenvalue), evaluated back at each eigenvalue; non-monotone fits
/// are repaired by pool-adjacent-violators projection.
UnfoldedSpectrum unfold_numerical(std::vector<double> eigenvalues, std::size_t fit_degree = 5);
UnfoldedSpectrum unfold_numerical(const Spectrum& spectrum, std::size_t fit_degree = 5);

} // namespace rmts
