#pragma once

#include "rmts/spectra.hpp"
#include "rmts/unfold.hpp"

#include <functional>
#include <vector>

namespace rmts {

struct SpacingSample {
    std::vector<double> spacings; // mean exactly 1 after normalization
    double normalization = 1.0;   // mean raw spacing D
};

struct KSResult {
    double d_stat = 0.0;
    double p_value = 0.0;
    std::size_t sample_size = 0;
};

/// s_i = (y_{i+1} - y_i) / D with D the sample mean spacing.
SpacingSample spacings(const UnfoldedSpectrum& u);

/// Wigner surmise for GUE: (32 s^2 / pi^2) exp(-4 s^2 / pi).
double wigner_gue(double s);
double poisson_pdf(double s);

/// CDFs for KS testing; the surmise CDF is numerically integrated on a cached grid.
double wigner_gue_cdf(double s);
double poisson_cdf(double s);

/// Sigma^2(n) over sliding windows of length n, starts on a step-0.5 grid.
StatCurve number_variance(const UnfoldedSpectrum& u, const std::vector<double>& n_values);

double sigma2_gue(double n);
double delta_gue(double l);
double delta_poisson(double l);

/// Dyson-Mehta Delta(L): exact piecewise least-squares deviation of the
/// counting staircase from its best straight line, averaged over interval
/// starts on a step-L/2 grid.
StatCurve spectral_rigidity(const UnfoldedSpectrum& u, const std::vector<double>& l_values);

/// Kolmogorov asymptotic tail Q(lambda) = 2 sum (-1)^{k-1} exp(-2 k^2 lambda^2).
double kolmogorov_q(double lambda);

KSResult ks_test(std::vector<double> sample, const std::function<double(double)>& reference_cdf);

/// Unit-area histogram per sample, then equal-weight bin-wise average.
StatCurve average_spacing_histograms(const std::vector<SpacingSample>& samples,
                                     std::size_t bins, double s_max);

/// Merge independently unfolded sequences, sort, rescale to unit mean spacing.
UnfoldedSpectrum mix_sequences(const std::vector<UnfoldedSpectrum>& sequences);

} // namespace rmts
