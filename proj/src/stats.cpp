#include "rmts/stats.hpp"

#include "rmts/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace rmts {

SpacingSample spacings(const UnfoldedSpectrum& u) {
    if (u.levels.size() < 2) throw ContractViolation("spacings: need at least 2 levels");
    std::vector<double> raw(u.levels.size() - 1);
    for (std::size_t i = 0; i + 1 < u.levels.size(); ++i) raw[i] = u.levels[i + 1] - u.levels[i];
    const double d = std::accumulate(raw.begin(), raw.end(), 0.0) / static_cast<double>(raw.size());
    if (d <= 0.0) throw ContractViolation("spacings: non-positive mean spacing");
    for (auto& s : raw) s /= d;
    return {std::move(raw), d};
}

double wigner_gue(double s) {
    return 32.0 * s * s / (M_PI * M_PI) * std::exp(-4.0 * s * s / M_PI);
}

double poisson_pdf(double s) { return std::exp(-s); }

double wigner_gue_cdf(double s) {
    if (s <= 0.0) return 0.0;
    // cumulative trapezoid of the surmise on a fixed grid, built once
    static const std::size_t m = 8192;
    static const double s_hi = 8.0;
    static const std::vector<double> table = [] {
        std::vector<double> t(m + 1, 0.0);
        const double h = s_hi / static_cast<double>(m);
        for (std::size_t i = 1; i <= m; ++i) {
            const double a = h * static_cast<double>(i - 1);
            const double b = h * static_cast<double>(i);
            t[i] = t[i - 1] + 0.5 * h * (wigner_gue(a) + wigner_gue(b));
        }
        return t;
    }();
    if (s >= s_hi) return 1.0;
    const double pos = s / s_hi * static_cast<double>(m);
    const auto i = static_cast<std::size_t>(pos);
    const double frac = pos - static_cast<double>(i);
    const double v = table[i] + frac * (table[i + 1] - table[i]);
    return std::min(v, 1.0);
}

double poisson_cdf(double s) { return s <= 0.0 ? 0.0 : 1.0 - std::exp(-s); }

StatCurve number_variance(const UnfoldedSpectrum& u, const std::vector<double>& n_values) {
    if (u.levels.size() < 2) throw ContractViolation("number_variance: need at least 2 levels");
    const double lo = u.levels.front(), hi = u.levels.back();
    const double span = hi - lo;
    const double n_max = *std::max_element(n_values.begin(), n_values.end());
    if (span < n_max + 1.0)
        throw ContractViolation("number_variance: span " + std::to_string(span) +
                                " too short; max usable n is " + std::to_string(span - 1.0));
    StatCurve curve;
    curve.kind = CurveKind::NUMBER_VARIANCE;
    for (double n : n_values) {
        double m2 = 0.0;
        std::size_t windows = 0;
        for (double start = lo; start + n <= hi; start += 0.5) {
            const auto first = std::lower_bound(u.levels.begin(), u.levels.end(), start);
            const auto last = std::lower_bound(first, u.levels.end(), start + n);
            const double count = static_cast<double>(std::distance(first, last));
            m2 += count * count;
            ++windows;
        }
        curve.abscissa.push_back(n);
        curve.values.push_back(m2 / static_cast<double>(windows) - n * n);
    }
    return curve;
}

namespace {
constexpr double kEulerGamma = 0.57721566490153286;
}

double sigma2_gue(double n) {
    return (std::log(2.0 * M_PI * n) + kEulerGamma + 1.0) / (M_PI * M_PI);
}

double delta_gue(double l) {
    return (std::log(2.0 * M_PI * l) + kEulerGamma - 1.25) / (2.0 * M_PI * M_PI);
}

double delta_poisson(double l) { return l / 15.0; }

namespace {

// Least-squares deviation of the staircase from its best straight line on
// [alpha, alpha + l], via exact segment integrals of N(E), N(E)*E, N(E)^2.
double rigidity_one_interval(const std::vector<double>& levels, double alpha, double l) {
    const double beta = alpha + l;
    double i0 = 0.0, i1 = 0.0, i2 = 0.0;
    // staircase value on [e_prev, e_next) is the number of levels <= e_prev
    auto first = std::upper_bound(levels.begin(), levels.end(), alpha);
    double count = static_cast<double>(std::distance(levels.begin(), first));
    double e_prev = alpha;
    for (auto it = first; it != levels.end() && *it < beta; ++it) {
        const double e = *it;
        i0 += count * (e - e_prev);
        i1 += count * 0.5 * (e * e - e_prev * e_prev);
        i2 += count * count * (e - e_prev);
        e_prev = e;
        count += 1.0;
    }
    i0 += count * (beta - e_prev);
    i1 += count * 0.5 * (beta * beta - e_prev * e_prev);
    i2 += count * count * (beta - e_prev);

    const double mid = alpha + 0.5 * l;
    const double p0_sq = i0 * i0 / l;
    const double c1 = i1 - mid * i0;
    const double p1_sq = 12.0 / (l * l * l) * c1 * c1;
    return std::max(0.0, (i2 - p0_sq - p1_sq) / l);
}

} // namespace

StatCurve spectral_rigidity(const UnfoldedSpectrum& u, const std::vector<double>& l_values) {
    if (u.levels.size() < 2) throw ContractViolation("spectral_rigidity: need at least 2 levels");
    const double lo = u.levels.front(), hi = u.levels.back();
    const double l_max = *std::max_element(l_values.begin(), l_values.end());
    if (hi - lo < l_max + 1.0)
        throw ContractViolation("spectral_rigidity: span too short; max usable L is " +
                                std::to_string(hi - lo - 1.0));
    StatCurve curve;
    curve.kind = CurveKind::RIGIDITY;
    for (double l : l_values) {
        double acc = 0.0;
        std::size_t intervals = 0;
        for (double alpha = lo; alpha + l <= hi; alpha += 0.5 * l) {
            acc += rigidity_one_interval(u.levels, alpha, l);
            ++intervals;
        }
        curve.abscissa.push_back(l);
        curve.values.push_back(acc / static_cast<double>(intervals));
    }
    return curve;
}

double kolmogorov_q(double lambda) {
    if (lambda <= 1e-3) return 1.0;
    double sum = 0.0;
    double sign = 1.0;
    for (int k = 1; k <= 1000; ++k) {
        const double term = std::exp(-2.0 * static_cast<double>(k) * static_cast<double>(k) *
                                     lambda * lambda);
        sum += sign * term;
        if (term < 1e-12) break;
        sign = -sign;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

KSResult ks_test(std::vector<double> sample, const std::function<double(double)>& reference_cdf) {
    if (sample.empty()) throw ContractViolation("ks_test: empty sample");
    std::sort(sample.begin(), sample.end());
    const double n = static_cast<double>(sample.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double f = reference_cdf(sample[i]);
        d = std::max(d, std::max(std::abs((static_cast<double>(i) + 1.0) / n - f),
                                 std::abs(f - static_cast<double>(i) / n)));
    }
    return {d, kolmogorov_q(std::sqrt(n) * d), sample.size()};
}

StatCurve average_spacing_histograms(const std::vector<SpacingSample>& samples,
                                     std::size_t bins, double s_max) {
    if (samples.empty()) throw ContractViolation("average_spacing_histograms: no samples");
    if (bins < 2) throw ContractViolation("average_spacing_histograms: need at least 2 bins");
    const double width = s_max / static_cast<double>(bins);
    StatCurve curve;
    curve.kind = CurveKind::SPACING_HIST;
    for (std::size_t b = 0; b < bins; ++b)
        curve.abscissa.push_back((static_cast<double>(b) + 0.5) * width);
    curve.values.assign(bins, 0.0);

    for (const auto& sample : samples) {
        std::vector<double> counts(bins, 0.0);
        double in_range = 0.0;
        for (double s : sample.spacings) {
            if (s < 0.0 || s >= s_max) continue;
            counts[static_cast<std::size_t>(s / width)] += 1.0;
            in_range += 1.0;
        }
        if (in_range == 0.0) continue;
        for (std::size_t b = 0; b < bins; ++b)
            curve.values[b] += counts[b] / (in_range * width); // unit-area density
    }
    for (auto& v : curve.values) v /= static_cast<double>(samples.size());
    return curve;
}

UnfoldedSpectrum mix_sequences(const std::vector<UnfoldedSpectrum>& sequences) {
    if (sequences.empty()) throw ContractViolation("mix_sequences: no sequences");
    UnfoldedSpectrum mixed;
    mixed.method = UnfoldMethod::NUMERICAL;
    for (const auto& u : sequences)
        mixed.levels.insert(mixed.levels.end(), u.levels.begin(), u.levels.end());
    std::sort(mixed.levels.begin(), mixed.levels.end());
    if (mixed.levels.size() < 2) throw ContractViolation("mix_sequences: need at least 2 levels");
    const double d = (mixed.levels.back() - mixed.levels.front()) /
                     static_cast<double>(mixed.levels.size() - 1);
    if (d > 0.0)
        for (auto& y : mixed.levels) y /= d;
    return mixed;
}

} // namespace rmts
