#include "rmts/errors.hpp"
#include "rmts/mpmodel.hpp"
#include "rmts/synth.hpp"
#include "rmts/unfold.hpp"

#include <cmath>
#include <doctest.h>
#include <numeric>

using namespace rmts;

namespace {
const MPParams kTestParams{2.75, 3.535, 2, 10};

double mean_spacing(const std::vector<double>& levels) {
    return (levels.back() - levels.front()) / static_cast<double>(levels.size() - 1);
}
} // namespace

TEST_CASE("theoretical unfolding maps the support edges to 0 and N_in") {
    const auto [lo, hi] = support_bounds(kTestParams);
    Spectrum s;
    s.eigenvalues = {lo, 0.5, 0.9, 1.3, hi};
    const auto u = unfold_theoretical(s, kTestParams);
    REQUIRE(u.levels.size() == 5);
    CHECK(u.excluded_count == 0);
    CHECK(u.levels.front() == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(u.levels.back() == doctest::Approx(5.0).epsilon(1e-8));
}

TEST_CASE("theoretical unfolding sends the median to N_in / 2") {
    const double median = mp_quantile(0.5, kTestParams);
    Spectrum s;
    s.eigenvalues = {0.5, 0.8, median, 1.2, 1.5, 1.7};
    const auto u = unfold_theoretical(s, kTestParams);
    CHECK(u.levels[2] == doctest::Approx(3.0).epsilon(1e-3));
}

TEST_CASE("out-of-support eigenvalues are excluded and counted") {
    Spectrum s;
    s.eigenvalues = {0.1, 0.5, 1.0, 1.5, 2.5, 3.0};
    const auto u = unfold_theoretical(s, kTestParams);
    CHECK(u.excluded_count == 3);
    CHECK(u.levels.size() == 3);
    for (std::size_t i = 1; i < u.levels.size(); ++i) CHECK(u.levels[i] >= u.levels[i - 1]);
}

TEST_CASE("no in-support eigenvalues is an error") {
    Spectrum s;
    s.eigenvalues = {5.0, 6.0};
    CHECK_THROWS_AS((void)unfold_theoretical(s, kTestParams), ContractViolation);
}

TEST_CASE("numerical unfolding of an exact linear staircase") {
    std::vector<double> eigs;
    for (int i = 1; i <= 50; ++i) eigs.push_back(static_cast<double>(i));
    const auto u = unfold_numerical(eigs, 1);
    for (std::size_t i = 1; i < u.levels.size(); ++i)
        CHECK(u.levels[i] - u.levels[i - 1] == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("numerical unfolding is affine invariant") {
    RngSpec rng{77, "mt19937_64"};
    auto base = sample_poisson_levels(200, rng).levels;
    const auto u1 = unfold_numerical(base, 5);
    std::vector<double> mapped(base.size());
    for (std::size_t i = 0; i < base.size(); ++i) mapped[i] = 3.7 * base[i] - 11.0;
    const auto u2 = unfold_numerical(mapped, 5);
    for (std::size_t i = 0; i < u1.levels.size(); ++i)
        CHECK(u2.levels[i] == doctest::Approx(u1.levels[i]).epsilon(1e-8).scale(1.0));
}

TEST_CASE("GUE spectrum unfolds to unit mean spacing within 2%") {
    RngSpec rng{5150, "mt19937_64"};
    const auto u = sample_gue_unfolded(500, rng);
    CHECK(std::abs(mean_spacing(u.levels) - 1.0) < 0.02);
}

TEST_CASE("too few levels for the requested degree") {
    CHECK_THROWS_AS((void)unfold_numerical(std::vector<double>{1.0, 2.0, 3.0}, 5),
                    ContractViolation);
}

TEST_CASE("unfolded levels are always non-decreasing") {
    RngSpec rng{9, "mt19937_64"};
    for (std::uint64_t i = 0; i < 5; ++i) {
        const auto s = sample_wishart_spectrum(60, 2.0, rng, i);
        const auto u = unfold_numerical(s.eigenvalues, 7);
        for (std::size_t j = 1; j < u.levels.size(); ++j) CHECK(u.levels[j] >= u.levels[j - 1]);
    }
}
