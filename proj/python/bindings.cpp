#include "rmts/corrmat.hpp"
#include "rmts/errors.hpp"
#include "rmts/mpmodel.hpp"
#include "rmts/pipeline.hpp"
#include "rmts/spectra.hpp"
#include "rmts/stats.hpp"
#include "rmts/synth.hpp"
#include "rmts/unfold.hpp"

#include <algorithm>
#include <functional>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace rmts;

namespace {

std::function<double(double)> named_cdf(const std::string& name) {
    if (name == "wigner") return wigner_gue_cdf;
    if (name == "poisson") return poisson_cdf;
    throw ValidationError("unknown reference cdf: " + name + " (expected wigner or poisson)");
}

MPParams make_params(double a, double b, std::size_t n_weight) {
    return MPParams{a, b, 2, n_weight};
}

} // namespace

PYBIND11_MODULE(_rmtseries, m) {
    m.doc() = "random-matrix spectral statistics for time-series correlation matrices";

    // correlation matrices
    m.def("normalize_subsequence",
          [](const std::vector<double>& x) { return normalize_subsequence(x); });
    m.def("correlation", [](const std::vector<double>& y1, const std::vector<double>& y2) {
        return correlation(y1, y2);
    });
    m.def(
        "build_matrix",
        [](const std::vector<double>& block, std::size_t n_dim) {
            return build_matrix(block, WindowSpec::defaults(n_dim)).entries;
        },
        py::arg("block"), py::arg("n_dim"));
    m.def(
        "build_ensemble",
        [](const std::vector<double>& scores, std::size_t n_dim) {
            ScoreSeries s;
            s.team_id = "py";
            s.scores = scores;
            std::vector<Eigen::MatrixXd> out;
            for (const auto& mtx : build_ensemble(s, WindowSpec::defaults(n_dim)).matrices)
                out.push_back(mtx.entries);
            return out;
        },
        py::arg("scores"), py::arg("n_dim"));

    // spectra
    m.def("eigenvalues", [](const Eigen::MatrixXd& mtx) { return eigenvalues(mtx).eigenvalues; });
    m.def("remove_extreme_bands", [](const Eigen::MatrixXd& mtx, std::size_t k) {
        return remove_extreme_bands(mtx, k);
    });

    // density model
    m.def(
        "support_bounds",
        [](double a, double b) {
            const auto sb = support_bounds(make_params(a, b, 10));
            return std::make_pair(sb.x_minus, sb.x_plus);
        },
        py::arg("a"), py::arg("b"));
    m.def("mp_density",
          [](double x, double a, double b) { return mp_density(x, make_params(a, b, 10)); });
    m.def("mp_cdf", [](double x, double a, double b) { return mp_cdf(x, make_params(a, b, 10)); });
    m.def(
        "fit_mp_params",
        [](const std::vector<double>& eigs, bool grid_fallback) {
            FitOptions opts;
            opts.grid_search_fallback = grid_fallback;
            const auto p = fit_mp_params(eigs, opts);
            return std::make_pair(p.a, p.b);
        },
        py::arg("eigs"), py::arg("grid_fallback") = false);
    m.def(
        "finite_n_density",
        [](const std::vector<double>& xs, double a, double b, std::size_t n) {
            const auto basis = build_poly_basis(make_params(a, b, n), n);
            std::vector<double> out;
            out.reserve(xs.size());
            for (double x : xs) out.push_back(finite_n_density(x, basis));
            return out;
        },
        py::arg("xs"), py::arg("a"), py::arg("b"), py::arg("n") = 10);

    // unfolding
    m.def(
        "unfold_numerical",
        [](std::vector<double> eigs, std::size_t degree) {
            return unfold_numerical(std::move(eigs), degree).levels;
        },
        py::arg("eigenvalues"), py::arg("degree") = 5);
    m.def(
        "unfold_theoretical",
        [](const std::vector<double>& eigs, double a, double b) {
            Spectrum s;
            s.eigenvalues = eigs;
            std::sort(s.eigenvalues.begin(), s.eigenvalues.end());
            const auto u = unfold_theoretical(s, make_params(a, b, 10));
            return std::make_pair(u.levels, u.excluded_count);
        },
        py::arg("eigenvalues"), py::arg("a"), py::arg("b"));

    // fluctuation statistics
    m.def("spacings", [](const std::vector<double>& levels) {
        UnfoldedSpectrum u;
        u.levels = levels;
        return spacings(u).spacings;
    });
    m.def("wigner_gue", &wigner_gue);
    m.def("poisson_pdf", &poisson_pdf);
    m.def("sigma2_gue", &sigma2_gue);
    m.def("delta_gue", &delta_gue);
    m.def("delta_poisson", &delta_poisson);
    m.def("kolmogorov_q", &kolmogorov_q);
    m.def(
        "number_variance",
        [](const std::vector<double>& levels, const std::vector<double>& ns) {
            UnfoldedSpectrum u;
            u.levels = levels;
            return number_variance(u, ns).values;
        },
        py::arg("levels"), py::arg("n_values"));
    m.def(
        "spectral_rigidity",
        [](const std::vector<double>& levels, const std::vector<double>& ls) {
            UnfoldedSpectrum u;
            u.levels = levels;
            return spectral_rigidity(u, ls).values;
        },
        py::arg("levels"), py::arg("l_values"));
    m.def(
        "ks_test",
        [](const std::vector<double>& sample, const std::string& reference) {
            const auto r = ks_test(sample, named_cdf(reference));
            return std::make_pair(r.d_stat, r.p_value);
        },
        py::arg("sample"), py::arg("reference"));
    m.def("mix_sequences", [](const std::vector<std::vector<double>>& seqs) {
        std::vector<UnfoldedSpectrum> us;
        for (const auto& levels : seqs) {
            UnfoldedSpectrum u;
            u.levels = levels;
            us.push_back(std::move(u));
        }
        return mix_sequences(us).levels;
    });

    // synthetic oracles
    m.def(
        "sample_wishart_spectrum",
        [](std::size_t n_dim, double q, std::uint64_t seed, std::uint64_t index) {
            return sample_wishart_spectrum(n_dim, q, RngSpec{seed, "mt19937_64"}, index)
                .eigenvalues;
        },
        py::arg("n_dim"), py::arg("q"), py::arg("seed"), py::arg("index") = 0);
    m.def(
        "sample_gue_unfolded",
        [](std::size_t n_dim, std::uint64_t seed, std::uint64_t index) {
            return sample_gue_unfolded(n_dim, RngSpec{seed, "mt19937_64"}, index).levels;
        },
        py::arg("n_dim"), py::arg("seed"), py::arg("index") = 0);
    m.def(
        "sample_poisson_levels",
        [](std::size_t count, std::uint64_t seed) {
            return sample_poisson_levels(count, RngSpec{seed, "mt19937_64"}).levels;
        },
        py::arg("count"), py::arg("seed"));
    m.def(
        "sample_common_mode_series",
        [](std::size_t length, double gamma, std::uint64_t seed) {
            return sample_common_mode_series(length, gamma, RngSpec{seed, "mt19937_64"}).scores;
        },
        py::arg("length"), py::arg("mode_strength"), py::arg("seed"));

    // pipeline
    m.def(
        "run_pipeline",
        [](const std::string& config_json) {
            return run_pipeline(PipelineConfig::from_json(config_json));
        },
        py::arg("config_json"));
}
