#include "rmts/pipeline.hpp"

#include "rmts/corrmat.hpp"
#include "rmts/errors.hpp"
#include "rmts/ingest.hpp"
#include "rmts/io.hpp"
#include "rmts/stats.hpp"
#include "rmts/unfold.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <nlohmann/json.hpp>
#include <set>

namespace rmts {

using nlohmann::json;

std::string PipelineConfig::to_json() const {
    json j;
    j["inputs"] = json::array();
    for (const auto& p : inputs) j["inputs"].push_back(p.string());
    j["n_dim"] = n_dim;
    j["k_bands"] = k_bands;
    j["k_sweep"] = k_sweep;
    j["unfold"] = {{"method", unfold_method}, {"degree", unfold_degree}};
    j["mp"] = {{"fit", fit_mp}};
    if (mp_a) j["mp"]["a"] = *mp_a;
    if (mp_b) j["mp"]["b"] = *mp_b;
    j["statistics"] = statistics;
    j["seed"] = seed;
    j["out_dir"] = out_dir.string();
    return j.dump(2);
}

PipelineConfig PipelineConfig::from_json(const std::string& text) {
    json j = json::parse(text);
    PipelineConfig c;
    if (j.contains("inputs"))
        for (const auto& p : j["inputs"]) c.inputs.emplace_back(p.get<std::string>());
    if (j.contains("n_dim")) c.n_dim = j["n_dim"].get<std::size_t>();
    if (j.contains("k_bands")) c.k_bands = j["k_bands"].get<std::size_t>();
    if (j.contains("k_sweep")) c.k_sweep = j["k_sweep"].get<std::vector<std::size_t>>();
    if (j.contains("unfold")) {
        c.unfold_method = j["unfold"].value("method", c.unfold_method);
        c.unfold_degree = j["unfold"].value("degree", c.unfold_degree);
    }
    if (j.contains("mp")) {
        c.fit_mp = j["mp"].value("fit", true);
        if (j["mp"].contains("a")) c.mp_a = j["mp"]["a"].get<double>();
        if (j["mp"].contains("b")) c.mp_b = j["mp"]["b"].get<double>();
    }
    if (j.contains("statistics")) c.statistics = j["statistics"].get<std::vector<std::string>>();
    if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("out_dir")) c.out_dir = j["out_dir"].get<std::string>();
    return c;
}

PipelineConfig PipelineConfig::load(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw ParseError("cannot open config file " + file.string());
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return from_json(text);
}

void PipelineConfig::apply_preset(const std::string& name) {
    if (name == "test") {
        n_dim = 90;
        k_bands = 5;
    } else if (name == "odi") {
        n_dim = 90;
        k_bands = 15;
    } else if (name == "t20") {
        n_dim = 20;
        k_bands = 0;
    } else {
        throw ValidationError("unknown preset: " + name + " (expected test, odi or t20)");
    }
}

namespace {

struct StageGuard {
    const char* stage;
    template <typename F>
    auto run(F&& f) -> decltype(f()) {
        try {
            return f();
        } catch (const std::exception& e) {
            throw std::runtime_error(std::string("pipeline stage '") + stage + "': " + e.what());
        }
    }
};

template <typename F>
auto stage(const char* name, F&& f) {
    return StageGuard{name}.run(std::forward<F>(f));
}

bool wants(const PipelineConfig& c, const std::string& s) {
    return std::find(c.statistics.begin(), c.statistics.end(), s) != c.statistics.end();
}

json curve_to_json(const StatCurve& curve, const std::vector<double>& reference = {}) {
    json j;
    j["kind"] = to_string(curve.kind);
    j["abscissa"] = curve.abscissa;
    j["values"] = curve.values;
    if (!reference.empty()) j["reference"] = reference;
    return j;
}

} // namespace

std::string run_pipeline(const PipelineConfig& config) {
    namespace fs = std::filesystem;
    fs::create_directories(config.out_dir);
    {
        std::ofstream cfg(config.out_dir / "config.json");
        cfg << config.to_json() << '\n';
    }

    // ingest
    std::vector<ScoreSeries> series = stage("ingest", [&] {
        std::vector<ScoreSeries> all;
        for (const auto& path : config.inputs) {
            std::ifstream in(path);
            if (!in) throw ParseError("cannot open input " + path.string());
            auto parsed = parse_scores(in);
            all.insert(all.end(), std::make_move_iterator(parsed.begin()),
                       std::make_move_iterator(parsed.end()));
        }
        if (all.empty()) throw ValidationError("no input series");
        return all;
    });

    // per-team ensembles
    const WindowSpec wspec = WindowSpec::defaults(config.n_dim);
    CorrEnsemble ensemble = stage("ensemble", [&] {
        CorrEnsemble all;
        all.spec = wspec;
        for (const auto& s : series) append_ensemble(all, build_ensemble(s, wspec));
        if (all.matrices.empty())
            throw ValidationError("every input series is shorter than one block (" +
                                  std::to_string(wspec.block_len) + ")");
        write_corr_ensemble(config.out_dir / "ensemble", all);
        return all;
    });

    // spectra at k = 0 and k = k_bands
    const std::vector<std::size_t> k_levels =
        config.k_bands == 0 ? std::vector<std::size_t>{0}
                            : std::vector<std::size_t>{0, config.k_bands};
    std::map<std::size_t, std::vector<Spectrum>> spectra_by_k;
    stage("spectra", [&] {
        for (std::size_t k : k_levels) {
            auto& list = spectra_by_k[k];
            for (const auto& m : ensemble.matrices) list.push_back(eigenvalues(m, k));
            write_spectra_csv(config.out_dir / ("spectra_k" + std::to_string(k) + ".csv"), list);
        }
        return 0;
    });

    json summary;
    summary["config"] = json::parse(config.to_json());
    summary["n_matrices"] = ensemble.matrices.size();
    summary["short_series_warning"] = ensemble.short_series_warning;

    // MP parameters per k (fitted or explicit)
    std::map<std::size_t, MPParams> params_by_k;
    stage("mp-fit", [&] {
        for (std::size_t k : k_levels) {
            MPParams p;
            if (!config.fit_mp) {
                if (!config.mp_a || !config.mp_b)
                    throw ValidationError("mp.fit=false requires explicit a and b");
                p.a = *config.mp_a;
                p.b = *config.mp_b;
                summary["mp"][std::to_string(k)]["fit_method"] = "explicit";
            } else {
                std::vector<double> pooled;
                for (const auto& s : spectra_by_k[k])
                    pooled.insert(pooled.end(), s.eigenvalues.begin(), s.eigenvalues.end());
                try {
                    p = fit_mp_params(pooled);
                    summary["mp"][std::to_string(k)]["fit_method"] = "moments";
                } catch (const FitOutOfDomain&) {
                    FitOptions opts;
                    opts.grid_search_fallback = true;
                    p = fit_mp_params(pooled, opts);
                    summary["mp"][std::to_string(k)]["fit_method"] = "grid";
                }
            }
            const auto [lo, hi] = support_bounds(p);
            auto& node = summary["mp"][std::to_string(k)];
            node["a"] = p.a;
            node["b"] = p.b;
            node["x_minus"] = lo;
            node["x_plus"] = hi;
            params_by_k[k] = p;
        }
        return 0;
    });

    // per-team unfolding and statistics, for each k level
    for (std::size_t k : k_levels) {
        const std::string tag = "k" + std::to_string(k);
        stage("unfold+stats", [&] {
            std::vector<UnfoldedSpectrum> per_team;
            std::size_t excluded_total = 0;
            for (const auto& [team, indices] : ensemble.per_team_index) {
                std::vector<double> pooled;
                for (std::size_t idx : indices) {
                    const auto& s = spectra_by_k[k][idx];
                    pooled.insert(pooled.end(), s.eigenvalues.begin(), s.eigenvalues.end());
                }
                Spectrum team_spectrum;
                team_spectrum.team_id = team;
                team_spectrum.k_removed = k;
                std::sort(pooled.begin(), pooled.end());
                team_spectrum.eigenvalues = std::move(pooled);

                UnfoldedSpectrum u;
                if (config.unfold_method == "theoretical") {
                    u = unfold_theoretical(team_spectrum, params_by_k[k]);
                    excluded_total += u.excluded_count;
                } else {
                    u = unfold_numerical(team_spectrum, config.unfold_degree);
                }
                per_team.push_back(std::move(u));
            }
            write_unfolded_csv(config.out_dir / ("unfolded_" + tag + ".csv"), per_team);
            summary["unfold"][tag]["excluded_eigenvalues"] = excluded_total;

            std::vector<SpacingSample> samples;
            std::vector<double> pooled_spacings;
            for (const auto& u : per_team) {
                if (u.levels.size() < 2) continue;
                auto sp = spacings(u);
                pooled_spacings.insert(pooled_spacings.end(), sp.spacings.begin(),
                                       sp.spacings.end());
                samples.push_back(std::move(sp));
            }

            if (wants(config, "spacing") && !samples.empty()) {
                StatCurve hist = average_spacing_histograms(samples, 24, 4.0);
                std::vector<double> ref;
                for (double s : hist.abscissa) ref.push_back(wigner_gue(s));
                write_curve_csv(config.out_dir / ("spacing_hist_" + tag + ".csv"), hist, ref);
                summary["curves"][tag]["spacing_hist"] = curve_to_json(hist, ref);
            }
            if (wants(config, "ks") && !pooled_spacings.empty()) {
                const KSResult ks = ks_test(pooled_spacings, wigner_gue_cdf);
                summary["ks"][tag] = {{"d", ks.d_stat},
                                      {"p", ks.p_value},
                                      {"n", ks.sample_size},
                                      {"reference", "wigner_gue"}};
            }

            // long-range statistics on the mixed sequence, which has the span
            const UnfoldedSpectrum mixed = mix_sequences(per_team);
            const double span =
                mixed.levels.empty() ? 0.0 : mixed.levels.back() - mixed.levels.front();
            if (wants(config, "sigma2")) {
                std::vector<double> n_values;
                for (double n = 1.0; n <= 10.0 && n + 1.0 <= span; n += 1.0)
                    n_values.push_back(n);
                if (!n_values.empty()) {
                    StatCurve s2 = number_variance(mixed, n_values);
                    std::vector<double> ref;
                    for (double n : n_values) ref.push_back(sigma2_gue(n));
                    write_curve_csv(config.out_dir / ("sigma2_" + tag + ".csv"), s2, ref);
                    summary["curves"][tag]["sigma2"] = curve_to_json(s2, ref);
                }
            }
            if (wants(config, "delta")) {
                std::vector<double> l_values;
                for (double l = 5.0; l <= 20.0 && l + 1.0 <= span; l += 5.0)
                    l_values.push_back(l);
                if (!l_values.empty()) {
                    StatCurve d3 = spectral_rigidity(mixed, l_values);
                    std::vector<double> ref;
                    for (double l : l_values) ref.push_back(delta_gue(l));
                    write_curve_csv(config.out_dir / ("delta_" + tag + ".csv"), d3, ref);
                    summary["curves"][tag]["delta"] = curve_to_json(d3, ref);
                }
            }
            if (wants(config, "ks") && mixed.levels.size() >= 3) {
                const auto sp = spacings(mixed);
                const KSResult ks = ks_test(sp.spacings, poisson_cdf);
                summary["ks_mixed"][tag] = {{"d", ks.d_stat},
                                            {"p", ks.p_value},
                                            {"n", ks.sample_size},
                                            {"reference", "poisson"}};
            }
            return 0;
        });
    }

    if (wants(config, "maxeig")) {
        stage("maxeig-vs-k", [&] {
            std::vector<std::size_t> ks;
            for (std::size_t k : config.k_sweep)
                if (k <= config.n_dim - 1) ks.push_back(k);
            std::sort(ks.begin(), ks.end());
            ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
            const StatCurve curve = largest_eigenvalue_vs_k(ensemble, ks);
            write_curve_csv(config.out_dir / "maxeig_vs_k.csv", curve);
            summary["curves"]["maxeig_vs_k"] = curve_to_json(curve);
            return 0;
        });
    }

    const std::string text = summary.dump(2);
    std::ofstream sout(config.out_dir / "summary.json");
    sout << text << '\n';
    return text;
}

void emit_reference_curves(const std::string& kind, double lo, double hi, std::size_t points,
                           const MPParams& params, const std::filesystem::path& out_path) {
    if (points < 2) throw ContractViolation("emit_reference_curves: need at least 2 points");
    if (!(hi > lo)) throw ContractViolation("emit_reference_curves: empty range");

    std::function<double(double)> f;
    CurveKind ck = CurveKind::SPACING_HIST;
    if (kind == "mp") {
        f = [&](double x) { return mp_density(x, params); };
    } else if (kind == "finite-n") {
        const PolyBasis basis = build_poly_basis(params, params.n_weight);
        StatCurve curve;
        curve.kind = ck;
        for (std::size_t i = 0; i < points; ++i) {
            const double x =
                lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
            curve.abscissa.push_back(x);
            curve.values.push_back(finite_n_density(x, basis));
        }
        write_curve_csv(out_path, curve);
        return;
    } else if (kind == "wigner") {
        f = wigner_gue;
    } else if (kind == "poisson-pdf") {
        f = poisson_pdf;
    } else if (kind == "sigma2-gue") {
        f = sigma2_gue;
        ck = CurveKind::NUMBER_VARIANCE;
    } else if (kind == "delta-gue") {
        f = delta_gue;
        ck = CurveKind::RIGIDITY;
    } else if (kind == "delta-poisson") {
        f = delta_poisson;
        ck = CurveKind::RIGIDITY;
    } else {
        throw ValidationError("unknown reference curve kind: " + kind);
    }

    StatCurve curve;
    curve.kind = ck;
    for (std::size_t i = 0; i < points; ++i) {
        const double x = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
        curve.abscissa.push_back(x);
        curve.values.push_back(f(x));
    }
    write_curve_csv(out_path, curve);
}

} // namespace rmts
