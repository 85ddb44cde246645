// Command-line front end for the RMT time-series analysis pipeline.

#include "rmts/corrmat.hpp"
#include "rmts/errors.hpp"
#include "rmts/ingest.hpp"
#include "rmts/io.hpp"
#include "rmts/mpmodel.hpp"
#include "rmts/pipeline.hpp"
#include "rmts/spectra.hpp"
#include "rmts/stats.hpp"
#include "rmts/synth.hpp"
#include "rmts/unfold.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <nlohmann/json.hpp>
#include <sstream>

using nlohmann::json;

namespace {

std::vector<rmts::ScoreSeries> read_scores_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw rmts::ParseError("cannot open " + path);
    return rmts::parse_scores(in);
}

// unfolded CSV rows back into memory (team, method, degree, levels...)
std::vector<rmts::UnfoldedSpectrum> read_unfolded_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw rmts::ParseError("cannot open " + path);
    std::vector<rmts::UnfoldedSpectrum> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string field;
        rmts::UnfoldedSpectrum u;
        std::getline(ss, u.team_id, ',');
        std::getline(ss, field, ',');
        u.method = field == "theoretical" ? rmts::UnfoldMethod::THEORETICAL
                                          : rmts::UnfoldMethod::NUMERICAL;
        std::getline(ss, field, ',');
        u.fit_degree = std::stoull(field);
        while (std::getline(ss, field, ',')) u.levels.push_back(std::stod(field));
        out.push_back(std::move(u));
    }
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"random-matrix analysis of time-series cross-correlation spectra"};
    app.require_subcommand(1);

    // ingest
    auto* ingest = app.add_subcommand("ingest", "parse and canonicalize a score CSV");
    std::string in_path, out_path;
    ingest->add_option("--input", in_path, "score CSV")->required();
    ingest->add_option("--output", out_path, "canonical CSV output (optional)");
    ingest->callback([&] {
        auto series = read_scores_file(in_path);
        for (const auto& s : series) {
            const auto sum = rmts::series_summary(s);
            std::cout << s.team_id << ',' << rmts::to_string(s.format_tag) << ": length "
                      << sum.length << ", mean " << sum.mean << ", std " << sum.std_dev << '\n';
        }
        if (!out_path.empty()) {
            std::ofstream out(out_path);
            rmts::write_scores(out, series);
        }
    });

    // ensemble
    auto* ensemble = app.add_subcommand("ensemble", "build lagged correlation matrices");
    std::string ens_in, ens_out;
    std::size_t n_dim = 90;
    ensemble->add_option("--input", ens_in, "score CSV")->required();
    ensemble->add_option("--n-dim", n_dim, "matrix dimension N (default 90)");
    ensemble->add_option("--output", ens_out, "ensemble directory")->required();
    ensemble->callback([&] {
        const auto spec = rmts::WindowSpec::defaults(n_dim);
        rmts::CorrEnsemble all;
        all.spec = spec;
        for (const auto& s : read_scores_file(ens_in))
            rmts::append_ensemble(all, rmts::build_ensemble(s, spec));
        rmts::write_corr_ensemble(ens_out, all);
        std::cout << all.matrices.size() << " matrices written to " << ens_out << '\n';
        if (all.short_series_warning)
            std::cerr << "warning: at least one series was shorter than one block\n";
    });

    // spectra
    auto* spectra_cmd = app.add_subcommand("spectra", "eigendecompose an ensemble");
    std::string sp_ens, sp_out;
    std::size_t sp_k = 0;
    spectra_cmd->add_option("--ensemble", sp_ens, "ensemble directory")->required();
    spectra_cmd->add_option("--k", sp_k, "extreme bands removed per side");
    spectra_cmd->add_option("--output", sp_out, "spectra CSV")->required();
    spectra_cmd->callback([&] {
        const auto ens = rmts::read_corr_ensemble(sp_ens);
        std::vector<rmts::Spectrum> list;
        for (const auto& m : ens.matrices) list.push_back(rmts::eigenvalues(m, sp_k));
        rmts::write_spectra_csv(sp_out, list);
        std::cout << list.size() << " spectra written to " << sp_out << '\n';
    });

    // fit-mp
    auto* fit = app.add_subcommand("fit-mp", "fit density parameters to pooled eigenvalues");
    std::string fit_in;
    bool fit_grid = false;
    fit->add_option("--spectra", fit_in, "spectra CSV")->required();
    fit->add_flag("--grid-fallback", fit_grid, "KS grid search when moments are out of domain");
    fit->callback([&] {
        std::vector<double> pooled;
        for (const auto& s : rmts::read_spectra_csv(fit_in))
            pooled.insert(pooled.end(), s.eigenvalues.begin(), s.eigenvalues.end());
        rmts::FitOptions opts;
        opts.grid_search_fallback = fit_grid;
        const auto p = rmts::fit_mp_params(pooled, opts);
        const auto [lo, hi] = rmts::support_bounds(p);
        json j{{"a", p.a}, {"b", p.b}, {"x_minus", lo}, {"x_plus", hi}};
        std::cout << j.dump(2) << '\n';
    });

    // finite-n
    auto* finite = app.add_subcommand("finite-n", "finite-N level density curve");
    double fn_a = 2.75, fn_b = 3.535;
    std::size_t fn_n = 10, fn_points = 200;
    std::string fn_out;
    finite->add_option("--a", fn_a, "weight exponent coefficient");
    finite->add_option("--b", fn_b, "weight decay coefficient");
    finite->add_option("--n", fn_n, "N entering the weight (default 10)");
    finite->add_option("--points", fn_points, "curve points");
    finite->add_option("--output", fn_out, "two-column CSV")->required();
    finite->callback([&] {
        rmts::MPParams p{fn_a, fn_b, 2, fn_n};
        const auto [lo, hi] = rmts::support_bounds(p);
        rmts::emit_reference_curves("finite-n", lo, hi, fn_points, p, fn_out);
        std::cout << "finite-N density written to " << fn_out << '\n';
    });

    // unfold
    auto* unfold_cmd = app.add_subcommand("unfold", "unfold spectra to unit mean spacing");
    std::string uf_in, uf_out, uf_method = "numerical";
    std::size_t uf_degree = 5;
    double uf_a = 0.0, uf_b = 0.0;
    unfold_cmd->add_option("--spectra", uf_in, "spectra CSV")->required();
    unfold_cmd->add_option("--method", uf_method, "numerical or theoretical");
    unfold_cmd->add_option("--degree", uf_degree, "polynomial degree (numerical)");
    unfold_cmd->add_option("--a", uf_a, "density parameter a (theoretical)");
    unfold_cmd->add_option("--b", uf_b, "density parameter b (theoretical)");
    unfold_cmd->add_option("--output", uf_out, "unfolded CSV")->required();
    unfold_cmd->callback([&] {
        const auto spectra = rmts::read_spectra_csv(uf_in);
        // pool per team, unfold each team independently
        std::map<std::string, std::vector<double>> by_team;
        for (const auto& s : spectra) {
            auto& v = by_team[s.team_id];
            v.insert(v.end(), s.eigenvalues.begin(), s.eigenvalues.end());
        }
        std::vector<rmts::UnfoldedSpectrum> out;
        for (auto& [team, eigs] : by_team) {
            std::sort(eigs.begin(), eigs.end());
            rmts::Spectrum pooled;
            pooled.team_id = team;
            pooled.eigenvalues = std::move(eigs);
            rmts::UnfoldedSpectrum u;
            if (uf_method == "theoretical") {
                if (uf_b <= 0.0)
                    throw rmts::ValidationError("theoretical unfolding needs --a and --b");
                u = rmts::unfold_theoretical(pooled, rmts::MPParams{uf_a, uf_b, 2, 10});
            } else {
                u = rmts::unfold_numerical(pooled, uf_degree);
            }
            out.push_back(std::move(u));
        }
        rmts::write_unfolded_csv(uf_out, out);
        std::cout << out.size() << " unfolded sequences written to " << uf_out << '\n';
    });

    // stats
    auto* stats_cmd = app.add_subcommand("stats", "fluctuation statistics of unfolded levels");
    std::string st_in, st_kind = "spacing", st_out;
    bool st_mix = false;
    stats_cmd->add_option("--unfolded", st_in, "unfolded CSV")->required();
    stats_cmd->add_option("--kind", st_kind, "spacing, sigma2, delta or ks");
    stats_cmd->add_flag("--mix", st_mix, "mix all sequences before the statistic");
    stats_cmd->add_option("--output", st_out, "curve CSV (spacing/sigma2/delta)");
    stats_cmd->callback([&] {
        auto sequences = read_unfolded_csv(st_in);
        if (sequences.empty()) throw rmts::ValidationError("no unfolded sequences in " + st_in);
        if (st_mix) sequences = {rmts::mix_sequences(sequences)};

        if (st_kind == "spacing") {
            std::vector<rmts::SpacingSample> samples;
            for (const auto& u : sequences) samples.push_back(rmts::spacings(u));
            const auto hist = rmts::average_spacing_histograms(samples, 24, 4.0);
            std::vector<double> ref;
            for (double s : hist.abscissa)
                ref.push_back(st_mix ? rmts::poisson_pdf(s) : rmts::wigner_gue(s));
            if (st_out.empty()) throw rmts::ValidationError("--output required for spacing");
            rmts::write_curve_csv(st_out, hist, ref);
        } else if (st_kind == "sigma2" || st_kind == "delta") {
            const auto mixed = st_mix ? sequences.front() : rmts::mix_sequences(sequences);
            if (st_out.empty()) throw rmts::ValidationError("--output required for " + st_kind);
            if (st_kind == "sigma2") {
                std::vector<double> ns{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
                const auto curve = rmts::number_variance(mixed, ns);
                std::vector<double> ref;
                for (double n : ns) ref.push_back(rmts::sigma2_gue(n));
                rmts::write_curve_csv(st_out, curve, ref);
            } else {
                std::vector<double> ls{5, 10, 15, 20};
                const auto curve = rmts::spectral_rigidity(mixed, ls);
                std::vector<double> ref;
                for (double l : ls) ref.push_back(rmts::delta_gue(l));
                rmts::write_curve_csv(st_out, curve, ref);
            }
        } else if (st_kind == "ks") {
            std::vector<double> pooled;
            for (const auto& u : sequences) {
                const auto sp = rmts::spacings(u);
                pooled.insert(pooled.end(), sp.spacings.begin(), sp.spacings.end());
            }
            const auto ks = rmts::ks_test(
                pooled, st_mix ? std::function<double(double)>(rmts::poisson_cdf)
                               : std::function<double(double)>(rmts::wigner_gue_cdf));
            json j{{"d", ks.d_stat}, {"p", ks.p_value}, {"n", ks.sample_size}};
            std::cout << j.dump(2) << '\n';
        } else {
            throw rmts::ValidationError("unknown statistic kind: " + st_kind);
        }
    });

    // synth
    auto* synth_cmd = app.add_subcommand("synth", "seeded synthetic oracles");
    std::string sy_kind = "wishart", sy_out;
    std::uint64_t sy_seed = 0;
    std::size_t sy_n = 90, sy_count = 1, sy_levels = 10000, sy_length = 1000;
    double sy_q = 2.0, sy_gamma = 0.6;
    synth_cmd->add_option("--kind", sy_kind, "wishart, gue, poisson or common-mode")->required();
    synth_cmd->add_option("--seed", sy_seed, "RNG seed (mandatory)")->required();
    synth_cmd->add_option("--n-dim", sy_n, "matrix dimension");
    synth_cmd->add_option("--count", sy_count, "number of matrices");
    synth_cmd->add_option("--levels", sy_levels, "Poisson level count");
    synth_cmd->add_option("--length", sy_length, "common-mode series length");
    synth_cmd->add_option("--q", sy_q, "Wishart samples-per-dimension ratio");
    synth_cmd->add_option("--gamma", sy_gamma, "common-mode strength in [0, 1)");
    synth_cmd->add_option("--output", sy_out, "output CSV")->required();
    synth_cmd->callback([&] {
        const rmts::RngSpec rng{sy_seed, "mt19937_64"};
        if (sy_kind == "wishart") {
            std::vector<rmts::Spectrum> list;
            for (std::size_t i = 0; i < sy_count; ++i)
                list.push_back(rmts::sample_wishart_spectrum(sy_n, sy_q, rng, i));
            rmts::write_spectra_csv(sy_out, list);
        } else if (sy_kind == "gue") {
            std::vector<rmts::UnfoldedSpectrum> list;
            for (std::size_t i = 0; i < sy_count; ++i)
                list.push_back(rmts::sample_gue_unfolded(sy_n, rng, i));
            rmts::write_unfolded_csv(sy_out, list);
        } else if (sy_kind == "poisson") {
            rmts::write_unfolded_csv(sy_out, {rmts::sample_poisson_levels(sy_levels, rng)});
        } else if (sy_kind == "common-mode") {
            const auto series = rmts::sample_common_mode_series(sy_length, sy_gamma, rng);
            std::ofstream out(sy_out);
            rmts::write_scores(out, {series});
        } else {
            throw rmts::ValidationError("unknown synth kind: " + sy_kind);
        }
        std::cout << sy_kind << " written to " << sy_out << '\n';
    });

    // run
    auto* run = app.add_subcommand("run", "full pipeline");
    std::string run_config;
    rmts::PipelineConfig cfg;
    std::vector<std::string> run_inputs;
    std::string run_preset;
    run->add_option("--config", run_config, "JSON config file");
    run->add_option("--input", run_inputs, "score CSV file(s)");
    run->add_option("--n-dim", cfg.n_dim, "matrix dimension N");
    run->add_option("--k-bands", cfg.k_bands, "extreme bands removed per side");
    run->add_option("--preset", run_preset, "test, odi or t20");
    run->add_option("--unfold-method", cfg.unfold_method, "numerical or theoretical");
    run->add_option("--unfold-degree", cfg.unfold_degree, "polynomial degree");
    run->add_option("--seed", cfg.seed, "RNG seed")->required();
    run->add_option("--out-dir", cfg.out_dir, "output directory");
    double run_a = -1.0, run_b = -1.0;
    run->add_option("--mp-a", run_a, "explicit density parameter a");
    run->add_option("--mp-b", run_b, "explicit density parameter b");
    run->callback([&] {
        rmts::PipelineConfig c = run_config.empty() ? cfg : rmts::PipelineConfig::load(run_config);
        if (!run_config.empty()) {
            c.seed = cfg.seed;
            if (!run_inputs.empty()) c.inputs.clear();
        }
        for (const auto& p : run_inputs) c.inputs.emplace_back(p);
        if (!run_preset.empty()) c.apply_preset(run_preset);
        if (run_a >= 0.0 && run_b > 0.0) {
            c.fit_mp = false;
            c.mp_a = run_a;
            c.mp_b = run_b;
        }
        const std::string summary = rmts::run_pipeline(c);
        std::cout << summary << '\n';
    });

    // ref-curves
    auto* ref = app.add_subcommand("ref-curves", "analytic reference curves");
    std::string rc_kind, rc_out;
    double rc_lo = 0.0, rc_hi = 4.0, rc_a = 2.75, rc_b = 3.535;
    std::size_t rc_points = 200, rc_n = 10;
    ref->add_option("--kind", rc_kind,
                    "mp, finite-n, wigner, poisson-pdf, sigma2-gue, delta-gue, delta-poisson")
        ->required();
    ref->add_option("--lo", rc_lo, "range start");
    ref->add_option("--hi", rc_hi, "range end");
    ref->add_option("--points", rc_points, "curve points");
    ref->add_option("--a", rc_a, "density parameter a");
    ref->add_option("--b", rc_b, "density parameter b");
    ref->add_option("--n", rc_n, "N entering the weight");
    ref->add_option("--output", rc_out, "two-column CSV")->required();
    ref->callback([&] {
        rmts::emit_reference_curves(rc_kind, rc_lo, rc_hi, rc_points,
                                    rmts::MPParams{rc_a, rc_b, 2, rc_n}, rc_out);
        std::cout << rc_kind << " written to " << rc_out << '\n';
    });

    try {
        CLI11_PARSE(app, argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
