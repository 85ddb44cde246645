#include "rmts/corrmat.hpp"
#include "rmts/errors.hpp"
#include "rmts/io.hpp"
#include "rmts/pipeline.hpp"
#include "rmts/synth.hpp"

#include <doctest.h>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>

using namespace rmts;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

fs::path temp_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("rmts_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

fs::path write_fixture(const fs::path& dir, std::uint64_t seed) {
    std::vector<ScoreSeries> series;
    for (int t = 0; t < 3; ++t) {
        auto s = sample_common_mode_series(400, 0.4, RngSpec{seed + static_cast<unsigned>(t)});
        s.team_id = "TEAM" + std::to_string(t);
        series.push_back(std::move(s));
    }
    const fs::path file = dir / "scores.csv";
    std::ofstream out(file);
    write_scores(out, series);
    return file;
}

} // namespace

TEST_CASE("ensemble directory round trip is bit exact") {
    const auto dir = temp_dir("ens");
    const auto series = sample_common_mode_series(300, 0.3, RngSpec{5});
    const auto ens = build_ensemble(series, WindowSpec::defaults(20));
    REQUIRE(!ens.matrices.empty());
    write_corr_ensemble(dir / "e", ens);
    const auto back = read_corr_ensemble(dir / "e");
    REQUIRE(back.matrices.size() == ens.matrices.size());
    for (std::size_t i = 0; i < ens.matrices.size(); ++i) {
        CHECK(back.matrices[i].team_id == ens.matrices[i].team_id);
        CHECK(back.matrices[i].block_offset == ens.matrices[i].block_offset);
        CHECK(back.matrices[i].entries == ens.matrices[i].entries);
    }
    CHECK(back.spec.n_dim == ens.spec.n_dim);
}

TEST_CASE("spectra CSV round trip") {
    const auto dir = temp_dir("spec");
    std::vector<Spectrum> list;
    for (std::uint64_t i = 0; i < 3; ++i) {
        auto s = sample_wishart_spectrum(10, 2.0, RngSpec{9}, i);
        s.team_id = "T";
        s.block_offset = i * 10;
        s.k_removed = 1;
        list.push_back(std::move(s));
    }
    write_spectra_csv(dir / "s.csv", list);
    const auto back = read_spectra_csv(dir / "s.csv");
    REQUIRE(back.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(back[i].eigenvalues == list[i].eigenvalues);
        CHECK(back[i].block_offset == list[i].block_offset);
        CHECK(back[i].k_removed == 1);
    }
}

TEST_CASE("config JSON round trip") {
    PipelineConfig c;
    c.inputs = {"a.csv", "b.csv"};
    c.n_dim = 30;
    c.k_bands = 5;
    c.unfold_method = "theoretical";
    c.fit_mp = false;
    c.mp_a = 2.75;
    c.mp_b = 3.535;
    c.seed = 99;
    c.out_dir = "somewhere";
    const auto back = PipelineConfig::from_json(c.to_json());
    CHECK(back.inputs == c.inputs);
    CHECK(back.n_dim == 30);
    CHECK(back.k_bands == 5);
    CHECK(back.unfold_method == "theoretical");
    CHECK(back.fit_mp == false);
    CHECK(back.mp_a == 2.75);
    CHECK(back.mp_b == 3.535);
    CHECK(back.seed == 99);
    CHECK(back.out_dir == fs::path("somewhere"));
}

TEST_CASE("presets") {
    PipelineConfig c;
    c.apply_preset("test");
    CHECK(c.n_dim == 90);
    CHECK(c.k_bands == 5);
    c.apply_preset("odi");
    CHECK(c.k_bands == 15);
    c.apply_preset("t20");
    CHECK(c.n_dim == 20);
    CHECK_THROWS_AS(c.apply_preset("ipl"), ValidationError);
}

TEST_CASE("pipeline produces the declared summary keys with finite values") {
    const auto dir = temp_dir("run");
    PipelineConfig c;
    c.inputs = {write_fixture(dir, 100)};
    c.n_dim = 30;
    c.k_bands = 5;
    c.k_sweep = {0, 2, 5};
    c.seed = 1;
    c.out_dir = dir / "out";
    const auto summary = json::parse(run_pipeline(c));

    CHECK(summary.contains("config"));
    CHECK(summary.contains("mp"));
    CHECK(summary.contains("ks"));
    CHECK(summary.contains("curves"));
    for (const std::string k : {"0", "5"}) {
        CHECK(std::isfinite(summary["mp"][k]["a"].get<double>()));
        CHECK(std::isfinite(summary["mp"][k]["b"].get<double>()));
        CHECK(std::isfinite(summary["mp"][k]["x_minus"].get<double>()));
        CHECK(std::isfinite(summary["mp"][k]["x_plus"].get<double>()));
        const std::string tag = "k" + k;
        CHECK(summary["ks"][tag]["p"].get<double>() >= 0.0);
        CHECK(summary["ks"][tag]["p"].get<double>() <= 1.0);
    }
    CHECK(summary["curves"]["maxeig_vs_k"]["values"].size() == 3);

    // intermediate artifacts exist
    CHECK(fs::exists(c.out_dir / "config.json"));
    CHECK(fs::exists(c.out_dir / "ensemble" / "manifest.json"));
    CHECK(fs::exists(c.out_dir / "spectra_k0.csv"));
    CHECK(fs::exists(c.out_dir / "spectra_k5.csv"));
    CHECK(fs::exists(c.out_dir / "summary.json"));
    CHECK(fs::exists(c.out_dir / "maxeig_vs_k.csv"));
}

TEST_CASE("explicit parameters are echoed with their support bounds") {
    const auto dir = temp_dir("echo");
    PipelineConfig c;
    c.inputs = {write_fixture(dir, 200)};
    c.n_dim = 30;
    c.fit_mp = false;
    c.mp_a = 2.75;
    c.mp_b = 3.535;
    c.seed = 1;
    c.unfold_method = "theoretical";
    c.out_dir = dir / "out";
    const auto summary = json::parse(run_pipeline(c));
    CHECK(summary["mp"]["0"]["x_minus"].get<double>() == doctest::Approx(0.339601).epsilon(1e-5));
    CHECK(summary["mp"]["0"]["x_plus"].get<double>() == doctest::Approx(1.78204).epsilon(1e-5));
}

TEST_CASE("pipeline failure names the stage and keeps partial outputs") {
    const auto dir = temp_dir("fail");
    PipelineConfig c;
    c.inputs = {dir / "missing.csv"};
    c.out_dir = dir / "out";
    try {
        (void)run_pipeline(c);
        FAIL("expected failure");
    } catch (const std::exception& e) {
        CHECK(std::string(e.what()).find("ingest") != std::string::npos);
    }
    CHECK(fs::exists(c.out_dir / "config.json"));
}

TEST_CASE("reference curve emission") {
    const auto dir = temp_dir("ref");
    MPParams p{2.75, 3.535, 2, 10};
    emit_reference_curves("mp", 0.0, 2.5, 100, p, dir / "mp.csv");
    CHECK(fs::exists(dir / "mp.csv"));
    std::ifstream in(dir / "mp.csv");
    std::string line;
    std::size_t outside_nonzero = 0, lines = 0;
    while (std::getline(in, line)) {
        ++lines;
        const auto comma = line.find(',');
        const double x = std::stod(line.substr(0, comma));
        const double v = std::stod(line.substr(comma + 1));
        if ((x < 0.339601 || x > 1.78204) && v != 0.0) ++outside_nonzero;
    }
    CHECK(lines == 100);
    CHECK(outside_nonzero == 0);

    emit_reference_curves("poisson-pdf", 0.0, 4.0, 10, p, dir / "poisson.csv");
    std::ifstream pin(dir / "poisson.csv");
    std::getline(pin, line);
    CHECK(std::stod(line.substr(line.find(',') + 1)) == doctest::Approx(1.0));

    emit_reference_curves("sigma2-gue", 1.0, 10.0, 10, p, dir / "s2.csv");
    std::ifstream sin(dir / "s2.csv");
    std::getline(sin, line);
    CHECK(std::stod(line.substr(line.find(',') + 1)) == doctest::Approx(0.34603).epsilon(1e-3));

    CHECK_THROWS_AS(emit_reference_curves("nope", 0.0, 1.0, 10, p, dir / "x.csv"),
                    ValidationError);
}
