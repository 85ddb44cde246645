#include "rmts/io.hpp"

#include "rmts/errors.hpp"

#include <cstdio>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

namespace rmts {

using nlohmann::json;

std::string to_string(CurveKind kind) {
    switch (kind) {
    case CurveKind::SPACING_HIST: return "spacing_hist";
    case CurveKind::NUMBER_VARIANCE: return "number_variance";
    case CurveKind::RIGIDITY: return "rigidity";
    case CurveKind::MAXEIG_VS_K: return "maxeig_vs_k";
    }
    return "?";
}

CurveKind curve_kind_from_string(const std::string& s) {
    if (s == "spacing_hist") return CurveKind::SPACING_HIST;
    if (s == "number_variance") return CurveKind::NUMBER_VARIANCE;
    if (s == "rigidity") return CurveKind::RIGIDITY;
    if (s == "maxeig_vs_k") return CurveKind::MAXEIG_VS_K;
    throw ValidationError("unknown curve kind: " + s);
}

std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

namespace {

std::string matrix_file_name(std::size_t index) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "matrix_%04zu.csv", index);
    return buf;
}

std::vector<double> split_doubles(const std::string& line) {
    std::vector<double> out;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) out.push_back(std::stod(field));
    return out;
}

} // namespace

void write_corr_ensemble(const std::filesystem::path& dir, const CorrEnsemble& ensemble) {
    std::filesystem::create_directories(dir);
    json manifest;
    manifest["spec"] = {{"n_dim", ensemble.spec.n_dim},
                        {"block_len", ensemble.spec.block_len},
                        {"sub_len", ensemble.spec.sub_len},
                        {"shift", ensemble.spec.shift}};
    manifest["short_series_warning"] = ensemble.short_series_warning;
    manifest["matrices"] = json::array();
    for (std::size_t i = 0; i < ensemble.matrices.size(); ++i) {
        const auto& m = ensemble.matrices[i];
        manifest["matrices"].push_back({{"file", matrix_file_name(i)},
                                        {"team_id", m.team_id},
                                        {"block_offset", m.block_offset}});
        std::ofstream out(dir / matrix_file_name(i));
        for (Eigen::Index r = 0; r < m.entries.rows(); ++r) {
            for (Eigen::Index c = 0; c < m.entries.cols(); ++c) {
                if (c) out << ',';
                out << format_double(m.entries(r, c));
            }
            out << '\n';
        }
    }
    std::ofstream mout(dir / "manifest.json");
    mout << manifest.dump(2) << '\n';
}

CorrEnsemble read_corr_ensemble(const std::filesystem::path& dir) {
    std::ifstream min(dir / "manifest.json");
    if (!min) throw ParseError("cannot open " + (dir / "manifest.json").string());
    json manifest = json::parse(min);

    CorrEnsemble ens;
    ens.spec.n_dim = manifest["spec"]["n_dim"].get<std::size_t>();
    ens.spec.block_len = manifest["spec"]["block_len"].get<std::size_t>();
    ens.spec.sub_len = manifest["spec"]["sub_len"].get<std::size_t>();
    ens.spec.shift = manifest["spec"]["shift"].get<std::size_t>();
    ens.short_series_warning = manifest["short_series_warning"].get<bool>();

    for (const auto& entry : manifest["matrices"]) {
        CorrMatrix m;
        m.team_id = entry["team_id"].get<std::string>();
        m.block_offset = entry["block_offset"].get<std::size_t>();
        m.n_dim = ens.spec.n_dim;
        m.entries.resize(static_cast<Eigen::Index>(m.n_dim), static_cast<Eigen::Index>(m.n_dim));
        std::ifstream in(dir / entry["file"].get<std::string>());
        if (!in) throw ParseError("cannot open matrix file " + entry["file"].get<std::string>());
        std::string line;
        for (Eigen::Index r = 0; r < m.entries.rows(); ++r) {
            if (!std::getline(in, line))
                throw ParseError("truncated matrix file " + entry["file"].get<std::string>());
            const auto row = split_doubles(line);
            if (row.size() != m.n_dim)
                throw ParseError("bad row width in " + entry["file"].get<std::string>());
            for (Eigen::Index c = 0; c < m.entries.cols(); ++c)
                m.entries(r, c) = row[static_cast<std::size_t>(c)];
        }
        ens.per_team_index[m.team_id].push_back(ens.matrices.size());
        ens.matrices.push_back(std::move(m));
    }
    return ens;
}

void write_spectra_csv(const std::filesystem::path& path, const std::vector<Spectrum>& spectra) {
    std::ofstream out(path);
    for (const auto& s : spectra) {
        out << s.team_id << ',' << s.block_offset << ',' << s.k_removed;
        for (double x : s.eigenvalues) out << ',' << format_double(x);
        out << '\n';
    }
}

std::vector<Spectrum> read_spectra_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path.string());
    std::vector<Spectrum> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string field;
        Spectrum s;
        if (!std::getline(ss, s.team_id, ',')) throw ParseError("bad spectrum row", lineno);
        if (!std::getline(ss, field, ',')) throw ParseError("bad spectrum row", lineno);
        s.block_offset = std::stoull(field);
        if (!std::getline(ss, field, ',')) throw ParseError("bad spectrum row", lineno);
        s.k_removed = std::stoull(field);
        while (std::getline(ss, field, ',')) s.eigenvalues.push_back(std::stod(field));
        out.push_back(std::move(s));
    }
    return out;
}

void write_unfolded_csv(const std::filesystem::path& path,
                        const std::vector<UnfoldedSpectrum>& spectra) {
    std::ofstream out(path);
    for (const auto& u : spectra) {
        out << u.team_id << ','
            << (u.method == UnfoldMethod::THEORETICAL ? "theoretical" : "numerical") << ','
            << u.fit_degree;
        for (double y : u.levels) out << ',' << format_double(y);
        out << '\n';
    }
}

void write_curve_csv(const std::filesystem::path& path, const StatCurve& curve,
                     const std::vector<double>& reference) {
    std::ofstream out(path);
    for (std::size_t i = 0; i < curve.abscissa.size(); ++i)
        out << format_double(curve.abscissa[i]) << ',' << format_double(curve.values[i]) << '\n';

    json sidecar;
    sidecar["kind"] = to_string(curve.kind);
    sidecar["abscissa"] = curve.abscissa;
    sidecar["values"] = curve.values;
    if (!reference.empty()) sidecar["reference"] = reference;
    std::filesystem::path side = path;
    side += ".json";
    std::ofstream sout(side);
    sout << sidecar.dump(2) << '\n';
}

} // namespace rmts
