#pragma once

#include "rmts/corrmat.hpp"
#include "rmts/spectra.hpp"
#include "rmts/stats.hpp"
#include "rmts/unfold.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace rmts {

std::string to_string(CurveKind kind);
CurveKind curve_kind_from_string(const std::string& s);

/// Directory of per-matrix CSV files plus a JSON manifest; values printed at
/// 17 significant digits so the round trip is bit-exact.
void write_corr_ensemble(const std::filesystem::path& dir, const CorrEnsemble& ensemble);
CorrEnsemble read_corr_ensemble(const std::filesystem::path& dir);

/// One row per matrix: team_id, block_offset, k, eigenvalues ascending.
void write_spectra_csv(const std::filesystem::path& path, const std::vector<Spectrum>& spectra);
std::vector<Spectrum> read_spectra_csv(const std::filesystem::path& path);

/// One row per spectrum: team_id, method, fit_degree, levels.
void write_unfolded_csv(const std::filesystem::path& path,
                        const std::vector<UnfoldedSpectrum>& spectra);

/// Two-column CSV plus a JSON sidecar carrying the kind and, when given,
/// reference-curve values at the same abscissa.
void write_curve_csv(const std::filesystem::path& path, const StatCurve& curve,
                     const std::vector<double>& reference = {});

std::string format_double(double x); // %.17g

} // namespace rmts
