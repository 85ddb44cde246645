#pragma once

#include "rmts/mpmodel.hpp"
#include "rmts/spectra.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace rmts {

/// Fully serializable run configuration; the resolved form is echoed into the
/// output directory.
struct PipelineConfig {
    std::vector<std::filesystem::path> inputs;
    std::size_t n_dim = 90;       // 20 for T20 data
    std::size_t k_bands = 0;      // presets: 5 for Test, 15 for ODI
    std::vector<std::size_t> k_sweep = {0, 5, 10, 15};
    std::string unfold_method = "numerical"; // or "theoretical"
    std::size_t unfold_degree = 5;
    bool fit_mp = true;
    std::optional<double> mp_a; // explicit parameters when fit_mp is false
    std::optional<double> mp_b;
    std::vector<std::string> statistics = {"spacing", "sigma2", "delta", "ks", "maxeig"};
    std::uint64_t seed = 1;
    std::filesystem::path out_dir = "out";

    std::string to_json() const;
    static PipelineConfig from_json(const std::string& text);
    static PipelineConfig load(const std::filesystem::path& file);

    /// Apply the per-dataset presets (test: N=90 k=5, odi: N=90 k=15, t20: N=20).
    void apply_preset(const std::string& name);
};

/// Run the full analysis and write every intermediate artifact plus
/// summary.json under config.out_dir. Returns the summary JSON text.
std::string run_pipeline(const PipelineConfig& config);

/// Two-column CSV of an analytic reference curve. Kinds: mp, finite-n,
/// wigner, poisson-pdf, sigma2-gue, delta-gue, delta-poisson.
void emit_reference_curves(const std::string& kind, double lo, double hi, std::size_t points,
                           const MPParams& params, const std::filesystem::path& out_path);

} // namespace rmts
