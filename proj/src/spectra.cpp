#include "rmts/spectra.hpp"

#include "rmts/errors.hpp"

#include <algorithm>
#include <cmath>

namespace rmts {

Spectrum eigenvalues(const Eigen::MatrixXd& m) {
    if (m.rows() != m.cols()) throw ContractViolation("eigenvalues: matrix not square");
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale)
        throw ContractViolation("eigenvalues: matrix not symmetric within 1e-10");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
    Spectrum s;
    s.eigenvalues.assign(solver.eigenvalues().data(),
                         solver.eigenvalues().data() + solver.eigenvalues().size());
    std::sort(s.eigenvalues.begin(), s.eigenvalues.end());
    return s;
}

Spectrum eigenvalues(const CorrMatrix& m, std::size_t k_removed) {
    Spectrum s = k_removed == 0 ? eigenvalues(m.entries)
                                : eigenvalues(remove_extreme_bands(m.entries, k_removed));
    s.team_id = m.team_id;
    s.block_offset = m.block_offset;
    s.k_removed = k_removed;
    return s;
}

Eigen::MatrixXd remove_extreme_bands(const Eigen::MatrixXd& m, std::size_t k) {
    const auto n = static_cast<std::size_t>(m.rows());
    if (k > n - 1) throw ContractViolation("remove_extreme_bands: k out of range");
    Eigen::MatrixXd out = m;
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            if (static_cast<std::size_t>(std::abs(i - j)) >= n - k) out(i, j) = 0.0;
    return out;
}

StatCurve largest_eigenvalue_vs_k(const CorrEnsemble& ensemble,
                                  const std::vector<std::size_t>& k_values) {
    if (ensemble.matrices.empty())
        throw ContractViolation("largest_eigenvalue_vs_k: empty ensemble");
    StatCurve curve;
    curve.kind = CurveKind::MAXEIG_VS_K;
    for (std::size_t k : k_values) {
        double acc = 0.0;
        for (const auto& m : ensemble.matrices)
            acc += eigenvalues(m, k).eigenvalues.back();
        curve.abscissa.push_back(static_cast<double>(k));
        curve.values.push_back(acc / static_cast<double>(ensemble.matrices.size()));
    }
    return curve;
}

} // namespace rmts
