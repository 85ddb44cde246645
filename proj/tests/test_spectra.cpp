#include "rmts/errors.hpp"
#include "rmts/spectra.hpp"

#include <cmath>
#include <doctest.h>
#include <random>

using namespace rmts;

namespace {

// determinant by plain Gaussian elimination with partial pivoting,
// independent of the solver under test
double det_oracle(Eigen::MatrixXd m) {
    const auto n = m.rows();
    double det = 1.0;
    for (Eigen::Index c = 0; c < n; ++c) {
        Eigen::Index piv = c;
        for (Eigen::Index r = c + 1; r < n; ++r)
            if (std::abs(m(r, c)) > std::abs(m(piv, c))) piv = r;
        if (m(piv, c) == 0.0) return 0.0;
        if (piv != c) {
            m.row(piv).swap(m.row(c));
            det = -det;
        }
        det *= m(c, c);
        for (Eigen::Index r = c + 1; r < n; ++r)
            m.row(r).tail(n - c) -= m(r, c) / m(c, c) * m.row(c).tail(n - c);
    }
    return det;
}

// eigenvalues as sign-change roots of the characteristic polynomial
std::vector<double> charpoly_roots(const Eigen::MatrixXd& m) {
    const auto n = m.rows();
    double radius = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) radius = std::max(radius, m.row(i).cwiseAbs().sum());
    auto p = [&](double lam) {
        return det_oracle(m - lam * Eigen::MatrixXd::Identity(n, n));
    };
    std::vector<double> roots;
    const int grid = 20000;
    double prev_x = -radius - 1.0;
    double prev_v = p(prev_x);
    for (int i = 1; i <= grid; ++i) {
        const double x = -radius - 1.0 + (2.0 * radius + 2.0) * i / grid;
        const double v = p(x);
        if (prev_v == 0.0) roots.push_back(prev_x);
        else if (prev_v * v < 0.0) {
            double lo = prev_x, hi = x, flo = prev_v;
            for (int it = 0; it < 200; ++it) {
                const double mid = 0.5 * (lo + hi);
                const double fm = p(mid);
                if (flo * fm <= 0.0) hi = mid;
                else {
                    lo = mid;
                    flo = fm;
                }
            }
            roots.push_back(0.5 * (lo + hi));
        }
        prev_x = x;
        prev_v = v;
    }
    return roots;
}

Eigen::MatrixXd random_symmetric(Eigen::Index n, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> dist;
    Eigen::MatrixXd a(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) a(i, j) = dist(gen);
    return 0.5 * (a + a.transpose());
}

} // namespace

TEST_CASE("identity matrix has all-one spectrum") {
    const auto s = eigenvalues(Eigen::MatrixXd::Identity(7, 7));
    for (double x : s.eigenvalues) CHECK(x == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("2x2 closed form (1 -/+ r)") {
    Eigen::MatrixXd m(2, 2);
    m << 1.0, 0.3, 0.3, 1.0;
    const auto s = eigenvalues(m);
    CHECK(s.eigenvalues[0] == doctest::Approx(0.7).epsilon(1e-12));
    CHECK(s.eigenvalues[1] == doctest::Approx(1.3).epsilon(1e-12));
}

TEST_CASE("random symmetric 6x6 matches characteristic-polynomial roots") {
    const auto m = random_symmetric(6, 23);
    const auto s = eigenvalues(m);
    const auto roots = charpoly_roots(m);
    REQUIRE(roots.size() == 6);
    for (std::size_t i = 0; i < 6; ++i)
        CHECK(s.eigenvalues[i] == doctest::Approx(roots[i]).epsilon(1e-9));
}

TEST_CASE("eigenvalue sum equals the trace") {
    for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
        const auto m = random_symmetric(20, seed);
        const auto s = eigenvalues(m);
        double sum = 0.0;
        for (double x : s.eigenvalues) sum += x;
        CHECK(sum == doctest::Approx(m.trace()).epsilon(1e-8));
    }
}

TEST_CASE("asymmetric input is rejected") {
    Eigen::MatrixXd m(2, 2);
    m << 1.0, 0.5, 0.2, 1.0;
    CHECK_THROWS_AS((void)eigenvalues(m), ContractViolation);
}

TEST_CASE("band removal: k = 0 identity, k = n-1 diagonal, 3x3 placement") {
    const auto m = random_symmetric(5, 31);
    CHECK(remove_extreme_bands(m, 0) == m);

    const auto diag = remove_extreme_bands(m, 4);
    for (Eigen::Index i = 0; i < 5; ++i)
        for (Eigen::Index j = 0; j < 5; ++j)
            CHECK(diag(i, j) == (i == j ? m(i, i) : 0.0));

    Eigen::MatrixXd ones = Eigen::MatrixXd::Ones(3, 3);
    const auto r = remove_extreme_bands(ones, 1);
    CHECK(r(0, 2) == 0.0);
    CHECK(r(2, 0) == 0.0);
    CHECK(r(0, 1) == 1.0);
    CHECK(r(1, 2) == 1.0);
    CHECK(r(0, 0) == 1.0);
}

TEST_CASE("band removal commutes with transposition and is idempotent") {
    const auto m = random_symmetric(8, 37);
    const auto r = remove_extreme_bands(m, 3);
    CHECK(r == r.transpose().eval());
    CHECK(remove_extreme_bands(r, 3) == r);
    CHECK(remove_extreme_bands(m.transpose(), 3) == remove_extreme_bands(m, 3).transpose().eval());
}

TEST_CASE("k out of range is a contract violation") {
    const auto m = random_symmetric(4, 41);
    CHECK_THROWS_AS((void)remove_extreme_bands(m, 4), ContractViolation);
}

TEST_CASE("Weyl-type bound after band removal") {
    for (std::uint64_t seed : {5ULL, 6ULL, 7ULL}) {
        const auto m = random_symmetric(10, seed);
        const auto r = remove_extreme_bands(m, 4);
        const Eigen::MatrixXd removed = m - r;
        const double before = eigenvalues(m).eigenvalues.back();
        const double after = eigenvalues(r).eigenvalues.back();
        // spectral norm of the removed part via brute force
        const auto rem_eigs = eigenvalues(removed).eigenvalues;
        const double norm = std::max(std::abs(rem_eigs.front()), std::abs(rem_eigs.back()));
        CHECK(after <= before + norm + 1e-12);
    }
}

TEST_CASE("largest_eigenvalue_vs_k on identity ensembles") {
    CorrEnsemble ens;
    ens.spec = WindowSpec::defaults(6);
    for (int i = 0; i < 3; ++i) {
        CorrMatrix m;
        m.n_dim = 6;
        m.entries = Eigen::MatrixXd::Identity(6, 6);
        m.team_id = "T";
        m.block_offset = static_cast<std::size_t>(i) * 6;
        ens.matrices.push_back(m);
    }
    const auto curve = largest_eigenvalue_vs_k(ens, {0, 2, 5});
    for (double v : curve.values) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(curve.abscissa == std::vector<double>{0.0, 2.0, 5.0});
}

TEST_CASE("k = n-1 on a correlation matrix gives exactly 1") {
    Eigen::MatrixXd m(3, 3);
    m << 1.0, 0.4, 0.2, 0.4, 1.0, 0.6, 0.2, 0.6, 1.0;
    CorrEnsemble ens;
    ens.spec = WindowSpec::defaults(3);
    CorrMatrix cm;
    cm.n_dim = 3;
    cm.entries = m;
    ens.matrices.push_back(cm);
    const auto curve = largest_eigenvalue_vs_k(ens, {2});
    CHECK(curve.values[0] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("empty ensemble is an error") {
    CorrEnsemble ens;
    CHECK_THROWS_AS((void)largest_eigenvalue_vs_k(ens, {0}), ContractViolation);
}
