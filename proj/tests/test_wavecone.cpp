#include <catch2/catch_amalgamated.hpp>

#include <Eigen/Dense>

#include "devgrad/random.hpp"
#include "devgrad/wavecone.hpp"

using namespace devgrad;

namespace {

// Brute-force oracle: alternating least squares over (a, b) from random
// restarts. dev_dyad is linear in each argument, so each half-step is a
// small least-squares solve.
double brute_force_cone_distance(const Mat<double>& m, Rng& rng, int restarts = 20) {
    const int n = m.n();
    auto solve_a = [&](const Vec<double>& b) {
        std::vector<std::vector<double>> rows;
        std::vector<double> rhs;
        for (int r = 0; r < n; ++r)
            for (int c = r; c < n; ++c) {
                std::vector<double> row(static_cast<size_t>(n));
                for (int i = 0; i < n; ++i)
                    row[static_cast<size_t>(i)] = dev_dyad(Vec<double>::basis(n, i), b)(r, c);
                rows.push_back(std::move(row));
                rhs.push_back(m(r, c));
            }
        auto x = least_squares(rows, rhs);
        Vec<double> a(n);
        for (int i = 0; i < n; ++i) a[i] = x[static_cast<size_t>(i)];
        return a;
    };
    double best = std::numeric_limits<double>::infinity();
    for (int r = 0; r < restarts; ++r) {
        Vec<double> b = rng.unit_vector(n);
        Vec<double> a = rng.unit_vector(n);
        for (int it = 0; it < 60; ++it) {
            a = solve_a(b);
            b = solve_a(a);  // dev_dyad is symmetric in (a, b)
            double nb = norm2(b);
            if (nb > 1e-12) b = (1.0 / nb) * b;
        }
        best = std::min(best, frobenius_norm(dev_dyad(a, b).mat() - m));
    }
    return best;
}

Mat<double> random_trace_free_symmetric(Rng& rng, int n) {
    Mat<double> m(n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            double v = rng.uniform(-1, 1);
            m(i, j) = v;
            m(j, i) = v;
        }
    double tr = to_double(trace(m)) / n;
    for (int i = 0; i < n; ++i) m(i, i) -= tr;
    return m;
}

}  // namespace

TEST_CASE("membership round trips on explicit dyads") {
    auto e1 = Vec<double>::basis(3, 0);
    auto e2 = Vec<double>::basis(3, 1);

    auto r = wave_cone_membership(dev_dyad(e1, e2));
    REQUIRE(r.in_cone());
    CHECK(r.element->residual <= 1e-10);

    auto rp = wave_cone_membership(dev_dyad(e1, e1));
    REQUIRE(rp.in_cone());
    // a and b parallel to e1.
    for (int i = 1; i < 3; ++i) {
        CHECK(std::abs(rp.element->a[i]) < 1e-10);
        CHECK(std::abs(rp.element->b[i]) < 1e-10);
    }
}

TEST_CASE("uniaxial n=3 matrices factor with anti-parallel vectors") {
    // diag(1, 1, -2)/sqrt(6) equals dev_dyad(-sqrt(3/sqrt 6) e3, sqrt(3/sqrt 6) e3)
    // up to normalization; the n = 3 cone covers every trace-free symmetric
    // matrix, and the brute-force oracle confirms the distance is zero.
    Mat<double> m(3);
    double s = 1.0 / std::sqrt(6.0);
    m(0, 0) = s;
    m(1, 1) = s;
    m(2, 2) = -2 * s;
    auto r = wave_cone_membership(SymTraceFree<double>(m));
    REQUIRE(r.in_cone());
    CHECK(r.element->residual <= 1e-10);
    // a and b anti-parallel along e3.
    CHECK(r.element->a[2] * r.element->b[2] < 0);

    Rng rng(91);
    CHECK(brute_force_cone_distance(m, rng) < 1e-6);
}

TEST_CASE("round trip property across dimensions") {
    Rng rng(97);
    for (int n = 3; n <= 6; ++n) {
        for (int trial = 0; trial < 100; ++trial) {
            Vec<double> a = rng.vector(n, -2, 2);
            Vec<double> b = rng.vector(n, -2, 2);
            auto m = dev_dyad(a, b);
            if (frobenius_norm(m.mat()) < 1e-6) continue;
            auto r = wave_cone_membership(m);
            REQUIRE(r.in_cone());
            CHECK(r.element->residual <= 1e-10);
            // Soundness: the recovered frequency annihilates M.
            double nb = norm2(r.element->b);
            if (nb > 1e-12) {
                Vec<double> xi = (1.0 / nb) * r.element->b;
                auto sa = symbol_A(xi, m);
                CHECK(frobenius_norm(sa.mat()) <= 1e-10 * std::max(1.0, frobenius_norm(m.mat())));
            }
        }
    }
}

TEST_CASE("random full-rank matrices are rejected with a certificate for n >= 4") {
    Rng rng(101);
    for (int n : {4, 5, 6}) {
        int rejected = 0;
        for (int trial = 0; trial < 50; ++trial) {
            Mat<double> m = random_trace_free_symmetric(rng, n);
            auto r = wave_cone_membership(SymTraceFree<double>(m));
            if (!r.in_cone()) {
                ++rejected;
                CHECK(r.certificate->reason == "no_eigenvalue_multiplicity");
            }
        }
        // Distinct eigenvalues almost surely: everything should be rejected.
        CHECK(rejected == 50);
    }
}

TEST_CASE("membership rejects non-positive tolerance") {
    auto m = dev_dyad(Vec<double>::basis(3, 0), Vec<double>::basis(3, 1));
    CHECK_THROWS(wave_cone_membership(m, 0.0));
}

TEST_CASE("symbol kernel basis") {
    for (int n : {3, 4, 5}) {
        Vec<double> xi = Vec<double>::basis(n, 0);
        auto basis = symbol_kernel_basis(xi);
        CHECK(static_cast<int>(basis.size()) == n);
        for (const auto& b : basis) {
            auto img = symbol_A(xi, b);
            CHECK(frobenius_norm(img.mat()) <= 1e-12);
        }
        // Orthonormality in the Frobenius inner product.
        for (size_t i = 0; i < basis.size(); ++i)
            for (size_t j = 0; j < basis.size(); ++j) {
                double d = to_double(frobenius_dot(basis[i].mat(), basis[j].mat()));
                CHECK(d == Catch::Approx(i == j ? 1.0 : 0.0).margin(1e-12));
            }
    }

    // dev_dyad(e1, e1) lies in the span for xi = e1.
    Vec<double> e1 = Vec<double>::basis(3, 0);
    auto target = dev_dyad(e1, e1).mat();
    auto basis = symbol_kernel_basis(e1);
    Mat<double> rec(3);
    for (const auto& b : basis) rec += to_double(frobenius_dot(target, b.mat())) * b.mat();
    CHECK(frobenius_norm(rec - target) < 1e-12);
}

TEST_CASE("kernel dimension equals dim(sym0) minus rank of the symbol") {
    Rng rng(103);
    for (int n : {3, 4, 5}) {
        Vec<double> xi = rng.unit_vector(n);
        // Basis of trace-free symmetric matrices.
        std::vector<Mat<double>> basis;
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) {
                if (i == j) {
                    if (i == n - 1) continue;  // dependent once trace is removed
                    Mat<double> m(n);
                    m(i, i) = 1;
                    m(n - 1, n - 1) = -1;
                    basis.push_back(m);
                } else {
                    Mat<double> m(n);
                    m(i, j) = 1;
                    m(j, i) = 1;
                    basis.push_back(m);
                }
            }
        const int dim = n * (n + 1) / 2 - 1;
        REQUIRE(static_cast<int>(basis.size()) == dim);
        Eigen::MatrixXd a(n * n, dim);
        for (int k = 0; k < dim; ++k) {
            auto img = symbol_A(xi, SymTraceFree<double>(basis[static_cast<size_t>(k)]));
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) a(i * n + j, k) = img(i, j);
        }
        Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
        qr.setThreshold(1e-10);
        CHECK(static_cast<int>(qr.rank()) == dim - n);
    }
}

TEST_CASE("closed-form dyad eigenvalues match the dense solver") {
    Vec<double> a{1.0, 1.0, 0.0};
    auto rep = dyad_eigenvalues(a, Vec<double>::basis(3, 0));
    CHECK(!rep.parallel);
    CHECK(rep.closed_form.back() == Catch::Approx((1 + std::sqrt(2.0)) / 2).epsilon(1e-14));
    CHECK(rep.closed_form.front() == Catch::Approx((1 - std::sqrt(2.0)) / 2).epsilon(1e-12));
    CHECK(rep.max_deviation <= 1e-12);

    Vec<double> a2{3.0, 0.0, 0.0};
    auto rep2 = dyad_eigenvalues(a2, Vec<double>::basis(3, 0));
    CHECK(rep2.parallel);
    CHECK(rep2.closed_form.back() == Catch::Approx(3.0));
    CHECK(rep2.max_deviation <= 1e-12);

    Vec<double> a3{0.0, 1.0, 0.0};
    auto rep3 = dyad_eigenvalues(a3, Vec<double>::basis(3, 0));
    CHECK(rep3.closed_form.back() == Catch::Approx(0.5));
    CHECK(rep3.closed_form.front() == Catch::Approx(-0.5));

    Rng rng(107);
    for (int trial = 0; trial < 200; ++trial) {
        int n = 3 + trial % 3;
        Vec<double> av = rng.vector(n, -2, 2);
        Vec<double> xi = rng.unit_vector(n);
        auto r = dyad_eigenvalues(av, xi);
        CHECK(r.max_deviation <= 1e-12);
    }
}

TEST_CASE("no cone element refactors inside a hyperplane of frequencies") {
    // The explicit example: M = dev_dyad(e1, e2) (normalized) with the
    // direction family v ~ e1 + e2.
    auto e1 = Vec<double>::basis(3, 0);
    auto e2 = Vec<double>::basis(3, 1);
    Mat<double> m = dev_dyad(e1, e2).mat();
    m *= 1.0 / frobenius_norm(m);
    Vec<double> v{1.0, 1.0, 0.0};
    Rng rng(109);
    double res = refactorization_residual(m, v, 512, rng);
    CHECK(res > 0.1);

    auto report = jump_cone_triviality_check(50, 3, 113);
    CHECK(report.zero_passes);
    for (const auto& t : report.trials) CHECK(t.rejected);
}
