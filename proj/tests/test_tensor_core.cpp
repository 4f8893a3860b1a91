#include <catch2/catch_amalgamated.hpp>

#include "devgrad/random.hpp"
#include "devgrad/sym_eigen.hpp"
#include "devgrad/tensor.hpp"

using namespace devgrad;

TEST_CASE("cartan decomposition of the identity") {
    auto parts = cartan_decompose(Mat<Rational>::identity(3));
    CHECK(parts.dilation == 1);
    CHECK(frobenius_norm(parts.dev_sym.mat()) == 0.0);
    CHECK(frobenius_norm(parts.skew) == 0.0);
}

TEST_CASE("cartan decomposition of e1 (x) e2") {
    Mat<Rational> t(3);
    t(0, 1) = 1;
    auto parts = cartan_decompose(t);
    CHECK(parts.dilation == 0);
    CHECK(parts.dev_sym(0, 1) == Rational(1, 2));
    CHECK(parts.dev_sym(1, 0) == Rational(1, 2));
    CHECK(parts.skew(0, 1) == Rational(1, 2));
    CHECK(parts.skew(1, 0) == Rational(-1, 2));
}

TEST_CASE("cartan parts re-sum exactly and are orthogonal") {
    Rng rng(101);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 4;
        Mat<Rational> t(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) t(i, j) = rng.rational();
        auto parts = cartan_decompose(t);
        Mat<Rational> back = parts.reassemble();
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) CHECK(back(i, j) == t(i, j));
        Mat<Rational> dil = parts.dilation * Mat<Rational>::identity(n);
        CHECK(frobenius_dot(parts.dev_sym.mat(), parts.skew) == 0);
        CHECK(frobenius_dot(parts.dev_sym.mat(), dil) == 0);
        CHECK(frobenius_dot(parts.skew, dil) == 0);
    }
}

TEST_CASE("sym_dyad basics") {
    auto e1 = Vec<Rational>::basis(3, 0);
    auto e2 = Vec<Rational>::basis(3, 1);
    Mat<Rational> m = sym_dyad(e1, e2);
    CHECK(m(0, 1) == Rational(1, 2));
    CHECK(m(1, 0) == Rational(1, 2));
    CHECK(m(0, 0) == 0);
    CHECK(trace(m) == dot(e1, e2));

    Mat<Rational> mm = sym_dyad(e1, e1);
    CHECK(mm(0, 0) == 1);
    CHECK(mm(1, 1) == 0);
}

TEST_CASE("sym_dyad eigenvalues match the closed form") {
    Vec<double> a{1.0, 1.0, 0.0};
    Vec<double> xi{1.0, 0.0, 0.0};
    auto eig = eigen_sym(sym_dyad(a, xi));
    double lo = (1.0 - std::sqrt(2.0)) / 2;
    double hi = (1.0 + std::sqrt(2.0)) / 2;
    CHECK(eig.values[0] == Catch::Approx(lo).margin(1e-14));
    CHECK(eig.values[1] == Catch::Approx(0.0).margin(1e-14));
    CHECK(eig.values[2] == Catch::Approx(hi).margin(1e-14));
}

TEST_CASE("dev_dyad is trace free and bilinear") {
    auto e1 = Vec<Rational>::basis(3, 0);
    auto e2 = Vec<Rational>::basis(3, 1);
    CHECK(dev_dyad(e1, e2).mat()(0, 1) == Rational(1, 2));

    auto d = dev_dyad(e1, e1);
    CHECK(d(0, 0) == Rational(2, 3));
    CHECK(d(1, 1) == Rational(-1, 3));
    CHECK(d(2, 2) == Rational(-1, 3));

    Rng rng(7);
    auto a = rng.rational_vector(4);
    auto b = rng.rational_vector(4);
    Mat<Rational> lhs = dev_dyad(Rational(2) * a, b).mat();
    Mat<Rational> rhs = Rational(2) * dev_dyad(a, b).mat();
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) CHECK(lhs(i, j) == rhs(i, j));
}

TEST_CASE("symmetry and trace validation rejects bad floats") {
    Mat<double> bad(3);
    bad(0, 1) = 1.0;
    bad(1, 0) = 1.0 + 1e-6;
    CHECK_THROWS(SymTraceFree<double>(bad));

    Mat<double> bad_trace = Mat<double>::identity(3);
    CHECK_THROWS(SymTraceFree<double>(bad_trace));
}

TEST_CASE("symbol_SV annihilates symmetric dyads with the frequency") {
    Rng rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 3 + trial % 3;
        auto v = rng.rational_vector(n);
        auto xi = rng.rational_vector(n);
        bool zero = true;
        for (int i = 0; i < n; ++i)
            if (xi[i] != 0) zero = false;
        if (zero) continue;
        Mat<Rational> r = symbol_SV(xi, sym_dyad(v, xi));
        CHECK(frobenius_norm(r) == 0.0);
    }
}

TEST_CASE("symbol_SV hand-evaluated value at xi=e1, M=e2(x)e2") {
    // (M xi) = 0, tr(M) = 1 so the symbol reduces to -xi(x)xi - M.
    auto e1 = Vec<Rational>::basis(3, 0);
    Mat<Rational> m(3);
    m(1, 1) = 1;
    Mat<Rational> r = symbol_SV(e1, m);
    Mat<Rational> expected(3);
    expected(0, 0) = -1;
    expected(1, 1) = -1;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(r(i, j) == expected(i, j));
}

TEST_CASE("symbol_SV degree-2 homogeneity") {
    Rng rng(13);
    auto xi = rng.rational_vector(3);
    xi[0] += 1;  // keep nonzero
    auto v = rng.rational_vector(3);
    Mat<Rational> m = sym_dyad(v, v);
    Mat<Rational> r1 = symbol_SV(Rational(2) * xi, m);
    Mat<Rational> r4 = Rational(4) * symbol_SV(xi, m);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(r1(i, j) == r4(i, j));
}

TEST_CASE("symbol_A annihilates exactly the deviatoric dyads") {
    Rng rng(17);
    for (int n : {3, 4, 5}) {
        for (int trial = 0; trial < 20; ++trial) {
            auto v = rng.rational_vector(n);
            auto xi = rng.rational_vector(n);
            bool zero = true;
            for (int i = 0; i < n; ++i)
                if (xi[i] != 0) zero = false;
            if (zero) continue;
            auto r = symbol_A(xi, dev_dyad(v, xi));
            CHECK(frobenius_norm(r.mat()) == 0.0);
        }
    }
}

TEST_CASE("symbol_A nonzero off the kernel and quartically homogeneous") {
    auto e1 = Vec<Rational>::basis(3, 0);
    auto e2 = Vec<Rational>::basis(3, 1);
    auto e3 = Vec<Rational>::basis(3, 2);
    auto m = dev_dyad(e2, e3);
    auto r = symbol_A(e1, m);
    CHECK(frobenius_norm(r.mat()) > 0.0);
    // (M e1) = 0 and e1' M e1 = 0, so the symbol is -|e1|^4 M = -M.
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(r(i, j) == -m(i, j));

    auto r2 = symbol_A(Rational(3) * e1, m);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(r2(i, j) == Rational(81) * r(i, j));
}

TEST_CASE("symbol_A output is trace free symmetric") {
    Rng rng(23);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 4;
        auto a = rng.rational_vector(n);
        auto b = rng.rational_vector(n);
        auto xi = rng.rational_vector(n);
        xi[0] += 2;
        // A generic trace-free symmetric input, not in the kernel.
        Mat<Rational> m = dev_dyad(a, b).mat() + dev_dyad(b, b).mat();
        auto r = symbol_A(xi, SymTraceFree<Rational>(m));
        CHECK(trace(r.mat()) == 0);
        CHECK(is_symmetric(r.mat()));
    }
}
