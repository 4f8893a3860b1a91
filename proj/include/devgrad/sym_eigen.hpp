#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <vector>

#include "devgrad/vecmat.hpp"

namespace devgrad {

struct SymEigen {
    std::vector<double> values;        // ascending
    std::vector<Vec<double>> vectors;  // orthonormal, matching order
};

/// Dense symmetric eigendecomposition (n <= 8 expected here).
inline SymEigen eigen_sym(const Mat<double>& m) {
    const int n = m.n();
    Eigen::MatrixXd a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = m(i, j);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
    if (es.info() != Eigen::Success) throw std::runtime_error("eigendecomposition failed");
    SymEigen out;
    out.values.resize(static_cast<size_t>(n));
    out.vectors.reserve(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k) {
        out.values[static_cast<size_t>(k)] = es.eigenvalues()(k);
        Vec<double> v(n);
        for (int i = 0; i < n; ++i) v[i] = es.eigenvectors()(i, k);
        out.vectors.push_back(v);
    }
    return out;
}

/// Least-squares solve min |Ax - b|_2 for a dense double system.
inline std::vector<double> least_squares(const std::vector<std::vector<double>>& a,
                                         const std::vector<double>& b) {
    const int rows = static_cast<int>(a.size());
    const int cols = rows > 0 ? static_cast<int>(a[0].size()) : 0;
    Eigen::MatrixXd m(rows, cols);
    Eigen::VectorXd rhs(rows);
    for (int i = 0; i < rows; ++i) {
        rhs(i) = b[static_cast<size_t>(i)];
        for (int j = 0; j < cols; ++j) m(i, j) = a[static_cast<size_t>(i)][static_cast<size_t>(j)];
    }
    Eigen::VectorXd x = m.colPivHouseholderQr().solve(rhs);
    std::vector<double> out(static_cast<size_t>(cols));
    for (int j = 0; j < cols; ++j) out[static_cast<size_t>(j)] = x(j);
    return out;
}

}  // namespace devgrad
