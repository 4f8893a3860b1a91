#pragma once

#include <stdexcept>
#include <vector>

#include "devgrad/field.hpp"
#include "devgrad/linsolve.hpp"
#include "devgrad/sym_eigen.hpp"
#include "devgrad/vecmat.hpp"

namespace devgrad {

/// Parameter count of Ker(E_d): skew block + dilation + conformal vector +
/// translation. Rejected below n = 3, where the operator loses C-ellipticity
/// and the kernel is no longer finite-dimensional in the useful sense.
inline int kernel_dimension(int n) {
    if (n < 3) throw std::invalid_argument("kernel dimension requires n >= 3");
    return n * (n - 1) / 2 + 2 * n + 1;
}

/// Element of Ker(E_d):
///   L(y) = (A + gamma Id) y + (s.y) y - s |y|^2 / 2 + b,  A skew.
template <class S>
struct KillingField {
    Mat<S> A;
    S gamma;
    Vec<S> s;
    Vec<S> b;

    int n() const { return s.n(); }

    static KillingField zero(int n) {
        return KillingField{Mat<S>(n), scalar_traits<S>::zero(), Vec<S>(n), Vec<S>(n)};
    }

    void validate() const {
        if (A.n() != s.n() || b.n() != s.n()) throw std::invalid_argument("dimension mismatch");
        for (int i = 0; i < A.n(); ++i)
            for (int j = 0; j < A.n(); ++j)
                if (!scalar_traits<S>::is_zero(A(i, j) + A(j, i)))
                    throw std::invalid_argument("A must be antisymmetric");
    }

    Vec<S> eval(const Vec<S>& y) const {
        if (y.n() != n()) throw std::invalid_argument("dimension mismatch");
        Vec<S> r = A * y;
        S sy = dot(s, y);
        S y2 = dot(y, y);
        for (int i = 0; i < n(); ++i) r[i] += gamma * y[i] + sy * y[i] - s[i] * y2 / 2 + b[i];
        return r;
    }

    KillingField& operator+=(const KillingField& o) {
        A += o.A;
        gamma += o.gamma;
        s += o.s;
        b += o.b;
        return *this;
    }
    friend KillingField operator+(KillingField a, const KillingField& b) { return a += b; }
    friend KillingField operator-(KillingField a, const KillingField& o) {
        a.A -= o.A;
        a.gamma -= o.gamma;
        a.s -= o.s;
        a.b -= o.b;
        return a;
    }

    /// Flat parameter vector: A upper triangle row-major, gamma, s, b.
    std::vector<S> parameters() const {
        std::vector<S> p;
        for (int i = 0; i < n(); ++i)
            for (int j = i + 1; j < n(); ++j) p.push_back(A(i, j));
        p.push_back(gamma);
        for (int i = 0; i < n(); ++i) p.push_back(s[i]);
        for (int i = 0; i < n(); ++i) p.push_back(b[i]);
        return p;
    }

    static KillingField from_parameters(int n, const std::vector<S>& p) {
        if (static_cast<int>(p.size()) != kernel_dimension(n))
            throw std::invalid_argument("parameter count mismatch");
        KillingField L = zero(n);
        size_t k = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                L.A(i, j) = p[k];
                L.A(j, i) = -p[k];
                ++k;
            }
        L.gamma = p[k++];
        for (int i = 0; i < n; ++i) L.s[i] = p[k++];
        for (int i = 0; i < n; ++i) L.b[i] = p[k++];
        return L;
    }

    /// Re-expands L(y) about a new center c, i.e. returns L' with
    /// L'(y) = (A + gamma Id)(y-c) + (s.(y-c))(y-c) - s|y-c|^2/2 + b as a
    /// field of y about the origin.
    KillingField recentered(const Vec<S>& c) const {
        KillingField out = *this;
        out.A = A + outer(s, c) - outer(c, s);
        out.gamma = gamma - dot(s, c);
        Vec<S> bc = b - (A * c);
        S c2 = dot(c, c);
        S sc = dot(s, c);
        for (int i = 0; i < n(); ++i) bc[i] += -gamma * c[i] + sc * c[i] - s[i] * c2 / 2;
        out.b = bc;
        return out;
    }
};

using KillingR = KillingField<Rational>;
using KillingD = KillingField<double>;

inline KillingD to_double_field(const KillingR& L) {
    KillingD d = KillingD::zero(L.n());
    d.A = to_double_mat(L.A);
    d.gamma = to_double(L.gamma);
    d.s = to_double_vec(L.s);
    d.b = to_double_vec(L.b);
    return d;
}

/// Degree-2 polynomial form of a kernel element; op_Ed of it is exactly zero.
inline VecPoly to_polyfield(const KillingR& L) {
    const int n = L.n();
    VecPoly u(n);
    Poly y2(n);
    for (int j = 0; j < n; ++j) y2 += Poly::variable(n, j) * Poly::variable(n, j);
    Poly sy(n);
    for (int j = 0; j < n; ++j) sy += L.s[j] * Poly::variable(n, j);
    for (int i = 0; i < n; ++i) {
        Poly p = Poly::constant(n, L.b[i]);
        for (int j = 0; j < n; ++j) p += L.A(i, j) * Poly::variable(n, j);
        p += L.gamma * Poly::variable(n, i);
        p += sy * Poly::variable(n, i);
        p -= Rational(1, 2) * L.s[i] * y2;
        u[i] = p;
    }
    return u;
}

namespace detail {

/// Row of the linear evaluation map at point y: each output component as a
/// linear functional of the flat parameters.
template <class S>
std::vector<std::vector<S>> killing_design_rows(const Vec<S>& y) {
    const int n = y.n();
    const int dim = kernel_dimension(n);
    std::vector<std::vector<S>> rows(static_cast<size_t>(n),
                                     std::vector<S>(static_cast<size_t>(dim), scalar_traits<S>::zero()));
    int k = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            rows[static_cast<size_t>(i)][static_cast<size_t>(k)] = y[j];
            rows[static_cast<size_t>(j)][static_cast<size_t>(k)] = -y[i];
            ++k;
        }
    for (int i = 0; i < n; ++i) rows[static_cast<size_t>(i)][static_cast<size_t>(k)] = y[i];
    ++k;
    S y2 = dot(y, y);
    for (int j = 0; j < n; ++j, ++k)
        for (int i = 0; i < n; ++i) {
            S v = y[j] * y[i];
            if (i == j) v -= y2 / 2;
            rows[static_cast<size_t>(i)][static_cast<size_t>(k)] = v;
        }
    for (int i = 0; i < n; ++i, ++k) rows[static_cast<size_t>(i)][static_cast<size_t>(k)] = scalar_traits<S>::one();
    return rows;
}

}  // namespace detail

template <class S>
struct KillingFit {
    KillingField<S> field;
    double residual;  // root mean square evaluation residual
};

/// Least-squares inversion of the kernel parametrization from point samples.
/// Exact normal equations on the rational backend, QR on doubles.
template <class S>
KillingFit<S> fit_killing(const std::vector<std::pair<Vec<S>, Vec<S>>>& samples) {
    if (samples.empty()) throw std::invalid_argument("no samples");
    const int n = samples.front().first.n();
    const int dim = kernel_dimension(n);
    if (static_cast<int>(samples.size()) * n < dim)
        throw std::invalid_argument("not enough samples for the kernel dimension");

    std::vector<std::vector<S>> rows;
    std::vector<S> rhs;
    rows.reserve(samples.size() * static_cast<size_t>(n));
    for (const auto& [y, v] : samples) {
        auto r = detail::killing_design_rows(y);
        for (int i = 0; i < n; ++i) {
            rows.push_back(std::move(r[static_cast<size_t>(i)]));
            rhs.push_back(v[i]);
        }
    }

    std::vector<S> x;
    if constexpr (scalar_traits<S>::exact) {
        // Normal equations A'A x = A'b, solved exactly.
        const int m = static_cast<int>(rows.size());
        std::vector<std::vector<Rational>> ata(static_cast<size_t>(dim),
                                               std::vector<Rational>(static_cast<size_t>(dim), Rational(0)));
        std::vector<Rational> atb(static_cast<size_t>(dim), Rational(0));
        for (int r = 0; r < m; ++r) {
            for (int i = 0; i < dim; ++i) {
                const Rational& ri = rows[static_cast<size_t>(r)][static_cast<size_t>(i)];
                if (ri == 0) continue;
                atb[static_cast<size_t>(i)] += ri * rhs[static_cast<size_t>(r)];
                for (int j = i; j < dim; ++j)
                    ata[static_cast<size_t>(i)][static_cast<size_t>(j)] +=
                        ri * rows[static_cast<size_t>(r)][static_cast<size_t>(j)];
            }
        }
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < i; ++j)
                ata[static_cast<size_t>(i)][static_cast<size_t>(j)] = ata[static_cast<size_t>(j)][static_cast<size_t>(i)];
        RationalSolver solver(ata, dim, dim);
        if (solver.rank() < dim) throw std::invalid_argument("rank-deficient sample set");
        auto sol = solver.solve(atb);
        x.assign(sol->begin(), sol->end());
    } else {
        x = least_squares(rows, rhs);
    }

    KillingField<S> L = KillingField<S>::from_parameters(n, x);
    double ss = 0;
    size_t cnt = 0;
    for (const auto& [y, v] : samples) {
        Vec<S> d = L.eval(y) - v;
        for (int i = 0; i < n; ++i) {
            double e = to_double(d[i]);
            ss += e * e;
            ++cnt;
        }
    }
    return KillingFit<S>{std::move(L), std::sqrt(ss / static_cast<double>(cnt))};
}

}  // namespace devgrad
