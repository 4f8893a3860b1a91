#pragma once

#include <stdexcept>

#include "devgrad/vecmat.hpp"

namespace devgrad {

/// Relative tolerance used to validate float-backed symmetric trace-free
/// matrices. Violations are rejected, never projected away.
inline constexpr double kSymTraceTol = 1e-12;

template <class S>
bool is_symmetric(const Mat<S>& m, double rel_tol = kSymTraceTol) {
    if constexpr (scalar_traits<S>::exact) {
        for (int i = 0; i < m.n(); ++i)
            for (int j = i + 1; j < m.n(); ++j)
                if (m(i, j) != m(j, i)) return false;
        return true;
    } else {
        double scale = frobenius_norm(m);
        double tol = rel_tol * (scale > 0 ? scale : 1.0);
        for (int i = 0; i < m.n(); ++i)
            for (int j = i + 1; j < m.n(); ++j)
                if (std::abs(to_double(m(i, j) - m(j, i))) > tol) return false;
        return true;
    }
}

template <class S>
bool is_trace_free(const Mat<S>& m, double rel_tol = kSymTraceTol) {
    if constexpr (scalar_traits<S>::exact) {
        return trace(m) == 0;
    } else {
        double scale = frobenius_norm(m);
        double tol = rel_tol * (scale > 0 ? scale : 1.0);
        return std::abs(to_double(trace(m))) <= tol;
    }
}

/// Symmetric trace-free matrix. The constructor validates; exact backends
/// must satisfy the constraints exactly, floats within 1e-12 relative.
template <class S>
class SymTraceFree {
  public:
    struct clean_construction_t {};

    explicit SymTraceFree(Mat<S> m) : m_(std::move(m)) {
        if (!is_symmetric(m_)) throw std::invalid_argument("matrix is not symmetric");
        if (!is_trace_free(m_)) throw std::invalid_argument("matrix is not trace-free");
    }

    /// For values assembled by the library from analytically symmetric
    /// trace-free expressions: roundoff in the constraints is removed
    /// instead of rejected. Exact backends are unchanged.
    SymTraceFree(Mat<S> m, clean_construction_t) : m_(std::move(m)) {
        if constexpr (!scalar_traits<S>::exact) {
            m_ = sym_part(m_);
            S t = trace(m_) / m_.n();
            for (int i = 0; i < m_.n(); ++i) m_(i, i) -= t;
        }
        if (!is_symmetric(m_) || !is_trace_free(m_))
            throw std::invalid_argument("constructed matrix violates constraints");
    }

    const Mat<S>& mat() const { return m_; }
    int n() const { return m_.n(); }
    const S& operator()(int i, int j) const { return m_(i, j); }

  private:
    Mat<S> m_;
};

template <class S>
struct CartanParts {
    SymTraceFree<S> dev_sym;
    Mat<S> skew;
    S dilation;  // tr(T)/n

    Mat<S> reassemble() const {
        Mat<S> t = dev_sym.mat() + skew;
        for (int i = 0; i < t.n(); ++i) t(i, i) += dilation;
        return t;
    }
};

/// Splits T into its pairwise Frobenius-orthogonal shear, rotation and
/// volumetric parts.
template <class S>
CartanParts<S> cartan_decompose(const Mat<S>& t) {
    const int n = t.n();
    if (n < 1) throw std::invalid_argument("empty matrix");
    S dil = trace(t) / n;
    Mat<S> dev = sym_part(t);
    for (int i = 0; i < n; ++i) dev(i, i) -= dil;
    return CartanParts<S>{SymTraceFree<S>(std::move(dev)), skew_part(t), dil};
}

/// a (.) b = (a (x) b + b (x) a) / 2.
template <class S>
Mat<S> sym_dyad(const Vec<S>& a, const Vec<S>& b) {
    a.check_dim(b);
    Mat<S> m(a.n());
    for (int i = 0; i < a.n(); ++i)
        for (int j = 0; j < a.n(); ++j) m(i, j) = (a[i] * b[j] + a[j] * b[i]) / 2;
    return m;
}

/// a (.) b - (a.b)/n Id, the trace-free dyad. Spans the wave cone.
template <class S>
SymTraceFree<S> dev_dyad(const Vec<S>& a, const Vec<S>& b) {
    a.check_dim(b);
    const int n = a.n();
    if (n < 2) throw std::invalid_argument("dev_dyad requires n >= 2");
    Mat<S> m = sym_dyad(a, b);
    S c = dot(a, b) / n;
    for (int i = 0; i < n; ++i) m(i, i) -= c;
    return SymTraceFree<S>(std::move(m), typename SymTraceFree<S>::clean_construction_t{});
}

/// Second-order compatibility symbol on symmetric matrices:
///   (M xi)(x) xi + xi (x)(M xi) - tr(M) xi(x)xi - |xi|^2 M.
/// Annihilates sym_dyad(v, xi) for every v.
template <class S>
Mat<S> symbol_SV(const Vec<S>& xi, const Mat<S>& m) {
    if (xi.n() != m.n()) throw std::invalid_argument("dimension mismatch");
    bool xi_zero = true;
    for (int i = 0; i < xi.n(); ++i)
        if (!scalar_traits<S>::is_zero(xi[i])) xi_zero = false;
    if (xi_zero) throw std::invalid_argument("zero frequency");
    if (!is_symmetric(m)) throw std::invalid_argument("matrix is not symmetric");

    Vec<S> mxi = m * xi;
    S xi2 = dot(xi, xi);
    S tr = trace(m);
    Mat<S> r = outer(mxi, xi) + outer(xi, mxi) - tr * outer(xi, xi) - xi2 * m;
    return r;
}

/// Fourth-order annihilator symbol on trace-free symmetric matrices:
///   |xi|^2 (M xi (x) xi + xi (x) M xi) - |xi|^4 M
///   - (xi' M xi)/(n-1) [(n-2) xi(x)xi + |xi|^2 Id].
/// Kernel = { dev_dyad(v, xi) : v in R^n }.
template <class S>
SymTraceFree<S> symbol_A(const Vec<S>& xi, const SymTraceFree<S>& m) {
    const int n = m.n();
    if (xi.n() != n) throw std::invalid_argument("dimension mismatch");
    bool xi_zero = true;
    for (int i = 0; i < n; ++i)
        if (!scalar_traits<S>::is_zero(xi[i])) xi_zero = false;
    if (xi_zero) throw std::invalid_argument("zero frequency");

    Vec<S> mxi = m.mat() * xi;
    S xi2 = dot(xi, xi);
    S quad = dot(xi, mxi);  // xi' M xi
    Mat<S> r = xi2 * (outer(mxi, xi) + outer(xi, mxi)) - (xi2 * xi2) * m.mat();
    Mat<S> corr = S(n - 2) * outer(xi, xi) + xi2 * Mat<S>::identity(n);
    r -= (quad / (n - 1)) * corr;
    return SymTraceFree<S>(std::move(r), typename SymTraceFree<S>::clean_construction_t{});
}

}  // namespace devgrad
