#pragma once

#include <stdexcept>
#include <vector>

#include "devgrad/poly.hpp"
#include "devgrad/tensor.hpp"

namespace devgrad {

/// Polynomial vector field: n components over n variables, exact rationals.
class VecPoly {
  public:
    VecPoly() = default;
    explicit VecPoly(int n) : n_(n), c_(static_cast<size_t>(n), Poly(n)) {}

    int n() const { return n_; }
    const Poly& operator[](int i) const { return c_[static_cast<size_t>(i)]; }
    Poly& operator[](int i) { return c_[static_cast<size_t>(i)]; }

    bool is_zero() const {
        for (const auto& p : c_)
            if (!p.is_zero()) return false;
        return true;
    }

    int degree() const {
        int d = 0;
        for (const auto& p : c_) d = std::max(d, p.degree());
        return d;
    }

    VecPoly& operator+=(const VecPoly& o) {
        check(o);
        for (int i = 0; i < n_; ++i) c_[i] += o[i];
        return *this;
    }
    VecPoly& operator-=(const VecPoly& o) {
        check(o);
        for (int i = 0; i < n_; ++i) c_[i] -= o[i];
        return *this;
    }
    friend VecPoly operator+(VecPoly a, const VecPoly& b) { return a += b; }
    friend VecPoly operator-(VecPoly a, const VecPoly& b) { return a -= b; }
    friend VecPoly operator*(const Rational& s, VecPoly a) {
        for (int i = 0; i < a.n_; ++i) a[i] *= s;
        return a;
    }

    template <class S>
    Vec<S> eval(const Vec<S>& x) const {
        Vec<S> v(n_);
        for (int i = 0; i < n_; ++i) v[i] = c_[static_cast<size_t>(i)].eval(x);
        return v;
    }

    friend bool operator==(const VecPoly& a, const VecPoly& b) {
        return a.n_ == b.n_ && a.c_ == b.c_;
    }

    void check(const VecPoly& o) const {
        if (o.n_ != n_) throw std::invalid_argument("field dimension mismatch");
    }

  private:
    int n_ = 0;
    std::vector<Poly> c_;
};

/// Polynomial matrix field (n x n entries over n variables).
class MatPoly {
  public:
    MatPoly() = default;
    explicit MatPoly(int n) : n_(n), e_(static_cast<size_t>(n) * n, Poly(n)) {}

    int n() const { return n_; }
    const Poly& operator()(int i, int j) const { return e_[static_cast<size_t>(i) * n_ + j]; }
    Poly& operator()(int i, int j) { return e_[static_cast<size_t>(i) * n_ + j]; }

    bool is_zero() const {
        for (const auto& p : e_)
            if (!p.is_zero()) return false;
        return true;
    }

    bool is_symmetric() const {
        for (int i = 0; i < n_; ++i)
            for (int j = i + 1; j < n_; ++j)
                if (!((*this)(i, j) == (*this)(j, i))) return false;
        return true;
    }

    bool is_trace_free() const {
        Poly t(n_);
        for (int i = 0; i < n_; ++i) t += (*this)(i, i);
        return t.is_zero();
    }

    MatPoly& operator+=(const MatPoly& o) {
        check(o);
        for (size_t k = 0; k < e_.size(); ++k) e_[k] += o.e_[k];
        return *this;
    }
    MatPoly& operator-=(const MatPoly& o) {
        check(o);
        for (size_t k = 0; k < e_.size(); ++k) e_[k] -= o.e_[k];
        return *this;
    }
    friend MatPoly operator+(MatPoly a, const MatPoly& b) { return a += b; }
    friend MatPoly operator-(MatPoly a, const MatPoly& b) { return a -= b; }

    /// Scales every entry by a scalar polynomial.
    friend MatPoly operator*(const Poly& s, MatPoly a) {
        for (auto& p : a.e_) p = s * p;
        return a;
    }

    template <class S>
    Mat<S> eval(const Vec<S>& x) const {
        Mat<S> m(n_);
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) m(i, j) = (*this)(i, j).eval(x);
        return m;
    }

    friend bool operator==(const MatPoly& a, const MatPoly& b) {
        return a.n_ == b.n_ && a.e_ == b.e_;
    }

    void check(const MatPoly& o) const {
        if (o.n_ != n_) throw std::invalid_argument("matrix field dimension mismatch");
    }

  private:
    int n_ = 0;
    std::vector<Poly> e_;
};

/// Constant matrix promoted to a matrix field, optionally scaled by g.
inline MatPoly constant_field(const Mat<Rational>& m) {
    MatPoly f(m.n());
    for (int i = 0; i < m.n(); ++i)
        for (int j = 0; j < m.n(); ++j) f(i, j) = Poly::constant(m.n(), m(i, j));
    return f;
}

inline Poly divergence(const VecPoly& u) {
    Poly d(u.n());
    for (int i = 0; i < u.n(); ++i) d += u[i].derivative(i);
    return d;
}

/// Symmetric gradient (grad u + grad u')/2.
inline MatPoly op_E(const VecPoly& u) {
    const int n = u.n();
    MatPoly m(n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            Poly p = Rational(1, 2) * (u[i].derivative(j) + u[j].derivative(i));
            m(i, j) = p;
            if (i != j) m(j, i) = p;
        }
    return m;
}

/// Deviatoric symmetric gradient: op_E(u) - (div u / n) Id. Exactly
/// symmetric and trace-free.
inline MatPoly op_Ed(const VecPoly& u) {
    const int n = u.n();
    if (n < 2) throw std::invalid_argument("op_Ed requires n >= 2");
    MatPoly m = op_E(u);
    Poly d = Rational(1, n) * divergence(u);
    for (int i = 0; i < n; ++i) m(i, i) -= d;
    return m;
}

/// Rotation part (grad u - grad u')/2 with Jacobian convention
/// (grad u)_{ij} = d_j u_i.
inline MatPoly op_W(const VecPoly& u) {
    const int n = u.n();
    MatPoly m(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            m(i, j) = Rational(1, 2) * (u[i].derivative(j) - u[j].derivative(i));
    return m;
}

/// Second-order compatibility operator on symmetric matrix fields:
///   (SV M)_{jk} = sum_i d_ik M_ij + d_ij M_ik - d_jk M_ii - d_ii M_jk.
/// Vanishes identically on op_E images.
inline MatPoly op_SV(const MatPoly& m) {
    if (!m.is_symmetric()) throw std::invalid_argument("op_SV needs a symmetric field");
    const int n = m.n();
    MatPoly r(n);
    for (int j = 0; j < n; ++j)
        for (int k = j; k < n; ++k) {
            Poly acc(n);
            for (int i = 0; i < n; ++i) {
                acc += m(i, j).derivative(i).derivative(k);
                acc += m(i, k).derivative(i).derivative(j);
                acc -= m(i, i).derivative(j).derivative(k);
                acc -= m(j, k).derivative(i).derivative(i);
            }
            r(j, k) = acc;
            if (j != k) r(k, j) = acc;
        }
    return r;
}

/// Fourth-order annihilator, index form:
///   (A F)_{jk} = sum_{i,l} [d_iijl F_kl + d_iikl F_lj] - sum_{i,l} d_iill F_jk
///                - (n-2)/(n-1) sum_{i,l} d_iljk F_il
///                - delta_jk/(n-1) sum_{i,l,m} d_iilm F_lm.
/// Vanishes identically on op_Ed images.
inline MatPoly op_A(const MatPoly& f) {
    if (!f.is_symmetric() || !f.is_trace_free())
        throw std::invalid_argument("op_A needs a symmetric trace-free field");
    const int n = f.n();

    // Laplacian and bilaplacian of an entry are reused across (j,k).
    auto laplacian = [n](const Poly& p) {
        Poly r(n);
        for (int i = 0; i < n; ++i) r += p.derivative(i).derivative(i);
        return r;
    };

    // div div F = sum_{l,m} d_lm F_lm and the row divergence.
    std::vector<Poly> divF;
    divF.reserve(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k) {
        Poly d(n);
        for (int l = 0; l < n; ++l) d += f(k, l).derivative(l);
        divF.push_back(d);
    }
    Poly divdiv(n);
    for (int k = 0; k < n; ++k) divdiv += divF[static_cast<size_t>(k)].derivative(k);
    Poly lap_divdiv = laplacian(divdiv);

    MatPoly r(n);
    for (int j = 0; j < n; ++j)
        for (int k = j; k < n; ++k) {
            Poly acc = laplacian(divF[static_cast<size_t>(k)].derivative(j) +
                                 divF[static_cast<size_t>(j)].derivative(k));
            acc -= laplacian(laplacian(f(j, k)));
            acc -= Rational(n - 2, n - 1) * divdiv.derivative(j).derivative(k);
            if (j == k) acc -= Rational(1, n - 1) * lap_divdiv;
            r(j, k) = acc;
            if (j != k) r(k, j) = acc;
        }
    return r;
}

/// Same operator spelled with the raw quadruple sums; kept as a mutual
/// oracle for op_A.
inline MatPoly op_A_indexform(const MatPoly& f) {
    if (!f.is_symmetric() || !f.is_trace_free())
        throw std::invalid_argument("op_A needs a symmetric trace-free field");
    const int n = f.n();
    MatPoly r(n);
    for (int j = 0; j < n; ++j)
        for (int k = j; k < n; ++k) {
            Poly acc(n);
            for (int i = 0; i < n; ++i)
                for (int l = 0; l < n; ++l) {
                    acc += f(k, l).derivative(i).derivative(i).derivative(j).derivative(l);
                    acc += f(l, j).derivative(i).derivative(i).derivative(k).derivative(l);
                    acc -= f(j, k).derivative(i).derivative(i).derivative(l).derivative(l);
                    acc -= Rational(n - 2, n - 1) *
                           f(i, l).derivative(i).derivative(l).derivative(j).derivative(k);
                }
            if (j == k) {
                for (int i = 0; i < n; ++i)
                    for (int l = 0; l < n; ++l)
                        for (int m = 0; m < n; ++m)
                            acc -= Rational(1, n - 1) *
                                   f(l, m).derivative(i).derivative(i).derivative(l).derivative(m);
            }
            r(j, k) = acc;
            if (j != k) r(k, j) = acc;
        }
    return r;
}

/// Deviatoric symbol applied to a polynomial pair: E_d[a] b as a matrix
/// field, with a, b polynomial vector fields.
inline MatPoly symbol_Ed_field(const VecPoly& a, const VecPoly& b) {
    a.check(b);
    const int n = a.n();
    MatPoly m(n);
    Poly ip(n);
    for (int i = 0; i < n; ++i) ip += a[i] * b[i];
    ip = Rational(1, n) * ip;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            Poly p = Rational(1, 2) * (a[i] * b[j] + a[j] * b[i]);
            if (i == j) p -= ip;
            m(i, j) = p;
            if (i != j) m(j, i) = p;
        }
    return m;
}

/// Leibniz defect E_d(phi u) - phi E_d u - E_d[grad phi] u; identically zero.
inline MatPoly leibniz_residual(const Poly& phi, const VecPoly& u) {
    const int n = u.n();
    if (phi.nvars() != n) throw std::invalid_argument("dimension mismatch");
    VecPoly phiu(n);
    for (int i = 0; i < n; ++i) phiu[i] = phi * u[i];
    VecPoly gradphi(n);
    for (int i = 0; i < n; ++i) gradphi[i] = phi.derivative(i);
    MatPoly r = op_Ed(phiu);
    r -= phi * op_Ed(u);
    r -= symbol_Ed_field(gradphi, u);
    return r;
}

/// Adjoint direction: row divergence of a trace-free symmetric field.
inline VecPoly divergence_adjoint(const MatPoly& f) {
    if (!f.is_symmetric() || !f.is_trace_free())
        throw std::invalid_argument("divergence_adjoint needs a symmetric trace-free field");
    const int n = f.n();
    VecPoly d(n);
    for (int i = 0; i < n; ++i) {
        Poly acc(n);
        for (int j = 0; j < n; ++j) acc += f(i, j).derivative(j);
        d[i] = acc;
    }
    return d;
}

/// Residual of the curl-type identity linking W, E_d and the divergence:
/// for every i,j the vector field
///   grad (W u)_{ji} - [d_i((E_d u)e_j) - d_j((E_d u)e_i)
///                      + d_i(div u/n)e_j - d_j(div u/n)e_i]
/// vanishes identically. Returns the worst offending component.
inline bool skew_gradient_identity_holds(const VecPoly& u) {
    const int n = u.n();
    MatPoly w = op_W(u);
    MatPoly ed = op_Ed(u);
    Poly dv = Rational(1, n) * divergence(u);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            for (int k = 0; k < n; ++k) {
                Poly lhs = w(j, i).derivative(k);
                Poly rhs = ed(k, j).derivative(i) - ed(k, i).derivative(j);
                if (k == j) rhs += dv.derivative(i);
                if (k == i) rhs -= dv.derivative(j);
                if (!(lhs - rhs).is_zero()) return false;
            }
        }
    return true;
}

}  // namespace devgrad
