#pragma once

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <vector>

#include "devgrad/rational.hpp"

namespace devgrad {

/// Dense vector in R^n, generic over the scalar backend.
template <class S>
class Vec {
  public:
    Vec() = default;
    explicit Vec(int n) : v_(static_cast<size_t>(n), scalar_traits<S>::zero()) {}
    Vec(std::initializer_list<S> xs) : v_(xs) {}

    int n() const { return static_cast<int>(v_.size()); }
    const S& operator[](int i) const { return v_[static_cast<size_t>(i)]; }
    S& operator[](int i) { return v_[static_cast<size_t>(i)]; }

    static Vec basis(int n, int i) {
        Vec e(n);
        e[i] = scalar_traits<S>::one();
        return e;
    }

    Vec& operator+=(const Vec& o) {
        check_dim(o);
        for (int i = 0; i < n(); ++i) v_[i] += o[i];
        return *this;
    }
    Vec& operator-=(const Vec& o) {
        check_dim(o);
        for (int i = 0; i < n(); ++i) v_[i] -= o[i];
        return *this;
    }
    Vec& operator*=(const S& c) {
        for (auto& x : v_) x *= c;
        return *this;
    }

    friend Vec operator+(Vec a, const Vec& b) { return a += b; }
    friend Vec operator-(Vec a, const Vec& b) { return a -= b; }
    friend Vec operator*(const S& c, Vec a) { return a *= c; }
    friend Vec operator*(Vec a, const S& c) { return a *= c; }
    friend Vec operator-(Vec a) {
        for (int i = 0; i < a.n(); ++i) a[i] = -a[i];
        return a;
    }

    void check_dim(const Vec& o) const {
        if (o.n() != n()) throw std::invalid_argument("vector dimension mismatch");
    }

  private:
    std::vector<S> v_;
};

template <class S>
S dot(const Vec<S>& a, const Vec<S>& b) {
    a.check_dim(b);
    S s = scalar_traits<S>::zero();
    for (int i = 0; i < a.n(); ++i) s += a[i] * b[i];
    return s;
}

template <class S>
double norm2(const Vec<S>& a) {
    double s = 0;
    for (int i = 0; i < a.n(); ++i) {
        double x = to_double(a[i]);
        s += x * x;
    }
    return std::sqrt(s);
}

/// Dense n-by-n matrix, row-major, generic over the scalar backend.
template <class S>
class Mat {
  public:
    Mat() = default;
    explicit Mat(int n) : n_(n), a_(static_cast<size_t>(n) * n, scalar_traits<S>::zero()) {}

    int n() const { return n_; }
    const S& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * n_ + j]; }
    S& operator()(int i, int j) { return a_[static_cast<size_t>(i) * n_ + j]; }

    static Mat identity(int n) {
        Mat m(n);
        for (int i = 0; i < n; ++i) m(i, i) = scalar_traits<S>::one();
        return m;
    }

    Mat& operator+=(const Mat& o) {
        check_dim(o);
        for (size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
        return *this;
    }
    Mat& operator-=(const Mat& o) {
        check_dim(o);
        for (size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
        return *this;
    }
    Mat& operator*=(const S& c) {
        for (auto& x : a_) x *= c;
        return *this;
    }

    friend Mat operator+(Mat a, const Mat& b) { return a += b; }
    friend Mat operator-(Mat a, const Mat& b) { return a -= b; }
    friend Mat operator*(const S& c, Mat a) { return a *= c; }
    friend Mat operator*(Mat a, const S& c) { return a *= c; }
    friend Mat operator-(Mat a) {
        for (auto& x : a.a_) x = -x;
        return a;
    }

    void check_dim(const Mat& o) const {
        if (o.n() != n_) throw std::invalid_argument("matrix dimension mismatch");
    }

  private:
    int n_ = 0;
    std::vector<S> a_;
};

template <class S>
Vec<S> operator*(const Mat<S>& m, const Vec<S>& v) {
    if (m.n() != v.n()) throw std::invalid_argument("matrix-vector dimension mismatch");
    Vec<S> r(m.n());
    for (int i = 0; i < m.n(); ++i) {
        S s = scalar_traits<S>::zero();
        for (int j = 0; j < m.n(); ++j) s += m(i, j) * v[j];
        r[i] = s;
    }
    return r;
}

template <class S>
Mat<S> operator*(const Mat<S>& a, const Mat<S>& b) {
    a.check_dim(b);
    Mat<S> r(a.n());
    for (int i = 0; i < a.n(); ++i)
        for (int k = 0; k < a.n(); ++k) {
            const S& aik = a(i, k);
            if (scalar_traits<S>::is_zero(aik)) continue;
            for (int j = 0; j < a.n(); ++j) r(i, j) += aik * b(k, j);
        }
    return r;
}

template <class S>
Mat<S> transpose(const Mat<S>& m) {
    Mat<S> t(m.n());
    for (int i = 0; i < m.n(); ++i)
        for (int j = 0; j < m.n(); ++j) t(j, i) = m(i, j);
    return t;
}

template <class S>
S trace(const Mat<S>& m) {
    S s = scalar_traits<S>::zero();
    for (int i = 0; i < m.n(); ++i) s += m(i, i);
    return s;
}

template <class S>
Mat<S> outer(const Vec<S>& a, const Vec<S>& b) {
    a.check_dim(b);
    Mat<S> m(a.n());
    for (int i = 0; i < a.n(); ++i)
        for (int j = 0; j < a.n(); ++j) m(i, j) = a[i] * b[j];
    return m;
}

template <class S>
S frobenius_dot(const Mat<S>& a, const Mat<S>& b) {
    a.check_dim(b);
    S s = scalar_traits<S>::zero();
    for (int i = 0; i < a.n(); ++i)
        for (int j = 0; j < a.n(); ++j) s += a(i, j) * b(i, j);
    return s;
}

template <class S>
double frobenius_norm(const Mat<S>& m) {
    double s = 0;
    for (int i = 0; i < m.n(); ++i)
        for (int j = 0; j < m.n(); ++j) {
            double x = to_double(m(i, j));
            s += x * x;
        }
    return std::sqrt(s);
}

template <class S>
Mat<S> sym_part(const Mat<S>& m) {
    Mat<S> r(m.n());
    for (int i = 0; i < m.n(); ++i)
        for (int j = 0; j < m.n(); ++j) r(i, j) = (m(i, j) + m(j, i)) / 2;
    return r;
}

template <class S>
Mat<S> skew_part(const Mat<S>& m) {
    Mat<S> r(m.n());
    for (int i = 0; i < m.n(); ++i)
        for (int j = 0; j < m.n(); ++j) r(i, j) = (m(i, j) - m(j, i)) / 2;
    return r;
}

// Conversions between backends (rational -> double is the one that matters).
inline Vec<double> to_double_vec(const Vec<Rational>& v) {
    Vec<double> r(v.n());
    for (int i = 0; i < v.n(); ++i) r[i] = to_double(v[i]);
    return r;
}

inline Mat<double> to_double_mat(const Mat<Rational>& m) {
    Mat<double> r(m.n());
    for (int i = 0; i < m.n(); ++i)
        for (int j = 0; j < m.n(); ++j) r(i, j) = to_double(m(i, j));
    return r;
}

}  // namespace devgrad
