#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "devgrad/vecmat.hpp"

namespace devgrad {

/// Exponent multi-index. Total degree is capped; everything produced here is
/// degree <= 6, the cap just guards against runaway composition.
inline constexpr int kMaxTotalDegree = 16;

using Multi = std::vector<uint8_t>;

inline int multi_degree(const Multi& e) {
    int d = 0;
    for (uint8_t x : e) d += x;
    return d;
}

/// Exact multivariate polynomial over the rationals. Terms are kept in a
/// canonical (lexicographic) order and zero coefficients are never stored.
class Poly {
  public:
    Poly() = default;
    explicit Poly(int nvars) : n_(nvars) {}

    static Poly constant(int nvars, const Rational& c) {
        Poly p(nvars);
        if (c != 0) p.terms_[Multi(static_cast<size_t>(nvars), 0)] = c;
        return p;
    }

    static Poly variable(int nvars, int i) {
        Poly p(nvars);
        Multi e(static_cast<size_t>(nvars), 0);
        e[static_cast<size_t>(i)] = 1;
        p.terms_[e] = 1;
        return p;
    }

    /// Linear form c . x.
    static Poly linear_form(const Vec<Rational>& c) {
        Poly p(c.n());
        for (int i = 0; i < c.n(); ++i)
            if (c[i] != 0) {
                Multi e(static_cast<size_t>(c.n()), 0);
                e[static_cast<size_t>(i)] = 1;
                p.terms_[e] = c[i];
            }
        return p;
    }

    int nvars() const { return n_; }
    bool is_zero() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }
    const std::map<Multi, Rational>& terms() const { return terms_; }

    int degree() const {
        int d = 0;
        for (const auto& [e, c] : terms_) d = std::max(d, multi_degree(e));
        return d;
    }

    void add_term(const Multi& e, const Rational& c) {
        if (c == 0) return;
        if (multi_degree(e) > kMaxTotalDegree) throw std::invalid_argument("degree cap exceeded");
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(e, c);
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    Rational coefficient(const Multi& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    Poly& operator+=(const Poly& o) {
        check(o);
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        check(o);
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }
    Poly& operator*=(const Rational& c) {
        if (c == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [e, v] : terms_) v *= c;
        return *this;
    }

    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Rational& c, Poly a) { return a *= c; }
    friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
    friend Poly operator-(Poly a) { return a *= Rational(-1); }

    friend Poly operator*(const Poly& a, const Poly& b) {
        a.check(b);
        Poly r(a.n_);
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) {
                Multi e(ea);
                for (size_t k = 0; k < e.size(); ++k) e[k] = static_cast<uint8_t>(e[k] + eb[k]);
                r.add_term(e, ca * cb);
            }
        return r;
    }

    friend bool operator==(const Poly& a, const Poly& b) {
        return a.n_ == b.n_ && a.terms_ == b.terms_;
    }

    /// d/dx_i, exact term-wise.
    Poly derivative(int i) const {
        Poly r(n_);
        for (const auto& [e, c] : terms_) {
            uint8_t k = e[static_cast<size_t>(i)];
            if (k == 0) continue;
            Multi d(e);
            d[static_cast<size_t>(i)] = static_cast<uint8_t>(k - 1);
            r.add_term(d, c * k);
        }
        return r;
    }

    /// Antiderivative in x_i with zero constant of integration.
    Poly antiderivative(int i) const {
        Poly r(n_);
        for (const auto& [e, c] : terms_) {
            Multi d(e);
            int k = e[static_cast<size_t>(i)] + 1;
            d[static_cast<size_t>(i)] = static_cast<uint8_t>(k);
            r.add_term(d, c / k);
        }
        return r;
    }

    /// Keeps the homogeneous part of total degree d.
    Poly homogeneous_part(int d) const {
        Poly r(n_);
        for (const auto& [e, c] : terms_)
            if (multi_degree(e) == d) r.add_term(e, c);
        return r;
    }

    template <class S>
    S eval(const Vec<S>& x) const {
        if (x.n() != n_) throw std::invalid_argument("evaluation point dimension mismatch");
        S acc = scalar_traits<S>::zero();
        for (const auto& [e, c] : terms_) {
            S t;
            if constexpr (scalar_traits<S>::exact) {
                t = c;
            } else {
                t = to_double(c);
            }
            for (int i = 0; i < n_; ++i)
                for (uint8_t k = 0; k < e[static_cast<size_t>(i)]; ++k) t *= x[i];
            acc += t;
        }
        return acc;
    }

    /// Substitutes x_i -> sum_j R(i,j) y_j (exact linear change of variables).
    Poly compose_linear(const Mat<Rational>& r) const {
        if (r.n() != n_) throw std::invalid_argument("substitution dimension mismatch");
        std::vector<Poly> forms;
        forms.reserve(static_cast<size_t>(n_));
        for (int i = 0; i < n_; ++i) {
            Vec<Rational> row(n_);
            for (int j = 0; j < n_; ++j) row[j] = r(i, j);
            forms.push_back(linear_form(row));
        }
        Poly out(n_);
        for (const auto& [e, c] : terms_) {
            Poly t = Poly::constant(n_, c);
            for (int i = 0; i < n_; ++i)
                for (uint8_t k = 0; k < e[static_cast<size_t>(i)]; ++k) t = t * forms[static_cast<size_t>(i)];
            out += t;
        }
        return out;
    }

  private:
    void check(const Poly& o) const {
        if (o.n_ != n_) throw std::invalid_argument("polynomial variable count mismatch");
    }

    int n_ = 0;
    std::map<Multi, Rational> terms_;
};

/// One-variable polynomial profile, stored as a Poly in a single variable t.
/// Used for the rigidity profiles psi, h, p_j.
class Poly1 {
  public:
    Poly1() : p_(1) {}
    explicit Poly1(Poly p) : p_(std::move(p)) {
        if (p_.nvars() != 1) throw std::invalid_argument("profile must have one variable");
    }
    /// Coefficients in increasing degree: c0 + c1 t + c2 t^2 + ...
    static Poly1 from_coeffs(const std::vector<Rational>& cs) {
        Poly p(1);
        for (size_t k = 0; k < cs.size(); ++k) p.add_term(Multi{static_cast<uint8_t>(k)}, cs[k]);
        return Poly1(std::move(p));
    }
    const Poly& poly() const { return p_; }
    bool is_zero() const { return p_.is_zero(); }
    Poly1 derivative() const { return Poly1(p_.derivative(0)); }
    Poly1 antiderivative() const { return Poly1(p_.antiderivative(0)); }

    /// Composes with a linear form: returns p(form(x)) as an n-variable Poly.
    Poly compose(const Poly& form) const {
        Poly out(form.nvars());
        for (const auto& [e, c] : p_.terms()) {
            Poly t = Poly::constant(form.nvars(), c);
            for (uint8_t k = 0; k < e[0]; ++k) t = t * form;
            out += t;
        }
        return out;
    }

  private:
    Poly p_;
};

}  // namespace devgrad
