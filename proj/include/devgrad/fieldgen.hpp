#pragma once

#include "devgrad/field.hpp"
#include "devgrad/linsolve.hpp"
#include "devgrad/random.hpp"

namespace devgrad {

/// Random rational polynomial with sparse support of total degree <= degree.
inline Poly random_poly(Rng& rng, int nvars, int degree, int terms) {
    Poly p(nvars);
    for (int t = 0; t < terms; ++t) {
        Multi e(static_cast<size_t>(nvars), 0);
        int budget = static_cast<int>(rng.uniform_int(0, degree));
        for (int b = 0; b < budget; ++b) {
            int i = static_cast<int>(rng.uniform_int(0, nvars - 1));
            e[static_cast<size_t>(i)] = static_cast<uint8_t>(e[static_cast<size_t>(i)] + 1);
        }
        p.add_term(e, rng.rational());
    }
    return p;
}

inline VecPoly random_vecpoly(Rng& rng, int nvars, int degree, int terms_per_component = 6) {
    VecPoly u(nvars);
    for (int i = 0; i < nvars; ++i) u[i] = random_poly(rng, nvars, degree, terms_per_component);
    return u;
}

namespace detail {

inline std::vector<Multi> monomials_up_to(int nvars, int degree) {
    std::vector<Multi> out;
    Multi e(static_cast<size_t>(nvars), 0);
    // Odometer enumeration in lexicographic order.
    auto rec = [&](auto&& self, int pos, int left) -> void {
        if (pos == nvars) {
            out.push_back(e);
            return;
        }
        for (int k = 0; k <= left; ++k) {
            e[static_cast<size_t>(pos)] = static_cast<uint8_t>(k);
            self(self, pos + 1, left - k);
        }
        e[static_cast<size_t>(pos)] = 0;
    };
    rec(rec, 0, degree);
    return out;
}

}  // namespace detail

/// Exact nullity of op_Ed restricted to polynomial fields of degree <= 2,
/// computed by rank of the induced coefficient map. Cross-checks the closed
/// kernel-dimension count.
inline int op_Ed_nullity_on_quadratics(int n) {
    auto dom_mons = detail::monomials_up_to(n, 2);
    auto img_mons = detail::monomials_up_to(n, 1);
    const int dom_dim = n * static_cast<int>(dom_mons.size());
    const int img_rows = (n * (n + 1) / 2) * static_cast<int>(img_mons.size());

    std::vector<std::vector<Rational>> m(static_cast<size_t>(img_rows),
                                         std::vector<Rational>(static_cast<size_t>(dom_dim), Rational(0)));
    int col = 0;
    for (int comp = 0; comp < n; ++comp)
        for (const auto& e : dom_mons) {
            VecPoly u(n);
            Poly p(n);
            p.add_term(e, Rational(1));
            u[comp] = p;
            MatPoly ed = op_Ed(u);
            int row = 0;
            for (int i = 0; i < n; ++i)
                for (int j = i; j < n; ++j)
                    for (const auto& f : img_mons) {
                        m[static_cast<size_t>(row)][static_cast<size_t>(col)] = ed(i, j).coefficient(f);
                        ++row;
                    }
            ++col;
        }
    int rank = rational_rank(m, img_rows, dom_dim);
    return dom_dim - rank;
}

}  // namespace devgrad
