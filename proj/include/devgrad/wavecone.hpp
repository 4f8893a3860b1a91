#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "devgrad/random.hpp"
#include "devgrad/sym_eigen.hpp"
#include "devgrad/tensor.hpp"

namespace devgrad {

/// Factorization of a wave-cone element: matrix == dev_dyad(a, b), with b
/// normalized to unit length when nonzero.
struct WaveConeElement {
    Vec<double> a;
    Vec<double> b;
    Mat<double> matrix;
    double residual = 0;  // |dev_dyad(a,b) - M|_F relative to |M|_F
};

/// Machine-checkable reason for rejecting a membership query.
struct NotInCone {
    std::string reason;            // "no_eigenvalue_multiplicity", "rank_exceeds_two", "trace_inconsistent"
    double best_residual;          // best reconstruction residual over all candidates
    int candidates_tried = 0;
    double cluster_tolerance = 0;
};

struct MembershipResult {
    std::optional<WaveConeElement> element;
    std::optional<NotInCone> certificate;
    bool in_cone() const { return element.has_value(); }
};

namespace detail {

struct Cluster {
    double value;
    int lo, hi;  // index range [lo, hi) into the sorted eigenvalues
    int count() const { return hi - lo; }
};

inline std::vector<Cluster> cluster_eigenvalues(const std::vector<double>& ev, double tol) {
    std::vector<Cluster> cs;
    size_t i = 0;
    while (i < ev.size()) {
        size_t j = i + 1;
        while (j < ev.size() && std::abs(ev[j] - ev[i]) <= tol) ++j;
        double mean = 0;
        for (size_t k = i; k < j; ++k) mean += ev[k];
        mean /= static_cast<double>(j - i);
        cs.push_back(Cluster{mean, static_cast<int>(i), static_cast<int>(j)});
        i = j;
    }
    return cs;
}

}  // namespace detail

/// Decides membership in the wave cone { dev_dyad(a, b) } and produces the
/// factorization. The shifted matrix M - lambda* Id must have rank <= 2 for
/// an eigenvalue lambda* of multiplicity >= n-2; the two surviving modes are
/// recombined into (a, b) and accepted on trace consistency plus exact
/// reconstruction.
inline MembershipResult wave_cone_membership(const SymTraceFree<double>& m, double tol = 1e-10) {
    if (tol <= 0) throw std::invalid_argument("tolerance must be positive");
    const int n = m.n();
    const double scale = frobenius_norm(m.mat());

    MembershipResult out;
    if (scale == 0) {
        WaveConeElement e{Vec<double>(n), Vec<double>(n), Mat<double>(n), 0.0};
        out.element = e;
        return out;
    }

    SymEigen eig = eigen_sym(m.mat());
    const double cluster_tol = 1e-9 * scale;
    auto clusters = detail::cluster_eigenvalues(eig.values, cluster_tol);

    // Candidate lambda*: clusters with multiplicity >= n-2, ordered by size
    // (largest first), ties by ascending eigenvalue. With n = 3 every
    // eigenvalue qualifies, so the ordering is what makes the result
    // deterministic.
    std::vector<detail::Cluster> cands;
    for (const auto& c : clusters)
        if (c.count() >= n - 2) cands.push_back(c);
    std::stable_sort(cands.begin(), cands.end(), [](const auto& x, const auto& y) {
        if (x.count() != y.count()) return x.count() > y.count();
        return x.value < y.value;
    });

    if (cands.empty()) {
        out.certificate = NotInCone{"no_eigenvalue_multiplicity", 1.0, 0, cluster_tol};
        return out;
    }

    double best_res = std::numeric_limits<double>::infinity();
    std::string fail_reason = "trace_inconsistent";
    int tried = 0;

    for (const auto& cand : cands) {
        ++tried;
        const double t = -cand.value;
        // Shifted eigenvalues; the candidate cluster supplies the zero modes.
        // Among the remaining ones pick mu1 >= 0 >= mu2; more than two
        // non-negligible leftovers means rank(M + t Id) > 2.
        std::vector<int> rest;
        for (int k = 0; k < n; ++k)
            if (k < cand.lo || k >= cand.hi) rest.push_back(k);
        if (static_cast<int>(rest.size()) > 2) {
            // Only possible when the cluster covers exactly n-2 of more than
            // n eigenvalues; cannot happen, but keep the guard.
            continue;
        }
        double mu1 = 0, mu2 = 0;
        Vec<double> v1(n), v2(n);
        bool have_pos = false, have_neg = false, ok = true;
        for (int idx : rest) {
            double mu = eig.values[static_cast<size_t>(idx)] + t;
            if (mu >= 0) {
                if (have_pos) ok = false;  // two positive leftovers: not a dyad signature
                mu1 = mu;
                v1 = eig.vectors[static_cast<size_t>(idx)];
                have_pos = true;
            } else {
                if (have_neg) ok = false;
                mu2 = mu;
                v2 = eig.vectors[static_cast<size_t>(idx)];
                have_neg = true;
            }
        }
        if (!ok) {
            fail_reason = "dyad_signature";
            continue;
        }
        // If the cluster has spare members (n = 3 with multiplicity 2, say)
        // a missing positive/negative mode is a legitimate zero.
        Vec<double> a(n), b(n);
        double r1 = std::sqrt(std::max(mu1, 0.0));
        double r2 = std::sqrt(std::max(-mu2, 0.0));
        for (int i = 0; i < n; ++i) {
            a[i] = r1 * v1[i] + r2 * v2[i];
            b[i] = r1 * v1[i] - r2 * v2[i];
        }
        // Trace consistency: a.b must equal n t.
        if (std::abs(dot(a, b) - n * t) > tol * std::max(1.0, scale) * n) {
            fail_reason = "trace_inconsistent";
            continue;
        }
        // Normalize so |b| = 1 when possible.
        double nb = norm2(b);
        if (nb > tol) {
            for (int i = 0; i < n; ++i) {
                a[i] *= nb;
                b[i] /= nb;
            }
        } else {
            double na = norm2(a);
            if (na > tol) {
                // b ~ 0 with a nonzero cannot reproduce a nonzero M.
                fail_reason = "trace_inconsistent";
                continue;
            }
        }
        Mat<double> rec = dev_dyad(a, b).mat();
        double res = frobenius_norm(rec - m.mat()) / scale;
        best_res = std::min(best_res, res);
        if (res <= tol) {
            out.element = WaveConeElement{a, b, rec, res};
            return out;
        }
    }

    out.certificate = NotInCone{fail_reason, best_res, tried, cluster_tol};
    return out;
}

/// Orthonormal basis (Frobenius) of Ker(symbol_A(xi, .)) = { dev_dyad(v, xi) }.
inline std::vector<SymTraceFree<double>> symbol_kernel_basis(const Vec<double>& xi) {
    const int n = xi.n();
    if (norm2(xi) < 1e-14) throw std::invalid_argument("zero frequency");
    std::vector<Mat<double>> raw;
    for (int i = 0; i < n; ++i) raw.push_back(dev_dyad(Vec<double>::basis(n, i), xi).mat());
    // Gram-Schmidt; the family is linearly independent for n >= 3.
    std::vector<Mat<double>> ortho;
    for (auto& m : raw) {
        Mat<double> v = m;
        for (const auto& u : ortho) v -= frobenius_dot(v, u) * u;
        double nv = frobenius_norm(v);
        if (nv < 1e-12) throw std::runtime_error("kernel basis degenerated");
        v *= 1.0 / nv;
        ortho.push_back(v);
    }
    std::vector<SymTraceFree<double>> out;
    out.reserve(ortho.size());
    for (auto& m : ortho) out.emplace_back(std::move(m));
    return out;
}

/// Closed-form spectrum of sym_dyad(a, xi) for unit xi, cross-checked by the
/// caller against the dense solver. Non-parallel case: ((a.xi) +- |a|)/2 plus
/// n-2 zeros; parallel case: a.xi plus n-1 zeros.
struct DyadEigenReport {
    bool parallel;
    std::vector<double> closed_form;  // ascending, with multiplicity
    std::vector<double> dense;        // ascending, from the eigensolver
    double max_deviation;
};

inline DyadEigenReport dyad_eigenvalues(const Vec<double>& a, const Vec<double>& xi) {
    const int n = a.n();
    if (norm2(a) == 0) throw std::invalid_argument("zero vector");
    if (std::abs(norm2(xi) - 1.0) > 1e-12) throw std::invalid_argument("frequency must be unit");

    double axi = dot(a, xi);
    double na = norm2(a);
    // Parallelism test: |a - (a.xi) xi| against |a|.
    Vec<double> perp = a - axi * xi;
    bool parallel = norm2(perp) <= 1e-12 * na;

    std::vector<double> cf(static_cast<size_t>(n), 0.0);
    if (parallel) {
        cf[static_cast<size_t>(n - 1)] = axi;
    } else {
        cf[0] = (axi - na) / 2;
        cf[static_cast<size_t>(n - 1)] = (axi + na) / 2;
    }
    std::sort(cf.begin(), cf.end());

    SymEigen eig = eigen_sym(sym_dyad(a, xi));
    double dev = 0;
    for (int k = 0; k < n; ++k)
        dev = std::max(dev, std::abs(cf[static_cast<size_t>(k)] - eig.values[static_cast<size_t>(k)]));
    return DyadEigenReport{parallel, cf, eig.values, dev};
}

/// Best refactorization residual of M over frequencies xi restricted to the
/// hyperplane v-perp: min over unit xi in v-perp, a in R^n of
/// |dev_dyad(a, xi) - M|_F. For fixed xi the minimization over a is linear.
inline double refactorization_residual(const Mat<double>& m, const Vec<double>& v, int xi_samples,
                                       Rng& rng) {
    const int n = m.n();
    // Orthonormal basis of v-perp.
    std::vector<Vec<double>> basis;
    for (int i = 0; i < n && static_cast<int>(basis.size()) < n - 1; ++i) {
        Vec<double> w = Vec<double>::basis(n, i);
        w -= (dot(w, v) / dot(v, v)) * v;
        for (const auto& u : basis) w -= dot(w, u) * u;
        double nw = norm2(w);
        if (nw > 1e-8) basis.push_back((1.0 / nw) * w);
    }

    auto residual_at = [&](const Vec<double>& xi) {
        // Least squares in a: columns are dev_dyad(e_i, xi).
        std::vector<std::vector<double>> rows;
        std::vector<double> rhs;
        for (int r = 0; r < n; ++r)
            for (int c = r; c < n; ++c) {
                std::vector<double> row(static_cast<size_t>(n));
                for (int i = 0; i < n; ++i) row[static_cast<size_t>(i)] = dev_dyad(Vec<double>::basis(n, i), xi)(r, c);
                rows.push_back(std::move(row));
                rhs.push_back(m(r, c));
            }
        auto a = least_squares(rows, rhs);
        Vec<double> av(n);
        for (int i = 0; i < n; ++i) av[i] = a[static_cast<size_t>(i)];
        return frobenius_norm(dev_dyad(av, xi).mat() - m);
    };

    double best = std::numeric_limits<double>::infinity();
    if (static_cast<int>(basis.size()) == 1) {
        best = std::min(best, residual_at(basis[0]));
    } else if (static_cast<int>(basis.size()) == 2) {
        for (int k = 0; k < xi_samples; ++k) {
            double th = M_PI * static_cast<double>(k) / xi_samples;  // antipodal symmetry
            Vec<double> xi = std::cos(th) * basis[0] + std::sin(th) * basis[1];
            best = std::min(best, residual_at(xi));
        }
    } else {
        for (int k = 0; k < xi_samples; ++k) {
            Vec<double> c = rng.unit_vector(static_cast<int>(basis.size()));
            Vec<double> xi(n);
            for (size_t bi = 0; bi < basis.size(); ++bi) xi += c[static_cast<int>(bi)] * basis[bi];
            best = std::min(best, residual_at(xi));
        }
    }
    return best;
}

struct JumpConeTrialReport {
    double matrix_norm;
    double min_residual;  // over the xi search, for the exhibited v
    bool rejected;        // true when the residual stays bounded away from zero
};

struct JumpConeReport {
    std::vector<JumpConeTrialReport> trials;
    bool zero_passes;  // M = 0 admits every direction
    double threshold;
};

/// Checks that no nonzero cone element can be refactored with frequencies
/// confined to a hyperplane: for each random unit-norm M = dev_dyad(a, b)
/// the direction v is taken as the top eigenvector of M, and the residual
/// over xi in v-perp must stay above the threshold.
inline JumpConeReport jump_cone_triviality_check(int trials, int n, uint64_t seed,
                                                 double threshold = 0.1, int xi_samples = 256) {
    if (n < 3) throw std::invalid_argument("requires n >= 3");
    Rng rng(seed);
    JumpConeReport report;
    report.threshold = threshold;

    // M = 0 trivially refactors (a = 0) for every v.
    {
        Mat<double> z(n);
        Vec<double> v = Vec<double>::basis(n, 0);
        report.zero_passes = refactorization_residual(z, v, 8, rng) <= 1e-12;
    }

    for (int t = 0; t < trials; ++t) {
        Vec<double> a = rng.unit_vector(n);
        Vec<double> b = rng.unit_vector(n);
        Mat<double> m = dev_dyad(a, b).mat();
        double nm = frobenius_norm(m);
        if (nm < 1e-6) {
            --t;  // a ~ -b degenerate draw; retry
            continue;
        }
        m *= 1.0 / nm;
        SymEigen eig = eigen_sym(m);
        // Direction: eigenvector of the extreme eigenvalue (largest |mu|).
        Vec<double> v = std::abs(eig.values.front()) > std::abs(eig.values.back())
                            ? eig.vectors.front()
                            : eig.vectors.back();
        double res = refactorization_residual(m, v, xi_samples, rng);
        report.trials.push_back(JumpConeTrialReport{1.0, res, res > threshold});
    }
    return report;
}

}  // namespace devgrad
