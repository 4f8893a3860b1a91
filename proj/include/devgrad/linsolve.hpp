#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "devgrad/rational.hpp"

namespace devgrad {

/// Exact row-echelon factorization of a rational matrix. The elimination is
/// done once; solving against many right-hand sides replays the recorded row
/// operations, which is what makes thousand-trial feasibility sweeps cheap.
class RationalSolver {
  public:
    RationalSolver(std::vector<std::vector<Rational>> a, int rows, int cols)
        : rows_(rows), cols_(cols), r_(std::move(a)) {
        factor();
    }

    int rank() const { return static_cast<int>(pivot_col_.size()); }
    int nullity() const { return cols_ - rank(); }

    /// Returns a particular solution (free variables set to zero) or nullopt
    /// when the system is inconsistent.
    std::optional<std::vector<Rational>> solve(std::vector<Rational> b) const {
        if (static_cast<int>(b.size()) != rows_) throw std::invalid_argument("rhs size mismatch");
        apply_row_ops(b);
        // Consistency: zero rows of R must face zero entries of the reduced b.
        for (int i = rank(); i < rows_; ++i)
            if (b[static_cast<size_t>(row_order_[static_cast<size_t>(i)])] != 0) return std::nullopt;
        std::vector<Rational> x(static_cast<size_t>(cols_), Rational(0));
        for (int i = rank() - 1; i >= 0; --i) {
            int ri = row_order_[static_cast<size_t>(i)];
            int pc = pivot_col_[static_cast<size_t>(i)];
            Rational s = b[static_cast<size_t>(ri)];
            for (int j = pc + 1; j < cols_; ++j) {
                const Rational& v = r_[static_cast<size_t>(ri)][static_cast<size_t>(j)];
                if (v != 0) s -= v * x[static_cast<size_t>(j)];
            }
            x[static_cast<size_t>(pc)] = s / r_[static_cast<size_t>(ri)][static_cast<size_t>(pc)];
        }
        return x;
    }

  private:
    struct RowOp {
        int target;
        int source;
        Rational factor;  // row[target] -= factor * row[source]
    };

    void factor() {
        row_order_.resize(static_cast<size_t>(rows_));
        for (int i = 0; i < rows_; ++i) row_order_[static_cast<size_t>(i)] = i;
        int lead = 0;
        for (int col = 0; col < cols_ && lead < rows_; ++col) {
            int piv = -1;
            for (int i = lead; i < rows_; ++i) {
                int ri = row_order_[static_cast<size_t>(i)];
                if (r_[static_cast<size_t>(ri)][static_cast<size_t>(col)] != 0) {
                    piv = i;
                    break;
                }
            }
            if (piv < 0) continue;
            std::swap(row_order_[static_cast<size_t>(lead)], row_order_[static_cast<size_t>(piv)]);
            int rp = row_order_[static_cast<size_t>(lead)];
            const Rational& pv = r_[static_cast<size_t>(rp)][static_cast<size_t>(col)];
            for (int i = lead + 1; i < rows_; ++i) {
                int ri = row_order_[static_cast<size_t>(i)];
                Rational& v = r_[static_cast<size_t>(ri)][static_cast<size_t>(col)];
                if (v == 0) continue;
                Rational f = v / pv;
                for (int j = col; j < cols_; ++j)
                    r_[static_cast<size_t>(ri)][static_cast<size_t>(j)] -=
                        f * r_[static_cast<size_t>(rp)][static_cast<size_t>(j)];
                ops_.push_back(RowOp{ri, rp, f});
            }
            pivot_col_.push_back(col);
            ++lead;
        }
    }

    void apply_row_ops(std::vector<Rational>& b) const {
        for (const auto& op : ops_) {
            if (b[static_cast<size_t>(op.source)] != 0)
                b[static_cast<size_t>(op.target)] -= op.factor * b[static_cast<size_t>(op.source)];
        }
    }

    int rows_, cols_;
    std::vector<std::vector<Rational>> r_;
    std::vector<int> row_order_;
    std::vector<int> pivot_col_;
    std::vector<RowOp> ops_;
};

/// Exact rank of a rational matrix.
inline int rational_rank(const std::vector<std::vector<Rational>>& a, int rows, int cols) {
    return RationalSolver(a, rows, cols).rank();
}

}  // namespace devgrad
