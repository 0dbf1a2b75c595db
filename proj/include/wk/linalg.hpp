#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "wk/rational.hpp"

namespace wk {

/// Dense matrix over the rationals. Row-major.
class QMatrix {
public:
    QMatrix() : rows_(0), cols_(0) {}
    QMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, Rational(0)) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Rational& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    QMatrix transposed() const {
        QMatrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
        return t;
    }

    QMatrix negated_transpose() const {
        QMatrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = -at(i, j);
        return t;
    }

    friend QMatrix operator*(const QMatrix& a, const QMatrix& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("matrix dimension mismatch");
        QMatrix r(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                if (a.at(i, k) == 0) continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    if (b.at(k, j) != 0) r.at(i, j) += a.at(i, k) * b.at(k, j);
            }
        return r;
    }

    friend QMatrix operator-(const QMatrix& a, const QMatrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
            throw std::invalid_argument("matrix dimension mismatch");
        QMatrix r(a.rows_, a.cols_);
        for (std::size_t i = 0; i < a.data_.size(); ++i) r.data_[i] = a.data_[i] - b.data_[i];
        return r;
    }

    friend bool operator==(const QMatrix& a, const QMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }
    friend bool operator!=(const QMatrix& a, const QMatrix& b) { return !(a == b); }

private:
    std::size_t rows_, cols_;
    std::vector<Rational> data_;
};

namespace detail {

/// Fraction-free (Bareiss) forward elimination on an integer copy of the
/// matrix: each row is first scaled to a primitive integer vector, after
/// which all elimination divisions are exact. Returns the pivot column of
/// each eliminated row, in order; the echelon rows are written back into
/// `m` and the row permutation applied. Columns at pivot_limit and beyond
/// are carried along but never pivoted (used for augmented right-hand
/// sides).
inline std::vector<std::size_t> echelon_form(QMatrix& m,
                                             std::size_t pivot_limit = SIZE_MAX) {
    const std::size_t rows = m.rows(), cols = m.cols();
    const std::size_t pivot_cols_end = std::min(cols, pivot_limit);
    for (std::size_t i = 0; i < rows; ++i) {
        Integer lcm = 1;
        for (std::size_t j = 0; j < cols; ++j) {
            Integer d = m.at(i, j).get_den();
            mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), d.get_mpz_t());
        }
        Integer gcd = 0;
        for (std::size_t j = 0; j < cols; ++j) {
            Integer num = m.at(i, j).get_num() * (lcm / m.at(i, j).get_den());
            mpz_gcd(gcd.get_mpz_t(), gcd.get_mpz_t(), num.get_mpz_t());
        }
        if (gcd == 0) continue;
        Rational f(lcm, gcd);
        f.canonicalize();
        for (std::size_t j = 0; j < cols; ++j) m.at(i, j) *= f;
    }

    std::vector<std::size_t> pivot_cols;
    std::size_t row = 0;
    Integer prev_pivot = 1;
    for (std::size_t col = 0; col < pivot_cols_end && row < rows; ++col) {
        std::size_t pivot = row;
        while (pivot < rows && m.at(pivot, col) == 0) ++pivot;
        if (pivot == rows) continue;
        if (pivot != row)
            for (std::size_t j = 0; j < cols; ++j) std::swap(m.at(row, j), m.at(pivot, j));
        Integer p = m.at(row, col).get_num();
        for (std::size_t i = row + 1; i < rows; ++i) {
            Integer head = m.at(i, col).get_num();
            // Bareiss identity: the update below stays integral for every
            // row, including head == 0, so the exact division is safe.
            for (std::size_t j = col; j < cols; ++j) {
                Integer v = p * m.at(i, j).get_num() - head * m.at(row, j).get_num();
                mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev_pivot.get_mpz_t());
                m.at(i, j) = Rational(v);
            }
        }
        prev_pivot = p;
        pivot_cols.push_back(col);
        ++row;
    }
    return pivot_cols;
}

}  // namespace detail

inline std::size_t rank(QMatrix m) { return detail::echelon_form(m).size(); }

/// Basis of the right nullspace {x : Mx = 0}, one vector per free column,
/// in ascending free-column order with a 1 in the free position.
inline std::vector<std::vector<Rational>> nullspace(QMatrix m) {
    const std::size_t cols = m.cols();
    std::vector<std::size_t> pivots = detail::echelon_form(m);
    std::vector<bool> is_pivot(cols, false);
    for (std::size_t c : pivots) is_pivot[c] = true;

    std::vector<std::vector<Rational>> basis;
    for (std::size_t free_col = 0; free_col < cols; ++free_col) {
        if (is_pivot[free_col]) continue;
        std::vector<Rational> v(cols, Rational(0));
        v[free_col] = 1;
        for (std::size_t k = pivots.size(); k-- > 0;) {
            std::size_t pc = pivots[k];
            if (pc >= free_col) continue;
            Rational s(0);
            for (std::size_t j = pc + 1; j < cols; ++j)
                if (v[j] != 0 && m.at(k, j) != 0) s += m.at(k, j) * v[j];
            v[pc] = -s / m.at(k, pc);
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

struct LinearSolution {
    std::vector<Rational> particular;                // free variables set to 0
    std::vector<std::vector<Rational>> nullspace;    // of the coefficient matrix
};

/// Exact simultaneous solve of A x = b for several right-hand sides, sharing
/// one elimination. particular[j] is empty for an inconsistent b_j; the
/// nullspace of A is common to all systems.
struct BatchSolution {
    std::vector<std::optional<std::vector<Rational>>> particular;
    std::vector<std::vector<Rational>> nullspace;
};

inline BatchSolution solve_batch(const QMatrix& a,
                                 const std::vector<std::vector<Rational>>& rhs) {
    const std::size_t cols = a.cols();
    const std::size_t k = rhs.size();
    for (const auto& b : rhs)
        if (b.size() != a.rows()) throw std::invalid_argument("right-hand side size mismatch");
    QMatrix aug(a.rows(), cols + k);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < cols; ++j) aug.at(i, j) = a.at(i, j);
        for (std::size_t j = 0; j < k; ++j) aug.at(i, cols + j) = rhs[j][i];
    }
    std::vector<std::size_t> pivots = detail::echelon_form(aug, cols);

    BatchSolution sol;
    sol.particular.resize(k);
    std::vector<bool> consistent(k, true);
    for (std::size_t i = pivots.size(); i < a.rows(); ++i)
        for (std::size_t j = 0; j < k; ++j)
            if (aug.at(i, cols + j) != 0) consistent[j] = false;

    for (std::size_t j = 0; j < k; ++j) {
        if (!consistent[j]) continue;
        std::vector<Rational> x(cols, Rational(0));
        for (std::size_t r = pivots.size(); r-- > 0;) {
            std::size_t pc = pivots[r];
            Rational s = aug.at(r, cols + j);
            for (std::size_t c = pc + 1; c < cols; ++c)
                if (x[c] != 0 && aug.at(r, c) != 0) s -= aug.at(r, c) * x[c];
            x[pc] = s / aug.at(r, pc);
        }
        sol.particular[j] = std::move(x);
    }

    std::vector<bool> is_pivot(cols, false);
    for (std::size_t c : pivots) is_pivot[c] = true;
    for (std::size_t free_col = 0; free_col < cols; ++free_col) {
        if (is_pivot[free_col]) continue;
        std::vector<Rational> v(cols, Rational(0));
        v[free_col] = 1;
        for (std::size_t r = pivots.size(); r-- > 0;) {
            std::size_t pc = pivots[r];
            if (pc >= free_col) continue;
            Rational s(0);
            for (std::size_t c = pc + 1; c < cols; ++c)
                if (v[c] != 0 && aug.at(r, c) != 0) s += aug.at(r, c) * v[c];
            v[pc] = -s / aug.at(r, pc);
        }
        sol.nullspace.push_back(std::move(v));
    }
    return sol;
}

/// Exact solve of A x = b. Returns nothing when inconsistent.
inline std::optional<LinearSolution> solve(const QMatrix& a, const std::vector<Rational>& b) {
    BatchSolution batch = solve_batch(a, {b});
    if (!batch.particular[0].has_value()) return std::nullopt;
    return LinearSolution{std::move(*batch.particular[0]), std::move(batch.nullspace)};
}

}  // namespace wk
