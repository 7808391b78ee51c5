#pragma once

#include <designlat/arith.hpp>

#include <optional>
#include <string>
#include <vector>

namespace designlat {

class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) { }
    static Matrix identity(std::size_t n);
    static Matrix from_rows(const std::vector<IntVec>& rows, std::size_t cols = 0);
    static Matrix from_columns(const std::vector<IntVec>& cols, std::size_t rows = 0);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Integer& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Integer& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    IntVec row(std::size_t i) const;
    IntVec column(std::size_t j) const;
    Matrix transpose() const;
    IntVec operator*(const IntVec& x) const;
    friend Matrix operator*(const Matrix& a, const Matrix& b);
    friend bool operator==(const Matrix& a, const Matrix& b)
    {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
    }

    // Dense row-major text: "rows cols" then one row per line.
    std::string to_text() const;
    static Matrix from_text(const std::string& text);

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Integer> a_;
};

// D = P·Z·Q with P, Q unimodular and D diagonal with d1 | d2 | ... (Smith form).
struct DiagonalForm {
    Matrix Z, P, Q, D;
    std::size_t rank = 0; // D(i,i) ≠ 0 exactly for i < rank
    std::vector<std::size_t> nonzero_rows() const;
    Integer diagonal(std::size_t i) const { return i < D.rows() && i < D.cols() ? D(i, i) : Integer(0); }
};

DiagonalForm diagonal_form(const Matrix& z);

// x with Z·x = b, via the diagonal form; nullopt if b ∉ column ℤ-span.
std::optional<IntVec> integer_solve(const Matrix& z, const IntVec& b);
std::optional<IntVec> integer_solve(const DiagonalForm& df, const IntVec& b);

// ℤ-basis of {x : Zx = 0}.
std::vector<IntVec> kernel_basis(const Matrix& z);
std::size_t rank(const Matrix& z);
Integer determinant(const Matrix& z);

// ℤ-span membership against a fixed column set, with duplicate columns/rows
// removed once and the diagonal form cached for repeated queries.
class SpanTester {
public:
    SpanTester() = default;
    // columns all of length `rows`
    SpanTester(const std::vector<IntVec>& columns, std::size_t rows);

    std::size_t rows() const { return rows_; }
    std::size_t columns() const { return ncols_; }
    bool contains(const IntVec& b) const { return solve(b).has_value(); }
    // Coefficients on the original columns.
    std::optional<IntVec> solve(const IntVec& b) const;

private:
    std::size_t rows_ = 0, ncols_ = 0;
    std::vector<std::size_t> kept_cols_;
    std::vector<std::size_t> row_group_; // original row -> reduced row, or npos for zero rows
    std::vector<std::size_t> group_rep_;
    DiagonalForm df_;
    bool empty_ = true;
};

struct Bounds {
    Rational lo, hi;
};

struct FeasibilityResult {
    bool feasible = false;
    std::vector<Rational> x;
    // For infeasible problems without bounds: y with yᵀZ ≤ 0 and yᵀb > 0.
    std::optional<std::vector<Rational>> farkas;
};

// x ≥ 0 (or lo ≤ x ≤ hi) with Zx = b; exact phase-1 simplex with Bland's rule.
FeasibilityResult rational_feasible(const Matrix& z, const IntVec& b,
    const std::optional<std::vector<Bounds>>& bounds = std::nullopt);
FeasibilityResult rational_feasible(const std::vector<std::vector<Rational>>& z, const std::vector<Rational>& b,
    const std::optional<std::vector<Bounds>>& bounds = std::nullopt);

} // namespace designlat
