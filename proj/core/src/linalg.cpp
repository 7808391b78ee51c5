#include <designlat/errors.hpp>
#include <designlat/linalg.hpp>

#include <algorithm>
#include <map>
#include <sstream>

namespace designlat {

namespace {
int cmpabs(const Integer& a, const Integer& b) { return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()); }
} // namespace


Matrix Matrix::identity(std::size_t n)
{
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1;
    return m;
}

Matrix Matrix::from_rows(const std::vector<IntVec>& rows, std::size_t cols)
{
    if (!rows.empty())
        cols = rows.front().size();
    Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols)
            throw PreconditionError("ragged matrix rows");
        for (std::size_t j = 0; j < cols; ++j)
            m(i, j) = rows[i][j];
    }
    return m;
}

Matrix Matrix::from_columns(const std::vector<IntVec>& cols, std::size_t rows)
{
    if (!cols.empty())
        rows = cols.front().size();
    Matrix m(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        if (cols[j].size() != rows)
            throw PreconditionError("ragged matrix columns");
        for (std::size_t i = 0; i < rows; ++i)
            m(i, j) = cols[j][i];
    }
    return m;
}

IntVec Matrix::row(std::size_t i) const
{
    return IntVec(a_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
        a_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

IntVec Matrix::column(std::size_t j) const
{
    IntVec c(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        c[i] = (*this)(i, j);
    return c;
}

Matrix Matrix::transpose() const
{
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            t(j, i) = (*this)(i, j);
    return t;
}

IntVec Matrix::operator*(const IntVec& x) const
{
    if (x.size() != cols_)
        throw PreconditionError("matrix-vector size mismatch");
    IntVec y(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if (x[j] != 0)
                y[i] += (*this)(i, j) * x[j];
    return y;
}

Matrix operator*(const Matrix& a, const Matrix& b)
{
    if (a.cols_ != b.rows_)
        throw PreconditionError("matrix product size mismatch");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const Integer& x = a(i, k);
            if (x == 0)
                continue;
            for (std::size_t j = 0; j < b.cols_; ++j)
                c(i, j) += x * b(k, j);
        }
    return c;
}

std::string Matrix::to_text() const
{
    std::ostringstream out;
    out << rows_ << " " << cols_ << "\n";
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j)
            out << (j ? " " : "") << (*this)(i, j).get_str();
        out << "\n";
    }
    return out.str();
}

Matrix Matrix::from_text(const std::string& text)
{
    std::istringstream in(text);
    std::size_t r = 0, c = 0;
    if (!(in >> r >> c))
        throw InputError("matrix text must start with 'rows cols'");
    Matrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) {
            std::string tok;
            if (!(in >> tok))
                throw InputError("matrix text ends early at row " + std::to_string(i + 1));
            if (m(i, j).set_str(tok, 10) != 0)
                throw InputError("bad integer '" + tok + "' at row " + std::to_string(i + 1));
        }
    return m;
}

std::vector<std::size_t> DiagonalForm::nonzero_rows() const
{
    std::vector<std::size_t> r(rank);
    for (std::size_t i = 0; i < rank; ++i)
        r[i] = i;
    return r;
}

DiagonalForm diagonal_form(const Matrix& z)
{
    const std::size_t m = z.rows(), k = z.cols();
    DiagonalForm f;
    f.Z = z;
    f.D = z;
    f.P = Matrix::identity(m);
    f.Q = Matrix::identity(k);
    Matrix& D = f.D;
    Matrix& P = f.P;
    Matrix& Q = f.Q;

    auto swap_rows = [&](std::size_t i, std::size_t j) {
        if (i == j)
            return;
        for (std::size_t c = 0; c < k; ++c)
            swap(D(i, c), D(j, c));
        for (std::size_t c = 0; c < m; ++c)
            swap(P(i, c), P(j, c));
    };
    auto swap_cols = [&](std::size_t i, std::size_t j) {
        if (i == j)
            return;
        for (std::size_t r = 0; r < m; ++r)
            swap(D(r, i), D(r, j));
        for (std::size_t r = 0; r < k; ++r)
            swap(Q(r, i), Q(r, j));
    };
    // row_dst -= c * row_src
    auto row_sub = [&](std::size_t dst, std::size_t src, const Integer& c) {
        for (std::size_t x = 0; x < k; ++x)
            if (D(src, x) != 0)
                D(dst, x) -= c * D(src, x);
        for (std::size_t x = 0; x < m; ++x)
            if (P(src, x) != 0)
                P(dst, x) -= c * P(src, x);
    };
    auto col_sub = [&](std::size_t dst, std::size_t src, const Integer& c) {
        for (std::size_t x = 0; x < m; ++x)
            if (D(x, src) != 0)
                D(x, dst) -= c * D(x, src);
        for (std::size_t x = 0; x < k; ++x)
            if (Q(x, src) != 0)
                Q(x, dst) -= c * Q(x, src);
    };

    std::size_t t = 0;
    for (; t < std::min(m, k); ++t) {
        std::size_t pi = m, pj = k;
        for (std::size_t i = t; i < m; ++i)
            for (std::size_t j = t; j < k; ++j)
                if (D(i, j) != 0 && (pi == m || cmpabs(D(i, j), D(pi, pj)) < 0)) {
                    pi = i;
                    pj = j;
                }
        if (pi == m)
            break;
        swap_rows(t, pi);
        swap_cols(t, pj);
        for (;;) {
            bool dirty = false;
            for (std::size_t i = t + 1; i < m; ++i)
                if (D(i, t) != 0) {
                    Integer q = D(i, t) / D(t, t);
                    if (q != 0)
                        row_sub(i, t, q);
                    if (D(i, t) != 0)
                        dirty = true;
                }
            for (std::size_t j = t + 1; j < k; ++j)
                if (D(t, j) != 0) {
                    Integer q = D(t, j) / D(t, t);
                    if (q != 0)
                        col_sub(j, t, q);
                    if (D(t, j) != 0)
                        dirty = true;
                }
            if (dirty) {
                std::size_t bi = t, bj = t;
                for (std::size_t i = t + 1; i < m; ++i)
                    if (D(i, t) != 0 && cmpabs(D(i, t), D(bi, bj)) < 0) {
                        bi = i;
                        bj = t;
                    }
                for (std::size_t j = t + 1; j < k; ++j)
                    if (D(t, j) != 0 && cmpabs(D(t, j), D(bi, bj)) < 0) {
                        bi = t;
                        bj = j;
                    }
                swap_rows(t, bi);
                swap_cols(t, bj);
                continue;
            }
            bool fixed = false;
            for (std::size_t i = t + 1; i < m && !fixed; ++i)
                for (std::size_t j = t + 1; j < k; ++j)
                    if (D(i, j) != 0 && !mpz_divisible_p(D(i, j).get_mpz_t(), D(t, t).get_mpz_t())) {
                        row_sub(t, i, -1);
                        fixed = true;
                        break;
                    }
            if (!fixed)
                break;
        }
        if (D(t, t) < 0) {
            for (std::size_t x = 0; x < k; ++x)
                D(t, x) = -D(t, x);
            for (std::size_t x = 0; x < m; ++x)
                P(t, x) = -P(t, x);
        }
    }
    f.rank = t;
    return f;
}

std::optional<IntVec> integer_solve(const DiagonalForm& df, const IntVec& b)
{
    const std::size_t m = df.Z.rows(), k = df.Z.cols();
    if (b.size() != m)
        throw PreconditionError("right-hand side has wrong length");
    IntVec c = df.P * b;
    IntVec y(k);
    for (std::size_t i = 0; i < m; ++i) {
        if (i < df.rank) {
            if (!mpz_divisible_p(c[i].get_mpz_t(), df.D(i, i).get_mpz_t()))
                return std::nullopt;
            y[i] = c[i] / df.D(i, i);
        } else if (c[i] != 0) {
            return std::nullopt;
        }
    }
    return df.Q * y;
}

std::optional<IntVec> integer_solve(const Matrix& z, const IntVec& b) { return integer_solve(diagonal_form(z), b); }

std::vector<IntVec> kernel_basis(const Matrix& z)
{
    auto df = diagonal_form(z);
    std::vector<IntVec> out;
    for (std::size_t j = df.rank; j < z.cols(); ++j)
        out.push_back(df.Q.column(j));
    return out;
}

namespace {

    // Fraction-free elimination; returns rank, and the determinant for square input.
    std::size_t bareiss(Matrix a, Integer* det)
    {
        const std::size_t m = a.rows(), k = a.cols();
        Integer prev = 1;
        int sign = 1;
        std::size_t r = 0;
        for (std::size_t c = 0; c < k && r < m; ++c) {
            std::size_t p = r;
            while (p < m && a(p, c) == 0)
                ++p;
            if (p == m)
                continue;
            if (p != r) {
                for (std::size_t x = 0; x < k; ++x)
                    swap(a(p, x), a(r, x));
                sign = -sign;
            }
            for (std::size_t i = r + 1; i < m; ++i) {
                for (std::size_t j = c + 1; j < k; ++j) {
                    a(i, j) = a(r, c) * a(i, j) - a(i, c) * a(r, j);
                    mpz_divexact(a(i, j).get_mpz_t(), a(i, j).get_mpz_t(), prev.get_mpz_t());
                }
                a(i, c) = 0;
            }
            prev = a(r, c);
            ++r;
        }
        if (det) {
            if (m != k)
                throw PreconditionError("determinant of a non-square matrix");
            *det = (r < m) ? Integer(0) : Integer(sign * prev);
            if (m == 0)
                *det = 1;
        }
        return r;
    }

} // namespace

std::size_t rank(const Matrix& z) { return bareiss(z, nullptr); }

Integer determinant(const Matrix& z)
{
    Integer d;
    bareiss(z, &d);
    return d;
}

SpanTester::SpanTester(const std::vector<IntVec>& columns, std::size_t rows) : rows_(rows), ncols_(columns.size())
{
    std::map<IntVec, std::size_t> seen_cols;
    std::vector<IntVec> kept;
    for (std::size_t j = 0; j < columns.size(); ++j) {
        if (columns[j].size() != rows)
            throw PreconditionError("span column has wrong length");
        if (is_zero(columns[j]))
            continue;
        if (seen_cols.emplace(columns[j], j).second) {
            kept_cols_.push_back(j);
            kept.push_back(columns[j]);
        }
    }
    row_group_.assign(rows, static_cast<std::size_t>(-1));
    std::map<IntVec, std::size_t> seen_rows;
    std::vector<IntVec> reduced_rows;
    for (std::size_t i = 0; i < rows; ++i) {
        IntVec r(kept.size());
        bool nz = false;
        for (std::size_t j = 0; j < kept.size(); ++j) {
            r[j] = kept[j][i];
            if (r[j] != 0)
                nz = true;
        }
        if (!nz)
            continue;
        auto [it, fresh] = seen_rows.emplace(r, reduced_rows.size());
        if (fresh) {
            reduced_rows.push_back(r);
            group_rep_.push_back(i);
        }
        row_group_[i] = it->second;
    }
    empty_ = kept.empty();
    if (!empty_)
        df_ = diagonal_form(Matrix::from_rows(reduced_rows, kept.size()));
}

std::optional<IntVec> SpanTester::solve(const IntVec& b) const
{
    if (b.size() != rows_)
        throw PreconditionError("span target has wrong length");
    IntVec rb(group_rep_.size());
    std::vector<bool> set(group_rep_.size(), false);
    for (std::size_t i = 0; i < rows_; ++i) {
        auto g = row_group_[i];
        if (g == static_cast<std::size_t>(-1)) {
            if (b[i] != 0)
                return std::nullopt;
            continue;
        }
        if (!set[g]) {
            rb[g] = b[i];
            set[g] = true;
        } else if (rb[g] != b[i]) {
            return std::nullopt;
        }
    }
    IntVec x(ncols_);
    if (empty_)
        return x;
    auto y = integer_solve(df_, rb);
    if (!y)
        return std::nullopt;
    for (std::size_t j = 0; j < kept_cols_.size(); ++j)
        x[kept_cols_[j]] = (*y)[j];
    return x;
}

FeasibilityResult rational_feasible(const Matrix& z, const IntVec& b, const std::optional<std::vector<Bounds>>& bounds)
{
    std::vector<std::vector<Rational>> zr(z.rows(), std::vector<Rational>(z.cols()));
    for (std::size_t i = 0; i < z.rows(); ++i)
        for (std::size_t j = 0; j < z.cols(); ++j)
            zr[i][j] = z(i, j);
    std::vector<Rational> br(b.begin(), b.end());
    return rational_feasible(zr, br, bounds);
}

FeasibilityResult rational_feasible(const std::vector<std::vector<Rational>>& z, const std::vector<Rational>& b,
    const std::optional<std::vector<Bounds>>& bounds)
{
    const std::size_t m0 = z.size();
    const std::size_t n = m0 ? z.front().size() : (bounds ? bounds->size() : 0);
    if (b.size() != m0)
        throw PreconditionError("right-hand side has wrong length");
    if (bounds && bounds->size() != n)
        throw PreconditionError("bounds have wrong length");

    FeasibilityResult res;
    // Shift x = lo + x'; upper bounds become rows x'_j + s_j = hi_j - lo_j.
    std::vector<Rational> lo(n, 0);
    if (bounds)
        for (std::size_t j = 0; j < n; ++j) {
            lo[j] = (*bounds)[j].lo;
            if ((*bounds)[j].hi < (*bounds)[j].lo)
                return res;
        }
    const std::size_t nslack = bounds ? n : 0;
    const std::size_t m = m0 + nslack;
    const std::size_t nv = n + nslack;
    const std::size_t cols = nv + m + 1; // variables, artificials, rhs
    std::vector<std::vector<Rational>> T(m, std::vector<Rational>(cols));
    std::vector<int> flip(m, 1);
    for (std::size_t i = 0; i < m0; ++i) {
        if (z[i].size() != n)
            throw PreconditionError("ragged constraint matrix");
        Rational rhs = b[i];
        for (std::size_t j = 0; j < n; ++j) {
            T[i][j] = z[i][j];
            rhs -= z[i][j] * lo[j];
        }
        T[i][cols - 1] = rhs;
    }
    for (std::size_t j = 0; j < nslack; ++j) {
        std::size_t i = m0 + j;
        T[i][j] = 1;
        T[i][n + j] = 1;
        T[i][cols - 1] = (*bounds)[j].hi - (*bounds)[j].lo;
    }
    for (std::size_t i = 0; i < m; ++i) {
        if (T[i][cols - 1] < 0) {
            flip[i] = -1;
            for (std::size_t j = 0; j < nv; ++j)
                T[i][j] = -T[i][j];
            T[i][cols - 1] = -T[i][cols - 1];
        }
        T[i][nv + i] = 1;
    }
    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i)
        basis[i] = nv + i;
    std::vector<Rational> rc(cols, 0); // reduced costs (last entry: -objective)
    for (std::size_t j = 0; j < cols; ++j) {
        if (j >= nv && j < nv + m)
            continue;
        for (std::size_t i = 0; i < m; ++i)
            rc[j] -= T[i][j];
    }

    for (;;) {
        std::size_t enter = cols;
        for (std::size_t j = 0; j + 1 < cols; ++j)
            if (rc[j] < 0) {
                enter = j;
                break;
            }
        if (enter == cols)
            break;
        std::size_t leave = m;
        Rational best;
        for (std::size_t i = 0; i < m; ++i) {
            if (T[i][enter] <= 0)
                continue;
            Rational ratio = T[i][cols - 1] / T[i][enter];
            if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
                leave = i;
                best = ratio;
            }
        }
        if (leave == m)
            break; // unbounded direction cannot occur in phase 1
        Rational piv = T[leave][enter];
        for (auto& x : T[leave])
            x /= piv;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == leave || T[i][enter] == 0)
                continue;
            Rational f = T[i][enter];
            for (std::size_t j = 0; j < cols; ++j)
                if (T[leave][j] != 0)
                    T[i][j] -= f * T[leave][j];
        }
        Rational f = rc[enter];
        for (std::size_t j = 0; j < cols; ++j)
            if (T[leave][j] != 0)
                rc[j] -= f * T[leave][j];
        basis[leave] = enter;
    }

    Rational objective = 0;
    for (std::size_t i = 0; i < m; ++i)
        if (basis[i] >= nv)
            objective += T[i][cols - 1];
    if (objective == 0) {
        res.feasible = true;
        res.x = lo;
        for (std::size_t i = 0; i < m; ++i)
            if (basis[i] < n)
                res.x[basis[i]] += T[i][cols - 1];
        return res;
    }
    if (!bounds) {
        std::vector<Rational> y(m0);
        for (std::size_t i = 0; i < m0; ++i)
            y[i] = (1 - rc[nv + i]) * flip[i];
        bool ok = true;
        for (std::size_t j = 0; j < n && ok; ++j) {
            Rational s = 0;
            for (std::size_t i = 0; i < m0; ++i)
                s += y[i] * z[i][j];
            if (s > 0)
                ok = false;
        }
        Rational yb = 0;
        for (std::size_t i = 0; i < m0; ++i)
            yb += y[i] * b[i];
        if (ok && yb > 0)
            res.farkas = y;
    }
    return res;
}

} // namespace designlat
