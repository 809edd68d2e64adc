#include "kleinian/linear_solver.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <stdexcept>

namespace kleinian {

namespace {

struct IntMatrix {
    size_t rows = 0, cols = 0;  // cols includes the rhs column
    std::vector<mpz_class> a;
    mpz_class& at(size_t i, size_t j) { return a[i * cols + j]; }
    const mpz_class& at(size_t i, size_t j) const { return a[i * cols + j]; }
};

// Clear denominators row by row.
IntMatrix to_integer_matrix(const LinearSystem& sys, size_t n) {
    IntMatrix m;
    m.rows = sys.rows.size();
    m.cols = n + 1;
    m.a.assign(m.rows * m.cols, mpz_class(0));
    for (size_t i = 0; i < m.rows; ++i) {
        mpz_class lcm = 1;
        for (const auto& [j, c] : sys.rows[i]) {
            (void)j;
            mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.den().get_mpz_t());
        }
        mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), sys.rhs[i].den().get_mpz_t());
        for (const auto& [j, c] : sys.rows[i]) {
            if (j < 0 || size_t(j) >= n) throw std::invalid_argument("solve_exact: column out of range");
            m.at(i, size_t(j)) += c.num() * (lcm / c.den());
        }
        m.at(i, n) = sys.rhs[i].num() * (lcm / sys.rhs[i].den());
    }
    return m;
}

}  // namespace

SolveResult solve_exact(const LinearSystem& sys) {
    const size_t n = sys.unknowns.size();
    if (sys.rows.size() != sys.rhs.size()) throw std::invalid_argument("solve_exact: row/rhs size mismatch");
    IntMatrix m = to_integer_matrix(sys, n);

    // Bareiss elimination with column pivoting over all columns except rhs.
    std::vector<int> pivot_col_of_row;  // per eliminated row
    mpz_class prev_pivot = 1;
    size_t r = 0;
    for (size_t col = 0; col < n && r < m.rows; ++col) {
        // Deterministic pivot: smallest bit size, then lowest row index.
        size_t best = m.rows;
        size_t best_bits = 0;
        for (size_t i = r; i < m.rows; ++i) {
            if (sgn(m.at(i, col)) == 0) continue;
            size_t bits = mpz_sizeinbase(m.at(i, col).get_mpz_t(), 2);
            if (best == m.rows || bits < best_bits) {
                best = i;
                best_bits = bits;
            }
        }
        if (best == m.rows) continue;
        if (best != r)
            for (size_t j = 0; j < m.cols; ++j) std::swap(m.at(r, j), m.at(best, j));

        const mpz_class pivot = m.at(r, col);
        for (size_t i = r + 1; i < m.rows; ++i) {
            const mpz_class factor = m.at(i, col);
            for (size_t j = col; j < m.cols; ++j) {
                mpz_class v = m.at(i, j) * pivot - factor * m.at(r, j);
                mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev_pivot.get_mpz_t());
                m.at(i, j) = std::move(v);
            }
        }
        prev_pivot = pivot;
        pivot_col_of_row.push_back(static_cast<int>(col));
        ++r;
    }

    SolveResult res;
    res.rank = static_cast<int>(r);
    res.pivot_columns = pivot_col_of_row;

    // Consistency: any zero row with nonzero rhs?
    for (size_t i = r; i < m.rows; ++i) {
        if (sgn(m.at(i, n)) != 0) {
            res.kind = SolveResult::Kind::Inconsistent;
            return res;
        }
    }

    std::vector<bool> is_pivot(n, false);
    for (int c : res.pivot_columns) is_pivot[size_t(c)] = true;
    for (size_t c = 0; c < n; ++c)
        if (!is_pivot[c]) res.free_columns.push_back(static_cast<int>(c));

    // Back substitution on the triangular system for the particular solution
    // (free variables = 0) and one nullspace vector per free column.
    auto back_solve = [&](const std::vector<Rational>& free_values, bool homogeneous) {
        std::vector<Rational> x(n, Rational(0));
        for (size_t c = 0; c < res.free_columns.size(); ++c)
            x[size_t(res.free_columns[c])] = free_values[c];
        for (size_t k = r; k-- > 0;) {
            size_t pc = size_t(res.pivot_columns[k]);
            Rational acc = homogeneous ? Rational(0) : Rational(m.at(k, n), mpz_class(1));
            for (size_t j = pc + 1; j < n; ++j) {
                if (sgn(m.at(k, j)) == 0 || x[j].is_zero()) continue;
                acc -= Rational(m.at(k, j), mpz_class(1)) * x[j];
            }
            x[pc] = acc / Rational(m.at(k, pc), mpz_class(1));
        }
        return x;
    };

    std::vector<Rational> zeros(res.free_columns.size(), Rational(0));
    res.particular = back_solve(zeros, false);

    for (size_t c = 0; c < res.free_columns.size(); ++c) {
        std::vector<Rational> fv(res.free_columns.size(), Rational(0));
        fv[c] = Rational(1);
        res.nullspace.push_back(back_solve(fv, true));
    }

    res.kind = res.free_columns.empty() ? SolveResult::Kind::Unique : SolveResult::Kind::Family;
    return res;
}

int matrix_rank(const std::vector<std::vector<Rational>>& rows) {
    if (rows.empty()) return 0;
    LinearSystem sys;
    sys.unknowns.assign(rows[0].size(), "");
    for (const auto& row : rows) {
        std::vector<std::pair<int, Rational>> r;
        for (size_t j = 0; j < row.size(); ++j)
            if (!row[j].is_zero()) r.emplace_back(int(j), row[j]);
        sys.add_row(std::move(r), Rational(0));
    }
    return solve_exact(sys).rank;
}

}  // namespace kleinian
